//! Tabulating `t_j(I^a)`, `reg(I^a)` and `pd(I^a)` over exponent grids, and
//! fitting the tables by upper envelopes `max_k L_k(a)` of linear forms whose
//! slopes come from the generator degrees of the ideals.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{IdealFamily, MonomialIdeal, MultiExponent};
use crate::resolution::{self, Invariants};

/// Which invariant of `I^a` a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InvariantKind {
    T { j: usize },
    Reg,
    Pd,
}

impl InvariantKind {
    pub fn project(&self, inv: &Invariants) -> Option<i64> {
        match *self {
            InvariantKind::T { j } => inv.t(j),
            InvariantKind::Reg => Some(inv.reg),
            InvariantKind::Pd => Some(inv.pd as i64),
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantKind::T { j } => write!(f, "t_{j}"),
            InvariantKind::Reg => write!(f, "reg"),
            InvariantKind::Pd => write!(f, "pd"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCell {
    pub a: MultiExponent,
    /// `None` stands for −∞.
    pub value: Option<i64>,
}

/// Values of one invariant on the cube `[0, grid_max]^m`, in lexicographic order of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridTable {
    pub kind: InvariantKind,
    pub m: usize,
    pub grid_max: u32,
    pub cells: Vec<GridCell>,
}

impl GridTable {
    pub fn get(&self, a: &MultiExponent) -> Option<i64> {
        self.cells[grid_index(a, self.grid_max)].value
    }

    /// Builds a table from an arbitrary function of `a`.
    pub fn from_fn(
        kind: InvariantKind,
        m: usize,
        grid_max: u32,
        f: impl Fn(&MultiExponent) -> Option<i64>,
    ) -> Self {
        let cells = MultiExponent::grid(m, grid_max)
            .into_iter()
            .map(|a| {
                let value = f(&a);
                GridCell { a, value }
            })
            .collect();
        Self {
            kind,
            m,
            grid_max,
            cells,
        }
    }

    /// One row per `a`: columns `a1..am,value`; −∞ is written as `-inf`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (1..=self.m).map(|i| format!("a{i}")).collect();
        header.push("value".into());
        w.write_record(&header)?;
        for cell in &self.cells {
            let mut rec: Vec<String> = cell.a.as_slice().iter().map(u32::to_string).collect();
            rec.push(fmt_value(cell.value));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn fmt_value(v: Option<i64>) -> String {
    v.map_or_else(|| "-inf".to_string(), |v| v.to_string())
}

fn grid_index(a: &MultiExponent, grid_max: u32) -> usize {
    let side = grid_max as usize + 1;
    a.as_slice()
        .iter()
        .fold(0, |acc, &v| acc * side + v as usize)
}

/// Full invariants of `I^a` for every `a` in `[0, grid_max]^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantGrid {
    pub m: usize,
    pub grid_max: u32,
    pub cells: Vec<(MultiExponent, Invariants)>,
}

impl InvariantGrid {
    pub fn compute(family: &IdealFamily, grid_max: u32) -> Result<Self> {
        let ideals = power_products(family, grid_max)?;
        let cells = ideals
            .into_par_iter()
            .map(|(a, ideal)| (a, resolution::invariants(&ideal)))
            .collect();
        Ok(Self {
            m: family.m(),
            grid_max,
            cells,
        })
    }

    pub fn get(&self, a: &MultiExponent) -> &Invariants {
        &self.cells[grid_index(a, self.grid_max)].1
    }

    pub fn table(&self, kind: InvariantKind) -> GridTable {
        GridTable {
            kind,
            m: self.m,
            grid_max: self.grid_max,
            cells: self
                .cells
                .iter()
                .map(|(a, inv)| GridCell {
                    a: a.clone(),
                    value: kind.project(inv),
                })
                .collect(),
        }
    }

    /// See [`pd_stability`].
    pub fn pd_stability(&self) -> Result<PdStability> {
        let a_max = self.grid_max;
        if a_max < 2 {
            return Err(Error::GridTooSmall {
                min: 2,
                found: a_max,
            });
        }
        let top = MultiExponent::splat(self.m, a_max);
        let p = self.get(&top).pd;
        let mut best: Option<(u64, MultiExponent)> = None;
        for origin in MultiExponent::grid(self.m, a_max - 1) {
            let constant = MultiExponent::box_points(&origin, &top)
                .iter()
                .all(|a| self.get(a).pd == p);
            if !constant {
                continue;
            }
            let volume: u64 = origin
                .as_slice()
                .iter()
                .map(|&b| u64::from(a_max - b + 1))
                .product();
            if best.as_ref().is_none_or(|(v, _)| volume > *v) {
                best = Some((volume, origin));
            }
        }
        best.map(|(_, origin)| PdStability {
            p,
            origin,
            grid_max: a_max,
        })
        .ok_or(Error::NotStabilized { grid_max: a_max })
    }
}

/// `I^a` for every grid point, each built from its lexicographic predecessor `a - e_k`.
pub fn power_products(
    family: &IdealFamily,
    grid_max: u32,
) -> Result<Vec<(MultiExponent, MonomialIdeal)>> {
    let points = MultiExponent::grid(family.m(), grid_max);
    let mut ideals: Vec<MonomialIdeal> = Vec::with_capacity(points.len());
    for a in &points {
        let ideal = match a.as_slice().iter().rposition(|&v| v > 0) {
            None => MonomialIdeal::unit(family.ring()),
            Some(k) => {
                let mut prev = a.as_slice().to_vec();
                prev[k] -= 1;
                let prev = &ideals[grid_index(&MultiExponent::new(prev), grid_max)];
                prev.multiply(&family.ideals()[k])?
            }
        };
        ideals.push(ideal);
    }
    Ok(points.into_iter().zip(ideals).collect())
}

/// Table of one invariant over `[0, grid_max]^m`.
pub fn tabulate(family: &IdealFamily, kind: InvariantKind, grid_max: u32) -> Result<GridTable> {
    if grid_max < 1 {
        return Err(Error::GridTooSmall {
            min: 1,
            found: grid_max,
        });
    }
    Ok(InvariantGrid::compute(family, grid_max)?.table(kind))
}

/// `L(u) = Σ λ_i u_i + λ_0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    pub slopes: Vec<i64>,
    pub intercept: i64,
}

impl LinearForm {
    pub fn new(slopes: Vec<i64>, intercept: i64) -> Self {
        Self { slopes, intercept }
    }

    pub fn eval(&self, a: &MultiExponent) -> i64 {
        self.slopes
            .iter()
            .zip(a.as_slice())
            .map(|(l, &v)| l * i64::from(v))
            .sum::<i64>()
            + self.intercept
    }

    /// Axes with a nonzero slope.
    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.slopes.len())
            .filter(|&i| self.slopes[i] != 0)
            .collect()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &l) in self.slopes.iter().enumerate() {
            if l == 0 {
                continue;
            }
            let sign = if l < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = l.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.intercept)
        } else if self.intercept > 0 {
            write!(f, "+{}", self.intercept)
        } else if self.intercept < 0 {
            write!(f, "{}", self.intercept)
        } else {
            Ok(())
        }
    }
}

/// A verified representation `table(a) = max_k forms[k](a)` on `origin ≤ a ≤ (verified_to, …)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeFit {
    pub kind: InvariantKind,
    pub forms: Vec<LinearForm>,
    pub region_origin: MultiExponent,
    pub verified_to: u32,
}

impl EnvelopeFit {
    pub fn eval(&self, a: &MultiExponent) -> i64 {
        self.forms
            .iter()
            .map(|f| f.eval(a))
            .max()
            .expect("fit has at least one form")
    }

    pub fn region(&self) -> Vec<MultiExponent> {
        MultiExponent::box_points(
            &self.region_origin,
            &MultiExponent::splat(self.region_origin.len(), self.verified_to),
        )
    }

    pub fn formula(&self) -> String {
        let parts: Vec<String> = self.forms.iter().map(LinearForm::to_string).collect();
        if parts.len() == 1 {
            parts[0].clone()
        } else {
            format!("max{{{}}}", parts.join(", "))
        }
    }
}

impl fmt::Display for EnvelopeFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.region_origin.len();
        let top = MultiExponent::splat(m, self.verified_to);
        let lo: Vec<String> = self
            .region_origin
            .as_slice()
            .iter()
            .map(u32::to_string)
            .collect();
        let hi: Vec<String> = top.as_slice().iter().map(u32::to_string).collect();
        write!(
            f,
            "{}(I^a) = {} verified on [{}]..[{}]",
            self.kind,
            self.formula(),
            lo.join(","),
            hi.join(",")
        )
    }
}

/// Full-support slope vectors: the Cartesian product of the generator degree sets.
pub fn candidate_slopes(family: &IdealFamily) -> BTreeSet<Vec<i64>> {
    let mut out: BTreeSet<Vec<i64>> = BTreeSet::from([Vec::new()]);
    for set in family.generator_degree_sets() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                set.iter().map(move |&d| {
                    let mut v = prefix.clone();
                    v.push(d as i64);
                    v
                })
            })
            .collect();
    }
    out
}

/// Fits `table` on the region `origin ≤ a ≤ (grid_max, …)` by a max of forms with the given slopes.
///
/// Each slope `λ` gets the largest intercept `c_λ = min (value(a) − λ·a)` that keeps
/// `λ·a + c_λ` below the table on the region. The fit succeeds iff the max of these
/// forms equals the table everywhere on the region. The returned subset keeps every form
/// that is the unique maximizer somewhere, adds forms in lexicographic order until every
/// point is attained, then drops (in reverse order) any form that is no longer needed.
pub fn fit_envelope(
    table: &GridTable,
    candidates: &BTreeSet<Vec<i64>>,
    region_origin: &MultiExponent,
) -> Result<EnvelopeFit> {
    let m = table.m;
    if region_origin.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: region_origin.len(),
        });
    }
    if region_origin
        .as_slice()
        .iter()
        .any(|&b| b >= table.grid_max)
        || candidates.is_empty()
    {
        return Err(Error::EmptyRegion {
            origin: region_origin.clone(),
        });
    }
    let region = MultiExponent::box_points(region_origin, &MultiExponent::splat(m, table.grid_max));
    let values = region
        .iter()
        .map(|a| {
            table
                .get(a)
                .ok_or_else(|| Error::NonFiniteValue { at: a.clone() })
        })
        .collect::<Result<Vec<i64>>>()?;

    let forms: Vec<LinearForm> = candidates
        .iter()
        .map(|slopes| {
            let probe = LinearForm::new(slopes.clone(), 0);
            let c = region
                .iter()
                .zip(&values)
                .map(|(a, v)| v - probe.eval(a))
                .min()
                .expect("region is nonempty");
            LinearForm::new(slopes.clone(), c)
        })
        .collect();

    // attains[k][p]: form k reaches the table at region point p
    let attains: Vec<Vec<bool>> = forms
        .iter()
        .map(|f| {
            region
                .iter()
                .zip(&values)
                .map(|(a, v)| f.eval(a) == *v)
                .collect()
        })
        .collect();

    for (p, (a, v)) in region.iter().zip(&values).enumerate() {
        if !attains.iter().any(|row| row[p]) {
            let envelope = forms.iter().map(|f| f.eval(a)).max().unwrap();
            return Err(Error::FitFailed {
                witness: a.clone(),
                table: *v,
                envelope: envelope.to_string(),
            });
        }
    }

    let npts = region.len();
    let mut chosen = vec![false; forms.len()];
    #[allow(clippy::needless_range_loop)]
    for p in 0..npts {
        let mut who = (0..forms.len()).filter(|&k| attains[k][p]);
        if let (Some(k), None) = (who.next(), who.next()) {
            chosen[k] = true;
        }
    }
    let covered = |chosen: &[bool], p: usize| (0..forms.len()).any(|k| chosen[k] && attains[k][p]);
    for k in 0..forms.len() {
        if (0..npts).all(|p| covered(&chosen, p)) {
            break;
        }
        if !chosen[k] && (0..npts).any(|p| attains[k][p] && !covered(&chosen, p)) {
            chosen[k] = true;
        }
    }
    for k in (0..forms.len()).rev() {
        if !chosen[k] {
            continue;
        }
        chosen[k] = false;
        if !(0..npts).all(|p| covered(&chosen, p)) {
            chosen[k] = true;
        }
    }

    let selected: Vec<LinearForm> = forms
        .into_iter()
        .zip(chosen)
        .filter_map(|(f, keep)| keep.then_some(f))
        .collect();
    Ok(EnvelopeFit {
        kind: table.kind,
        forms: selected,
        region_origin: region_origin.clone(),
        verified_to: table.grid_max,
    })
}

/// If every ideal is generated in a single degree `d_i`, the fit must be the single form
/// with slopes `(d_1, …, d_m)`. Vacuously true otherwise.
pub fn check_corollary2(family: &IdealFamily, fit: &EnvelopeFit) -> bool {
    match family.single_degrees() {
        None => true,
        Some(d) => {
            let d: Vec<i64> = d.into_iter().map(|v| v as i64).collect();
            fit.forms.len() == 1 && fit.forms[0].slopes == d
        }
    }
}

/// Eventual value of `pd(I^a)` on the grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdStability {
    pub p: usize,
    /// Origin of the largest upper box on which pd is constant (lexicographically
    /// smallest among boxes of equal size).
    pub origin: MultiExponent,
    pub grid_max: u32,
}

pub fn pd_stability(family: &IdealFamily, grid_max: u32) -> Result<PdStability> {
    if grid_max < 2 {
        return Err(Error::GridTooSmall {
            min: 2,
            found: grid_max,
        });
    }
    InvariantGrid::compute(family, grid_max)?.pd_stability()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{Monomial, RingContext};

    fn ideal(r: &RingContext, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(r, gens.iter().map(|g| Monomial::new(g.to_vec())).collect())
            .unwrap()
    }

    fn example1() -> IdealFamily {
        let r = RingContext::new(["x", "y"]).unwrap();
        IdealFamily::new(
            r.clone(),
            vec![
                ideal(&r, &[&[1, 0], &[0, 2]]),
                ideal(&r, &[&[2, 0], &[0, 1]]),
            ],
        )
        .unwrap()
    }

    fn single(gens: &[&[u32]]) -> IdealFamily {
        let r = RingContext::new(["x", "y"]).unwrap();
        IdealFamily::new(r.clone(), vec![ideal(&r, gens)]).unwrap()
    }

    fn a(v: &[u32]) -> MultiExponent {
        MultiExponent::new(v.to_vec())
    }

    #[test]
    fn tabulate_example1_reg() {
        let t = tabulate(&example1(), InvariantKind::Reg, 3).unwrap();
        assert_eq!(t.get(&a(&[1, 1])), Some(3));
        assert_eq!(t.get(&a(&[2, 1])), Some(5));
        assert_eq!(t.get(&a(&[0, 0])), Some(0));
        assert_eq!(t.cells.len(), 16);
        let t0 = tabulate(&example1(), InvariantKind::T { j: 0 }, 1).unwrap();
        assert_eq!(t0.get(&a(&[0, 0])), Some(0));
        let t1 = tabulate(&example1(), InvariantKind::T { j: 1 }, 1).unwrap();
        assert_eq!(t1.get(&a(&[0, 0])), None);
        assert!(tabulate(&example1(), InvariantKind::Reg, 0).is_err());
    }

    #[test]
    fn cached_products_match_direct_products() {
        let fam = example1();
        for (pt, ideal) in power_products(&fam, 3).unwrap() {
            assert_eq!(ideal, fam.power_product(&pt).unwrap());
        }
    }

    #[test]
    fn candidate_slopes_examples() {
        let c = candidate_slopes(&example1());
        assert_eq!(
            c,
            BTreeSet::from([vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]])
        );
        assert_eq!(
            candidate_slopes(&single(&[&[2, 0], &[1, 1], &[0, 2]])),
            BTreeSet::from([vec![2]])
        );
    }

    #[test]
    fn fit_example1_t0() {
        let fam = example1();
        let table = tabulate(&fam, InvariantKind::T { j: 0 }, 5).unwrap();
        let fit = fit_envelope(&table, &candidate_slopes(&fam), &a(&[1, 1])).unwrap();
        assert_eq!(
            fit.forms,
            vec![
                LinearForm::new(vec![1, 2], 0),
                LinearForm::new(vec![2, 1], 0)
            ]
        );
        assert_eq!(fit.formula(), "max{a1+2a2, 2a1+a2}");
        assert!(check_corollary2(&fam, &fit));
    }

    #[test]
    fn fit_single_equigenerated_ideal() {
        let fam = single(&[&[2, 0], &[1, 1], &[0, 2]]);
        let table = tabulate(&fam, InvariantKind::Reg, 5).unwrap();
        let fit = fit_envelope(&table, &candidate_slopes(&fam), &a(&[1])).unwrap();
        assert_eq!(fit.forms, vec![LinearForm::new(vec![2], 0)]);
        assert!(check_corollary2(&fam, &fit));
    }

    #[test]
    fn fit_single_non_equigenerated_ideal_is_linear() {
        let fam = single(&[&[1, 0], &[0, 2]]);
        let table = tabulate(&fam, InvariantKind::Reg, 5).unwrap();
        let fit = fit_envelope(&table, &candidate_slopes(&fam), &a(&[1])).unwrap();
        assert_eq!(fit.forms.len(), 1);
        assert!(check_corollary2(&fam, &fit));
    }

    #[test]
    fn fit_failure_reports_witness() {
        // a table that is not a max of forms with slope 1
        let table = GridTable::from_fn(InvariantKind::Reg, 1, 4, |p| {
            Some((p.as_slice()[0] as i64).pow(2))
        });
        let err = fit_envelope(&table, &BTreeSet::from([vec![1]]), &a(&[1])).unwrap_err();
        match err {
            Error::FitFailed { witness, .. } => assert_eq!(witness, a(&[2])),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            fit_envelope(&table, &BTreeSet::from([vec![1]]), &a(&[4])),
            Err(Error::EmptyRegion { .. })
        ));
    }

    #[test]
    fn fit_rejects_infinite_values() {
        let t1 = tabulate(&example1(), InvariantKind::T { j: 1 }, 3).unwrap();
        let err = fit_envelope(&t1, &candidate_slopes(&example1()), &a(&[0, 0])).unwrap_err();
        assert!(matches!(err, Error::NonFiniteValue { .. }));
    }

    #[test]
    fn necessity_pruning_handles_duplicated_coverage() {
        // max{a, 2} on [1,4]: slope 1 alone needs intercept, slope 0 covers small a
        let table = GridTable::from_fn(InvariantKind::Reg, 1, 4, |p| {
            Some((p.as_slice()[0] as i64).max(2))
        });
        let fit = fit_envelope(&table, &BTreeSet::from([vec![0], vec![1]]), &a(&[1])).unwrap();
        assert_eq!(
            fit.forms,
            vec![LinearForm::new(vec![0], 2), LinearForm::new(vec![1], 0)]
        );
        assert_eq!(fit.formula(), "max{2, a1}");
    }

    #[test]
    fn pd_stability_examples() {
        let s = pd_stability(&example1(), 4).unwrap();
        assert_eq!(s.p, 1);
        assert_eq!(s.origin, a(&[0, 1]));

        let r = RingContext::new(["x", "y"]).unwrap();
        let fam = IdealFamily::new(r.clone(), vec![MonomialIdeal::maximal(&r)]).unwrap();
        assert_eq!(pd_stability(&fam, 3).unwrap().p, 1);
        assert!(matches!(
            pd_stability(&fam, 1),
            Err(Error::GridTooSmall { .. })
        ));
    }

    #[test]
    fn form_display() {
        assert_eq!(LinearForm::new(vec![1, 4], 1).to_string(), "a1+4a2+1");
        assert_eq!(LinearForm::new(vec![3, 1], 0).to_string(), "3a1+a2");
        assert_eq!(LinearForm::new(vec![2, 0], -3).to_string(), "2a1-3");
        assert_eq!(LinearForm::new(vec![0, 0], 5).to_string(), "5");
        assert_eq!(
            LinearForm::new(vec![0, 2], 0).support(),
            BTreeSet::from([1])
        );
    }

    #[test]
    fn csv_output() {
        let t = tabulate(&example1(), InvariantKind::T { j: 1 }, 1).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "a1,a2,value\n0,0,-inf\n0,1,3\n1,0,3\n1,1,4\n");
    }
}
