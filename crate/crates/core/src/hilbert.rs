//! Multigraded Hilbert series written as sums of shifted partial-denominator terms
//!
//! ```text
//! HS(x, s) = Σ_k x^{v_k} s^{w_k} / Π_{(d,i) ∈ T_k} (1 − x^d s_i)
//! ```
//!
//! The decompositions are input data (for instance from an external CAS).
//! From them we evaluate `ρ(a)`, the largest `x`-degree in the `s^a`
//! component, read off the full-support linear forms, expand coefficients, and
//! compare the expansion with Betti numbers of `I^a`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{power_products, LinearForm};
use crate::error::{Error, ParseError, Result};
use crate::monomial::{IdealFamily, MultiExponent};
use crate::resolution;

/// Largest per-axis exponent accepted by [`coefficients_at`].
pub const EXPANSION_CAP: i64 = 10_000;

/// One denominator factor `1 − x^d s_i`; `axis` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeriesFactor {
    pub x_degree: u32,
    pub axis: usize,
}

/// `x^{shift_x} s^{shift_s} / Π (1 − x^d s_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalTerm {
    pub shift_x: i64,
    pub shift_s: Vec<i64>,
    pub factors: Vec<SeriesFactor>,
}

impl RationalTerm {
    pub fn new(shift_x: i64, shift_s: Vec<i64>, factors: Vec<(u32, usize)>) -> Self {
        Self {
            shift_x,
            shift_s,
            factors: factors
                .into_iter()
                .map(|(x_degree, axis)| SeriesFactor { x_degree, axis })
                .collect(),
        }
    }

    /// `λ_i`: the largest factor degree on axis `i` (0-based), if the axis has factors.
    fn axis_slope(&self, i: usize) -> Option<u32> {
        self.factors
            .iter()
            .filter(|f| f.axis == i + 1)
            .map(|f| f.x_degree)
            .max()
    }

    fn axis_degrees(&self, i: usize) -> Vec<u32> {
        self.factors
            .iter()
            .filter(|f| f.axis == i + 1)
            .map(|f| f.x_degree)
            .collect()
    }

    /// `a − w`, if it has no negative entry.
    fn offset(&self, a: &MultiExponent) -> Option<Vec<i64>> {
        let d: Vec<i64> = a
            .as_slice()
            .iter()
            .zip(&self.shift_s)
            .map(|(&v, w)| i64::from(v) - w)
            .collect();
        d.iter().all(|&v| v >= 0).then_some(d)
    }
}

impl fmt::Display for RationalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.shift_s.iter().map(i64::to_string).collect();
        write!(
            f,
            "shift: x^{} s^({}) ; factors:",
            self.shift_x,
            w.join(",")
        )?;
        for factor in &self.factors {
            write!(f, " ({},{})", factor.x_degree, factor.axis)?;
        }
        Ok(())
    }
}

/// A sum of [`RationalTerm`]s over `m` axes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeriesSum {
    pub m: usize,
    pub terms: Vec<RationalTerm>,
}

impl RationalSeriesSum {
    pub fn new(m: usize, terms: Vec<RationalTerm>) -> Result<Self> {
        for t in &terms {
            if t.shift_s.len() != m {
                return Err(Error::AxisMismatch {
                    expected: m,
                    found: t.shift_s.len(),
                });
            }
            for f in &t.factors {
                if f.axis == 0 || f.axis > m {
                    return Err(Error::FactorAxis { axis: f.axis, m });
                }
                if f.x_degree == 0 {
                    return Err(Error::FactorDegree);
                }
            }
        }
        Ok(Self { m, terms })
    }
}

impl fmt::Display for RationalSeriesSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `ρ` of a single term at `a`; `None` is −∞.
pub fn rho_of_term(term: &RationalTerm, a: &MultiExponent) -> Option<i64> {
    let offset = term.offset(a)?;
    let mut value = term.shift_x;
    for (i, &k) in offset.iter().enumerate() {
        match term.axis_slope(i) {
            Some(d) => value += i64::from(d) * k,
            None if k > 0 => return None,
            None => {}
        }
    }
    Some(value)
}

pub fn rho_of_sum(series: &RationalSeriesSum, a: &MultiExponent) -> Option<i64> {
    series.terms.iter().filter_map(|t| rho_of_term(t, a)).max()
}

/// Linear forms of the terms whose factors touch every axis, with duplicate slopes merged
/// (largest intercept kept). Sorted by `(slopes, intercept)`.
pub fn asymptotic_forms(series: &RationalSeriesSum) -> Vec<LinearForm> {
    let mut best: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for term in &series.terms {
        let slopes: Option<Vec<i64>> = (0..series.m)
            .map(|i| term.axis_slope(i).map(i64::from))
            .collect();
        let Some(slopes) = slopes else { continue };
        let intercept = term.shift_x
            - slopes
                .iter()
                .zip(&term.shift_s)
                .map(|(l, w)| l * w)
                .sum::<i64>();
        best.entry(slopes)
            .and_modify(|c| *c = (*c).max(intercept))
            .or_insert(intercept);
    }
    best.into_iter()
        .map(|(s, c)| LinearForm::new(s, c))
        .collect()
}

/// Coefficients of `x^u s^a` in the series, nonzero entries only.
pub fn coefficients_at(
    series: &RationalSeriesSum,
    a: &MultiExponent,
) -> Result<BTreeMap<i64, i64>> {
    if a.len() != series.m {
        return Err(Error::LengthMismatch {
            expected: series.m,
            found: a.len(),
        });
    }
    let mut total: BTreeMap<i64, i64> = BTreeMap::new();
    for term in &series.terms {
        let Some(offset) = term.offset(a) else {
            continue;
        };
        let mut poly: BTreeMap<i64, i64> = BTreeMap::from([(term.shift_x, 1)]);
        for (i, &k) in offset.iter().enumerate() {
            if k > EXPANSION_CAP {
                return Err(Error::ExpansionTooLarge {
                    axis: i + 1,
                    value: k,
                    cap: EXPANSION_CAP,
                });
            }
            let axis_poly = axis_expansion(&term.axis_degrees(i), k)?;
            poly = convolve(&poly, &axis_poly)?;
            if poly.is_empty() {
                break;
            }
        }
        for (u, c) in poly {
            let slot = total.entry(u).or_insert(0);
            *slot = slot.checked_add(c).ok_or(Error::ExponentOverflow)?;
        }
    }
    total.retain(|_, c| *c != 0);
    Ok(total)
}

/// Coefficient of `s^k` in `Π_j 1/(1 − x^{d_j} s)` as a polynomial in `x`.
fn axis_expansion(degrees: &[u32], k: i64) -> Result<BTreeMap<i64, i64>> {
    if degrees.is_empty() {
        return Ok(if k == 0 {
            BTreeMap::from([(0, 1)])
        } else {
            BTreeMap::new()
        });
    }
    let mut groups: BTreeMap<u32, i64> = BTreeMap::new();
    for &d in degrees {
        *groups.entry(d).or_insert(0) += 1;
    }
    let groups: Vec<(u32, i64)> = groups.into_iter().collect();
    // states: (s-degree used so far, x-degree) -> count
    let mut states: BTreeMap<(i64, i64), i64> = BTreeMap::from([((0, 0), 1)]);
    for (g, &(d, mult)) in groups.iter().enumerate() {
        let last = g + 1 == groups.len();
        let mut next: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        for (&(used, u), &count) in &states {
            let range = if last {
                (k - used)..=(k - used)
            } else {
                0..=(k - used)
            };
            for t in range {
                let ways = multichoose(mult, t)?;
                let add = count.checked_mul(ways).ok_or(Error::ExponentOverflow)?;
                let slot = next.entry((used + t, u + t * i64::from(d))).or_insert(0);
                *slot = slot.checked_add(add).ok_or(Error::ExponentOverflow)?;
            }
        }
        states = next;
    }
    Ok(states
        .into_iter()
        .filter(|((used, _), _)| *used == k)
        .map(|((_, u), c)| (u, c))
        .collect())
}

/// Number of multisets of size `t` from `c` kinds: `C(t + c − 1, c − 1)`.
fn multichoose(c: i64, t: i64) -> Result<i64> {
    let mut acc: i128 = 1;
    for i in 1..c {
        acc = acc * i128::from(t + i) / i128::from(i);
    }
    i64::try_from(acc).map_err(|_| Error::ExponentOverflow)
}

fn convolve(p: &BTreeMap<i64, i64>, q: &BTreeMap<i64, i64>) -> Result<BTreeMap<i64, i64>> {
    let mut out = BTreeMap::new();
    for (&u, &c) in p {
        for (&v, &e) in q {
            let prod = c.checked_mul(e).ok_or(Error::ExponentOverflow)?;
            let slot = out.entry(u + v).or_insert(0i64);
            *slot = slot.checked_add(prod).ok_or(Error::ExponentOverflow)?;
        }
    }
    Ok(out)
}

/// A grid point where the series disagrees with `u ↦ Σ_{|b|=u} β_{j,b}(I^a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub a: MultiExponent,
    pub betti: BTreeMap<i64, i64>,
    pub series: BTreeMap<i64, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub j: usize,
    pub m: usize,
    pub grid_max: u32,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Grid points where the expansion has a negative coefficient.
    pub negative_coefficients: Vec<MultiExponent>,
}

impl SeriesReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.negative_coefficients.is_empty()
    }
}

impl fmt::Display for SeriesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "H_{} series vs Betti numbers on [0,{}]^{} ({} points): {} mismatches",
            self.j,
            self.grid_max,
            self.m,
            self.checked,
            self.mismatches.len()
        )?;
        for mm in &self.mismatches {
            writeln!(
                f,
                "  a={}: betti {:?}, series {:?}",
                mm.a, mm.betti, mm.series
            )?;
        }
        for a in &self.negative_coefficients {
            writeln!(f, "  a={a}: negative coefficient in expansion")?;
        }
        Ok(())
    }
}

/// Compares the `s^a` components of `series` with the graded `j`-th Betti numbers of
/// `I^a` for every `a` in `[0, grid_max]^m`.
pub fn compare_series_to_betti(
    series: &RationalSeriesSum,
    family: &IdealFamily,
    j: usize,
    grid_max: u32,
) -> Result<SeriesReport> {
    if series.m != family.m() {
        return Err(Error::AxisMismatch {
            expected: family.m(),
            found: series.m,
        });
    }
    let products = power_products(family, grid_max)?;
    let checked = products.len();
    let rows = products
        .into_par_iter()
        .map(|(a, ideal)| {
            let betti: BTreeMap<i64, i64> = resolution::multigraded_betti(&ideal)
                .graded(j)
                .into_iter()
                .map(|(u, c)| (u, c as i64))
                .collect();
            let coeffs = coefficients_at(series, &a)?;
            Ok((a, betti, coeffs))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut mismatches = Vec::new();
    let mut negative_coefficients = Vec::new();
    for (a, betti, coeffs) in rows {
        if coeffs.values().any(|&c| c < 0) {
            negative_coefficients.push(a.clone());
        }
        if betti != coeffs {
            mismatches.push(Mismatch {
                a,
                betti,
                series: coeffs,
            });
        }
    }
    Ok(SeriesReport {
        j,
        m: series.m,
        grid_max,
        checked,
        mismatches,
        negative_coefficients,
    })
}

impl FromStr for RationalSeriesSum {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut m: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut cur = Cursor::new(raw, line_no);
            let term = cur.term()?;
            match m {
                None => m = Some(term.shift_s.len()),
                Some(m) if m != term.shift_s.len() => {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        format!(
                            "term has {} axes, earlier terms have {m}",
                            term.shift_s.len()
                        ),
                    )
                    .into())
                }
                _ => {}
            }
            terms.push(term);
        }
        let m = m.ok_or_else(|| ParseError::new(1, 1, "series has no terms"))?;
        RationalSeriesSum::new(m, terms)
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        ParseError::new(self.line, self.pos + 1, msg).into()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.err(format!("expected '{c}', found '{got}'"))),
            None => Err(self.err(format!("expected '{c}', found end of line"))),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        self.skip_ws();
        let end = self.pos + word.chars().count();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(word.chars()) {
            self.pos = end;
            Ok(())
        } else {
            Err(self.err(format!("expected '{word}'")))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn term(&mut self) -> Result<RationalTerm> {
        self.keyword("shift")?;
        self.expect(':')?;
        self.keyword("x")?;
        let shift_x = if self.peek() == Some('^') {
            self.pos += 1;
            self.integer()?
        } else {
            1
        };
        self.keyword("s")?;
        self.expect('^')?;
        self.expect('(')?;
        let mut shift_s = vec![self.integer()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            shift_s.push(self.integer()?);
        }
        self.expect(')')?;
        self.expect(';')?;
        self.keyword("factors")?;
        self.expect(':')?;
        let mut factors = Vec::new();
        while self.peek() == Some('(') {
            self.pos += 1;
            let col = self.pos;
            let d = self.integer()?;
            self.expect(',')?;
            let i = self.integer()?;
            self.expect(')')?;
            if d <= 0 || i <= 0 {
                self.pos = col;
                return Err(self.err("factor degree and axis must be positive"));
            }
            factors.push(SeriesFactor {
                x_degree: d as u32,
                axis: i as usize,
            });
        }
        if let Some(c) = self.peek() {
            if c != '#' {
                return Err(self.err(format!("unexpected '{c}'")));
            }
        }
        let m = shift_s.len();
        if let Some(f) = factors.iter().find(|f| f.axis > m) {
            return Err(self.err(format!("factor axis {} is outside 1..={m}", f.axis)));
        }
        Ok(RationalTerm {
            shift_x,
            shift_s,
            factors,
        })
    }
}
