//! Multigraded Betti numbers of monomial ideals.
//!
//! `β_{j,b}(I)` is the dimension of the reduced homology `H̃_{j-1}` of the
//! upper Koszul complex `K^b(I) = { S squarefree : x^{b - e_S} ∈ I }`.
//! Only multidegrees `b` in the lcm-closure of the generators can carry
//! nonzero Betti numbers, so those are the only candidates visited.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::{Monomial, MonomialIdeal};

/// Dense lattice paths are used while the exponent box has at most this many cells.
const DENSE_BOX_LIMIT: usize = 1 << 20;

/// A simplicial complex on vertices `0..vertex_count`, stored as its full face set.
///
/// The void complex has no faces; the irrelevant complex has only `∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn void(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            faces: BTreeSet::new(),
        }
    }

    pub fn irrelevant(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            faces: BTreeSet::from([Vec::new()]),
        }
    }

    /// Downward closure of the given faces (which may include `∅` alone).
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Self {
        let mut faces = BTreeSet::new();
        for facet in facets {
            let mut facet = facet.clone();
            facet.sort_unstable();
            facet.dedup();
            assert!(
                facet.iter().all(|&v| v < vertex_count),
                "vertex out of range"
            );
            for mask in 0u64..(1 << facet.len()) {
                let face: Vec<usize> = facet
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                faces.insert(face);
            }
        }
        Self {
            vertex_count,
            faces,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &BTreeSet<Vec<usize>> {
        &self.faces
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces.contains(face)
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Nonzero dimensions of `H̃_d` over ℚ, keyed by `d ≥ -1`.
    pub fn reduced_homology_dims(&self) -> BTreeMap<i64, usize> {
        reduced_homology(self.faces.iter().map(Vec::as_slice))
    }
}

fn reduced_homology<'a>(faces: impl Iterator<Item = &'a [usize]>) -> BTreeMap<i64, usize> {
    // by_size[k] holds faces with k vertices (dimension k-1)
    let mut by_size: Vec<Vec<&[usize]>> = Vec::new();
    for f in faces {
        if by_size.len() <= f.len() {
            by_size.resize(f.len() + 1, Vec::new());
        }
        by_size[f.len()].push(f);
    }
    if by_size.is_empty() {
        return BTreeMap::new();
    }
    // rank of the boundary from size-k faces to size-(k-1) faces
    let mut ranks = vec![0usize; by_size.len() + 1];
    for k in 1..by_size.len() {
        ranks[k] = boundary_rank(&by_size[k], &by_size[k - 1]);
    }
    let mut dims = BTreeMap::new();
    for (k, level) in by_size.iter().enumerate() {
        let dim = level.len() - ranks[k] - ranks[k + 1];
        if dim > 0 {
            dims.insert(k as i64 - 1, dim);
        }
    }
    dims
}

fn boundary_rank(upper: &[&[usize]], lower: &[&[usize]]) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let index: BTreeMap<&[usize], usize> = lower.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut rows = vec![vec![0i64; lower.len()]; upper.len()];
    let mut scratch = Vec::new();
    for (r, face) in upper.iter().enumerate() {
        for drop in 0..face.len() {
            scratch.clear();
            scratch.extend(
                face.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != drop)
                    .map(|(_, &v)| v),
            );
            if let Some(&c) = index.get(scratch.as_slice()) {
                rows[r][c] = if drop % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    linalg::rank(&rows)
}

/// The upper Koszul complex `K^b(I)`.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, b: &Monomial) -> Result<SimplicialComplex> {
    if b.len() != ideal.ring().n() {
        return Err(Error::RingMismatch);
    }
    let faces = upper_koszul_faces(b, |m| ideal.contains(m));
    Ok(SimplicialComplex {
        vertex_count: b.len(),
        faces: faces.into_iter().collect(),
    })
}

fn upper_koszul_faces(b: &Monomial, member: impl Fn(&Monomial) -> bool) -> Vec<Vec<usize>> {
    let support: Vec<usize> = (0..b.len()).filter(|&i| b.exponents()[i] > 0).collect();
    let mut faces = Vec::new();
    for mask in 0u64..(1u64 << support.len()) {
        let set: Vec<usize> = support
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let shifted = b
            .divide_by_squarefree(&set)
            .expect("set lies in the support of b");
        if member(&shifted) {
            faces.push(set);
        }
    }
    faces.sort();
    faces
}

/// Lcm-closure of a generator set together with a membership oracle for the ideal.
pub struct LcmLattice<'a> {
    ideal: &'a MonomialIdeal,
    dense: Option<DenseBox>,
    elements: Vec<Monomial>,
}

struct DenseBox {
    dims: Vec<usize>,
    strides: Vec<usize>,
    // For each cell c: lcm of the generators dividing c, or None if c ∉ I.
    lcm_below: Vec<Option<Vec<u32>>>,
}

impl DenseBox {
    fn build(ideal: &MonomialIdeal) -> Option<Self> {
        let n = ideal.ring().n();
        let dims: Vec<usize> = (0..n)
            .map(|i| {
                ideal
                    .gens()
                    .iter()
                    .map(|g| g.exponents()[i] as usize)
                    .max()
                    .unwrap_or(0)
                    + 1
            })
            .collect();
        let mut cells = 1usize;
        for &d in &dims {
            cells = cells.checked_mul(d)?;
            if cells > DENSE_BOX_LIMIT {
                return None;
            }
        }
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        let mut lcm_below: Vec<Option<Vec<u32>>> = vec![None; cells];
        for g in ideal.gens() {
            let idx: usize = g
                .exponents()
                .iter()
                .zip(&strides)
                .map(|(&e, s)| e as usize * s)
                .sum();
            lcm_below[idx] = Some(g.exponents().to_vec());
        }
        let mut coord = vec![0usize; n];
        for idx in 0..cells {
            let mut acc = lcm_below[idx].take();
            for i in 0..n {
                if coord[i] > 0 {
                    if let Some(prev) = &lcm_below[idx - strides[i]] {
                        match &mut acc {
                            Some(a) => a.iter_mut().zip(prev).for_each(|(x, y)| *x = (*x).max(*y)),
                            None => acc = Some(prev.clone()),
                        }
                    }
                }
            }
            lcm_below[idx] = acc;
            for i in (0..n).rev() {
                coord[i] += 1;
                if coord[i] < dims[i] {
                    break;
                }
                coord[i] = 0;
            }
        }
        Some(Self {
            dims,
            strides,
            lcm_below,
        })
    }

    // Exponents beyond the box behave like the box edge: membership only
    // depends on min(c_i, dims_i - 1).
    fn member(&self, m: &Monomial) -> bool {
        let idx: usize = m
            .exponents()
            .iter()
            .zip(&self.dims)
            .zip(&self.strides)
            .map(|((&e, &d), &s)| (e as usize).min(d - 1) * s)
            .sum();
        self.lcm_below[idx].is_some()
    }

    fn closure(&self) -> Vec<Monomial> {
        let n = self.dims.len();
        let mut out = Vec::new();
        let mut coord = vec![0u32; n];
        for cell in &self.lcm_below {
            if let Some(l) = cell {
                if *l == coord {
                    out.push(Monomial::new(coord.clone()));
                }
            }
            for i in (0..n).rev() {
                coord[i] += 1;
                if (coord[i] as usize) < self.dims[i] {
                    break;
                }
                coord[i] = 0;
            }
        }
        out
    }
}

impl<'a> LcmLattice<'a> {
    /// Chooses the dense exponent-box route when it is small enough, otherwise the worklist.
    pub fn new(ideal: &'a MonomialIdeal) -> Self {
        match DenseBox::build(ideal) {
            Some(dense) => {
                let mut elements = dense.closure();
                elements.sort_by(Monomial::canonical_cmp);
                Self {
                    ideal,
                    dense: Some(dense),
                    elements,
                }
            }
            None => Self::sparse(ideal),
        }
    }

    /// Iterated pairwise-lcm closure with a hash set, no dense storage.
    pub fn sparse(ideal: &'a MonomialIdeal) -> Self {
        let gens = ideal.gens();
        let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
        let mut queue: VecDeque<Monomial> = gens.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let l = x.lcm(g);
                if !seen.contains(&l) {
                    seen.insert(l.clone());
                    queue.push_back(l);
                }
            }
        }
        let mut elements: Vec<Monomial> = seen.into_iter().collect();
        elements.sort_by(Monomial::canonical_cmp);
        Self {
            ideal,
            dense: None,
            elements,
        }
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn member(&self, m: &Monomial) -> bool {
        match &self.dense {
            Some(d) => d.member(m),
            None => self.ideal.contains(m),
        }
    }
}

/// One nonzero multigraded Betti number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub j: usize,
    pub b: Monomial,
    pub dim: u64,
}

/// Multigraded Betti numbers `β_{j,b}` of an ideal and the degree data derived from them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: Vec<BettiEntry>,
    /// `t[j]` for `0 ≤ j ≤ pd`.
    pub t: Vec<i64>,
    pub pd: usize,
    pub reg: i64,
}

impl BettiTable {
    fn from_entries(mut entries: Vec<BettiEntry>) -> Self {
        entries.sort_by(|x, y| x.j.cmp(&y.j).then_with(|| x.b.canonical_cmp(&y.b)));
        let pd = entries.iter().map(|e| e.j).max().unwrap_or(0);
        let mut t = vec![i64::MIN; pd + 1];
        let mut reg = i64::MIN;
        for e in &entries {
            let deg = e.b.total_degree() as i64;
            t[e.j] = t[e.j].max(deg);
            reg = reg.max(deg - e.j as i64);
        }
        Self {
            entries,
            t,
            pd,
            reg,
        }
    }

    /// `t_j`, or `None` (−∞) when `j > pd`.
    pub fn t(&self, j: usize) -> Option<i64> {
        self.t.get(j).copied().filter(|&v| v != i64::MIN)
    }

    /// `Σ_b β_{j,b}`.
    pub fn total(&self, j: usize) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.j == j)
            .map(|e| e.dim)
            .sum()
    }

    /// Standard-graded Betti numbers `u ↦ Σ_{|b|=u} β_{j,b}`.
    pub fn graded(&self, j: usize) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for e in self.entries.iter().filter(|e| e.j == j) {
            *out.entry(e.b.total_degree() as i64).or_insert(0) += e.dim;
        }
        out
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            t: self.t.clone(),
            pd: self.pd,
            reg: self.reg,
        }
    }
}

/// `t_j` for `0 ≤ j ≤ pd`, `pd` and `reg` of one ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub t: Vec<i64>,
    pub pd: usize,
    pub reg: i64,
}

impl Invariants {
    pub fn t(&self, j: usize) -> Option<i64> {
        self.t.get(j).copied()
    }
}

/// All nonzero `β_{j,b}(I)`.
pub fn multigraded_betti(ideal: &MonomialIdeal) -> BettiTable {
    let lattice = LcmLattice::new(ideal);
    let entries: Vec<BettiEntry> = lattice
        .elements()
        .par_iter()
        .flat_map_iter(|b| {
            let faces = upper_koszul_faces(b, |m| lattice.member(m));
            reduced_homology(faces.iter().map(Vec::as_slice))
                .into_iter()
                .map(|(d, dim)| BettiEntry {
                    j: (d + 1) as usize,
                    b: b.clone(),
                    dim: dim as u64,
                })
                .collect::<Vec<_>>()
        })
        .collect();
    BettiTable::from_entries(entries)
}

pub fn invariants(ideal: &MonomialIdeal) -> Invariants {
    multigraded_betti(ideal).invariants()
}
