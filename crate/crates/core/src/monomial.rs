//! Monomials, monomial ideals and power products `I_1^{a_1} ... I_m^{a_m}`.
//!
//! Every ideal is kept as its minimal monomial generating set in a canonical
//! order: total degree ascending, ties broken by exponent vector in
//! descending lexicographic order (so `x^3` comes before `y^3`). The unit
//! ideal is the single all-zero monomial.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The polynomial ring `K[x_1, ..., x_n]`, identified by its variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingContext {
    names: Vec<String>,
}

impl RingContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyRing);
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Self { names })
    }

    /// Ring with variables `x1, ..., xn`.
    pub fn with_vars(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|v| v == name)
    }
}

/// An exponent vector `x^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(n: usize) -> Self {
        Self {
            exponents: vec![0; n],
        }
    }

    /// The variable `x_i` (zero based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exponents[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.len() != other.len() {
            return Err(Error::RingMismatch);
        }
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exponents })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// `self / x^S` for a squarefree set `S`, or `None` if some exponent would go negative.
    pub fn divide_by_squarefree(&self, set: &[usize]) -> Option<Monomial> {
        let mut exponents = self.exponents.clone();
        for &i in set {
            exponents[i] = exponents[i].checked_sub(1)?;
        }
        Some(Monomial { exponents })
    }

    /// Canonical order used for generator lists.
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }

    /// Renders the monomial with the ring's variable names, e.g. `x^2y`.
    pub fn display<'a>(&'a self, ring: &'a RingContext) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, ring }
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    ring: &'a RingContext,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let spaced = self.ring.names().iter().any(|n| n.chars().count() > 1);
        let mut first = true;
        for (name, &e) in self.ring.names().iter().zip(self.mono.exponents()) {
            if e == 0 {
                continue;
            }
            if spaced && !first {
                write!(f, " ")?;
            }
            first = false;
            match e {
                1 => write!(f, "{name}")?,
                _ => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}

/// A monomial ideal stored by its minimal generators in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    ring: RingContext,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, keeping only the minimal ones.
    pub fn minimalize(ring: &RingContext, gens: Vec<Monomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGeneratingSet);
        }
        if gens.iter().any(|g| g.len() != ring.n()) {
            return Err(Error::RingMismatch);
        }
        Ok(Self {
            ring: ring.clone(),
            gens: minimal_antichain(gens),
        })
    }

    pub fn unit(ring: &RingContext) -> Self {
        Self {
            ring: ring.clone(),
            gens: vec![Monomial::one(ring.n())],
        }
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &RingContext) -> Self {
        let n = ring.n();
        let mut gens: Vec<_> = (0..n).map(|i| Monomial::var(n, i)).collect();
        gens.sort_by(Monomial::canonical_cmp);
        Self {
            ring: ring.clone(),
            gens,
        }
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Total degrees `d_{i1}, ..., d_{ig_i}` of the generators, in generator order.
    pub fn degrees(&self) -> Vec<u64> {
        self.gens.iter().map(Monomial::total_degree).collect()
    }

    pub fn degree_set(&self) -> BTreeSet<u64> {
        self.gens.iter().map(Monomial::total_degree).collect()
    }

    pub fn is_equigenerated(&self) -> bool {
        self.degree_set().len() == 1
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut products = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                products.push(f.checked_mul(g)?);
            }
        }
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_antichain(products),
        })
    }

    /// `self^k` by binary powering.
    pub fn pow(&self, k: u32) -> Result<MonomialIdeal> {
        let mut result = MonomialIdeal::unit(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.multiply(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(result)
    }

    pub fn display(&self) -> IdealDisplay<'_> {
        IdealDisplay(self)
    }
}

pub struct IdealDisplay<'a>(&'a MonomialIdeal);

impl fmt::Display for IdealDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.0.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g.display(&self.0.ring))?;
        }
        write!(f, ")")
    }
}

// Sorting by degree first means a divisor is always seen before its multiples.
fn minimal_antichain(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(Monomial::canonical_cmp);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// A finite list of ideals `I_1, ..., I_m` in one ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFamily {
    ring: RingContext,
    ideals: Vec<MonomialIdeal>,
}

impl IdealFamily {
    pub fn new(ring: RingContext, ideals: Vec<MonomialIdeal>) -> Result<Self> {
        if ideals.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if ideals.iter().any(|i| i.ring != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Self { ring, ideals })
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn m(&self) -> usize {
        self.ideals.len()
    }

    /// `I_1^{a_1} ... I_m^{a_m}`.
    pub fn power_product(&self, a: &MultiExponent) -> Result<MonomialIdeal> {
        self.check_len(a)?;
        let mut result = MonomialIdeal::unit(&self.ring);
        for (ideal, &k) in self.ideals.iter().zip(a.as_slice()) {
            result = result.multiply(&ideal.pow(k)?)?;
        }
        Ok(result)
    }

    /// Same ideal as [`power_product`](Self::power_product), built one factor at a time.
    pub fn power_product_iterated(&self, a: &MultiExponent) -> Result<MonomialIdeal> {
        self.check_len(a)?;
        let mut result = MonomialIdeal::unit(&self.ring);
        for (ideal, &k) in self.ideals.iter().zip(a.as_slice()) {
            for _ in 0..k {
                result = result.multiply(ideal)?;
            }
        }
        Ok(result)
    }

    /// Per-ideal generator degree sets `{d_{i1}, ..., d_{ig_i}}`.
    pub fn generator_degree_sets(&self) -> Vec<BTreeSet<u64>> {
        self.ideals.iter().map(MonomialIdeal::degree_set).collect()
    }

    pub fn is_equigenerated(&self, i: usize) -> bool {
        self.ideals[i].is_equigenerated()
    }

    /// `Some((d_1, ..., d_m))` when every ideal is generated in a single degree.
    pub fn single_degrees(&self) -> Option<Vec<u64>> {
        self.ideals
            .iter()
            .map(|i| {
                let set = i.degree_set();
                (set.len() == 1).then(|| *set.iter().next().unwrap())
            })
            .collect()
    }

    pub(crate) fn check_len(&self, a: &MultiExponent) -> Result<()> {
        if a.len() != self.m() {
            return Err(Error::LengthMismatch {
                expected: self.m(),
                found: a.len(),
            });
        }
        Ok(())
    }
}

/// An exponent vector `a ∈ ℕ^m` indexing power products.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiExponent(Vec<u32>);

impl MultiExponent {
    pub fn new(a: Vec<u32>) -> Self {
        Self(a)
    }

    pub fn zero(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn ones(m: usize) -> Self {
        Self(vec![1; m])
    }

    pub fn splat(m: usize, v: u32) -> Self {
        Self(vec![v; m])
    }

    pub fn unit(m: usize, i: usize) -> Self {
        let mut a = Self::zero(m);
        a.0[i] = 1;
        a
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le_all(&self, other: &MultiExponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiExponent) -> MultiExponent {
        MultiExponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All points of the box `lo ≤ a ≤ hi` in lexicographic order.
    pub fn box_points(lo: &MultiExponent, hi: &MultiExponent) -> Vec<MultiExponent> {
        let mut out = Vec::new();
        if !lo.le_all(hi) {
            return out;
        }
        let mut cur = lo.0.clone();
        loop {
            out.push(MultiExponent(cur.clone()));
            let mut k = cur.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi.0[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = lo.0[k];
            }
        }
    }

    /// Points of the cube `[0, max]^m`.
    pub fn grid(m: usize, max: u32) -> Vec<MultiExponent> {
        Self::box_points(&Self::zero(m), &Self::splat(m, max))
    }
}

impl fmt::Display for MultiExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiExponent {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}
