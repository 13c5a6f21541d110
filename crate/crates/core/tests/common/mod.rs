//! Shared fixtures, random corpora and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reglab::{
    IdealFamily, Monomial, MonomialIdeal, MultiExponent, RationalSeriesSum, RationalTerm,
    RingContext,
};

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).unwrap()
}

pub fn example1() -> IdealFamily {
    reglab::cli::parse_family(&fixture("example1.ideals")).unwrap()
}

pub fn example2() -> IdealFamily {
    reglab::cli::parse_family(&fixture("example2.ideals")).unwrap()
}

pub fn h0_series() -> RationalSeriesSum {
    fixture("example1_h0.series").parse().unwrap()
}

pub fn h1_series() -> RationalSeriesSum {
    fixture("example1_h1.series").parse().unwrap()
}

pub fn a(v: &[u32]) -> MultiExponent {
    MultiExponent::new(v.to_vec())
}

pub fn ideal(ring: &RingContext, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::minimalize(
        ring,
        gens.iter().map(|g| Monomial::new(g.to_vec())).collect(),
    )
    .unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random ideal with `n ≤ 3` variables, at most 6 generators and exponents at most 4.
pub fn random_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    let n = rng.gen_range(1..=3);
    let ring = RingContext::with_vars(n).unwrap();
    let count = rng.gen_range(1..=6);
    let gens = (0..count)
        .map(|_| Monomial::new((0..n).map(|_| rng.gen_range(0..=4)).collect()))
        .filter(|g| !g.is_one())
        .collect::<Vec<_>>();
    if gens.is_empty() {
        return MonomialIdeal::maximal(&ring);
    }
    MonomialIdeal::minimalize(&ring, gens).unwrap()
}

pub fn random_ideal_corpus(seed: u64, count: usize) -> Vec<MonomialIdeal> {
    let mut r = rng(seed);
    (0..count).map(|_| random_ideal(&mut r)).collect()
}

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Family of `m ≤ 2` equigenerated ideals in `n ≤ 3` variables of degree `≤ 3`.
pub fn random_equigenerated_family(rng: &mut ChaCha8Rng) -> IdealFamily {
    let n = rng.gen_range(2..=3);
    let m = rng.gen_range(1..=2);
    let ring = RingContext::with_vars(n).unwrap();
    let ideals = (0..m)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let mut pool = monomials_of_degree(n, d);
            pool.shuffle(rng);
            let k = rng.gen_range(1..=pool.len().min(4));
            pool.truncate(k);
            MonomialIdeal::minimalize(&ring, pool).unwrap()
        })
        .collect();
    IdealFamily::new(ring, ideals).unwrap()
}

/// Random decomposition with `m ≤ 3` axes and up to 4 terms.
pub fn random_series(rng: &mut ChaCha8Rng) -> RationalSeriesSum {
    let m = rng.gen_range(1..=3);
    let terms = (0..rng.gen_range(1..=4))
        .map(|_| {
            let factors = (0..rng.gen_range(0..=4))
                .map(|_| (rng.gen_range(1..=3u32), rng.gen_range(1..=m)))
                .collect();
            RationalTerm::new(
                rng.gen_range(0..=5),
                (0..m).map(|_| rng.gen_range(0..=2)).collect(),
                factors,
            )
        })
        .collect();
    RationalSeriesSum::new(m, terms).unwrap()
}

/// Betti numbers of `I` read off the Taylor complex tensored with `K`.
///
/// In multidegree `b` the complex has basis the generator subsets `S` with
/// `lcm(S) = b`, in homological degree `|S| − 1`; only faces `S∖{g}` with the
/// same lcm survive in the differential. Ranks are computed over `BigRational`.
pub fn taylor_betti(ideal: &MonomialIdeal) -> BTreeMap<(usize, Vec<u32>), u64> {
    let gens = ideal.gens();
    let g = gens.len();
    assert!(
        g <= 12,
        "Taylor oracle is exponential in the number of generators"
    );
    let n = ideal.ring().n();
    let mut by_lcm: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    for mask in 1u32..(1 << g) {
        let mut l = vec![0u32; n];
        for (k, gen) in gens.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for (x, e) in l.iter_mut().zip(gen.exponents()) {
                    *x = (*x).max(*e);
                }
            }
        }
        by_lcm.entry(l).or_default().push(mask);
    }
    let mut out = BTreeMap::new();
    for (b, masks) in by_lcm {
        let max_size = masks.iter().map(|m| m.count_ones()).max().unwrap() as usize;
        let level = |k: usize| -> Vec<u32> {
            masks
                .iter()
                .copied()
                .filter(|m| m.count_ones() as usize == k)
                .collect()
        };
        let rank_of = |k: usize| -> usize {
            // boundary from size-k subsets to size-(k-1) subsets
            if k < 2 {
                return 0;
            }
            let upper = level(k);
            let lower = level(k - 1);
            if upper.is_empty() || lower.is_empty() {
                return 0;
            }
            let rows: Vec<Vec<BigRational>> = upper
                .iter()
                .map(|&s| {
                    lower
                        .iter()
                        .map(|&t| {
                            if t & s != t {
                                return BigRational::zero();
                            }
                            let dropped = (s ^ t).trailing_zeros();
                            let pos = (s & ((1 << dropped) - 1)).count_ones();
                            let sign = if pos % 2 == 0 { 1 } else { -1 };
                            BigRational::from_integer(BigInt::from(sign))
                        })
                        .collect()
                })
                .collect();
            rational_rank(rows)
        };
        let ranks: Vec<usize> = (0..=max_size + 1).map(rank_of).collect();
        for k in 1..=max_size {
            let dim = level(k).len() - ranks[k] - ranks[k + 1];
            if dim > 0 {
                out.insert((k - 1, b.clone()), dim as u64);
            }
        }
    }
    out
}

pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone() * inv.clone();
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= y * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Numerator of the multigraded Hilbert series of `I` by inclusion–exclusion over
/// generator subsets: `Σ_{∅≠T} (−1)^{|T|+1} s^{lcm T}`.
pub fn k_polynomial(ideal: &MonomialIdeal) -> BTreeMap<Vec<u32>, i64> {
    let gens = ideal.gens();
    let n = ideal.ring().n();
    let mut out: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for mask in 1u32..(1 << gens.len()) {
        let mut l = vec![0u32; n];
        for (k, gen) in gens.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for (x, e) in l.iter_mut().zip(gen.exponents()) {
                    *x = (*x).max(*e);
                }
            }
        }
        let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        *out.entry(l).or_insert(0) += sign;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Closed forms for Example 1: `max{2a1+a2, a1+2a2}`.
pub fn example1_max(p: &MultiExponent) -> i64 {
    let (a1, a2) = (p.as_slice()[0] as i64, p.as_slice()[1] as i64);
    (2 * a1 + a2).max(a1 + 2 * a2)
}

/// Closed forms for Example 2 rows `t_0, t_1, t_2, reg` as (slopes, intercept) triples.
pub type Forms = Vec<(Vec<i64>, i64)>;

pub fn example2_forms() -> Vec<(&'static str, Forms)> {
    vec![
        (
            "t_0",
            vec![(vec![1, 4], 1), (vec![2, 3], 0), (vec![3, 1], 0)],
        ),
        (
            "t_1",
            vec![(vec![1, 4], 2), (vec![2, 3], 1), (vec![3, 1], 2)],
        ),
        (
            "t_2",
            vec![(vec![1, 4], 3), (vec![2, 3], 2), (vec![3, 1], 3)],
        ),
        (
            "reg",
            vec![(vec![1, 4], 1), (vec![2, 3], 0), (vec![3, 1], 1)],
        ),
    ]
}

pub fn eval_max(forms: &[(Vec<i64>, i64)], p: &MultiExponent) -> i64 {
    forms
        .iter()
        .map(|(s, c)| {
            s.iter()
                .zip(p.as_slice())
                .map(|(l, &v)| l * v as i64)
                .sum::<i64>()
                + c
        })
        .max()
        .unwrap()
}
