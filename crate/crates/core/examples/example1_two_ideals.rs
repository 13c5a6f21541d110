// Regularity of `I1^a1 I2^a2` for `I1 = (x, y^2)`, `I2 = (x^2, y)`: tabulate and fit.

use reglab::asymptotics::InvariantGrid;
use reglab::{
    candidate_slopes, fit_envelope, IdealFamily, InvariantKind, Monomial, MonomialIdeal,
    MultiExponent, RingContext,
};

fn family() -> reglab::Result<IdealFamily> {
    let ring = RingContext::new(["x", "y"])?;
    let i1 = MonomialIdeal::minimalize(
        &ring,
        vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 2])],
    )?;
    let i2 = MonomialIdeal::minimalize(
        &ring,
        vec![Monomial::new(vec![2, 0]), Monomial::new(vec![0, 1])],
    )?;
    IdealFamily::new(ring, vec![i1, i2])
}

pub fn run_example() -> reglab::Result<()> {
    let fam = family()?;
    let grid = InvariantGrid::compute(&fam, 5)?;
    for a in MultiExponent::box_points(&MultiExponent::zero(2), &MultiExponent::splat(2, 2)) {
        let inv = grid.get(&a);
        println!(
            "a={a}  I^a={}  t={:?}  reg={}",
            fam.power_product(&a)?.display(),
            inv.t,
            inv.reg
        );
    }
    let candidates = candidate_slopes(&fam);
    for kind in [
        InvariantKind::T { j: 0 },
        InvariantKind::T { j: 1 },
        InvariantKind::Reg,
    ] {
        let fit = fit_envelope(&grid.table(kind), &candidates, &MultiExponent::ones(2))?;
        println!("{fit}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> reglab::Result<()> {
    run_example()
}
