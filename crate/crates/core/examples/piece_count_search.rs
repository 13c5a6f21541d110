// Search random two-ideal families in three variables for the most linear pieces in
// the eventual regularity envelope.
//
// Each family is fitted on `[3,7]^2`; families that have not settled by then are skipped.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reglab::asymptotics::InvariantGrid;
use reglab::{
    candidate_slopes, fit_envelope, IdealFamily, InvariantKind, Monomial, MonomialIdeal,
    MultiExponent, RingContext,
};

const TRIALS: usize = 40;

fn random_ideal(rng: &mut ChaCha8Rng, ring: &RingContext) -> reglab::Result<MonomialIdeal> {
    let count = rng.gen_range(2..=3);
    let gens = (0..count)
        .map(|_| Monomial::new((0..ring.n()).map(|_| rng.gen_range(0..=3)).collect()))
        .filter(|g| !g.is_one())
        .collect::<Vec<_>>();
    if gens.is_empty() {
        return Ok(MonomialIdeal::maximal(ring));
    }
    MonomialIdeal::minimalize(ring, gens)
}

pub fn run_example() -> reglab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let ring = RingContext::new(["x", "y", "z"])?;
    let mut histogram = std::collections::BTreeMap::<usize, usize>::new();
    let mut best: Option<(usize, String)> = None;
    let mut unsettled = 0;
    for _ in 0..TRIALS {
        let fam = IdealFamily::new(
            ring.clone(),
            vec![
                random_ideal(&mut rng, &ring)?,
                random_ideal(&mut rng, &ring)?,
            ],
        )?;
        let grid = InvariantGrid::compute(&fam, 7)?;
        let Ok(fit) = fit_envelope(
            &grid.table(InvariantKind::Reg),
            &candidate_slopes(&fam),
            &MultiExponent::splat(2, 3),
        ) else {
            unsettled += 1;
            continue;
        };
        let n = fit.forms.len();
        *histogram.entry(n).or_default() += 1;
        if best.as_ref().is_none_or(|(b, _)| n > *b) {
            let ideals: Vec<String> = fam
                .ideals()
                .iter()
                .map(|i| i.display().to_string())
                .collect();
            best = Some((
                n,
                format!("{}: reg = {}", ideals.join(" * "), fit.formula()),
            ));
        }
    }
    println!("pieces -> families: {histogram:?} ({unsettled} not settled on [3,7]^2)");
    if let Some((_, desc)) = best {
        println!("most pieces: {desc}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> reglab::Result<()> {
    run_example()
}
