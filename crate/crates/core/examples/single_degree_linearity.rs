// When every ideal is generated in one degree, regularity is eventually a single
// linear form with the generator degrees as slopes.

use reglab::asymptotics::InvariantGrid;
use reglab::{
    candidate_slopes, check_corollary2, cli::parse_family, fit_envelope, InvariantKind,
    MultiExponent,
};

const FAMILIES: &[&str] = &[
    "ring x y z\nI1 = xy, yz, xz\nI2 = x^2, y^2\n",
    "ring x y z\nI1 = x^2y, yz^2, z^3\nI2 = x, y, z\n",
    "ring x y\nI1 = x^3, xy^2\n",
];

pub fn run_example() -> reglab::Result<()> {
    for text in FAMILIES {
        let fam = parse_family(text)?;
        let grid = InvariantGrid::compute(&fam, 5)?;
        let origin = MultiExponent::ones(fam.m());
        let fit = fit_envelope(
            &grid.table(InvariantKind::Reg),
            &candidate_slopes(&fam),
            &origin,
        )?;
        println!(
            "degrees {:?}: reg = {}  (single form with slopes d: {})",
            fam.single_degrees().unwrap_or_default(),
            fit.formula(),
            check_corollary2(&fam, &fit)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> reglab::Result<()> {
    run_example()
}
