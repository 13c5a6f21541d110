// Three-variable family whose syzygy degrees are a max of three linear forms.
//
// On the box `[1,5]^2` the middle form of `t_1`, `t_2` and `reg` is never the unique
// maximum, so a fit there keeps only two forms. One step further out it appears.

use reglab::asymptotics::InvariantGrid;
use reglab::cli::parse_family;
use reglab::{candidate_slopes, fit_envelope, InvariantKind, MultiExponent};

const FAMILY: &str = "ring x y z\nI1 = x, y^2, z^3\nI2 = x^4, y^3, z\n";

pub fn run_example() -> reglab::Result<()> {
    let fam = parse_family(FAMILY)?;
    let candidates = candidate_slopes(&fam);
    for grid_max in [5, 6] {
        let grid = InvariantGrid::compute(&fam, grid_max)?;
        println!(
            "grid [0,{grid_max}]^2, pd = {}",
            grid.get(&MultiExponent::splat(2, grid_max)).pd
        );
        for kind in [
            InvariantKind::T { j: 0 },
            InvariantKind::T { j: 1 },
            InvariantKind::T { j: 2 },
            InvariantKind::Reg,
        ] {
            let fit = fit_envelope(&grid.table(kind), &candidates, &MultiExponent::ones(2))?;
            println!("  {kind} = {}", fit.formula());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> reglab::Result<()> {
    run_example()
}
