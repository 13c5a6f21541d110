// Projective dimension of `I^a` is eventually constant; find where it settles.

use reglab::{cli::parse_family, pd_stability};

const FAMILIES: &[(&str, &str)] = &[
    ("two ideals in x,y", "ring x y\nI1 = x, y^2\nI2 = x^2, y\n"),
    (
        "three pieces in x,y,z",
        "ring x y z\nI1 = x, y^2, z^3\nI2 = x^4, y^3, z\n",
    ),
    ("maximal ideal", "ring x y z\nm = x, y, z\n"),
];

pub fn run_example() -> reglab::Result<()> {
    for (name, text) in FAMILIES {
        let fam = parse_family(text)?;
        let st = pd_stability(&fam, 5)?;
        println!("{name}: pd = {} from a >= {}", st.p, st.origin);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> reglab::Result<()> {
    run_example()
}
