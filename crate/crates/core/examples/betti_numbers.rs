// Multigraded Betti numbers of a single ideal via upper Koszul complexes.

use reglab::{multigraded_betti, upper_koszul_complex, Monomial, MonomialIdeal, RingContext};

pub fn run_example() -> reglab::Result<()> {
    let ring = RingContext::new(["x", "y", "z"])?;
    let gens = [[2, 1, 0], [0, 2, 1], [1, 0, 2], [1, 1, 1]];
    let ideal = MonomialIdeal::minimalize(
        &ring,
        gens.iter().map(|g| Monomial::new(g.to_vec())).collect(),
    )?;
    println!("I = {}", ideal.display());

    let table = multigraded_betti(&ideal);
    for e in &table.entries {
        let k = upper_koszul_complex(&ideal, &e.b)?;
        println!(
            "  beta_{{{},{}}} = {}   (faces of K^b: {})",
            e.j,
            e.b.display(&ring),
            e.dim,
            k.faces().len()
        );
    }
    for j in 0..=table.pd {
        println!("  graded beta_{j}: {:?}", table.graded(j));
    }
    println!("t = {:?}, pd = {}, reg = {}", table.t, table.pd, table.reg);
    Ok(())
}

#[allow(dead_code)]
fn main() -> reglab::Result<()> {
    run_example()
}
