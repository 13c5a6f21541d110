// Rational decompositions of the `Tor_0` and `Tor_1` series of Example 1, checked
// against Betti numbers, and the linear forms they predict.

use reglab::{asymptotic_forms, cli::parse_family, compare_series_to_betti, RationalSeriesSum};

const FAMILY: &str = "ring x y\nI1 = x, y^2\nI2 = x^2, y\n";

const H0: &str = "\
shift: x^0 s^(0,0) ; factors: (1,1) (2,1) (1,2)
shift: x^2 s^(0,1) ; factors: (1,1) (1,2) (2,2)
";

const H1: &str = "\
shift: x^3 s^(1,0) ; factors: (1,1) (2,1) (1,2)
shift: x^3 s^(0,1) ; factors: (1,1) (2,2) (1,2)
";

pub fn run_example() -> reglab::Result<()> {
    let fam = parse_family(FAMILY)?;
    for (j, text) in [(0, H0), (1, H1)] {
        let series: RationalSeriesSum = text.parse()?;
        let report = compare_series_to_betti(&series, &fam, j, 4)?;
        print!("{report}");
        let forms: Vec<String> = asymptotic_forms(&series)
            .iter()
            .map(|f| f.to_string())
            .collect();
        println!("  predicted t_{j} = max{{{}}}", forms.join(", "));
    }
    let swapped: RationalSeriesSum = H0.parse()?;
    let control = compare_series_to_betti(&swapped, &fam, 1, 4)?;
    println!(
        "control (Tor_0 series against beta_1): {} mismatches",
        control.mismatches.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> reglab::Result<()> {
    run_example()
}
