//! Lower bounds on residual finiteness growth along witness powers, for a
//! depth-one group (BS(1, 2)) and a depth-two group (ut3lamp(2)). The longer
//! ut3lamp run shows the ratios levelling off once the primes grow.

use rfgrow::depth::{theorem_verify, VerifyOptions};
use rfgrow::Group;

fn main() -> rfgrow::Result<()> {
    for (spec, range) in [("bs:1:2", 2..=8), ("ut3lamp:2", 2..=6), ("ut3lamp:2", 2..=12)] {
        let group = Group::parse(spec)?;
        let report = theorem_verify(&group, range, &VerifyOptions::default())?;
        println!("{spec}: m = {}, ratio L/n^{}", report.m, report.exponent);
        println!("{:>3} {:>4} {:>7} {:>8} {:>8} {:>8} {:>12}", "i", "p", "digits", "n_lo", "n_up", "L", "ratio");
        for p in &report.points {
            println!(
                "{:>3} {:>4} {:>7} {:>8} {:>8} {:>8} {:>12.4e}",
                p.i, p.p_i, p.alpha_digits, p.n_lower, p.n_upper, p.l, p.ratio
            );
        }
        println!("min ratio {:.4e}, floor {:.1e}: {}\n", report.min_ratio, report.ratio_floor, report.conclusion);
    }
    Ok(())
}
