//! Distortion of cyclic subgroups: exponential in bs(1, 2) and Sol,
//! polynomial in the Heisenberg group, none in `Z^2`.

use rfgrow::metrics::{default_schedule, distortion_profile, ProfileOptions};
use rfgrow::Group;

fn main() -> rfgrow::Result<()> {
    let opts = ProfileOptions::default();
    let schedule = default_schedule(&opts);
    for (spec, word) in [("bs:1:2", "a"), ("sol:2,1,1,1", "a"), ("heis", "x y x^-1 y^-1"), ("z:2", "e1")] {
        let g = Group::parse(spec)?;
        let x = g.evaluate(word)?;
        let p = distortion_profile(&g, &x, &schedule, &opts)?;
        let last = p.samples.last().unwrap();
        println!(
            "{spec:>12} {word:>14}: {:?}, ‖x^{}‖ ∈ [{}, {}]",
            p.classification, last.k, last.interval.lower, last.interval.upper
        );
        if let Some(k) = p.kappa {
            println!("{:>29} f(n) = 2^(n/{k:.3})", "");
        }
    }
    Ok(())
}
