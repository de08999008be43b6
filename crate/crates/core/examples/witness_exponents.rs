//! Witness exponents `α_i` for nilpotent depth 1 and 2, with `ψ(p_i − 1)`.

use rfgrow::numtheory::{chebyshev_psi, witness_exponent};

fn main() {
    for m in [1, 2] {
        println!("depth {m}");
        println!("{:>3} {:>4} {:>7} {:>9}  alpha", "i", "p", "digits", "psi");
        for i in 1..=10 {
            let w = witness_exponent(i, m);
            let digits = w.value.to_string();
            let shown = if digits.len() > 30 {
                format!("{}…", &digits[..30])
            } else {
                digits.clone()
            };
            println!(
                "{:>3} {:>4} {:>7} {:>9.4}  {}",
                i,
                w.prime,
                digits.len(),
                chebyshev_psi(w.prime - 1),
                shown
            );
        }
        println!();
    }
}
