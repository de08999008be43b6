//! Reduction to a quotient whose Fitting subgroup is a `p`-group, keeping a
//! chosen element of the Fitting subgroup alive.

use rfgrow::finite::catalog::{cyclic, dihedral, direct_product, symmetric};
use rfgrow::finite::{fitting_subgroup, lemma31_check, prime_power_base, prop32_reduce};

fn main() -> rfgrow::Result<()> {
    let groups = [
        ("Z/12", cyclic(12)),
        ("D6", dihedral(6)),
        ("S3 x Z/5", direct_product(&symmetric(3), &cyclic(5))),
    ];
    for (name, g) in groups {
        let f = fitting_subgroup(&g)?;
        println!("{name}: |Fitt| = {}", f.order());
        for &h in f.members().iter().filter(|&&h| h != g.identity()).take(4) {
            let r = prop32_reduce(&g, h)?;
            let q = &r.quotient;
            let qf = fitting_subgroup(q)?;
            println!(
                "  h = {:<14} p = {}, |H/K| = {:>3}, |Fitt(H/K)| = {:>2} (p-group: {}), steps {}",
                g.element(h).to_string(),
                r.p,
                q.order(),
                qf.order(),
                prime_power_base(qf.order()) == Some(r.p),
                r.steps.len()
            );
        }
    }
    let l = lemma31_check(&rfgrow::finite::catalog::heisenberg_mod(3))?;
    println!("U3(Z/3): order {} ≥ {}^{} = {}: {}", l.order, l.p, l.step_length + 1, l.bound, l.holds);
    Ok(())
}
