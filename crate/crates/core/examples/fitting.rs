//! Fitting subgroups of small groups, checked against the product of the
//! `p`-cores.

use rfgrow::finite::catalog::{cyclic, dihedral, direct_product, heisenberg_mod, symmetric};
use rfgrow::finite::{fitting_report, lower_central_series};

fn main() -> rfgrow::Result<()> {
    let groups = [
        ("S3", symmetric(3)),
        ("S4", symmetric(4)),
        ("D6", dihedral(6)),
        ("U3(Z/3)", heisenberg_mod(3)),
        ("S3 x Z/5", direct_product(&symmetric(3), &cyclic(5))),
    ];
    for (name, g) in groups {
        let r = fitting_report(&g)?;
        let f = &r.fitting;
        let lcs = lower_central_series(&g, &g.whole());
        println!(
            "{name:>9}: |G| = {:>3}, |Fitt| = {:>3}, class {:?}, cores {:?}, oracle agrees: {}, γ orders {:?}",
            r.order,
            f.order,
            f.step_length,
            r.cores,
            r.agrees_with_cores,
            lcs.orders()
        );
    }
    Ok(())
}
