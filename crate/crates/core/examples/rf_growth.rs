//! `F(n)` at small radius for `Z`, bs(1, 2) and the Heisenberg group.

use rfgrow::depth::{rf_growth, Budget};
use rfgrow::Group;

fn main() -> rfgrow::Result<()> {
    for (spec, n) in [("z:1", 5), ("bs:1:2", 3), ("heis", 2)] {
        let g = Group::parse(spec)?;
        let t = rf_growth(&g, n, Budget::default())?;
        println!("{spec}");
        for e in &t.entries {
            println!(
                "  n = {}: F ∈ [{}, {}] over {} elements, attained at {}",
                e.radius,
                e.lower,
                e.upper.map_or("?".into(), |u| u.to_string()),
                e.elements,
                e.witness_element.as_deref().unwrap_or("-")
            );
        }
    }
    Ok(())
}
