//! The depth of `a` in bs(1, 2): exhaustive search into `S_2, …, S_6`
//! against the congruence quotient `Z/3 ⋊ Z/2`.

use rfgrow::depth::{congruence_depth_upper, depth_interval, hom_search, Budget};
use rfgrow::Group;

fn main() -> rfgrow::Result<()> {
    let g = Group::parse("bs:1:2")?;
    let p = g.presentation().unwrap();
    let a = g.generator(0);
    let report = hom_search(&p, &g.parse_word("a")?, 6)?;
    println!(
        "hom search to degree 6: {} images, {} tuples, depth {:?}, exact {}",
        report.images,
        report.tuples_checked,
        report.depth(),
        report.exact
    );
    if let Some(c) = congruence_depth_upper(&g, &a, 3)? {
        println!("congruence witness: {:?}, order {}", c.quotient, c.order);
    }
    for word in ["a", "t", "a^3", "a^12", "t a t^-1 a"] {
        let x = g.evaluate(word)?;
        let d = depth_interval(&g, &x, Budget::default())?;
        println!("D({word}) ∈ [{}, {:?}] exact {}", d.lower, d.upper, d.exact);
    }
    Ok(())
}
