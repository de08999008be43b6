//! Every image of bs(1, 2) of order below `p_i` kills `a^{α_i}`.

use rfgrow::depth::case_audit;
use rfgrow::Group;

fn main() -> rfgrow::Result<()> {
    let g = Group::parse("bs:1:2")?;
    let a = g.generator(0);
    for (i, b) in [(3, 4), (4, 6)] {
        let r = case_audit(&g, &a, i, 1, b)?;
        println!(
            "i = {i}, p = {}, α = {}, B = {b}: {} images of order < {}, {} survivors, complete {}",
            r.p,
            r.alpha,
            r.images_examined,
            r.order_limit,
            r.survivors.len(),
            r.complete
        );
    }
    Ok(())
}
