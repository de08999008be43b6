//! Ball growth in bs(1, 2) and exact lengths of `a^{2^j}` against the
//! certified intervals.

use num_bigint::BigInt;
use rfgrow::metrics::{ball, word_length_bounds, WordMetric};
use rfgrow::Group;

fn main() -> rfgrow::Result<()> {
    let g = Group::parse("bs:1:2")?;
    let b = ball(&g, 8, 1_000_000)?;
    println!("|B(r)| for r = 0..8: {:?}", b.counts());

    let metric = WordMetric::new(&g, 6, 1_000_000)?;
    let a = g.generator(0);
    println!("{:>4} {:>6} {:>6} {:>6}  word", "j", "exact", "lower", "upper");
    for j in 0..=8u32 {
        let x = g.power(&a, &(BigInt::from(1) << j))?;
        let exact = metric.length(&x, 12);
        let iv = word_length_bounds(&g, &x)?;
        println!(
            "{:>4} {:>6} {:>6} {:>6}  {}",
            j,
            exact.map_or("-".into(), |e| e.to_string()),
            iv.lower,
            iv.upper,
            iv.upper_word
        );
    }
    Ok(())
}
