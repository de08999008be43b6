//! Normal forms in each family: parse words, multiply, invert and check
//! the defining relators.

use rfgrow::Group;

fn main() -> rfgrow::Result<()> {
    let cases = [
        ("z:3", "e1 e2^-1 e3^5 e1"),
        ("heis", "x y x^-1 y^-1"),
        ("bs:1:2", "t a t^-1"),
        ("bs:1:3", "t^-2 a t^2 a"),
        ("sol:2,1,1,1", "t a t^-1 b^-1"),
        ("ut3lamp:2", "d x d^-1 y z^3"),
    ];
    for (spec, word) in cases {
        let g = Group::parse(spec)?;
        let x = g.evaluate(word)?;
        let inv = g.invert(&x)?;
        assert!(g.is_identity(&g.multiply(&x, &inv)?));
        println!("{spec}: {word} = {}", g.format_element(&x));
        println!("  inverse {}", g.format_element(&inv));
        if let Some(p) = g.presentation() {
            for r in &p.relators {
                let holds = g.is_identity(&g.evaluate_word(r)?);
                println!("  relator {} trivial: {holds}", r.display(&p.generators));
            }
        }
    }
    Ok(())
}
