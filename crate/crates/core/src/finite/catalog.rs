//! Small permutation groups used as test fixtures and examples.
//!
//! Every constructor panics only if the fixed generators were wrong, which
//! the tests below rule out.

use super::group::FiniteGroup;
use super::perm::Perm;

fn build(gens: Vec<Perm>) -> FiniteGroup {
    FiniteGroup::closure(&gens, usize::MAX).expect("catalog group")
}

fn cycle(n: usize) -> Perm {
    Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap()
}

/// `Z/n` acting on `n` points.
pub fn cyclic(n: usize) -> FiniteGroup {
    if n == 1 {
        return build(Vec::new());
    }
    build(vec![cycle(n)])
}

/// The dihedral group of order `2n` acting on the `n`-gon (`n ≥ 3`).
pub fn dihedral(n: usize) -> FiniteGroup {
    let r = cycle(n);
    let s = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
    build(vec![r, s])
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n < 2 {
        return build(Vec::new());
    }
    let t = Perm::from_cycles(&[vec![0, 1]], n).unwrap();
    build(vec![cycle(n), t])
}

/// `A_n` generated by the 3-cycles `(0 1 i)`.
pub fn alternating(n: usize) -> FiniteGroup {
    let gens = (2..n)
        .map(|i| Perm::from_cycles(&[vec![0, 1, i]], n).unwrap())
        .collect();
    build(gens)
}

/// The quaternion group of order `n` (a power of two, `n ≥ 8`), in its
/// regular representation: `Q = ⟨x, y | x^{n/2}, y² = x^{n/4}, y⁻¹xy = x⁻¹⟩`.
///
/// Elements are `x^i y^j` with `0 ≤ i < n/2`, `j ∈ {0, 1}`, stored at point
/// `i + (n/2) j`.
pub fn quaternion(n: usize) -> FiniteGroup {
    assert!(n >= 8 && n.is_power_of_two(), "generalised quaternion order");
    let h = n / 2;
    let idx = |i: usize, j: usize| i % h + h * j;
    // right multiplication by x: x^i y^j · x = x^{i + (−1)^j} y^j
    let x = (0..n)
        .map(|pt| {
            let (i, j) = (pt % h, pt / h);
            if j == 0 {
                idx(i + 1, 0)
            } else {
                idx(i + h - 1, 1)
            }
        })
        .collect();
    // right multiplication by y: x^i · y = x^i y, x^i y · y = x^{i + h/2}
    let y = (0..n)
        .map(|pt| {
            let (i, j) = (pt % h, pt / h);
            if j == 0 {
                idx(i, 1)
            } else {
                idx(i + h / 2, 0)
            }
        })
        .collect();
    build(vec![
        Perm::from_images(x).unwrap(),
        Perm::from_images(y).unwrap(),
    ])
}

/// `U₃(Z/n)`, unitriangular matrices acting on `(u, v) ∈ (Z/n)²` by
/// `(u, v) ↦ (u + a v + c, v + b)`.
pub fn heisenberg_mod(n: usize) -> FiniteGroup {
    let pt = |u: usize, v: usize| (u % n) * n + v % n;
    let x = (0..n * n).map(|p| pt(p / n + p % n, p % n)).collect();
    let y = (0..n * n).map(|p| pt(p / n, p % n + 1)).collect();
    build(vec![
        Perm::from_images(x).unwrap(),
        Perm::from_images(y).unwrap(),
    ])
}

/// `G × H` acting on the disjoint union of the point sets.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (dg, dh) = (g.degree(), h.degree());
    let mut gens: Vec<Perm> = g
        .generator_perms()
        .iter()
        .map(|p| p.extended(dg + dh))
        .collect();
    for p in h.generator_perms() {
        let images = (0..dg).chain(p.images().map(|i| i + dg)).collect();
        gens.push(Perm::from_images(images).unwrap());
    }
    build(gens)
}

/// `(Z/p)^k`.
pub fn elementary_abelian(p: usize, k: usize) -> FiniteGroup {
    (1..k).fold(cyclic(p), |acc, _| direct_product(&acc, &cyclic(p)))
}

/// A named group for catalog-wide checks.
pub struct Entry {
    pub name: String,
    pub group: FiniteGroup,
}

fn entry(name: impl Into<String>, group: FiniteGroup) -> Entry {
    Entry {
        name: name.into(),
        group,
    }
}

/// Groups of prime-power order.
pub fn p_groups() -> Vec<Entry> {
    let mut out = Vec::new();
    for n in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
        out.push(entry(format!("Z/{n}"), cyclic(n)));
    }
    for (p, k) in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)] {
        out.push(entry(format!("(Z/{p})^{k}"), elementary_abelian(p, k)));
    }
    out.push(entry("Z/4 x Z/2", direct_product(&cyclic(4), &cyclic(2))));
    out.push(entry("Z/9 x Z/3", direct_product(&cyclic(9), &cyclic(3))));
    out.push(entry("D4", dihedral(4)));
    out.push(entry("D8", dihedral(8)));
    out.push(entry("Q8", quaternion(8)));
    out.push(entry("Q16", quaternion(16)));
    out.push(entry("D4 x Z/2", direct_product(&dihedral(4), &cyclic(2))));
    out.push(entry("Q8 x Z/2", direct_product(&quaternion(8), &cyclic(2))));
    for p in [2, 3, 5] {
        out.push(entry(format!("U3(Z/{p})"), heisenberg_mod(p)));
    }
    out.push(entry("U3(Z/4)", heisenberg_mod(4)));
    out
}

/// Solvable groups of order at most 200.
pub fn solvable_groups() -> Vec<Entry> {
    let mut out = Vec::new();
    for n in [1, 2, 6, 12, 30] {
        out.push(entry(format!("Z/{n}"), cyclic(n)));
    }
    for n in 3..=12 {
        out.push(entry(format!("D{n}"), dihedral(n)));
    }
    out.push(entry("S3", symmetric(3)));
    out.push(entry("S4", symmetric(4)));
    out.push(entry("A4", alternating(4)));
    out.push(entry("Q8", quaternion(8)));
    out.push(entry("Q16", quaternion(16)));
    for p in [2, 3, 5] {
        out.push(entry(format!("U3(Z/{p})"), heisenberg_mod(p)));
    }
    let s3 = symmetric(3);
    out.push(entry("Z/6 x S3", direct_product(&cyclic(6), &s3)));
    out.push(entry("S3 x S3", direct_product(&s3, &s3)));
    out.push(entry("Z/3 x S3", direct_product(&cyclic(3), &s3)));
    out.push(entry("D4 x Z/3", direct_product(&dihedral(4), &cyclic(3))));
    out.push(entry("A4 x Z/2", direct_product(&alternating(4), &cyclic(2))));
    out.push(entry("S4 x Z/2", direct_product(&symmetric(4), &cyclic(2))));
    out.push(entry("S3 x D5", direct_product(&s3, &dihedral(5))));
    out.push(entry("A4 x Z/5", direct_product(&alternating(4), &cyclic(5))));
    out.push(entry("Q8 x S3", direct_product(&quaternion(8), &s3)));
    out.push(entry("S4 x Z/3", direct_product(&symmetric(4), &cyclic(3))));
    out.push(entry("U3(Z/3) x Z/2", direct_product(&heisenberg_mod(3), &cyclic(2))));
    out.push(entry("D6 x Z/2", direct_product(&dihedral(6), &cyclic(2))));
    out.push(entry("Z/2 x Z/2", elementary_abelian(2, 2)));
    out
}
