//! Finite quotients obtained by reducing coordinates modulo `N`.
//!
//! | family    | quotient                         | order    |
//! |-----------|----------------------------------|----------|
//! | bs(1, m)  | `Z/N ⋊ Z/K`, `t` acting by `m⁻¹` | `N K`    |
//! | sol(A)    | `(Z/N)² ⋊ Z/K`, `t` acting by `A⁻¹` | `N² K` |
//! | ut3lamp   | `U₃(Z/N) ⋊ Z/K`                  | `N³ K`   |
//! | ut3lamp   | the same modulo the centre       | `N² K`   |
//! | heis      | `U₃(Z/N)`, or one coordinate     | `N³`, `N`|
//! | z:d       | one coordinate                   | `N`      |
//!
//! `K` is the order of the stable letter's action mod `N`. Taking `N = 1`
//! leaves the cyclic quotient `Z/K` that reads off the height. Stable letters
//! act by the inverse of their conjugation action because permutations
//! compose on the right.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{QuotientSource, WitnessCertificate};
use crate::error::{Error, Result};
use crate::finite::{order_cap, FiniteGroup, Perm};
use crate::groups::{mod_inverse, mod_pow, multiplicative_order, Group, GroupElement, GroupSpec};
use crate::metrics::upper_word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum CongruenceQuotient {
    Affine { n: u64, k: u64 },
    Torus { n: u64, k: u64 },
    Unitriangular { n: u64, k: u64 },
    UnitriangularAbelian { n: u64, k: u64 },
    Coordinate { n: u64, index: usize },
}

fn bigmod(v: &BigInt, n: u64) -> u64 {
    v.mod_floor(&BigInt::from(n)).to_u64().unwrap()
}

fn height_mod(s: i64, k: u64) -> u64 {
    s.rem_euclid(k as i64) as u64
}

type M2 = [[u64; 2]; 2];

fn m2_mul(a: &M2, b: &M2, n: u64) -> M2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % n;
        }
    }
    out
}

fn m2_pow(a: &M2, mut e: u64, n: u64) -> M2 {
    let mut acc = [[1 % n, 0], [0, 1 % n]];
    let mut base = *a;
    while e > 0 {
        if e & 1 == 1 {
            acc = m2_mul(&acc, &base, n);
        }
        base = m2_mul(&base, &base, n);
        e >>= 1;
    }
    acc
}

fn m2_reduce(a: [[i64; 2]; 2], n: u64) -> M2 {
    a.map(|row| row.map(|x| x.rem_euclid(n as i64) as u64))
}

/// Order of `A` in `GL₂(Z/N)`.
pub fn matrix_order(a: [[i64; 2]; 2], n: u64) -> u64 {
    let a = m2_reduce(a, n);
    let id = m2_pow(&a, 0, n);
    let mut x = a;
    let mut k = 1;
    while x != id {
        x = m2_mul(&x, &a, n);
        k += 1;
    }
    k
}

fn sol_inverse(a: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let [[p, q], [r, s]] = a;
    let det = p * s - q * r;
    [[det * s, -det * q], [-det * r, det * p]]
}

impl CongruenceQuotient {
    pub fn order(&self) -> u64 {
        match *self {
            CongruenceQuotient::Affine { n, k } => n * k,
            CongruenceQuotient::Torus { n, k } | CongruenceQuotient::UnitriangularAbelian { n, k } => n * n * k,
            CongruenceQuotient::Unitriangular { n, k } => n * n * n * k,
            CongruenceQuotient::Coordinate { n, .. } => n,
        }
    }

    fn modulus(&self) -> u64 {
        match *self {
            CongruenceQuotient::Affine { n, .. }
            | CongruenceQuotient::Torus { n, .. }
            | CongruenceQuotient::Unitriangular { n, .. }
            | CongruenceQuotient::UnitriangularAbelian { n, .. }
            | CongruenceQuotient::Coordinate { n, .. } => n,
        }
    }

    fn cycle(&self) -> u64 {
        match *self {
            CongruenceQuotient::Affine { k, .. }
            | CongruenceQuotient::Torus { k, .. }
            | CongruenceQuotient::Unitriangular { k, .. }
            | CongruenceQuotient::UnitriangularAbelian { k, .. } => k,
            CongruenceQuotient::Coordinate { .. } => 1,
        }
    }

    /// Candidate quotients for `group` with modulus at most `n_max`, sorted
    /// by order.
    pub fn candidates(group: &Group, n_max: u64) -> Vec<CongruenceQuotient> {
        let mut out = Vec::new();
        let coprime = |n: u64, b: u64| n.gcd(&b) == 1;
        match *group.spec() {
            GroupSpec::BaumslagSolitar { m } => {
                for n in (2..=n_max).filter(|&n| coprime(n, m)) {
                    let k = multiplicative_order(m, n).unwrap();
                    out.push(CongruenceQuotient::Affine { n, k });
                }
                out.extend((2..=n_max).map(|k| CongruenceQuotient::Affine { n: 1, k }));
            }
            GroupSpec::Sol { matrix } => {
                for n in 2..=n_max {
                    let k = matrix_order(matrix, n);
                    out.push(CongruenceQuotient::Torus { n, k });
                }
                out.extend((2..=n_max).map(|k| CongruenceQuotient::Torus { n: 1, k }));
            }
            GroupSpec::Ut3Lamp { p } => {
                for n in (2..=n_max).filter(|&n| coprime(n, p)) {
                    let k = multiplicative_order(p, n).unwrap();
                    out.push(CongruenceQuotient::Unitriangular { n, k });
                    out.push(CongruenceQuotient::UnitriangularAbelian { n, k });
                }
                out.extend((2..=n_max).map(|k| CongruenceQuotient::UnitriangularAbelian { n: 1, k }));
            }
            GroupSpec::Heisenberg => {
                for n in 2..=n_max {
                    out.push(CongruenceQuotient::Unitriangular { n, k: 1 });
                    out.push(CongruenceQuotient::Coordinate { n, index: 0 });
                    out.push(CongruenceQuotient::Coordinate { n, index: 1 });
                }
            }
            GroupSpec::FreeAbelian { rank } => {
                for n in 2..=n_max {
                    out.extend((0..rank).map(|index| CongruenceQuotient::Coordinate { n, index }));
                }
            }
        }
        out.sort_by_key(|c| c.order());
        out
    }

    /// Whether `g` maps to a nontrivial element, read off the coordinates.
    pub fn survives(&self, group: &Group, g: &GroupElement) -> bool {
        let n = self.modulus();
        let k = self.cycle();
        let base = group.base().unwrap_or(1);
        let nz = |v: &BigInt| bigmod(v, n) != 0;
        match (*self, g) {
            (CongruenceQuotient::Affine { .. }, GroupElement::Bs { q, s }) => {
                q.residue(n, base) != 0 || height_mod(*s, k) != 0
            }
            (CongruenceQuotient::Torus { .. }, GroupElement::Sol { v, s }) => {
                nz(&v[0]) || nz(&v[1]) || height_mod(*s, k) != 0
            }
            (CongruenceQuotient::Unitriangular { .. }, GroupElement::Ut3Lamp { x, y, z, s }) => {
                [x, y, z].iter().any(|c| c.residue(n, base) != 0) || height_mod(*s, k) != 0
            }
            (CongruenceQuotient::UnitriangularAbelian { .. }, GroupElement::Ut3Lamp { x, y, s, .. }) => {
                [x, y].iter().any(|c| c.residue(n, base) != 0) || height_mod(*s, k) != 0
            }
            (CongruenceQuotient::Unitriangular { .. }, GroupElement::Heisenberg { a, b, c }) => {
                nz(a) || nz(b) || nz(c)
            }
            (CongruenceQuotient::Coordinate { index, .. }, GroupElement::Heisenberg { a, b, .. }) => {
                nz(if index == 0 { a } else { b })
            }
            (CongruenceQuotient::Coordinate { index, .. }, GroupElement::FreeAbelian(v)) => nz(&v[index]),
            _ => false,
        }
    }

    fn degree(&self) -> usize {
        let n = self.modulus() as usize;
        let k = self.cycle() as usize;
        match self {
            CongruenceQuotient::Affine { .. } => n + k,
            CongruenceQuotient::Torus { .. } | CongruenceQuotient::UnitriangularAbelian { .. } => n * n + k,
            CongruenceQuotient::Unitriangular { .. } => n * n * n + k,
            CongruenceQuotient::Coordinate { .. } => n,
        }
    }

    /// The image of `g` as a permutation, built from its normal form.
    pub fn image(&self, group: &Group, g: &GroupElement) -> Result<Perm> {
        if !group.belongs(g) {
            return Err(Error::FamilyMismatch(group.spec().family_name()));
        }
        let n = self.modulus();
        let k = self.cycle();
        let base = group.base().unwrap_or(1);
        let (offset, s) = (self.degree() - k as usize, g.height());
        let shift = height_mod(s, k);
        // images on the Z/K block
        let tail = (0..k).map(|c| offset + ((c + shift) % k) as usize);
        let mut images: Vec<usize> = match (*self, g) {
            (CongruenceQuotient::Affine { .. }, GroupElement::Bs { q, .. }) => {
                // u ↦ (u + q) m^{−s}
                let qn = q.residue(n, base);
                let minv = mod_inverse(base % n, n).unwrap();
                let scale = power_mod_signed(minv, base % n, s, n);
                (0..n).map(|u| (((u + qn) % n) * scale % n) as usize).collect()
            }
            (CongruenceQuotient::Torus { .. }, GroupElement::Sol { v, .. }) => {
                // w ↦ A^{−s}(w + v)
                let a = match group.spec() {
                    GroupSpec::Sol { matrix } => *matrix,
                    _ => unreachable!(),
                };
                let m = if s >= 0 {
                    m2_pow(&m2_reduce(sol_inverse(a), n), s as u64, n)
                } else {
                    m2_pow(&m2_reduce(a, n), s.unsigned_abs(), n)
                };
                let (v0, v1) = (bigmod(&v[0], n), bigmod(&v[1], n));
                (0..n * n)
                    .map(|idx| {
                        let (w0, w1) = ((idx / n + v0) % n, (idx % n + v1) % n);
                        let r0 = (m[0][0] * w0 + m[0][1] * w1) % n;
                        let r1 = (m[1][0] * w0 + m[1][1] * w1) % n;
                        (r0 * n + r1) as usize
                    })
                    .collect()
            }
            (CongruenceQuotient::UnitriangularAbelian { .. }, GroupElement::Ut3Lamp { x, y, .. }) => {
                // w ↦ p^{−s}(w + (x, y))
                let (xn, yn) = (x.residue(n, base), y.residue(n, base));
                let pinv = mod_inverse(base % n, n).unwrap();
                let scale = power_mod_signed(pinv, base % n, s, n);
                (0..n * n)
                    .map(|idx| {
                        let r0 = (idx / n + xn) % n * scale % n;
                        let r1 = (idx % n + yn) % n * scale % n;
                        (r0 * n + r1) as usize
                    })
                    .collect()
            }
            (CongruenceQuotient::Unitriangular { .. }, _) => {
                let (xn, yn, zn) = match g {
                    GroupElement::Ut3Lamp { x, y, z, .. } => {
                        (x.residue(n, base), y.residue(n, base), z.residue(n, base))
                    }
                    GroupElement::Heisenberg { a, b, c } => (bigmod(a, n), bigmod(b, n), bigmod(c, n)),
                    _ => return Err(Error::FamilyMismatch(group.spec().family_name())),
                };
                // row vector w ↦ w · U(x, y, z) · diag(p, 1, p⁻¹)^s
                let (d0, d2) = if base == 1 {
                    (1 % n, 1 % n)
                } else {
                    let pinv = mod_inverse(base % n, n).unwrap();
                    (power_mod_signed(base % n, pinv, s, n), power_mod_signed(pinv, base % n, s, n))
                };
                (0..n * n * n)
                    .map(|idx| {
                        let (w0, w1, w2) = (idx / (n * n), idx / n % n, idx % n);
                        let r0 = w0;
                        let r1 = (w0 * xn + w1) % n;
                        let r2 = (w0 * zn + w1 * yn + w2) % n;
                        let (r0, r2) = (r0 * d0 % n, r2 * d2 % n);
                        (r0 * n * n + r1 * n + r2) as usize
                    })
                    .collect()
            }
            (CongruenceQuotient::Coordinate { index, .. }, _) => {
                let c = match g {
                    GroupElement::FreeAbelian(v) => bigmod(&v[index], n),
                    GroupElement::Heisenberg { a, b, .. } => bigmod(if index == 0 { a } else { b }, n),
                    _ => return Err(Error::FamilyMismatch(group.spec().family_name())),
                };
                return Perm::from_images((0..n).map(|u| ((u + c) % n) as usize).collect());
            }
            _ => return Err(Error::FamilyMismatch(group.spec().family_name())),
        };
        images.extend(tail);
        Perm::from_images(images)
    }
}

/// `a^s` for `s ≥ 0` and `a_inv^{|s|}` for `s < 0`, modulo `n`.
fn power_mod_signed(a: u64, a_inv: u64, s: i64, n: u64) -> u64 {
    if s >= 0 {
        mod_pow(a, s as u64, n)
    } else {
        mod_pow(a_inv, s.unsigned_abs(), n)
    }
}

/// Left-to-right product of a word's letters under permutation images.
pub(crate) fn evaluate_perms(images: &[Perm], w: &crate::groups::Word) -> Perm {
    let degree = images.first().map_or(0, Perm::degree);
    let mut acc = Perm::identity(degree);
    for syl in w.syllables() {
        let g = &images[syl.generator];
        let ord = BigInt::from(g.order());
        let mut e = syl.exponent.mod_floor(&ord).to_u64().unwrap();
        let mut sq = g.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
    }
    acc
}

/// Builds the certificate for `g` in `quotient`, cross-checking the direct
/// image against the image of an explicit word and, below the order cap,
/// the order against a closure.
pub fn congruence_certificate(group: &Group, quotient: CongruenceQuotient, g: &GroupElement) -> Result<WitnessCertificate> {
    let target = quotient.image(group, g)?;
    let gens = group
        .generators()
        .iter()
        .map(|x| quotient.image(group, x))
        .collect::<Result<Vec<Perm>>>()?;
    let via_word = evaluate_perms(&gens, &upper_word(group, g)?);
    if via_word != target {
        return Err(Error::Precondition(format!("quotient {quotient:?} is not a homomorphism on this element")));
    }
    let order = quotient.order();
    let order_verified = if order as usize <= order_cap() {
        let h = FiniteGroup::closure(&gens, order as usize + 1)?;
        if h.order() as u64 != order {
            return Err(Error::Precondition(format!(
                "quotient {quotient:?} has order {}, expected {order}",
                h.order()
            )));
        }
        true
    } else {
        false
    };
    Ok(WitnessCertificate {
        quotient: QuotientSource::Congruence(quotient),
        order,
        order_verified,
        degree: target.degree(),
        generator_images: gens,
        target_image: target,
    })
}

/// Smallest congruence quotient with modulus `≤ n_max` in which `x`
/// survives.
pub fn congruence_depth_upper(group: &Group, x: &GroupElement, n_max: u64) -> Result<Option<WitnessCertificate>> {
    if !group.belongs(x) {
        return Err(Error::FamilyMismatch(group.spec().family_name()));
    }
    if group.is_identity(x) {
        return Ok(None);
    }
    first_congruence(group, &CongruenceQuotient::candidates(group, n_max), x)
        .map(|q| congruence_certificate(group, q, x))
        .transpose()
}

pub(crate) fn first_congruence(group: &Group, candidates: &[CongruenceQuotient], x: &GroupElement) -> Option<CongruenceQuotient> {
    candidates.iter().copied().find(|q| q.survives(group, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hom(group: &Group, q: CongruenceQuotient, samples: &[&str]) {
        for s in samples {
            let g = group.evaluate(s).unwrap();
            let direct = q.image(group, &g).unwrap();
            let gens: Vec<Perm> = group.generators().iter().map(|x| q.image(group, x).unwrap()).collect();
            let w = group.parse_word(s).unwrap();
            assert_eq!(evaluate_perms(&gens, &w), direct, "{q:?} on {s}");
            assert_eq!(!direct.is_identity(), q.survives(group, &g), "{q:?} on {s}");
        }
        if let Some(p) = group.presentation() {
            let gens: Vec<Perm> = group.generators().iter().map(|x| q.image(group, x).unwrap()).collect();
            for r in &p.relators {
                assert!(evaluate_perms(&gens, r).is_identity(), "{q:?}");
            }
        }
    }

    #[test]
    fn images_are_homomorphic() {
        let bs = Group::parse("bs:1:2").unwrap();
        let words = ["a", "t", "t^-1 a t", "t^-2 a^3 t a^-1", "a t a t^-1 a^-2"];
        for q in [
            CongruenceQuotient::Affine { n: 3, k: 2 },
            CongruenceQuotient::Affine { n: 5, k: 8 },
            CongruenceQuotient::Affine { n: 1, k: 3 },
        ] {
            check_hom(&bs, q, &words);
        }
        let sol = Group::parse("sol").unwrap();
        let words = ["a", "b t", "t^-1 a t b", "t^2 a^-1 t^-1 b^3", "b^-1 t^-3 a"];
        for q in [CongruenceQuotient::Torus { n: 2, k: 3 }, CongruenceQuotient::Torus { n: 5, k: 10 }] {
            check_hom(&sol, q, &words);
        }
        let lamp = Group::parse("ut3lamp:2").unwrap();
        let words = ["x y", "d z d^-1", "d^-1 x d y^2", "x y x^-1 y^-1 d", "z d^-2 x d"];
        for q in [
            CongruenceQuotient::Unitriangular { n: 3, k: 2 },
            CongruenceQuotient::Unitriangular { n: 5, k: 4 },
            CongruenceQuotient::UnitriangularAbelian { n: 3, k: 2 },
        ] {
            check_hom(&lamp, q, &words);
        }
        let heis = Group::parse("heis").unwrap();
        let words = ["x y x^-1 y^-1", "x^2 y", "y^-3 x"];
        for q in [CongruenceQuotient::Unitriangular { n: 3, k: 1 }, CongruenceQuotient::Coordinate { n: 4, index: 1 }] {
            check_hom(&heis, q, &words);
        }
        check_hom(&Group::parse("z:2").unwrap(), CongruenceQuotient::Coordinate { n: 3, index: 1 }, &["e1 e2^4"]);
    }

    #[test]
    fn documented_values() {
        let bs = Group::parse("bs:1:2").unwrap();
        let c = congruence_depth_upper(&bs, &bs.generator(0), 10).unwrap().unwrap();
        assert_eq!(c.quotient, QuotientSource::Congruence(CongruenceQuotient::Affine { n: 3, k: 2 }));
        assert_eq!((c.order, c.order_verified), (6, true));

        let a12 = bs.evaluate("a^12").unwrap();
        let c = congruence_depth_upper(&bs, &a12, 512).unwrap().unwrap();
        assert_eq!(c.order, 20);

        let sol = Group::parse("sol").unwrap();
        assert_eq!(matrix_order([[2, 1], [1, 1]], 2), 3);
        let c = congruence_depth_upper(&sol, &sol.generator(0), 10).unwrap().unwrap();
        assert_eq!((c.order, c.order_verified), (12, true));

        let lamp = Group::parse("ut3lamp:2").unwrap();
        let c = congruence_depth_upper(&lamp, &lamp.generator(2), 10).unwrap().unwrap();
        assert_eq!(c.quotient, QuotientSource::Congruence(CongruenceQuotient::Unitriangular { n: 3, k: 2 }));
        assert_eq!((c.order, c.order_verified), (54, true));
    }

    #[test]
    fn lamp_quotient_satisfies_the_depth_two_bound() {
        use crate::finite::{fitting_subgroup, prop43_check, FiniteGroup};
        // U₃(Z/3) ⋊ Z/2: Fitting subgroup U₃(Z/3), so p = 3 and |H| ≥ 27
        let lamp = Group::parse("ut3lamp:2").unwrap();
        let c = congruence_depth_upper(&lamp, &lamp.generator(2), 10).unwrap().unwrap();
        let h = FiniteGroup::generate(&c.generator_images).unwrap();
        assert_eq!(fitting_subgroup(&h).unwrap().order(), 27);
        let z = h.index_of(&c.target_image).unwrap();
        let r = prop43_check(&h, z, 2).unwrap();
        assert_eq!((r.p, r.order, r.bound, r.fitting_step_length), (3, 54, 27, 2));
        assert!(r.holds);
    }

    #[test]
    fn height_only_elements_use_cyclic_quotients() {
        let bs = Group::parse("bs:1:2").unwrap();
        let c = congruence_depth_upper(&bs, &bs.generator(1), 10).unwrap().unwrap();
        assert_eq!(c.order, 2);
        assert!(congruence_depth_upper(&bs, &bs.identity(), 10).unwrap().is_none());
    }
}
