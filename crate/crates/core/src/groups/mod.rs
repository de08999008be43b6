//! Normal forms for the shipped infinite solvable groups.
//!
//! | spec string        | group                                  | generators  |
//! |--------------------|----------------------------------------|-------------|
//! | `z:<d>`            | `Z^d`                                  | `e1 … ed`   |
//! | `heis`             | integral Heisenberg group              | `x y`       |
//! | `bs:1:<m>`         | `BS(1, m) = Z[1/m] ⋊ Z`                | `a t`       |
//! | `sol:<a>,<b>,<c>,<d>` | `Z² ⋊_A Z`, `A = [[a, b], [c, d]]`  | `a b t`     |
//! | `ut3lamp:<p>`      | `U₃(Z[1/p]) ⋊ Z`                       | `x y z d`   |
//!
//! In `ut3lamp`, `d` acts on `u(x, y, z)` by `(x, y, z) ↦ (px, py, p²z)`,
//! so `d z d⁻¹ = z^(p²)`.

mod madic;
mod word;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use madic::{multiplicative_order, MAdic};
pub(crate) use madic::{mod_inverse, mod_pow};
pub use word::{Syllable, Word, WordDisplay};

/// Largest `|t|`-height a computed element may reach.
pub const MAX_HEIGHT: i64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GroupSpec {
    FreeAbelian { rank: usize },
    Heisenberg,
    BaumslagSolitar { m: u64 },
    Sol { matrix: [[i64; 2]; 2] },
    Ut3Lamp { p: u64 },
}

impl GroupSpec {
    pub const DEFAULT_SOL: [[i64; 2]; 2] = [[2, 1], [1, 1]];

    pub fn family_name(&self) -> &'static str {
        match self {
            GroupSpec::FreeAbelian { .. } => "free-abelian",
            GroupSpec::Heisenberg => "heisenberg",
            GroupSpec::BaumslagSolitar { .. } => "bs",
            GroupSpec::Sol { .. } => "sol",
            GroupSpec::Ut3Lamp { .. } => "ut3lamp",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::FreeAbelian { rank: 0 } => {
                Err(Error::InvalidSpec("rank must be at least 1".into()))
            }
            GroupSpec::BaumslagSolitar { m } if m < 2 => Err(Error::InvalidSpec(
                "BS(1, m) needs m ≥ 2 (m = 1 is virtually nilpotent)".into(),
            )),
            GroupSpec::Sol { matrix: [[a, b], [c, d]] } => {
                let det = a * d - b * c;
                if det.abs() != 1 {
                    return Err(Error::InvalidSpec(format!("det A = {det}, need ±1")));
                }
                if (a + d).abs() < 3 {
                    return Err(Error::InvalidSpec(format!(
                        "|trace A| = {} < 3",
                        (a + d).abs()
                    )));
                }
                Ok(())
            }
            GroupSpec::Ut3Lamp { p } if !crate::numtheory::is_prime(p) => {
                Err(Error::InvalidSpec(format!("ut3lamp needs a prime, got {p}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::FreeAbelian { rank } => write!(f, "z:{rank}"),
            GroupSpec::Heisenberg => write!(f, "heis"),
            GroupSpec::BaumslagSolitar { m } => write!(f, "bs:1:{m}"),
            GroupSpec::Sol {
                matrix: [[a, b], [c, d]],
            } => write!(f, "sol:{a},{b},{c},{d}"),
            GroupSpec::Ut3Lamp { p } => write!(f, "ut3lamp:{p}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("cannot parse `{s}`"));
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["z", d] => GroupSpec::FreeAbelian {
                rank: usize::try_from(num(d)?).map_err(|_| bad())?,
            },
            ["heis"] | ["heisenberg"] => GroupSpec::Heisenberg,
            ["bs", "1", m] => GroupSpec::BaumslagSolitar {
                m: u64::try_from(num(m)?).map_err(|_| bad())?,
            },
            ["bs", k, _] => {
                return Err(Error::InvalidSpec(format!(
                    "only BS(1, m) is supported, got BS({k}, ·)"
                )))
            }
            ["sol"] => GroupSpec::Sol {
                matrix: GroupSpec::DEFAULT_SOL,
            },
            ["sol", entries] => {
                let v = entries
                    .split(',')
                    .map(num)
                    .collect::<Result<Vec<i64>>>()?;
                if v.len() != 4 {
                    return Err(bad());
                }
                GroupSpec::Sol {
                    matrix: [[v[0], v[1]], [v[2], v[3]]],
                }
            }
            ["ut3lamp", p] => GroupSpec::Ut3Lamp {
                p: u64::try_from(num(p)?).map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Element normal forms, one variant per family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    FreeAbelian(Vec<BigInt>),
    /// Unitriangular `u(a, b, c)` with `a` above the diagonal in row 1, `b`
    /// in row 2 and `c` in the corner.
    Heisenberg { a: BigInt, b: BigInt, c: BigInt },
    /// `(q, s)` with `q ∈ Z[1/m]`; product `(q₁ + m^{s₁} q₂, s₁ + s₂)`.
    Bs { q: MAdic, s: i64 },
    /// `(v, s)` with `v ∈ Z²`; product `(v₁ + A^{s₁} v₂, s₁ + s₂)`.
    Sol { v: [BigInt; 2], s: i64 },
    /// `u(x, y, z) · d^s` with `x, y, z ∈ Z[1/p]`.
    Ut3Lamp { x: MAdic, y: MAdic, z: MAdic, s: i64 },
}

impl GroupElement {
    pub fn bs(q: i64, s: i64) -> Self {
        GroupElement::Bs {
            q: MAdic::integer(q),
            s,
        }
    }

    pub fn heisenberg(a: i64, b: i64, c: i64) -> Self {
        GroupElement::Heisenberg {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn sol(v0: i64, v1: i64, s: i64) -> Self {
        GroupElement::Sol {
            v: [v0.into(), v1.into()],
            s,
        }
    }

    pub fn ut3lamp(x: i64, y: i64, z: i64, s: i64) -> Self {
        GroupElement::Ut3Lamp {
            x: MAdic::integer(x),
            y: MAdic::integer(y),
            z: MAdic::integer(z),
            s,
        }
    }

    pub fn free_abelian(v: &[i64]) -> Self {
        GroupElement::FreeAbelian(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Image under the height homomorphism to `Z` (exponent sum of the stable letter).
    pub fn height(&self) -> i64 {
        match self {
            GroupElement::Bs { s, .. }
            | GroupElement::Sol { s, .. }
            | GroupElement::Ut3Lamp { s, .. } => *s,
            _ => 0,
        }
    }
}

/// 2×2 integer matrix with big entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2(pub [[BigInt; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([
            [BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::one()],
        ])
    }

    pub fn from_i64(m: [[i64; 2]; 2]) -> Self {
        Mat2([
            [m[0][0].into(), m[0][1].into()],
            [m[1][0].into(), m[1][1].into()],
        ])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2([
            [
                &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
                &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            ],
            [
                &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
                &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
            ],
        ])
    }

    pub fn apply(&self, v: &[BigInt; 2]) -> [BigInt; 2] {
        let a = &self.0;
        [
            &a[0][0] * &v[0] + &a[0][1] * &v[1],
            &a[1][0] * &v[0] + &a[1][1] * &v[1],
        ]
    }

    pub fn pow(&self, mut e: u64) -> Mat2 {
        let mut acc = Mat2::identity();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Largest absolute row sum.
    pub fn inf_norm(&self) -> BigInt {
        self.0
            .iter()
            .map(|r| r[0].abs() + r[1].abs())
            .max()
            .unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistortionClass {
    /// `f(n) = n`.
    Linear,
    /// `f(n) = n^degree`.
    Polynomial { degree: u32 },
    /// `f(n) = 2^n` up to rescaling `n`.
    Exponential,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| r.display(&self.generators).to_string())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Metadata {
    pub generators: Vec<String>,
    pub presentation: Option<Presentation>,
    pub virtually_nilpotent: bool,
    pub distinguished: GroupElement,
    pub distinguished_word: Word,
    pub nilpotent_depth: u32,
    pub distortion: DistortionClass,
}

/// A group family instance with its fixed generating set.
#[derive(Clone, Debug)]
pub struct Group {
    spec: GroupSpec,
    names: Vec<String>,
    sol: Option<SolData>,
}

#[derive(Clone, Debug)]
struct SolData {
    matrix: Mat2,
    inverse: Mat2,
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        spec.validate()?;
        let names: Vec<String> = match &spec {
            GroupSpec::FreeAbelian { rank } => (1..=*rank).map(|i| format!("e{i}")).collect(),
            GroupSpec::Heisenberg => vec!["x".into(), "y".into()],
            GroupSpec::BaumslagSolitar { .. } => vec!["a".into(), "t".into()],
            GroupSpec::Sol { .. } => vec!["a".into(), "b".into(), "t".into()],
            GroupSpec::Ut3Lamp { .. } => vec!["x".into(), "y".into(), "z".into(), "d".into()],
        };
        let sol = match spec {
            GroupSpec::Sol {
                matrix: [[a, b], [c, d]],
            } => {
                let det = a * d - b * c;
                // A⁻¹ = det · [[d, −b], [−c, a]] since det = ±1
                let inv = [[det * d, -det * b], [-det * c, det * a]];
                Some(SolData {
                    matrix: Mat2::from_i64([[a, b], [c, d]]),
                    inverse: Mat2::from_i64(inv),
                })
            }
            _ => None,
        };
        Ok(Group { spec, names, sol })
    }

    pub fn parse(spec: &str) -> Result<Self> {
        Group::new(spec.parse()?)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    /// Base of the `Z[1/·]` coordinates, if any.
    pub fn base(&self) -> Option<u64> {
        match self.spec {
            GroupSpec::BaumslagSolitar { m } => Some(m),
            GroupSpec::Ut3Lamp { p } => Some(p),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        let zero = BigInt::zero;
        match self.spec {
            GroupSpec::FreeAbelian { rank } => GroupElement::FreeAbelian(vec![zero(); rank]),
            GroupSpec::Heisenberg => GroupElement::Heisenberg {
                a: zero(),
                b: zero(),
                c: zero(),
            },
            GroupSpec::BaumslagSolitar { .. } => GroupElement::Bs {
                q: MAdic::zero(),
                s: 0,
            },
            GroupSpec::Sol { .. } => GroupElement::Sol {
                v: [zero(), zero()],
                s: 0,
            },
            GroupSpec::Ut3Lamp { .. } => GroupElement::Ut3Lamp {
                x: MAdic::zero(),
                y: MAdic::zero(),
                z: MAdic::zero(),
                s: 0,
            },
        }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        *g == self.identity()
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        match self.spec {
            GroupSpec::FreeAbelian { rank } => {
                let mut v = vec![BigInt::zero(); rank];
                v[i] = BigInt::one();
                GroupElement::FreeAbelian(v)
            }
            GroupSpec::Heisenberg => match i {
                0 => GroupElement::heisenberg(1, 0, 0),
                _ => GroupElement::heisenberg(0, 1, 0),
            },
            GroupSpec::BaumslagSolitar { .. } => match i {
                0 => GroupElement::bs(1, 0),
                _ => GroupElement::bs(0, 1),
            },
            GroupSpec::Sol { .. } => match i {
                0 => GroupElement::sol(1, 0, 0),
                1 => GroupElement::sol(0, 1, 0),
                _ => GroupElement::sol(0, 0, 1),
            },
            GroupSpec::Ut3Lamp { .. } => match i {
                0 => GroupElement::ut3lamp(1, 0, 0, 0),
                1 => GroupElement::ut3lamp(0, 1, 0, 0),
                2 => GroupElement::ut3lamp(0, 0, 1, 0),
                _ => GroupElement::ut3lamp(0, 0, 0, 1),
            },
        }
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.generator_count()).map(|i| self.generator(i)).collect()
    }

    pub fn belongs(&self, g: &GroupElement) -> bool {
        match (&self.spec, g) {
            (GroupSpec::FreeAbelian { rank }, GroupElement::FreeAbelian(v)) => v.len() == *rank,
            (GroupSpec::Heisenberg, GroupElement::Heisenberg { .. })
            | (GroupSpec::BaumslagSolitar { .. }, GroupElement::Bs { .. })
            | (GroupSpec::Sol { .. }, GroupElement::Sol { .. })
            | (GroupSpec::Ut3Lamp { .. }, GroupElement::Ut3Lamp { .. }) => true,
            _ => false,
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.belongs(g) {
            Ok(())
        } else {
            Err(Error::FamilyMismatch(self.spec.family_name()))
        }
    }

    /// `A^s` for the Sol matrix, any integer `s`.
    pub fn sol_power(&self, s: i64) -> Mat2 {
        let data = self.sol.as_ref().expect("sol family");
        if s >= 0 {
            data.matrix.pow(s as u64)
        } else {
            data.inverse.pow(s.unsigned_abs())
        }
    }

    pub fn sol_matrix(&self) -> Option<&Mat2> {
        self.sol.as_ref().map(|d| &d.matrix)
    }

    fn add_heights(s1: i64, s2: i64) -> Result<i64> {
        let s = s1
            .checked_add(s2)
            .filter(|s| s.abs() <= MAX_HEIGHT)
            .ok_or_else(|| Error::ExponentTooLarge(format!("height {s1} + {s2}")))?;
        Ok(s)
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(match (g, h) {
            (GroupElement::FreeAbelian(u), GroupElement::FreeAbelian(v)) => {
                GroupElement::FreeAbelian(u.iter().zip(v).map(|(a, b)| a + b).collect())
            }
            (
                GroupElement::Heisenberg { a, b, c },
                GroupElement::Heisenberg {
                    a: a2,
                    b: b2,
                    c: c2,
                },
            ) => GroupElement::Heisenberg {
                a: a + a2,
                b: b + b2,
                c: c + c2 + a * b2,
            },
            (GroupElement::Bs { q, s }, GroupElement::Bs { q: q2, s: s2 }) => {
                let m = self.base().unwrap();
                GroupElement::Bs {
                    q: q.add(&q2.shift(*s, m), m),
                    s: Self::add_heights(*s, *s2)?,
                }
            }
            (GroupElement::Sol { v, s }, GroupElement::Sol { v: v2, s: s2 }) => {
                let w = self.sol_power(*s).apply(v2);
                GroupElement::Sol {
                    v: [&v[0] + &w[0], &v[1] + &w[1]],
                    s: Self::add_heights(*s, *s2)?,
                }
            }
            (
                GroupElement::Ut3Lamp { x, y, z, s },
                GroupElement::Ut3Lamp {
                    x: x2,
                    y: y2,
                    z: z2,
                    s: s2,
                },
            ) => {
                let p = self.base().unwrap();
                let x2 = x2.shift(*s, p);
                let y2 = y2.shift(*s, p);
                let z2 = z2.shift(2 * *s, p);
                GroupElement::Ut3Lamp {
                    x: x.add(&x2, p),
                    y: y.add(&y2, p),
                    z: z.add(&z2, p).add(&x.mul(&y2, p), p),
                    s: Self::add_heights(*s, *s2)?,
                }
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn invert(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(match g {
            GroupElement::FreeAbelian(v) => GroupElement::FreeAbelian(v.iter().map(|a| -a).collect()),
            GroupElement::Heisenberg { a, b, c } => GroupElement::Heisenberg {
                a: -a,
                b: -b,
                c: a * b - c,
            },
            GroupElement::Bs { q, s } => {
                let m = self.base().unwrap();
                GroupElement::Bs {
                    q: q.shift(-*s, m).neg(),
                    s: -*s,
                }
            }
            GroupElement::Sol { v, s } => {
                let w = self.sol_power(-*s).apply(v);
                GroupElement::Sol {
                    v: [-&w[0], -&w[1]],
                    s: -*s,
                }
            }
            GroupElement::Ut3Lamp { x, y, z, s } => {
                let p = self.base().unwrap();
                // (u d^s)⁻¹ = φ^{−s}(u⁻¹) d^{−s}
                let zi = x.mul(y, p).sub(z, p);
                GroupElement::Ut3Lamp {
                    x: x.neg().shift(-*s, p),
                    y: y.neg().shift(-*s, p),
                    z: zi.shift(-2 * *s, p),
                    s: -*s,
                }
            }
        })
    }

    /// `g^k` for an arbitrary-precision `k`.
    ///
    /// Elements of height zero use closed forms, so `k` may be huge. Elements
    /// of nonzero height use square-and-multiply and fail with
    /// [`Error::ExponentTooLarge`] once `|k · height|` exceeds [`MAX_HEIGHT`].
    pub fn power(&self, g: &GroupElement, k: &BigInt) -> Result<GroupElement> {
        self.check(g)?;
        if k.is_zero() {
            return Ok(self.identity());
        }
        let height = g.height();
        if height == 0 {
            return Ok(self.power_height_zero(g, k));
        }
        let too_big = || Error::ExponentTooLarge(format!("power {k} of an element of height {height}"));
        let steps = k.abs().to_i64().ok_or_else(too_big)?;
        if steps.checked_mul(height.abs()).is_none_or(|h| h > MAX_HEIGHT) {
            return Err(too_big());
        }
        let base = if k.is_negative() {
            self.invert(g)?
        } else {
            g.clone()
        };
        let mut acc = self.identity();
        let mut sq = base;
        let mut e = steps as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = self.multiply(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    fn power_height_zero(&self, g: &GroupElement, k: &BigInt) -> GroupElement {
        match g {
            GroupElement::FreeAbelian(v) => GroupElement::FreeAbelian(v.iter().map(|a| a * k).collect()),
            GroupElement::Heisenberg { a, b, c } => {
                // u(a,b,c)^k = u(ka, kb, kc + ab·k(k−1)/2)
                let tri = (k * (k - 1u32)) / 2u32;
                GroupElement::Heisenberg {
                    a: a * k,
                    b: b * k,
                    c: c * k + a * b * tri,
                }
            }
            GroupElement::Bs { q, .. } => GroupElement::Bs {
                q: q.mul_int(k, self.base().unwrap()),
                s: 0,
            },
            GroupElement::Sol { v, .. } => GroupElement::Sol {
                v: [&v[0] * k, &v[1] * k],
                s: 0,
            },
            GroupElement::Ut3Lamp { x, y, z, .. } => {
                let p = self.base().unwrap();
                let tri = (k * (k - 1u32)) / 2u32;
                GroupElement::Ut3Lamp {
                    x: x.mul_int(k, p),
                    y: y.mul_int(k, p),
                    z: z.mul_int(k, p).add(&x.mul(y, p).mul_int(&tri, p), p),
                    s: 0,
                }
            }
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.names)
    }

    /// Product of the word's letters, left to right.
    pub fn evaluate_word(&self, w: &Word) -> Result<GroupElement> {
        let mut acc = self.identity();
        for syl in w.syllables() {
            if syl.generator >= self.generator_count() {
                return Err(Error::UnknownGenerator(format!("#{}", syl.generator)));
            }
            let piece = self.power(&self.generator(syl.generator), &syl.exponent)?;
            acc = self.multiply(&acc, &piece)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, text: &str) -> Result<GroupElement> {
        self.evaluate_word(&self.parse_word(text)?)
    }

    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let gh = self.multiply(g, h)?;
        let gi = self.invert(g)?;
        let hi = self.invert(h)?;
        self.multiply(&self.multiply(&gh, &gi)?, &hi)
    }

    pub fn presentation(&self) -> Option<Presentation> {
        let n = &self.names;
        let w = |s: &str| Word::parse(s, n).expect("static relator");
        let relators = match self.spec {
            GroupSpec::FreeAbelian { rank } => {
                let mut rel = Vec::new();
                for i in 0..rank {
                    for j in i + 1..rank {
                        rel.push(w(&format!("{0} {1} {0}^-1 {1}^-1", n[i], n[j])));
                    }
                }
                rel
            }
            GroupSpec::Heisenberg => vec![
                // [x, [x, y]] and [y, [x, y]]
                w("x x y x^-1 y^-1 x^-1 y x y^-1 x^-1"),
                w("y x y x^-1 y^-1 y^-1 y x y^-1 x^-1"),
            ],
            GroupSpec::BaumslagSolitar { m } => vec![w(&format!("t a t^-1 a^-{m}"))],
            GroupSpec::Sol {
                matrix: [[a11, a12], [a21, a22]],
            } => vec![
                w("a b a^-1 b^-1"),
                // t a t⁻¹ = A e₁ = a^{a11} b^{a21}
                w(&format!("t a t^-1 b^{} a^{}", -a21, -a11)),
                w(&format!("t b t^-1 b^{} a^{}", -a22, -a12)),
            ],
            GroupSpec::Ut3Lamp { .. } => return None,
        };
        Some(Presentation {
            generators: self.names.clone(),
            relators,
        })
    }

    pub fn metadata(&self) -> Metadata {
        let (virtually_nilpotent, word, depth, distortion) = match self.spec {
            GroupSpec::FreeAbelian { .. } => (true, "e1", 1, DistortionClass::Linear),
            GroupSpec::Heisenberg => (
                true,
                "x y x^-1 y^-1",
                2,
                DistortionClass::Polynomial { degree: 2 },
            ),
            GroupSpec::BaumslagSolitar { .. } => (false, "a", 1, DistortionClass::Exponential),
            GroupSpec::Sol { .. } => (false, "a", 1, DistortionClass::Exponential),
            GroupSpec::Ut3Lamp { .. } => (false, "z", 2, DistortionClass::Exponential),
        };
        let distinguished_word = self.parse_word(word).expect("static word");
        Metadata {
            generators: self.names.clone(),
            presentation: self.presentation(),
            virtually_nilpotent,
            distinguished: self.evaluate_word(&distinguished_word).unwrap(),
            distinguished_word,
            nilpotent_depth: depth,
            distortion,
        }
    }

    /// `k` with `g = x^k` for the distinguished element `x`, if any.
    pub fn distinguished_exponent(&self, g: &GroupElement) -> Option<BigInt> {
        let zero = |v: &BigInt| v.is_zero();
        match g {
            GroupElement::FreeAbelian(v) if v[1..].iter().all(zero) => Some(v[0].clone()),
            GroupElement::Heisenberg { a, b, c } if zero(a) && zero(b) => Some(c.clone()),
            GroupElement::Bs { q, s: 0 } if q.is_integer() => Some(q.numerator().clone()),
            GroupElement::Sol { v, s: 0 } if zero(&v[1]) => Some(v[0].clone()),
            GroupElement::Ut3Lamp { x, y, z, s: 0 } if x.is_zero() && y.is_zero() && z.is_integer() => {
                Some(z.numerator().clone())
            }
            _ => None,
        }
    }

    pub fn format_element(&self, g: &GroupElement) -> String {
        let base = self.base().unwrap_or(1);
        match g {
            GroupElement::FreeAbelian(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(", "))
            }
            GroupElement::Heisenberg { a, b, c } => format!("({a}, {b}, {c})"),
            GroupElement::Bs { q, s } => format!("({}, {s})", q.fmt_with_base(base)),
            GroupElement::Sol { v, s } => format!("(({}, {}), {s})", v[0], v[1]),
            GroupElement::Ut3Lamp { x, y, z, s } => format!(
                "({}, {}, {}, {s})",
                x.fmt_with_base(base),
                y.fmt_with_base(base),
                z.fmt_with_base(base)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs2() -> Group {
        Group::parse("bs:1:2").unwrap()
    }

    fn half() -> MAdic {
        MAdic::new(1, 1, 2)
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["z:3", "heis", "bs:1:2", "sol:2,1,1,1", "ut3lamp:2"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "sol".parse::<GroupSpec>().unwrap().to_string(),
            "sol:2,1,1,1"
        );
    }

    #[test]
    fn spec_validation() {
        assert!("bs:1:1".parse::<GroupSpec>().is_err());
        assert!("bs:2:3".parse::<GroupSpec>().is_err());
        assert!("sol:1,1,0,1".parse::<GroupSpec>().is_err());
        assert!("sol:2,1,1,2".parse::<GroupSpec>().is_err());
        assert!("ut3lamp:4".parse::<GroupSpec>().is_err());
        assert!("z:0".parse::<GroupSpec>().is_err());
        assert!("lamp".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn bs_products() {
        let g = bs2();
        let a = GroupElement::bs(1, 0);
        let t = GroupElement::bs(0, 1);
        assert_eq!(g.multiply(&a, &t).unwrap(), GroupElement::bs(1, 1));
        assert_eq!(g.multiply(&t, &a).unwrap(), GroupElement::bs(2, 1));
    }

    #[test]
    fn bs_inverses() {
        let g = bs2();
        assert_eq!(g.invert(&GroupElement::bs(1, 0)).unwrap(), GroupElement::bs(-1, 0));
        assert_eq!(
            g.invert(&GroupElement::bs(1, 1)).unwrap(),
            GroupElement::Bs {
                q: half().neg(),
                s: -1
            }
        );
    }

    #[test]
    fn sol_inverse_uses_a_inverse() {
        let g = Group::parse("sol").unwrap();
        // A⁻¹ (1, 0) = (1, −1)
        assert_eq!(
            g.invert(&GroupElement::sol(1, 0, 1)).unwrap(),
            GroupElement::sol(-1, 1, -1)
        );
    }

    #[test]
    fn powers() {
        let g = bs2();
        let eight = BigInt::from(8);
        assert_eq!(g.power(&GroupElement::bs(1, 0), &eight).unwrap(), GroupElement::bs(8, 0));
        assert_eq!(
            g.power(&GroupElement::bs(1, 1), &BigInt::from(2)).unwrap(),
            GroupElement::bs(3, 2)
        );
        assert_eq!(
            g.power(&GroupElement::bs(1, 1), &BigInt::zero()).unwrap(),
            g.identity()
        );
        let huge = crate::numtheory::witness_exponent(10, 2).value;
        let huge = BigInt::from(huge);
        let ut = Group::parse("ut3lamp:2").unwrap();
        let z = ut.generator(2);
        assert_eq!(
            ut.power(&z, &huge).unwrap(),
            GroupElement::Ut3Lamp {
                x: MAdic::zero(),
                y: MAdic::zero(),
                z: MAdic::integer(huge.clone()),
                s: 0
            }
        );
        assert!(matches!(
            g.power(&GroupElement::bs(0, 1), &huge),
            Err(Error::ExponentTooLarge(_))
        ));
    }

    #[test]
    fn heisenberg_power_matches_repeated_product() {
        let h = Group::parse("heis").unwrap();
        let g = GroupElement::heisenberg(2, -3, 5);
        let mut acc = h.identity();
        for k in 0..7 {
            assert_eq!(h.power(&g, &BigInt::from(k)).unwrap(), acc);
            acc = h.multiply(&acc, &g).unwrap();
        }
        let inv = h.invert(&g).unwrap();
        assert_eq!(h.power(&g, &BigInt::from(-3)).unwrap(), h.power(&inv, &BigInt::from(3)).unwrap());
    }

    #[test]
    fn words() {
        let g = bs2();
        assert_eq!(g.evaluate("t a t^-1").unwrap(), GroupElement::bs(2, 0));
        assert_eq!(g.evaluate("").unwrap(), g.identity());
        let h = Group::parse("heis").unwrap();
        assert_eq!(h.evaluate("x y x^-1 y^-1").unwrap(), GroupElement::heisenberg(0, 0, 1));
        assert!(matches!(g.evaluate("q"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn family_mismatch() {
        let g = bs2();
        assert_eq!(
            g.multiply(&GroupElement::heisenberg(1, 0, 0), &g.identity()),
            Err(Error::FamilyMismatch("bs"))
        );
    }

    #[test]
    fn relators_vanish() {
        for s in ["z:3", "heis", "bs:1:2", "bs:1:3", "bs:1:5", "sol", "sol:3,2,1,1", "sol:-3,1,-1,0"] {
            let g = Group::parse(s).unwrap();
            let pres = g.presentation().unwrap();
            for r in &pres.relators {
                assert!(g.is_identity(&g.evaluate_word(r).unwrap()), "{s}: {}", r.display(&pres.generators));
            }
        }
        assert!(Group::parse("ut3lamp:2").unwrap().presentation().is_none());
    }

    #[test]
    fn metadata_examples() {
        let md = bs2().metadata();
        assert_eq!(md.generators, vec!["a", "t"]);
        assert_eq!(md.presentation.unwrap().relator_strings(), vec!["t a t^-1 a^-2"]);
        assert_eq!(md.nilpotent_depth, 1);
        assert!(!md.virtually_nilpotent);
        assert!(Group::parse("heis").unwrap().metadata().virtually_nilpotent);

        let ut = Group::parse("ut3lamp:2").unwrap();
        let md = ut.metadata();
        assert_eq!(md.distinguished, GroupElement::ut3lamp(0, 0, 1, 0));
        assert_eq!(md.nilpotent_depth, 2);
        // z is the commutator of the x and y generators
        assert_eq!(ut.evaluate("x y x^-1 y^-1").unwrap(), md.distinguished);
    }

    #[test]
    fn conjugation_identities() {
        for m in 2..=5u64 {
            let g = Group::new(GroupSpec::BaumslagSolitar { m }).unwrap();
            let a = g.generator(0);
            assert_eq!(
                g.evaluate("t a t^-1").unwrap(),
                g.power(&a, &BigInt::from(m)).unwrap()
            );
            for k in -20..=20i64 {
                match g.power(&a, &BigInt::from(k)).unwrap() {
                    GroupElement::Bs { q, .. } => assert!(q.is_integer()),
                    _ => unreachable!(),
                }
            }
        }
        for p in [2u64, 3, 5] {
            let g = Group::new(GroupSpec::Ut3Lamp { p }).unwrap();
            let z = g.generator(2);
            assert_eq!(
                g.evaluate("d z d^-1").unwrap(),
                g.power(&z, &BigInt::from(p * p)).unwrap()
            );
        }
    }
}
