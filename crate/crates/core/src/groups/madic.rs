use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// An element of `Z[1/m]` stored as `num / m^exp`.
///
/// The base `m` is not stored; it belongs to the group the value lives in.
/// Values are kept reduced: either `exp == 0`, or `m ∤ num`. Two reduced
/// values are equal iff their `(num, exp)` pairs are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MAdic {
    num: BigInt,
    exp: u32,
}

impl MAdic {
    pub fn zero() -> Self {
        MAdic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        MAdic {
            num: n.into(),
            exp: 0,
        }
    }

    /// `num / base^exp`, reduced.
    pub fn new(num: impl Into<BigInt>, exp: u32, base: u64) -> Self {
        MAdic {
            num: num.into(),
            exp,
        }
        .reduced(base)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Power of the base in the reduced denominator.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    fn reduced(mut self, base: u64) -> Self {
        if self.num.is_zero() {
            self.exp = 0;
            return self;
        }
        let b = BigInt::from(base);
        while self.exp > 0 {
            let (q, r) = self.num.div_rem(&b);
            if !r.is_zero() {
                break;
            }
            self.num = q;
            self.exp -= 1;
        }
        self
    }

    pub fn neg(&self) -> Self {
        MAdic {
            num: -&self.num,
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Self, base: u64) -> Self {
        let b = BigInt::from(base);
        let exp = self.exp.max(other.exp);
        let lhs = &self.num * b.pow(exp - self.exp);
        let rhs = &other.num * b.pow(exp - other.exp);
        MAdic { num: lhs + rhs, exp }.reduced(base)
    }

    pub fn sub(&self, other: &Self, base: u64) -> Self {
        self.add(&other.neg(), base)
    }

    pub fn mul(&self, other: &Self, base: u64) -> Self {
        MAdic {
            num: &self.num * &other.num,
            exp: self.exp + other.exp,
        }
        .reduced(base)
    }

    pub fn mul_int(&self, k: &BigInt, base: u64) -> Self {
        MAdic {
            num: &self.num * k,
            exp: self.exp,
        }
        .reduced(base)
    }

    /// `self · base^shift` for any integer shift.
    pub fn shift(&self, shift: i64, base: u64) -> Self {
        if self.num.is_zero() || shift == 0 {
            return self.clone();
        }
        if shift < 0 {
            let extra = u32::try_from(-shift).expect("shift fits in u32");
            return MAdic {
                num: self.num.clone(),
                exp: self.exp + extra,
            }
            .reduced(base);
        }
        let s = u32::try_from(shift).expect("shift fits in u32");
        if s <= self.exp {
            // numerator is coprime to the base, nothing cancels
            MAdic {
                num: self.num.clone(),
                exp: self.exp - s,
            }
        } else {
            MAdic {
                num: &self.num * BigInt::from(base).pow(s - self.exp),
                exp: 0,
            }
        }
    }

    /// Residue modulo `n`, with `base` invertible mod `n`.
    pub fn residue(&self, n: u64, base: u64) -> u64 {
        if n == 1 {
            return 0;
        }
        let inv = mod_inverse(base % n, n).expect("base must be invertible modulo n");
        let nb = BigInt::from(n);
        let r = self.num.mod_floor(&nb).to_u64().unwrap();
        let scale = mod_pow(inv, u64::from(self.exp), n);
        ((r as u128 * scale as u128) % n as u128) as u64
    }

    /// `|self|` as a float (saturating).
    pub fn abs_f64(&self, base: u64) -> f64 {
        let n = self.num.abs().to_f64().unwrap_or(f64::INFINITY);
        n / (base as f64).powi(self.exp as i32)
    }

    pub fn cmp_abs_int(&self, k: &BigInt, base: u64) -> Ordering {
        // |num| / base^exp vs k  ⇔  |num| vs k · base^exp
        let rhs = k * BigInt::from(base).pow(self.exp);
        self.num.abs().cmp(&rhs)
    }

    pub fn fmt_with_base(&self, base: u64) -> String {
        if self.exp == 0 {
            self.num.to_string()
        } else if self.exp == 1 {
            format!("{}/{}", self.num, base)
        } else {
            format!("{}/{}^{}", self.num, base, self.exp)
        }
    }
}

impl fmt::Display for MAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/m^{}", self.num, self.exp)
        }
    }
}

pub(crate) fn mod_pow(b: u64, mut e: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut base = (b % n) as u128;
    let n128 = n as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % n128;
        }
        base = base * base % n128;
        e >>= 1;
    }
    acc as u64
}

pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let g = (a as i128).extended_gcd(&(n as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(n as i128) as u64)
}

/// Multiplicative order of `a` modulo `n` (`gcd(a, n) = 1`); 1 for `n = 1`.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if a.gcd(&n) != 1 {
        return None;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    Some(k)
}
