//! Lower bounds on `D_G(x^{α_i})` from divisibility alone.
//!
//! Let `φ: G → H` with `|H|` below the claimed bound. For `m = 1` the order
//! of `φ(x)` is below `p_i`, so it divides `α_i = lcm(1, …, p_i − 1)`. For
//! `m > 1`, after passing to a quotient whose Fitting subgroup `F` is a
//! `q`-group, `φ(x)` is a nontrivial element of `γ_m(F)`. Primes `q ≥ p_i`
//! force `|H| ≥ q^{m+1}`. For `q < p_i` the order of `φ(x)` is a power `q^e`
//! with `q^e ≤ |γ_m(F)| ≤ |F| / q^m`, and the certificate checks that every
//! such `e` is at most the `q`-valuation of `α_i`.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement, Metadata};
use crate::groups::DistortionClass;
use crate::numtheory::{lcm_range_valuation, primes_up_to, witness_exponent, WitnessExponent};

/// How the divisibility step was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum DivisibilityArgument {
    /// Every `k < p` divides `α`.
    SmallOrders { checked_up_to: u64 },
    /// One entry per prime `q < p`.
    PrimeCases { cases: Vec<PrimeCase> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCase {
    pub q: u64,
    /// `q^v ≤ p − 1 < q^{v+1}`.
    pub v: u32,
    pub alpha_valuation: u32,
    /// Largest `e` with `q^e < p^{m+1}`: the order bound read off `|F|` alone.
    pub coarse_max_exponent: u32,
    pub coarse_ok: bool,
    /// Largest `e` with `q^{e+m} < p^{m+1}`, using `|γ_m(F)| ≤ |F| / q^m`.
    pub max_exponent: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArithmeticCertificate {
    pub group: String,
    pub base: String,
    pub witness: WitnessExponent,
    /// `D_G(x^{α}) ≥ bound`.
    pub bound: u64,
    pub argument: DivisibilityArgument,
    pub valid: bool,
}

/// The hypotheses of the lower-bound theorem, as declared in the metadata.
pub fn check_hypotheses(group: &Group) -> Result<Metadata> {
    let meta = group.metadata();
    if meta.virtually_nilpotent {
        return Err(Error::Refused(format!("{} is virtually nilpotent", group.spec())));
    }
    if meta.distortion != DistortionClass::Exponential {
        return Err(Error::Refused(format!("{} has no declared distorted element", group.spec())));
    }
    Ok(meta)
}

/// Largest `e` with `q^e < limit`.
fn max_exponent_below(q: u64, limit: u128) -> u32 {
    let mut e = 0;
    let mut acc = q as u128;
    while acc < limit {
        e += 1;
        acc *= q as u128;
    }
    e
}

fn prime_cases(p: u64, m: u32) -> Vec<PrimeCase> {
    let limit = (p as u128).pow(m + 1);
    primes_up_to(p - 1)
        .into_iter()
        .map(|q| {
            let v = lcm_range_valuation(q, p - 1);
            let alpha_valuation = v * WitnessExponent::lcm_power(m);
            let coarse = max_exponent_below(q, limit);
            // q^{e+m} < p^{m+1}
            let refined = max_exponent_below(q, limit).saturating_sub(m);
            PrimeCase {
                q,
                v,
                alpha_valuation,
                coarse_max_exponent: coarse,
                coarse_ok: coarse <= alpha_valuation,
                max_exponent: refined,
                ok: refined <= alpha_valuation,
            }
        })
        .collect()
}

/// Certificate `D_G(x^{α_i}) ≥ p_i` (`m = 1`) or `≥ p_i^{m+1}` (`m > 1`)
/// for the distinguished element `x` and any `m` up to its declared depth.
pub fn arithmetic_lower_bound(group: &Group, x_base: &GroupElement, i: usize, m: u32) -> Result<ArithmeticCertificate> {
    let meta = check_hypotheses(group)?;
    if *x_base != meta.distinguished {
        return Err(Error::Refused(format!(
            "{} is not the declared distorted element of {}",
            group.format_element(x_base),
            group.spec()
        )));
    }
    if i == 0 || m == 0 || m > meta.nilpotent_depth {
        return Err(Error::Precondition(format!(
            "need i ≥ 1 and 1 ≤ m ≤ {} (declared depth)",
            meta.nilpotent_depth
        )));
    }
    let witness = witness_exponent(i, m);
    let p = witness.prime;
    let (bound, argument, valid) = if m == 1 {
        let ok = (1..p).all(|k| (&witness.value % BigUint::from(k)).is_zero());
        (p, DivisibilityArgument::SmallOrders { checked_up_to: p - 1 }, ok)
    } else {
        let cases = prime_cases(p, m);
        let ok = cases.iter().all(|c| c.ok);
        (p.pow(m + 1), DivisibilityArgument::PrimeCases { cases }, ok)
    };
    Ok(ArithmeticCertificate {
        group: group.spec().to_string(),
        base: meta.distinguished_word.display(&meta.generators).to_string(),
        witness,
        bound,
        argument,
        valid,
    })
}
