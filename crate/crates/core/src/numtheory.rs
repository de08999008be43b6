//! Primes, least common multiples of initial segments, the Chebyshev
//! ψ-function and the witness exponents used by the lower-bound argument.
//!
//! The witness exponent for the `i`-th prime `p` (1-indexed, `p_1 = 2`) and
//! depth `m` is `lcm(1, …, p − 1)` when `m = 1` and `lcm(1, …, p − 1)^(m+2)`
//! otherwise. Every integer below `p` divides it, so any finite quotient in
//! which the base element has order `< p` kills the power.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::bigser;

/// All primes `≤ k`, ascending.
pub fn primes_up_to(k: u64) -> Vec<u64> {
    if k < 2 {
        return Vec::new();
    }
    let n = k as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// The `i`-th prime, 1-indexed.
///
/// # Panics
///
/// Panics if `i == 0`.
pub fn nth_prime(i: usize) -> u64 {
    assert!(i >= 1, "primes are 1-indexed");
    // p_i < i (ln i + ln ln i) for i ≥ 6.
    let mut limit = if i < 6 {
        15
    } else {
        let x = i as f64;
        (x * (x.ln() + x.ln().ln())).ceil() as u64 + 1
    };
    loop {
        let primes = primes_up_to(limit);
        if primes.len() >= i {
            return primes[i - 1];
        }
        limit *= 2;
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest `e` with `q^e ≤ k` (`q ≥ 2`).
fn max_power_exponent(q: u64, k: u64) -> u32 {
    let mut e = 0;
    let mut acc = 1u64;
    while let Some(next) = acc.checked_mul(q) {
        if next > k {
            break;
        }
        acc = next;
        e += 1;
    }
    e
}

/// Exponent of the prime `q` in `lcm(1, …, k)`.
pub fn lcm_range_valuation(q: u64, k: u64) -> u32 {
    if k == 0 {
        return 0;
    }
    max_power_exponent(q, k)
}

/// `lcm(1, …, k)`, built as the product of maximal prime powers `≤ k`.
pub fn lcm_range(k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for q in primes_up_to(k) {
        let e = max_power_exponent(q, k);
        acc *= BigUint::from(q).pow(e);
    }
    acc
}

/// `ψ(k) = ln lcm(1, …, k) = Σ_{q ≤ k prime} ⌊log_q k⌋ · ln q`.
pub fn chebyshev_psi(k: u64) -> f64 {
    primes_up_to(k)
        .into_iter()
        .map(|q| f64::from(max_power_exponent(q, k)) * (q as f64).ln())
        .fold(0.0, |a, b| a + b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessExponent {
    pub index: usize,
    pub prime: u64,
    pub depth: u32,
    #[serde(serialize_with = "bigser::biguint")]
    pub value: BigUint,
}

impl WitnessExponent {
    /// Power applied to `lcm(1, …, p − 1)`: `1` for depth one, `m + 2` above.
    pub fn lcm_power(depth: u32) -> u32 {
        if depth <= 1 {
            1
        } else {
            depth + 2
        }
    }

    /// Exponent of the prime `q` in the witness value.
    pub fn valuation(&self, q: u64) -> u32 {
        lcm_range_valuation(q, self.prime - 1) * Self::lcm_power(self.depth)
    }
}

/// Witness exponent `α_i` for the `i`-th prime and nilpotent depth `m`.
///
/// # Panics
///
/// Panics if `i == 0` or `m == 0`.
pub fn witness_exponent(i: usize, m: u32) -> WitnessExponent {
    assert!(m >= 1, "nilpotent depth starts at 1");
    let prime = nth_prime(i);
    let value = lcm_range(prime - 1).pow(WitnessExponent::lcm_power(m));
    WitnessExponent {
        index: i,
        prime,
        depth: m,
        value,
    }
}
