use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::ball::WordMetric;
use super::bounds::{word_length_bounds, LengthInterval};
use crate::bigser;
use crate::error::{Error, Result};
use crate::groups::{DistortionClass, Group, GroupElement};

/// Minimum coefficient of determination for a fit to count.
pub const R2_THRESHOLD: f64 = 0.95;
/// Power-law exponents at or above this read as undistorted.
pub const UNDISTORTED_EXPONENT: f64 = 0.9;
/// Power-law exponents at or below this read as logarithmic growth.
pub const LOGARITHMIC_EXPONENT: f64 = 0.1;
/// Extra slack, in bits, when the strict-distortion band is tested.
pub const BAND_SLACK_BITS: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Undistorted,
    Polynomial { degree: u32 },
    AtLeastExponential,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    #[serde(serialize_with = "bigser::biguint")]
    pub k: BigUint,
    pub interval: LengthInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Least-squares line through `(x, y)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let r2 = if syy > 0.0 && sxx > 0.0 {
        sxy * sxy / (sxx * syy)
    } else {
        // a perfectly flat response is fitted exactly by any line
        1.0
    };
    LinearFit {
        slope,
        intercept: my - slope * mx,
        r2,
    }
}

/// Word-length intervals for `x^k` over a schedule, and what they suggest.
#[derive(Clone, Debug, Serialize)]
pub struct DistortionProfile {
    pub group: String,
    pub base: String,
    pub samples: Vec<Sample>,
    pub classification: Classification,
    /// `log upper` against `log k` on the top half of the samples.
    pub power_fit: LinearFit,
    /// `upper` against `log₂ k` on the top half of the samples.
    pub log_fit: LinearFit,
    /// For exponential distortion, `f(n) = 2^{n/κ}` with `κ = log_fit.slope`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    /// Sample-certified `C₁ k ≤ f(‖x^k‖) ≤ C₂ k` when exponential.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<(f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct ProfileOptions {
    /// Largest exponent in the default schedule.
    pub k_max: BigUint,
    /// Exponents `1..=exact_small` get BFS-exact lengths when in range.
    pub exact_small: u64,
    /// Half-radius and node cap for the exact metric.
    pub bfs_half_radius: usize,
    pub bfs_node_cap: usize,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            k_max: BigUint::one() << 64u32,
            exact_small: 8,
            bfs_half_radius: 5,
            bfs_node_cap: 200_000,
        }
    }
}

/// `1, 2, …, exact_small` followed by the powers of two up to `k_max`.
pub fn default_schedule(opts: &ProfileOptions) -> Vec<BigUint> {
    let mut ks: Vec<BigUint> = (1..=opts.exact_small)
        .map(BigUint::from)
        .filter(|k| *k <= opts.k_max)
        .collect();
    let mut p = BigUint::one();
    while p <= opts.k_max {
        if ks.last().is_none_or(|l| p > *l) {
            ks.push(p.clone());
        }
        p <<= 1u32;
    }
    ks
}

fn log2_big(k: &BigUint) -> f64 {
    let bits = k.bits();
    if bits <= 53 {
        return k.to_f64().unwrap().log2();
    }
    let shift = bits - 53;
    (k >> shift).to_f64().unwrap().log2() + shift as f64
}

pub fn distortion_profile(
    group: &Group,
    x: &GroupElement,
    schedule: &[BigUint],
    opts: &ProfileOptions,
) -> Result<DistortionProfile> {
    if group.is_identity(x) {
        return Err(Error::Precondition("the base element must have infinite order".into()));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) || schedule.first().is_none_or(|k| k.bits() == 0) {
        return Err(Error::Precondition("schedule must be positive and strictly increasing".into()));
    }
    let metric = if opts.exact_small > 0 && opts.bfs_half_radius > 0 {
        Some(WordMetric::new(group, opts.bfs_half_radius, opts.bfs_node_cap)?)
    } else {
        None
    };
    let names = group.generator_names();
    let mut samples = Vec::with_capacity(schedule.len());
    for k in schedule {
        let xk = group.power(x, &BigInt::from(k.clone()))?;
        let mut interval = word_length_bounds(group, &xk)?;
        if let (Some(m), true) = (&metric, *k <= BigUint::from(opts.exact_small)) {
            if let Some((len, w)) = m.geodesic(&xk, usize::MAX) {
                interval = LengthInterval::exact(len as u128, w, names);
            }
        }
        samples.push(Sample {
            k: k.clone(),
            interval,
        });
    }
    Ok(classify(group.spec().to_string(), group.format_element(x), samples))
}

/// Classifies an already-computed sample list.
pub fn classify(group: String, base: String, samples: Vec<Sample>) -> DistortionProfile {
    let usable: Vec<&Sample> = samples
        .iter()
        .filter(|s| s.k >= BigUint::from(2u32) && s.interval.upper > 0)
        .collect();
    let top = &usable[usable.len() / 2..];
    let lk: Vec<f64> = top.iter().map(|s| log2_big(&s.k)).collect();
    let up: Vec<f64> = top.iter().map(|s| s.interval.upper as f64).collect();
    let (power_fit, log_fit) = if top.len() >= 2 {
        let ln_up: Vec<f64> = up.iter().map(|u| u.ln()).collect();
        let ln_k: Vec<f64> = lk.iter().map(|l| l * std::f64::consts::LN_2).collect();
        (linear_fit(&ln_k, &ln_up), linear_fit(&lk, &up))
    } else {
        let nan = LinearFit {
            slope: f64::NAN,
            intercept: f64::NAN,
            r2: 0.0,
        };
        (nan, nan)
    };

    let e = power_fit.slope;
    let classification = if top.len() < 2 {
        Classification::Inconclusive
    } else if e <= LOGARITHMIC_EXPONENT {
        if log_fit.slope > 0.0 && log_fit.r2 >= R2_THRESHOLD {
            Classification::AtLeastExponential
        } else {
            Classification::Inconclusive
        }
    } else if power_fit.r2 < R2_THRESHOLD {
        Classification::Inconclusive
    } else if e >= UNDISTORTED_EXPONENT {
        Classification::Undistorted
    } else {
        Classification::Polynomial {
            degree: (1.0 / e).round().max(2.0) as u32,
        }
    };

    let (kappa, constants) = if classification == Classification::AtLeastExponential {
        let kappa = log_fit.slope;
        let c = certified_constants(&samples, |n| n / kappa);
        (Some(kappa), Some(c))
    } else {
        (None, None)
    };
    DistortionProfile {
        group,
        base,
        samples,
        classification,
        power_fit,
        log_fit,
        kappa,
        constants,
    }
}

/// `(C₁, C₂) = (min f(lower)/k, max f(upper)/k)`, with `log₂ f` given.
fn certified_constants(samples: &[Sample], log2_f: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in samples {
        let lk = log2_big(&s.k);
        lo = lo.min(log2_f(s.interval.lower as f64) - lk);
        hi = hi.max(log2_f(s.interval.upper as f64) - lk);
    }
    (lo.exp2(), hi.exp2())
}

#[derive(Clone, Debug, Serialize)]
pub struct StrictDistortionCheck {
    pub holds: bool,
    /// Rescaling `f(n) = 2^{n/κ}` used for the exponential class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    /// Band for `log₂ f(‖x^k‖) − log₂ k` fitted on the lower half.
    pub band: (f64, f64),
    pub c1: f64,
    pub c2: f64,
    pub violations: Vec<String>,
}

/// Tests `C₁ k ≤ f(‖x^k‖) ≤ C₂ k` for the class `f`.
///
/// The band `[log₂ C₁, log₂ C₂]` is read off the lower half of the samples,
/// widened by [`BAND_SLACK_BITS`], and every sample must then stay inside it
/// with `f` applied to the certified lower and upper bounds. For the
/// exponential class `f(n) = 2^{n/κ}`, with `κ` fitted on the upper bounds.
pub fn check_strict_distortion(profile: &DistortionProfile, f: &DistortionClass) -> StrictDistortionCheck {
    let kappa = match f {
        DistortionClass::Exponential => Some(profile.kappa.unwrap_or_else(|| {
            let lk: Vec<f64> = profile.samples.iter().map(|s| log2_big(&s.k)).collect();
            let up: Vec<f64> = profile.samples.iter().map(|s| s.interval.upper as f64).collect();
            linear_fit(&lk, &up).slope
        })),
        _ => None,
    };
    let log2_f = |n: f64| -> f64 {
        match f {
            DistortionClass::Linear => n.log2(),
            DistortionClass::Polynomial { degree } => f64::from(*degree) * n.log2(),
            DistortionClass::Exponential => n / kappa.unwrap(),
        }
    };
    let g: Vec<(f64, f64)> = profile
        .samples
        .iter()
        .map(|s| {
            let lk = log2_big(&s.k);
            (log2_f(s.interval.lower as f64) - lk, log2_f(s.interval.upper as f64) - lk)
        })
        .collect();
    let half = &g[..g.len().div_ceil(2)];
    let lo = half.iter().map(|p| p.0).fold(f64::INFINITY, f64::min) - BAND_SLACK_BITS;
    let hi = half.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max) + BAND_SLACK_BITS;
    let kappa_ok = kappa.is_none_or(|k| k.is_finite() && k > 0.0);
    let mut violations = Vec::new();
    for (s, (glo, ghi)) in profile.samples.iter().zip(&g) {
        if !kappa_ok || !(glo.is_finite() && *glo >= lo && *ghi <= hi) {
            violations.push(format!("k = {}: [{glo:.3}, {ghi:.3}] outside [{lo:.3}, {hi:.3}]", s.k));
        }
    }
    let (c1, c2) = certified_constants(&profile.samples, log2_f);
    StrictDistortionCheck {
        holds: violations.is_empty(),
        kappa,
        band: (lo, hi),
        c1,
        c2,
        violations,
    }
}

/// Writes `k,lower,upper,witness_len` rows.
pub fn write_profile_csv<W: Write>(profile: &DistortionProfile, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parse(format!("csv: {e}"));
    w.write_record(["k", "lower", "upper", "witness_len"]).map_err(io)?;
    for s in &profile.samples {
        w.write_record([
            s.k.to_string(),
            s.interval.lower.to_string(),
            s.interval.upper.to_string(),
            s.interval.upper_witness.len().to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    Ok(())
}
