//! Depth intervals for single elements and the growth table `F_{G,S}(n)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::arithmetic::{arithmetic_lower_bound, check_hypotheses, ArithmeticCertificate};
use super::congruence::{congruence_certificate, first_congruence, CongruenceQuotient};
use super::search::QuotientCatalog;
use super::WitnessCertificate;
use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement, Metadata};
use crate::metrics::{ball, upper_word};
use crate::numtheory::witness_exponent;

/// Search budgets: permutation degree `B` and congruence modulus `N_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_degree: usize,
    pub n_max: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 7,
            n_max: 512,
        }
    }
}

/// Why a lower or upper bound holds.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DepthCertificate {
    /// No quotient of order 1 has a nontrivial element.
    Trivial { bound: u64 },
    /// Every image in `S_2, …, S_B` kills the element, so `D > B`.
    SearchExhausted { max_degree: usize, images: usize, bound: u64 },
    Arithmetic(ArithmeticCertificate),
    Witness(WitnessCertificate),
}

impl DepthCertificate {
    fn lower(&self) -> Option<u64> {
        match self {
            DepthCertificate::Trivial { bound } | DepthCertificate::SearchExhausted { bound, .. } => Some(*bound),
            DepthCertificate::Arithmetic(a) => Some(a.bound),
            DepthCertificate::Witness(_) => None,
        }
    }
}

/// `lower ≤ D_G(x) ≤ upper`; `upper = None` means no witness was found.
#[derive(Clone, Debug, Serialize)]
pub struct DepthInterval {
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: bool,
    /// Lower-bound certificates first, then the upper witness if any.
    pub certificates: Vec<DepthCertificate>,
}

impl DepthInterval {
    pub fn lower_certificates(&self) -> impl Iterator<Item = &DepthCertificate> {
        self.certificates.iter().filter(|c| c.lower().is_some())
    }

    pub fn upper_certificate(&self) -> Option<&WitnessCertificate> {
        self.certificates.iter().find_map(|c| match c {
            DepthCertificate::Witness(w) => Some(w),
            _ => None,
        })
    }
}

/// Precomputed search state for repeated depth queries in one group.
pub struct DepthEngine {
    group: Group,
    budget: Budget,
    catalog: Option<QuotientCatalog>,
    candidates: Vec<CongruenceQuotient>,
    meta: Metadata,
    hypotheses: bool,
}

impl DepthEngine {
    pub fn new(group: &Group, budget: Budget) -> Result<Self> {
        let catalog = group
            .presentation()
            .map(|p| QuotientCatalog::build(&p, budget.max_degree))
            .transpose()?;
        Ok(DepthEngine {
            group: group.clone(),
            budget,
            catalog,
            candidates: CongruenceQuotient::candidates(group, budget.n_max),
            meta: group.metadata(),
            hypotheses: check_hypotheses(group).is_ok(),
        })
    }

    pub fn catalog(&self) -> Option<&QuotientCatalog> {
        self.catalog.as_ref()
    }

    /// Strongest arithmetic certificate for `x = x_base^k`, over every
    /// `m` up to the declared depth and the largest `i` with `α_i | k`.
    fn arithmetic(&self, x: &GroupElement) -> Result<Option<ArithmeticCertificate>> {
        if !self.hypotheses {
            return Ok(None);
        }
        let Some(k) = distinguished_power(&self.group, &self.meta, x) else {
            return Ok(None);
        };
        let k = k.abs();
        let mut best: Option<ArithmeticCertificate> = None;
        for m in 1..=self.meta.nilpotent_depth {
            let mut i = 1;
            // α_i divides α_{i+1}, so stop at the first failure
            loop {
                let a = BigInt::from(witness_exponent(i + 1, m).value);
                if a > k || !k.is_multiple_of(&a) {
                    break;
                }
                i += 1;
            }
            let cert = arithmetic_lower_bound(&self.group, &self.meta.distinguished, i, m)?;
            if cert.valid && best.as_ref().is_none_or(|b| cert.bound > b.bound) {
                best = Some(cert);
            }
        }
        Ok(best)
    }

    pub fn depth_interval(&self, x: &GroupElement) -> Result<DepthInterval> {
        if !self.group.belongs(x) {
            return Err(Error::FamilyMismatch(self.group.spec().family_name()));
        }
        if self.group.is_identity(x) {
            return Err(Error::Precondition("the identity has no finite witness".into()));
        }
        let mut lowers = vec![DepthCertificate::Trivial { bound: 2 }];
        let mut upper: Option<WitnessCertificate> = None;
        if let Some(cat) = &self.catalog {
            let w = upper_word(&self.group, x)?;
            match cat.first_survivor(&w) {
                Some((e, img)) if e.order <= cat.max_degree() => {
                    let cert = e.certificate(img);
                    lowers.push(DepthCertificate::SearchExhausted {
                        max_degree: cat.max_degree(),
                        images: cat.entries().len(),
                        bound: cert.order,
                    });
                    upper = Some(cert);
                }
                found => {
                    lowers.push(DepthCertificate::SearchExhausted {
                        max_degree: cat.max_degree(),
                        images: cat.entries().len(),
                        bound: cat.max_degree() as u64 + 1,
                    });
                    upper = found.map(|(e, img)| e.certificate(img));
                }
            }
        }
        if let Some(a) = self.arithmetic(x)? {
            lowers.push(DepthCertificate::Arithmetic(a));
        }
        if let Some(q) = first_congruence(&self.group, &self.candidates, x) {
            if upper.as_ref().is_none_or(|u| q.order() < u.order) {
                upper = Some(congruence_certificate(&self.group, q, x)?);
            }
        }
        let lower = lowers.iter().filter_map(DepthCertificate::lower).max().unwrap();
        let upper_order = upper.as_ref().map(|u| u.order);
        if let Some(u) = upper_order {
            if u < lower {
                return Err(Error::Precondition(format!(
                    "inconsistent certificates: lower {lower} > upper {u}"
                )));
            }
        }
        let mut certificates = lowers;
        certificates.extend(upper.map(DepthCertificate::Witness));
        Ok(DepthInterval {
            lower,
            upper: upper_order,
            exact: upper_order == Some(lower),
            certificates,
        })
    }

    /// `F_{G,S}(n)` for `n = 1..=n_max` over the exact ball.
    pub fn rf_growth(&self, n_max: usize, node_cap: usize) -> Result<GrowthTable> {
        let table = ball(&self.group, n_max, node_cap)?;
        if table.complete_radius() < n_max {
            return Err(Error::Precondition(format!(
                "ball of radius {n_max} exceeds the node cap {node_cap}"
            )));
        }
        let mut entries = Vec::with_capacity(n_max);
        let mut lower = 0u64;
        let mut upper: Option<u64> = Some(0);
        let mut argmax: Option<usize> = None;
        let mut count = 0;
        for n in 1..=n_max {
            for (pos, g) in table.elements().iter().enumerate().filter(|&(p, _)| table.lengths()[p] == n) {
                let d = self.depth_interval(g)?;
                count += 1;
                if d.lower > lower {
                    lower = d.lower;
                    argmax = Some(pos);
                }
                upper = match (upper, d.upper) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    _ => None,
                };
            }
            entries.push(GrowthEntry {
                radius: n,
                lower,
                upper,
                exact: upper == Some(lower),
                elements: count,
                witness_element: argmax.map(|p| table.word_at(p).display(self.group.generator_names()).to_string()),
            });
        }
        Ok(GrowthTable {
            group: self.group.spec().to_string(),
            budget: self.budget,
            entries,
        })
    }
}

/// `k` with `x = x_base^k` for the declared distinguished element.
fn distinguished_power(group: &Group, meta: &Metadata, x: &GroupElement) -> Option<BigInt> {
    let k = group.distinguished_exponent(x)?;
    if k.is_zero() {
        return None;
    }
    (group.power(&meta.distinguished, &k).ok()? == *x).then_some(k)
}

/// Depth interval for `x` with fresh search state.
pub fn depth_interval(group: &Group, x: &GroupElement, budget: Budget) -> Result<DepthInterval> {
    DepthEngine::new(group, budget)?.depth_interval(x)
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthEntry {
    pub radius: usize,
    /// Maximum of the lower bounds over nontrivial elements of length `≤ n`.
    pub lower: u64,
    /// Maximum of the upper bounds, or `None` if some element has none.
    pub upper: Option<u64>,
    pub exact: bool,
    /// Nontrivial elements of length `≤ n`.
    pub elements: usize,
    /// A geodesic for an element attaining `lower`.
    pub witness_element: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthTable {
    pub group: String,
    pub budget: Budget,
    pub entries: Vec<GrowthEntry>,
}

/// Default node cap for the balls behind [`rf_growth`].
pub const GROWTH_NODE_CAP: usize = 1_000_000;

pub fn rf_growth(group: &Group, n_max: usize, budget: Budget) -> Result<GrowthTable> {
    DepthEngine::new(group, budget)?.rf_growth(n_max, GROWTH_NODE_CAP)
}
