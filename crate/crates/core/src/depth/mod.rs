//! The depth function `D_G(x)`, the smallest order of a finite quotient in
//! which `x` survives, and the growth `F_{G,S}(n)`, its maximum over the
//! nontrivial elements of the `n`-ball.
//!
//! Three sources feed a [`DepthInterval`]:
//!
//! - exhaustive homomorphism search into `S_2, …, S_B` ([`hom_search`],
//!   [`QuotientCatalog`]), exact whenever the best image has order `≤ B`;
//! - congruence quotients of each family ([`congruence_depth_upper`]);
//! - the arithmetic lower bound for witness powers `x^{α_i}`
//!   ([`arithmetic_lower_bound`]).
//!
//! [`theorem_verify`] tabulates the resulting lower bounds on `F` against
//! word length.

mod arithmetic;
mod congruence;
mod interval;
mod search;
mod smallperm;
mod verify;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::finite::{order_cap, FiniteGroup, Perm};
use crate::groups::{Group, GroupElement};
use crate::metrics::upper_word;

pub use arithmetic::{
    arithmetic_lower_bound, check_hypotheses, ArithmeticCertificate, DivisibilityArgument, PrimeCase,
};
pub use congruence::{congruence_certificate, congruence_depth_upper, matrix_order, CongruenceQuotient};
pub use interval::{
    depth_interval, rf_growth, Budget, DepthCertificate, DepthEngine, DepthInterval, GrowthEntry,
    GrowthTable, GROWTH_NODE_CAP,
};
pub use search::{case_audit, hom_search, AuditReport, CatalogEntry, HomSearchReport, QuotientCatalog};
pub use smallperm::{closure_order, cycle_type_representatives, symmetric_group, SmallPerm, MAX_DEGREE};
pub use verify::{
    recorded_floor, theorem_verify, VerificationPoint, VerificationReport, VerifyOptions,
    RATIO_FLOOR_DEPTH_ONE, RATIO_FLOOR_DEPTH_TWO,
};

/// Where a witness quotient came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum QuotientSource {
    /// Generator images found by [`hom_search`].
    Permutation { degree: usize },
    Congruence(CongruenceQuotient),
}

fn perm_str<S: Serializer>(p: &Perm, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn perms_str<S: Serializer>(ps: &[Perm], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(|p| p.to_string()))
}

/// A finite quotient given by generator images, with `x` surviving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCertificate {
    pub quotient: QuotientSource,
    pub order: u64,
    /// False only when the order exceeds the closure cap and was taken from
    /// the quotient's formula.
    pub order_verified: bool,
    pub degree: usize,
    #[serde(serialize_with = "perms_str")]
    pub generator_images: Vec<Perm>,
    #[serde(serialize_with = "perm_str")]
    pub target_image: Perm,
}

impl WitnessCertificate {
    /// Rechecks the certificate for `x`: relators map to the identity, an
    /// explicit word for `x` maps to the nontrivial target image, and the
    /// image has the stated order (below the closure cap).
    pub fn check(&self, group: &Group, x: &GroupElement) -> Result<bool> {
        if let Some(p) = group.presentation() {
            if !p
                .relators
                .iter()
                .all(|r| congruence::evaluate_perms(&self.generator_images, r).is_identity())
            {
                return Ok(false);
            }
        }
        let img = congruence::evaluate_perms(&self.generator_images, &upper_word(group, x)?);
        if img != self.target_image || img.is_identity() {
            return Ok(false);
        }
        if self.order as usize <= order_cap() {
            let h = FiniteGroup::closure(&self.generator_images, self.order as usize + 1)?;
            return Ok(h.order() as u64 == self.order);
        }
        Ok(!self.order_verified)
    }
}
