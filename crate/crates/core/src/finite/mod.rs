//! Finite permutation groups, materialised in full.
//!
//! Every subgroup question is answered by brute force over the element
//! list, which is fine at the orders that matter here (the finite witnesses
//! are small). Orders are capped at [`DEFAULT_ORDER_CAP`], overridable
//! through the `RFGROW_ORDER_CAP` environment variable.

pub mod catalog;
mod checks;
mod group;
mod perm;
mod structure;

pub use checks::{
    lemma31_check, prop32_reduce, prop43_check, Lemma31Report, Prop32Result, Prop43Report,
    ReductionStep,
};
pub use group::{order_cap, FiniteGroup, Subgroup, SubgroupInfo, DEFAULT_ORDER_CAP, TABLE_LIMIT};
pub use perm::{parse_perms, Perm};
pub use structure::{
    derived_series, factorize, fitting_report, fitting_subgroup, fitting_via_cores, is_solvable,
    lower_central_series, nilpotency_class, normal_subgroups, p_core, prime_divisors,
    prime_power_base, quotient, subgroup_info, sylow_decomposition_nilpotent, sylow_subgroup,
    FittingReport, Quotient, Series,
};
