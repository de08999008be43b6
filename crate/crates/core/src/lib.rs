//! Quantified residual finiteness for finitely generated solvable groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`numtheory`]: primes, `lcm(1, …, k)`, Chebyshev ψ and witness exponents.
//! - [`groups`]: normal forms for `Z^d`, the Heisenberg group, `BS(1, m)`,
//!   lattices in Sol and `U₃(Z[1/p]) ⋊ Z`.
//! - [`metrics`]: Cayley-graph balls, certified word-length intervals and
//!   distortion profiles of cyclic subgroups.
//! - [`finite`]: permutation groups, series, Fitting subgroups, quotients and
//!   the checks on finite p-groups used by the lower-bound argument.
//! - [`depth`]: the depth function `D_G`, residual finiteness growth `F_G`,
//!   arithmetic lower-bound certificates and the verification harness.
//! - [`cli`]: the `rfgrow` command-line surface.

pub mod cli;
pub mod depth;
pub mod error;
pub mod finite;
pub mod groups;
pub mod metrics;
pub mod numtheory;

mod bigser;

pub use error::{Error, Result};
pub use groups::{Group, GroupElement, GroupSpec, Word};
