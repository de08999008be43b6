//! The finite-group facts behind the lower bound: the order bound for
//! p-groups of given step length, the reduction to quotients with p-group
//! Fitting subgroup, and the order bound for images of deep elements.

use serde::Serialize;

use super::group::{FiniteGroup, Subgroup};
use super::structure::{
    fitting_subgroup, lower_central_series, nilpotency_class, prime_power_base, quotient,
    sylow_decomposition_nilpotent,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma31Report {
    pub p: usize,
    pub order: usize,
    pub step_length: usize,
    /// `p` when `c = 1`, else `p^{c+1}`.
    pub bound: usize,
    pub holds: bool,
}

/// For a `p`-group `Q` of step length `c`: `|Q| ≥ p` if `c = 1`, and
/// `|Q| ≥ p^{c+1}` if `c > 1`.
pub fn lemma31_check(q: &FiniteGroup) -> Result<Lemma31Report> {
    let p = prime_power_base(q.order()).ok_or(Error::NotPGroup(q.order()))?;
    let c = nilpotency_class(q, &q.whole()).expect("p-groups are nilpotent");
    let bound = if c <= 1 { p } else { p.pow(c as u32 + 1) };
    Ok(Lemma31Report {
        p,
        order: q.order(),
        step_length: c,
        bound,
        holds: q.order() >= bound,
    })
}

/// One reduction step: which prime was kept and the kernel's order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub fitting_order: usize,
    pub kept_prime: usize,
    pub kernel_order: usize,
}

#[derive(Clone, Debug)]
pub struct Prop32Result {
    pub p: usize,
    /// Kernel of `H → H/K`, as members of `H`.
    pub kernel: Subgroup,
    pub quotient: FiniteGroup,
    /// Projection `H → H/K` by element index.
    pub projection: Vec<usize>,
    pub h_image: usize,
    pub steps: Vec<ReductionStep>,
}

/// Finds `K ⊴ H` with `hK ≠ K` and `Fitt(H/K)` a `p`-group.
///
/// Writes `h = ∏ a_q` along the Sylow decomposition of `Fitt(H)`, keeps the
/// smallest prime `p` with `a_p ≠ 1`, quotients by the product of the other
/// Sylow factors, and repeats on the quotient until its Fitting subgroup is
/// a `p`-group.
pub fn prop32_reduce(h_group: &FiniteGroup, h: usize) -> Result<Prop32Result> {
    if h == h_group.identity() {
        return Err(Error::Precondition("h must be nontrivial".into()));
    }
    let fitt = fitting_subgroup(h_group)?;
    if !fitt.contains(h) {
        return Err(Error::Precondition("h must lie in the Fitting subgroup".into()));
    }
    let mut current = h_group.clone();
    let mut projection: Vec<usize> = (0..h_group.order()).collect();
    let mut x = h;
    let mut steps = Vec::new();
    loop {
        let f = fitting_subgroup(&current)?;
        if let Some(p) = prime_power_base(f.order()) {
            let kernel = h_group.subgroup((0..h_group.order()).filter(|&y| projection[y] == 0));
            return Ok(Prop32Result {
                p,
                kernel,
                quotient: current,
                projection,
                h_image: x,
                steps,
            });
        }
        let parts = sylow_decomposition_nilpotent(&current, &f)?;
        let keep = parts
            .iter()
            .position(|(_, q)| q.contains(p_part(&current, x, q)) && p_part(&current, x, q) != 0)
            .ok_or_else(|| Error::Precondition("h has no nontrivial Sylow component".into()))?;
        let others: Vec<usize> = parts
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != keep)
            .flat_map(|(_, (_, q))| q.generators().to_vec())
            .collect();
        let k = current.subgroup(others);
        steps.push(ReductionStep {
            fitting_order: f.order(),
            kept_prime: parts[keep].0,
            kernel_order: k.order(),
        });
        let q = quotient(&current, &k)?;
        projection = projection.iter().map(|&y| q.project(y)).collect();
        x = q.project(x);
        debug_assert_ne!(x, 0);
        current = q.group;
    }
}

/// The component of `x` in the Sylow factor `q` of a nilpotent group:
/// `x^u` with `u ≡ 1` modulo the `p`-part of `ord(x)` and `u ≡ 0` modulo the rest.
fn p_part(g: &FiniteGroup, x: usize, q: &Subgroup) -> usize {
    let p = prime_power_base(q.order()).expect("Sylow factor");
    let n = g.element_order(x);
    let mut pa = 1;
    while n.is_multiple_of(pa * p) {
        pa *= p;
    }
    let rest = n / pa;
    // u = rest · (rest⁻¹ mod pa)
    let inv = (1..=pa).find(|&t| (rest * t) % pa == 1 % pa).unwrap_or(1);
    g.pow(x, (rest * inv) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop43Report {
    pub p: usize,
    pub order: usize,
    pub m: usize,
    /// `p` when `m = 1`, else `p^{m+1}`.
    pub bound: usize,
    pub fitting_order: usize,
    pub fitting_step_length: usize,
    pub holds: bool,
}

/// For `H` with `Fitt(H)` a `p`-group and `1 ≠ x ∈ γ_m(Fitt(H))`:
/// `|H| ≥ p` if `m = 1` and `|H| ≥ p^{m+1}` if `m > 1`.
pub fn prop43_check(h_group: &FiniteGroup, x: usize, m: usize) -> Result<Prop43Report> {
    if m == 0 {
        return Err(Error::Precondition("m starts at 1".into()));
    }
    if x == h_group.identity() {
        return Err(Error::Precondition("x must be nontrivial".into()));
    }
    let f = fitting_subgroup(h_group)?;
    let p = prime_power_base(f.order())
        .ok_or_else(|| Error::Precondition(format!("Fitt(H) has order {}, not a prime power", f.order())))?;
    let lcs = lower_central_series(h_group, &f);
    let gamma_m = lcs.terms.get(m - 1).unwrap_or(lcs.terms.last().unwrap());
    if m > lcs.terms.len() || !gamma_m.contains(x) {
        return Err(Error::Precondition(format!("x is not in γ_{m}(Fitt(H))")));
    }
    let bound = if m == 1 { p } else { p.pow(m as u32 + 1) };
    Ok(Prop43Report {
        p,
        order: h_group.order(),
        m,
        bound,
        fitting_order: f.order(),
        fitting_step_length: lcs.length().unwrap_or(0),
        holds: h_group.order() >= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::catalog;
    use crate::finite::structure::fitting_subgroup;

    #[test]
    fn lemma31_examples() {
        let r = lemma31_check(&catalog::heisenberg_mod(2)).unwrap();
        assert_eq!((r.p, r.step_length, r.order, r.bound, r.holds), (2, 2, 8, 8, true));
        let r = lemma31_check(&catalog::cyclic(4)).unwrap();
        assert_eq!((r.step_length, r.bound, r.holds), (1, 2, true));
        let r = lemma31_check(&catalog::dihedral(4)).unwrap();
        assert_eq!((r.p, r.step_length, r.holds), (2, 2, true));
        assert_eq!(lemma31_check(&catalog::symmetric(3)), Err(Error::NotPGroup(6)));
    }

    #[test]
    fn prop32_dihedral() {
        let d6 = catalog::dihedral(6);
        let r = d6.generators()[0];
        let out = prop32_reduce(&d6, r).unwrap();
        assert_eq!(out.p, 2);
        assert_eq!(out.kernel.order(), 3);
        assert!(out.kernel.contains(d6.pow(r, 2)));
        assert_eq!(out.quotient.order(), 4);
        assert_eq!(out.quotient.element_order(out.h_image), 2);
    }

    #[test]
    fn prop32_p_group_is_untouched() {
        let q8 = catalog::quaternion(8);
        let out = prop32_reduce(&q8, q8.generators()[0]).unwrap();
        assert_eq!((out.p, out.kernel.order(), out.steps.len()), (2, 1, 0));
    }

    #[test]
    fn prop32_product() {
        let g = catalog::direct_product(&catalog::cyclic(6), &catalog::symmetric(3));
        let h = g.generators()[0];
        let out = prop32_reduce(&g, h).unwrap();
        assert_ne!(out.h_image, 0);
        let f = fitting_subgroup(&out.quotient).unwrap();
        assert_eq!(prime_power_base(f.order()), Some(out.p));
    }

    #[test]
    fn prop32_preconditions() {
        let s3 = catalog::symmetric(3);
        let transposition = s3.generators()[1];
        assert!(matches!(prop32_reduce(&s3, transposition), Err(Error::Precondition(_))));
        assert!(matches!(prop32_reduce(&s3, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn prop43_examples() {
        let u = catalog::heisenberg_mod(3);
        let z = u.commutator(u.generators()[0], u.generators()[1]);
        let r = prop43_check(&u, z, 2).unwrap();
        assert_eq!((r.p, r.order, r.bound, r.holds), (3, 27, 27, true));
        let r = prop43_check(&u, u.generators()[0], 1).unwrap();
        assert!(r.holds);
        assert!(matches!(prop43_check(&u, u.generators()[0], 2), Err(Error::Precondition(_))));
    }
}
