use serde::Serialize;

use super::group::{FiniteGroup, Subgroup, SubgroupInfo};
use super::perm::Perm;
use crate::error::{Error, Result};
use crate::numtheory::primes_up_to;

/// `[A, B]` for `A` normal in `ambient` and `B = ambient`: the normal closure
/// of `[a, s]` over `a ∈ A` and generators `s` of `ambient`.
fn commutator_with(g: &FiniteGroup, a: &Subgroup, ambient: &Subgroup) -> Subgroup {
    let comms: Vec<usize> = a
        .members()
        .iter()
        .flat_map(|&x| ambient.generators().iter().map(move |&s| (x, s)))
        .map(|(x, s)| g.commutator(x, s))
        .collect();
    g.normal_closure_in(ambient, comms)
}

#[derive(Clone, Debug)]
pub struct Series {
    /// Terms from the subgroup itself down to the stable term.
    pub terms: Vec<Subgroup>,
}

impl Series {
    /// `true` iff the series reaches the trivial group.
    pub fn reaches_trivial(&self) -> bool {
        self.terms.last().is_some_and(Subgroup::is_trivial)
    }

    /// Number of nontrivial terms when the series reaches `{1}`.
    pub fn length(&self) -> Option<usize> {
        self.reaches_trivial()
            .then(|| self.terms.iter().filter(|t| !t.is_trivial()).count())
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

/// `γ₁ = H`, `γ_{i+1} = [γ_i, H]`, until the terms stabilise.
///
/// [`Series::length`] is the step length `c` (0 for the trivial group).
pub fn lower_central_series(g: &FiniteGroup, h: &Subgroup) -> Series {
    let mut terms = vec![h.clone()];
    loop {
        let next = commutator_with(g, terms.last().unwrap(), h);
        if next.order() == terms.last().unwrap().order() {
            return Series { terms };
        }
        terms.push(next);
    }
}

/// `H^{(0)} = H`, `H^{(i+1)} = [H^{(i)}, H^{(i)}]`, until stable.
pub fn derived_series(g: &FiniteGroup, h: &Subgroup) -> Series {
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().unwrap();
        let next = commutator_with(g, last, last);
        if next.order() == last.order() {
            return Series { terms };
        }
        terms.push(next);
    }
}

pub fn is_solvable(g: &FiniteGroup) -> bool {
    derived_series(g, &g.whole()).reaches_trivial()
}

/// Step length of `H` if nilpotent.
pub fn nilpotency_class(g: &FiniteGroup, h: &Subgroup) -> Option<usize> {
    lower_central_series(g, h).length()
}

pub fn subgroup_info(g: &FiniteGroup, h: &Subgroup) -> SubgroupInfo {
    let step = nilpotency_class(g, h);
    SubgroupInfo {
        order: h.order(),
        normal: g.is_normal(h),
        nilpotent: step.is_some(),
        step_length: step,
        generators: h.generators().iter().map(|&x| g.element(x).to_string()).collect(),
    }
}

/// The Fitting subgroup, generated by all `g` whose normal closure is nilpotent.
///
/// The normal closure only depends on the conjugacy class, so each class is
/// tested once. Rejects non-solvable input.
pub fn fitting_subgroup(g: &FiniteGroup) -> Result<Subgroup> {
    if !is_solvable(g) {
        return Err(Error::NotSolvable);
    }
    let good: Vec<usize> = g
        .conjugacy_classes()
        .into_iter()
        .filter(|class| nilpotency_class(g, &g.normal_closure([class[0]])).is_some())
        .flatten()
        .collect();
    Ok(g.subgroup(good))
}

/// Elements of `p`-power order.
fn p_elements(g: &FiniteGroup, p: usize) -> impl Iterator<Item = usize> + '_ {
    (0..g.order()).filter(move |&x| is_power_of(g.element_order(x), p))
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Prime factorisation `n = ∏ p^a`, primes ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut a = 0;
        while n.is_multiple_of(p) {
            n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some(p)` if `n = p^a` with `a ≥ 1`.
pub fn prime_power_base(n: usize) -> Option<usize> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// A Sylow `p`-subgroup: a maximal `p`-subgroup grown from `p`-elements.
///
/// One pass suffices. If a later `p`-element `x` could still extend the final
/// group `P` to a `p`-group, it could also have extended the smaller group
/// present when `x` was tried.
pub fn sylow_subgroup(g: &FiniteGroup, p: usize) -> Subgroup {
    let mut sylow = g.trivial();
    let target = factorize(g.order())
        .into_iter()
        .find(|&(q, _)| q == p)
        .map_or(1, |(_, a)| p.pow(a));
    for x in p_elements(g, p).collect::<Vec<_>>() {
        if sylow.order() == target {
            break;
        }
        if sylow.contains(x) {
            continue;
        }
        let bigger = g.subgroup(sylow.generators().iter().copied().chain([x]));
        if is_power_of(bigger.order(), p) {
            sylow = bigger;
        }
    }
    sylow
}

/// `O_p(G)`, the intersection of all conjugates of a Sylow `p`-subgroup.
pub fn p_core(g: &FiniteGroup, p: usize) -> Subgroup {
    let sylow = sylow_subgroup(g, p);
    let mut core: Vec<bool> = (0..g.order()).map(|x| sylow.contains(x)).collect();
    for h in 0..g.order() {
        for (x, keep) in core.iter_mut().enumerate() {
            if *keep && !sylow.contains(g.conjugate(x, h)) {
                *keep = false;
            }
        }
    }
    g.subgroup((0..g.order()).filter(|&x| core[x]))
}

/// `Fitt(G) = ∏_p O_p(G)`, independent of [`fitting_subgroup`].
pub fn fitting_via_cores(g: &FiniteGroup) -> Result<Subgroup> {
    if !is_solvable(g) {
        return Err(Error::NotSolvable);
    }
    let mut gens = Vec::new();
    for (p, _) in factorize(g.order()) {
        gens.extend_from_slice(p_core(g, p).members());
    }
    Ok(g.subgroup(gens))
}

/// `N = ∏ Q_p` with `Q_p` the elements of `p`-power order.
pub fn sylow_decomposition_nilpotent(g: &FiniteGroup, n: &Subgroup) -> Result<Vec<(usize, Subgroup)>> {
    if nilpotency_class(g, n).is_none() {
        return Err(Error::NotNilpotent);
    }
    let mut parts = Vec::new();
    for (p, a) in factorize(n.order()) {
        let members: Vec<usize> = n
            .members()
            .iter()
            .copied()
            .filter(|&x| is_power_of(g.element_order(x), p))
            .collect();
        let q = g.subgroup_from_members(members)?;
        debug_assert_eq!(q.order(), p.pow(a));
        parts.push((p, q));
    }
    let product: usize = parts.iter().map(|(_, q)| q.order()).product();
    if product != n.order() {
        return Err(Error::Precondition("Sylow parts do not multiply to |N|".into()));
    }
    Ok(parts)
}

/// A quotient group with the projection from the parent.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the index of `xK` in [`Quotient::group`].
    pub projection: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    /// Kernel of the projection, as members of the parent.
    pub fn kernel_members(&self) -> Vec<usize> {
        (0..self.projection.len())
            .filter(|&x| self.projection[x] == 0)
            .collect()
    }
}

/// `G/K`, realised as the right-multiplication action on cosets of `K`.
pub fn quotient(g: &FiniteGroup, k: &Subgroup) -> Result<Quotient> {
    if !g.is_normal(k) {
        return Err(Error::NotNormal);
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset[x] != usize::MAX {
            continue;
        }
        for &m in k.members() {
            coset[g.mul(x, m)] = reps.len();
        }
        reps.push(x);
    }
    let action = |x: usize| -> Perm {
        let images = reps.iter().map(|&r| coset[g.mul(r, x)]).collect();
        Perm::from_images(images).expect("coset action is a bijection")
    };
    let gens: Vec<Perm> = if reps.len() == 1 {
        Vec::new()
    } else {
        g.generators().iter().map(|&s| action(s)).collect()
    };
    let q = FiniteGroup::closure(&gens, g.order().max(1))?;
    // the action of x depends only on its coset
    let images: Vec<usize> = reps
        .iter()
        .map(|&r| {
            if reps.len() == 1 {
                0
            } else {
                q.index_of(&action(r)).expect("image lies in the quotient")
            }
        })
        .collect();
    let projection = coset.iter().map(|&c| images[c]).collect();
    Ok(Quotient {
        group: q,
        projection,
    })
}

/// Every normal subgroup, as joins of normal closures of single elements.
///
/// Exhaustive and quadratic in the number of normal subgroups; meant as a
/// test oracle for small groups.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: Vec<Subgroup> = vec![g.trivial()];
    let mut atoms: Vec<Subgroup> = Vec::new();
    for class in g.conjugacy_classes() {
        let n = g.normal_closure([class[0]]);
        if !atoms.contains(&n) {
            atoms.push(n);
        }
    }
    let mut frontier = vec![g.trivial()];
    while let Some(n) = frontier.pop() {
        for a in &atoms {
            if a.is_subgroup_of(&n) {
                continue;
            }
            let j = g.subgroup(n.generators().iter().chain(a.generators()).copied());
            if !found.contains(&j) {
                found.push(j.clone());
                frontier.push(j);
            }
        }
    }
    found.sort_by_key(|s| (s.order(), s.members().to_vec()));
    found
}

/// Fitting subgroup summary for reports.
#[derive(Clone, Debug, Serialize)]
pub struct FittingReport {
    pub order: usize,
    pub fitting: SubgroupInfo,
    pub cores: Vec<(usize, usize)>,
    pub agrees_with_cores: bool,
}

pub fn fitting_report(g: &FiniteGroup) -> Result<FittingReport> {
    let f = fitting_subgroup(g)?;
    let oracle = fitting_via_cores(g)?;
    let cores = factorize(g.order())
        .into_iter()
        .map(|(p, _)| (p, p_core(g, p).order()))
        .collect();
    Ok(FittingReport {
        order: g.order(),
        fitting: subgroup_info(g, &f),
        cores,
        agrees_with_cores: f == oracle,
    })
}

/// Primes dividing `n`, ascending.
pub fn prime_divisors(n: usize) -> Vec<usize> {
    primes_up_to(n as u64)
        .into_iter()
        .map(|p| p as usize)
        .filter(|p| n.is_multiple_of(*p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::catalog;

    #[test]
    fn series_examples() {
        let s3 = catalog::symmetric(3);
        let lcs = lower_central_series(&s3, &s3.whole());
        assert_eq!(lcs.orders(), vec![6, 3]);
        assert!(!lcs.reaches_trivial());
        assert_eq!(derived_series(&s3, &s3.whole()).orders(), vec![6, 3, 1]);
        let s4 = catalog::symmetric(4);
        assert_eq!(derived_series(&s4, &s4.whole()).orders(), vec![24, 12, 4, 1]);
        let u3 = catalog::heisenberg_mod(2);
        assert_eq!(nilpotency_class(&u3, &u3.whole()), Some(2));
        let z12 = catalog::cyclic(12);
        assert_eq!(nilpotency_class(&z12, &z12.whole()), Some(1));
        assert_eq!(derived_series(&z12, &z12.whole()).length(), Some(1));
        assert!(!is_solvable(&catalog::alternating(5)));
    }

    #[test]
    fn fitting_examples() {
        let s3 = catalog::symmetric(3);
        assert_eq!(fitting_subgroup(&s3).unwrap().order(), 3);
        let s4 = catalog::symmetric(4);
        assert_eq!(fitting_subgroup(&s4).unwrap().order(), 4);
        assert_eq!(fitting_via_cores(&s4).unwrap().order(), 4);
        let d4 = catalog::dihedral(4);
        assert_eq!(fitting_subgroup(&d4).unwrap().order(), 8);
        let d6 = catalog::dihedral(6);
        let f = fitting_subgroup(&d6).unwrap();
        assert_eq!(f.order(), 6);
        assert_eq!(nilpotency_class(&d6, &f), Some(1));
        assert!(f.members().iter().any(|&x| d6.element_order(x) == 6));
        assert_eq!(fitting_subgroup(&catalog::alternating(5)), Err(Error::NotSolvable));
    }

    #[test]
    fn sylow_decompositions() {
        let z6 = catalog::cyclic(6);
        let parts = sylow_decomposition_nilpotent(&z6, &z6.whole()).unwrap();
        let shape: Vec<(usize, usize)> = parts.iter().map(|(p, q)| (*p, q.order())).collect();
        assert_eq!(shape, vec![(2, 2), (3, 3)]);
        let z12 = catalog::cyclic(12);
        let parts = sylow_decomposition_nilpotent(&z12, &z12.whole()).unwrap();
        let shape: Vec<(usize, usize)> = parts.iter().map(|(p, q)| (*p, q.order())).collect();
        assert_eq!(shape, vec![(2, 4), (3, 3)]);
        let u3 = catalog::heisenberg_mod(2);
        assert_eq!(sylow_decomposition_nilpotent(&u3, &u3.whole()).unwrap().len(), 1);
        let s3 = catalog::symmetric(3);
        assert_eq!(
            sylow_decomposition_nilpotent(&s3, &s3.whole()).unwrap_err(),
            Error::NotNilpotent
        );
    }

    #[test]
    fn quotients() {
        let d6 = catalog::dihedral(6);
        let r = d6.generators()[0];
        let k = d6.subgroup([d6.pow(r, 3)]);
        let q = quotient(&d6, &k).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(!is_nilpotent_group(&q.group));
        let triv = quotient(&d6, &d6.trivial()).unwrap();
        assert_eq!(triv.group.order(), 12);
        let all = quotient(&d6, &d6.whole()).unwrap();
        assert_eq!(all.group.order(), 1);
        let s = d6.subgroup([d6.generators()[1]]);
        assert_eq!(quotient(&d6, &s).unwrap_err(), Error::NotNormal);
        // the projection is a homomorphism
        for x in 0..d6.order() {
            for y in 0..d6.order() {
                assert_eq!(q.project(d6.mul(x, y)), q.group.mul(q.project(x), q.project(y)));
            }
        }
    }

    fn is_nilpotent_group(g: &FiniteGroup) -> bool {
        nilpotency_class(g, &g.whole()).is_some()
    }

    #[test]
    fn normal_subgroup_counts() {
        assert_eq!(normal_subgroups(&catalog::symmetric(3)).len(), 3);
        assert_eq!(normal_subgroups(&catalog::symmetric(4)).len(), 4);
        assert_eq!(normal_subgroups(&catalog::quaternion(8)).len(), 6);
        assert_eq!(normal_subgroups(&catalog::dihedral(4)).len(), 6);
    }
}
