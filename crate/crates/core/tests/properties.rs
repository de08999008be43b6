//! Property suites: group axioms, metric consistency, depth symmetry and the
//! finite-group facts behind the lower bound.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;
use rfgrow::depth::{Budget, DepthEngine};
use rfgrow::finite::catalog::{p_groups, solvable_groups, Entry};
use rfgrow::finite::{
    fitting_subgroup, lemma31_check, parse_perms, prime_power_base, prop32_reduce, FiniteGroup, Perm,
};
use rfgrow::metrics::word_length_bounds;
use rfgrow::numtheory::witness_exponent;
use rfgrow::{Group, GroupElement};

const SPECS: &[&str] = &["z:2", "heis", "bs:1:2", "bs:1:3", "sol:2,1,1,1", "ut3lamp:2"];

/// Random word as (generator index, exponent) pairs, reduced modulo the
/// generator count at evaluation time.
fn word() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..4, -3i64..=3), 0..8)
}

fn eval(g: &Group, w: &[(usize, i64)]) -> GroupElement {
    w.iter().fold(g.identity(), |acc, &(i, e)| {
        let x = g.power(&g.generator(i % g.generator_count()), &BigInt::from(e)).unwrap();
        g.multiply(&acc, &x).unwrap()
    })
}

fn spec() -> impl Strategy<Value = &'static str> {
    prop::sample::select(SPECS)
}

fn engine(spec: &str) -> &'static DepthEngine {
    static BS: OnceLock<DepthEngine> = OnceLock::new();
    static Z: OnceLock<DepthEngine> = OnceLock::new();
    let budget = Budget {
        max_degree: 5,
        n_max: 64,
    };
    let cell = if spec == "z:2" { &Z } else { &BS };
    cell.get_or_init(|| DepthEngine::new(&Group::parse(spec).unwrap(), budget).unwrap())
}

/// bs(1, 2) with permutation degree 3.
fn small_engine() -> &'static DepthEngine {
    static SMALL: OnceLock<DepthEngine> = OnceLock::new();
    SMALL.get_or_init(|| {
        let budget = Budget { max_degree: 3, n_max: 64 };
        DepthEngine::new(&Group::parse("bs:1:2").unwrap(), budget).unwrap()
    })
}

fn catalog(p: bool) -> &'static [Entry] {
    static P: OnceLock<Vec<Entry>> = OnceLock::new();
    static S: OnceLock<Vec<Entry>> = OnceLock::new();
    if p {
        P.get_or_init(p_groups)
    } else {
        S.get_or_init(solvable_groups)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(s in spec(), a in word(), b in word(), c in word()) {
        let g = Group::parse(s).unwrap();
        let (x, y, z) = (eval(&g, &a), eval(&g, &b), eval(&g, &c));
        let xy_z = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
        let x_yz = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(g.multiply(&x, &g.identity()).unwrap(), x.clone());
        prop_assert!(g.is_identity(&g.multiply(&x, &g.invert(&x).unwrap()).unwrap()));
        prop_assert!(g.belongs(&x));
    }

    #[test]
    fn powers_agree_with_repeated_products(s in spec(), a in word(), k in -6i64..=6) {
        let g = Group::parse(s).unwrap();
        let x = eval(&g, &a);
        let step = if k >= 0 { x.clone() } else { g.invert(&x).unwrap() };
        let mut acc = g.identity();
        for _ in 0..k.unsigned_abs() {
            acc = g.multiply(&acc, &step).unwrap();
        }
        prop_assert_eq!(g.power(&x, &BigInt::from(k)).unwrap(), acc);
    }

    #[test]
    fn length_bounds_are_consistent(s in spec(), a in word(), b in word()) {
        let g = Group::parse(s).unwrap();
        let (x, y) = (eval(&g, &a), eval(&g, &b));
        let lx = word_length_bounds(&g, &x).unwrap();
        let ly = word_length_bounds(&g, &y).unwrap();
        prop_assert!(lx.lower <= lx.upper);
        prop_assert_eq!(g.evaluate_word(&lx.upper_witness).unwrap(), x.clone());
        // the input word itself is an upper bound
        let input_len: u128 = a.iter().map(|&(_, e)| e.unsigned_abs() as u128).sum();
        prop_assert!(lx.lower <= input_len);
        let xy = g.multiply(&x, &y).unwrap();
        prop_assert!(word_length_bounds(&g, &xy).unwrap().lower <= lx.upper + ly.upper);
        let inv = word_length_bounds(&g, &g.invert(&x).unwrap()).unwrap();
        prop_assert!(inv.lower <= lx.upper && lx.lower <= inv.upper);
    }

    #[test]
    fn depth_is_inverse_symmetric(bs in any::<bool>(), a in word()) {
        let s = if bs { "bs:1:2" } else { "z:2" };
        let g = Group::parse(s).unwrap();
        let x = eval(&g, &a);
        prop_assume!(!g.is_identity(&x));
        let e = engine(s);
        let d = e.depth_interval(&x).unwrap();
        let di = e.depth_interval(&g.invert(&x).unwrap()).unwrap();
        prop_assert_eq!((d.lower, d.upper), (di.lower, di.upper));
        prop_assert!(d.upper.is_none_or(|u| d.lower <= u));
        if let Some(w) = d.upper_certificate() {
            prop_assert!(w.check(&g, &x).unwrap());
        }
    }

    #[test]
    fn depth_of_x_is_at_most_depth_of_its_power(a in word(), k in 2i64..=4) {
        // if x^k survives in a quotient then so does x
        let g = Group::parse("bs:1:2").unwrap();
        let x = eval(&g, &a);
        let xk = g.power(&x, &BigInt::from(k)).unwrap();
        prop_assume!(!g.is_identity(&xk));
        let e = engine("bs:1:2");
        let d = e.depth_interval(&x).unwrap();
        let dk = e.depth_interval(&xk).unwrap();
        if let (Some(u), true) = (dk.upper, dk.exact) {
            prop_assert!(d.lower <= u);
        }
    }

    #[test]
    fn lower_bounds_grow_with_the_budget(a in word()) {
        let g = Group::parse("bs:1:2").unwrap();
        let x = eval(&g, &a);
        prop_assume!(!g.is_identity(&x));
        let small = small_engine().depth_interval(&x).unwrap();
        let large = engine("bs:1:2").depth_interval(&x).unwrap();
        prop_assert!(small.lower <= large.lower);
        if let (Some(u), true) = (large.upper, large.exact) {
            prop_assert!(small.lower <= u);
        }
    }

    #[test]
    fn certificates_never_exceed_exact_depth(k in 1i64..=6, i in 1usize..=3) {
        // a^{k α_i} carries an arithmetic certificate
        let g = Group::parse("bs:1:2").unwrap();
        let alpha = BigInt::from(witness_exponent(i, 1).value) * k;
        let x = g.power(&g.generator(0), &alpha).unwrap();
        let d = engine("bs:1:2").depth_interval(&x).unwrap();
        prop_assert!(d.lower >= witness_exponent(i, 1).prime);
        if let Some(u) = d.upper {
            prop_assert!(d.lower <= u);
        }
    }

    #[test]
    fn lemma31_on_p_groups(idx in 0usize..64, picks in prop::collection::vec(0usize..10_000, 1..3)) {
        let cat = catalog(true);
        let e = &cat[idx % cat.len()];
        let g = &e.group;
        let h = g.subgroup(picks.iter().map(|p| p % g.order()));
        prop_assume!(h.order() > 1);
        let sub = FiniteGroup::generate(&h.members().iter().map(|&m| g.element(m).clone()).collect::<Vec<_>>()).unwrap();
        let r = lemma31_check(&sub).unwrap();
        prop_assert!(r.holds, "{} subgroup of order {}", e.name, sub.order());
    }

    #[test]
    fn prop32_on_solvable_groups(idx in 0usize..256, pick in 0usize..10_000) {
        let cat = catalog(false);
        let e = &cat[idx % cat.len()];
        let g = &e.group;
        let f = fitting_subgroup(g).unwrap();
        prop_assume!(f.order() > 1);
        let nontrivial: Vec<usize> = f.members().iter().copied().filter(|&x| x != g.identity()).collect();
        let h = nontrivial[pick % nontrivial.len()];
        let r = prop32_reduce(g, h).unwrap();
        prop_assert!(r.h_image != r.quotient.identity());
        let qf = fitting_subgroup(&r.quotient).unwrap();
        prop_assert_eq!(prime_power_base(qf.order()), Some(r.p));
        prop_assert_eq!(g.order() % r.quotient.order(), 0);
    }

    #[test]
    fn lagrange(idx in 0usize..256, picks in prop::collection::vec(0usize..10_000, 0..3)) {
        let cat = catalog(false);
        let g = &cat[idx % cat.len()].group;
        let h = g.subgroup(picks.iter().map(|p| p % g.order()));
        prop_assert_eq!(g.order() % h.order(), 0);
        for &x in h.members() {
            prop_assert_eq!(h.order() % g.element_order(x), 0);
        }
    }

    #[test]
    fn perm_compose_and_render(a in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let p = Perm::from_images(a).unwrap();
        let q = p.compose(&p.inverse()).unwrap();
        prop_assert!(q.is_identity());
        let back = parse_perms(&p.to_string(), p.degree()).unwrap();
        prop_assert_eq!(&back[0], &p);
        prop_assert_eq!(p.order() % p.cycles().iter().map(Vec::len).max().unwrap_or(1), 0);
    }

    #[test]
    fn witness_exponents_divide_up(i in 1usize..25) {
        let w = witness_exponent(i, 1);
        for k in 1..w.prime {
            prop_assert!((&w.value % BigUint::from(k)).is_zero());
        }
        // α_i | α_{i+1}, and p_i itself does not divide α_i
        let next = witness_exponent(i + 1, 1);
        prop_assert!((&next.value % &w.value).is_zero());
        prop_assert!(!(&w.value % BigUint::from(w.prime)).is_zero());
        let w2 = witness_exponent(i, 2);
        prop_assert_eq!(w2.value, w.value.pow(4));
    }
}
