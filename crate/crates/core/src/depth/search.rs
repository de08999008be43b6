//! Exhaustive search for homomorphisms into small symmetric groups.
//!
//! Every finite quotient of order `n` acts faithfully on itself, so it shows
//! up as the image of some generator tuple in `S_n`. Enumerating all tuples
//! in `S_d` for `d ≤ B` that satisfy the relators therefore meets every
//! quotient of order `≤ B`, and the smallest image in which an element
//! survives is its exact depth whenever that order is `≤ B`.
//!
//! Conjugating a tuple changes neither the image order nor which elements
//! survive, so the first generator only runs over one permutation per cycle
//! type.

use std::ops::Range;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::smallperm::{closure_order, cycle_type_representatives, evaluate, symmetric_group, SmallPerm, MAX_DEGREE};
use super::{QuotientSource, WitnessCertificate};
use crate::bigser;
use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement, Presentation, Word};
use crate::metrics::upper_word;
use crate::numtheory::witness_exponent;

/// One relator-satisfying generator tuple and the order of its image.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub degree: usize,
    pub images: Vec<SmallPerm>,
    pub order: usize,
}

/// All images of a presented group in `S_2, …, S_B`, up to conjugacy of the
/// first generator, sorted by image order.
#[derive(Clone, Debug)]
pub struct QuotientCatalog {
    max_degree: usize,
    entries: Vec<CatalogEntry>,
    tuples_checked: u64,
}

type Compiled = Vec<Vec<(usize, i64)>>;

fn compile(p: &Presentation) -> Result<Compiled> {
    p.relators
        .iter()
        .map(|r| {
            r.syllables()
                .iter()
                .map(|s| {
                    let e = i64::try_from(&s.exponent)
                        .map_err(|_| Error::Precondition("relator exponent out of range".into()))?;
                    Ok((s.generator, e))
                })
                .collect()
        })
        .collect()
}

fn holds(rel: &[(usize, i64)], images: &[SmallPerm], inverses: &[SmallPerm]) -> bool {
    let mut acc = SmallPerm::IDENTITY;
    for &(g, e) in rel {
        let step = if e < 0 { inverses[g] } else { images[g] };
        for _ in 0..e.unsigned_abs() {
            acc = acc.then(step);
        }
    }
    acc.is_identity()
}

struct Layout {
    generators: usize,
    /// Relators indexed by the largest generator they mention.
    by_last: Vec<Vec<Vec<(usize, i64)>>>,
}

impl Layout {
    fn new(p: &Presentation) -> Result<Self> {
        let generators = p.generators.len();
        if generators == 0 {
            return Err(Error::Precondition("presentation has no generators".into()));
        }
        let mut by_last = vec![Vec::new(); generators];
        for rel in compile(p)? {
            if let Some(&last) = rel.iter().map(|(g, _)| g).max() {
                by_last[last].push(rel);
            }
        }
        Ok(Layout { generators, by_last })
    }

    fn accepts(&self, level: usize, images: &[SmallPerm], inverses: &[SmallPerm]) -> bool {
        self.by_last[level].iter().all(|r| holds(r, images, inverses))
    }

    /// Relator-satisfying tuples in `S_d`, in a fixed order, and the number
    /// of partial tuples tested.
    fn degree(&self, d: usize) -> (Vec<CatalogEntry>, u64) {
        let all = symmetric_group(d);
        let seeds: Vec<Vec<SmallPerm>> = if self.generators == 1 {
            cycle_type_representatives(d).into_iter().map(|r| vec![r]).collect()
        } else {
            cycle_type_representatives(d)
                .into_iter()
                .flat_map(|r| all.iter().map(move |&g| vec![r, g]))
                .collect()
        };
        let found: Vec<(Vec<Vec<SmallPerm>>, u64)> = seeds
            .into_par_iter()
            .map(|seed| {
                let mut out = Vec::new();
                let mut checked = 0u64;
                let mut images = seed.clone();
                let mut inverses: Vec<SmallPerm> = seed.iter().map(|g| g.inverse()).collect();
                let ok = (0..seed.len()).all(|lvl| self.accepts(lvl, &images, &inverses));
                checked += 1;
                if ok {
                    self.extend(&all, &mut images, &mut inverses, &mut out, &mut checked);
                }
                (out, checked)
            })
            .collect();
        let mut checked = 0;
        let mut tuples = Vec::new();
        for (t, c) in found {
            checked += c;
            tuples.extend(t);
        }
        let entries = tuples
            .into_par_iter()
            .map(|images| {
                let order = closure_order(&images, usize::MAX).unwrap();
                CatalogEntry { degree: d, images, order }
            })
            .collect();
        (entries, checked)
    }

    fn extend(
        &self,
        all: &[SmallPerm],
        images: &mut Vec<SmallPerm>,
        inverses: &mut Vec<SmallPerm>,
        out: &mut Vec<Vec<SmallPerm>>,
        checked: &mut u64,
    ) {
        let level = images.len();
        if level == self.generators {
            out.push(images.clone());
            return;
        }
        for &g in all {
            images.push(g);
            inverses.push(g.inverse());
            *checked += 1;
            if self.accepts(level, images, inverses) {
                self.extend(all, images, inverses, out, checked);
            }
            images.pop();
            inverses.pop();
        }
    }
}

fn sort_entries(entries: &mut [CatalogEntry]) {
    // stable: ties keep (degree, enumeration) order
    entries.sort_by_key(|e| e.order);
}

impl QuotientCatalog {
    /// Enumerates degrees `2..=max_degree`.
    pub fn build(p: &Presentation, max_degree: usize) -> Result<Self> {
        if max_degree > MAX_DEGREE {
            return Err(Error::Precondition(format!("degree bound {max_degree} exceeds {MAX_DEGREE}")));
        }
        let layout = Layout::new(p)?;
        let mut entries = Vec::new();
        let mut tuples_checked = 0;
        for d in 2..=max_degree {
            let (e, c) = layout.degree(d);
            entries.extend(e);
            tuples_checked += c;
        }
        sort_entries(&mut entries);
        Ok(QuotientCatalog {
            max_degree,
            entries,
            tuples_checked,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn tuples_checked(&self) -> u64 {
        self.tuples_checked
    }

    /// First entry, by image order, in which `w` maps to a nontrivial element.
    pub fn first_survivor(&self, w: &Word) -> Option<(&CatalogEntry, SmallPerm)> {
        first_survivor(&self.entries, w)
    }

    /// Entries with image order in `range`.
    pub fn with_orders(&self, range: Range<usize>) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| range.contains(&e.order))
    }
}

fn first_survivor<'a>(entries: &'a [CatalogEntry], w: &Word) -> Option<(&'a CatalogEntry, SmallPerm)> {
    entries.iter().find_map(|e| {
        let img = evaluate(&e.images, w);
        (!img.is_identity()).then_some((e, img))
    })
}

impl CatalogEntry {
    pub fn certificate(&self, target_image: SmallPerm) -> WitnessCertificate {
        WitnessCertificate {
            quotient: QuotientSource::Permutation { degree: self.degree },
            order: self.order as u64,
            order_verified: true,
            degree: self.degree,
            generator_images: self.images.iter().map(|g| g.to_perm(self.degree)).collect(),
            target_image: target_image.to_perm(self.degree),
        }
    }
}

/// Outcome of [`hom_search`].
#[derive(Clone, Debug, Serialize)]
pub struct HomSearchReport {
    pub max_degree: usize,
    /// Largest degree enumerated; the search stops early once a witness of
    /// order at most the current degree is known.
    pub degrees_searched: usize,
    pub images: usize,
    pub tuples_checked: u64,
    /// Smallest surviving image found, possibly of order above `max_degree`.
    pub witness: Option<WitnessCertificate>,
    /// The witness order is the depth: every quotient of that order or less
    /// was enumerated. When false, the depth exceeds `max_degree`.
    pub exact: bool,
}

impl HomSearchReport {
    pub fn depth(&self) -> Option<u64> {
        self.witness.as_ref().filter(|_| self.exact).map(|w| w.order)
    }
}

/// Smallest image of the presented group in `S_2, …, S_B` in which `target`
/// survives.
///
/// Exactness rests on the regular representation: a quotient of order `n`
/// embeds in `S_n`, so when the best image has order `n ≤ B` no smaller
/// quotient was missed. If no image of order `≤ B` survives, the report is
/// "none below bound", which certifies `D > B`; any larger witness found on
/// the way is kept as an upper bound.
pub fn hom_search(p: &Presentation, target: &Word, max_degree: usize) -> Result<HomSearchReport> {
    if max_degree > MAX_DEGREE {
        return Err(Error::Precondition(format!("degree bound {max_degree} exceeds {MAX_DEGREE}")));
    }
    let layout = Layout::new(p)?;
    let mut entries = Vec::new();
    let mut checked = 0;
    let mut searched = 1;
    for d in 2..=max_degree {
        let (e, c) = layout.degree(d);
        entries.extend(e);
        checked += c;
        searched = d;
        sort_entries(&mut entries);
        if first_survivor(&entries, target).is_some_and(|(e, _)| e.order <= d) {
            break;
        }
    }
    let best = first_survivor(&entries, target);
    Ok(HomSearchReport {
        max_degree,
        degrees_searched: searched,
        images: entries.len(),
        tuples_checked: checked,
        exact: best.is_some_and(|(e, _)| e.order <= max_degree),
        witness: best.map(|(e, img)| e.certificate(img)),
    })
}

/// Result of [`case_audit`].
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub group: String,
    pub base: String,
    pub i: usize,
    pub p: u64,
    pub m: u32,
    #[serde(serialize_with = "bigser::biguint")]
    pub alpha: BigUint,
    /// `p` for `m = 1`, `p^{m+1}` otherwise.
    pub bound: u64,
    /// Images of order strictly below this were examined.
    pub order_limit: u64,
    pub max_degree: usize,
    /// The search reached every order below `bound`.
    pub complete: bool,
    pub images_examined: usize,
    /// Images of order below the limit in which `x^α` survives.
    pub survivors: Vec<WitnessCertificate>,
    pub holds: bool,
}

/// Checks the divisibility step of the lower-bound argument empirically:
/// every image of order below `min(bound, B + 1)` must kill `x^{α_i}`.
pub fn case_audit(group: &Group, x_base: &GroupElement, i: usize, m: u32, max_degree: usize) -> Result<AuditReport> {
    let p = group
        .presentation()
        .ok_or_else(|| Error::NoPresentation(group.spec().to_string()))?;
    if i == 0 || m == 0 {
        return Err(Error::Precondition("i and m start at 1".into()));
    }
    let w = witness_exponent(i, m);
    let bound = if m == 1 { w.prime } else { w.prime.pow(m + 1) };
    let order_limit = bound.min(max_degree as u64 + 1);
    let degree = (order_limit - 1).min(max_degree as u64) as usize;
    let catalog = QuotientCatalog::build(&p, degree.max(1))?;
    let base_word = upper_word(group, x_base)?;
    let alpha = num_bigint::BigInt::from(w.value.clone());
    let mut examined = 0;
    let mut survivors = Vec::new();
    for e in catalog.with_orders(0..order_limit as usize) {
        examined += 1;
        let img = evaluate(&e.images, &base_word).pow_big(&alpha);
        if !img.is_identity() {
            survivors.push(e.certificate(img));
        }
    }
    Ok(AuditReport {
        group: group.spec().to_string(),
        base: base_word.display(group.generator_names()).to_string(),
        i,
        p: w.prime,
        m,
        alpha: w.value,
        bound,
        order_limit,
        max_degree,
        complete: order_limit == bound,
        images_examined: examined,
        holds: survivors.is_empty(),
        survivors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs2() -> Group {
        Group::parse("bs:1:2").unwrap()
    }

    #[test]
    fn bs_a_has_depth_six() {
        let g = bs2();
        let p = g.presentation().unwrap();
        let a = g.parse_word("a").unwrap();
        let r = hom_search(&p, &a, 6).unwrap();
        assert!(r.exact);
        let w = r.witness.unwrap();
        assert_eq!(w.order, 6);
        assert_eq!(w.generator_images[0].to_string(), "(0 1 2)");
        assert_eq!(w.generator_images[1].to_string(), "(1 2)");
    }

    #[test]
    fn bs_a_none_below_five() {
        let g = bs2();
        let r = hom_search(&g.presentation().unwrap(), &g.parse_word("a").unwrap(), 5).unwrap();
        assert!(!r.exact);
        assert!(r.depth().is_none());
        // any witness found at degree ≤ 5 is larger than 5
        assert!(r.witness.is_none_or(|w| w.order > 5));
    }

    #[test]
    fn bs_t_survives_mod_two() {
        let g = bs2();
        let r = hom_search(&g.presentation().unwrap(), &g.parse_word("t").unwrap(), 2).unwrap();
        let w = r.witness.unwrap();
        assert!(r.exact);
        assert_eq!(w.order, 2);
        assert_eq!(w.generator_images[0].to_string(), "()");
        assert_eq!(w.generator_images[1].to_string(), "(0 1)");
    }

    #[test]
    fn catalog_images_satisfy_relators() {
        let g = bs2();
        let p = g.presentation().unwrap();
        let cat = QuotientCatalog::build(&p, 5).unwrap();
        assert!(!cat.entries().is_empty());
        for e in cat.entries() {
            for r in &p.relators {
                assert!(evaluate(&e.images, r).is_identity());
            }
        }
        assert!(cat.entries().windows(2).all(|w| w[0].order <= w[1].order));
    }

    #[test]
    fn audit_small_cases() {
        let g = bs2();
        let a = g.generator(0);
        for (i, b) in [(1, 6), (2, 6), (3, 4), (4, 6)] {
            let r = case_audit(&g, &a, i, 1, b).unwrap();
            assert!(r.holds, "i = {i}");
            assert!(r.complete);
        }
        let r = case_audit(&g, &a, 4, 1, 6).unwrap();
        assert_eq!((r.p, r.bound, r.order_limit), (7, 7, 7));
        assert!(r.images_examined > 0);
    }
}
