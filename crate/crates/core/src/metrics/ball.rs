use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::groups::{Group, GroupElement, Word};

/// Why a BFS stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BallStop {
    Radius,
    NodeCap,
}

/// The ball of radius `r` in the Cayley graph for the symmetrised generators.
///
/// Elements are stored in BFS order, so lengths are nondecreasing along
/// [`BallTable::elements`]. Each non-identity element records the entry it
/// was reached from, which gives a geodesic word for free.
#[derive(Clone, Debug)]
pub struct BallTable {
    radius: usize,
    complete_radius: usize,
    stop: BallStop,
    elements: Vec<GroupElement>,
    lengths: Vec<usize>,
    parents: Vec<Option<(usize, usize, i8)>>,
    index: HashMap<GroupElement, usize>,
    counts: Vec<usize>,
}

/// The symmetrised generating set as `(generator, ±1)`, in the order
/// `s₁, s₁⁻¹, s₂, s₂⁻¹, …`.
pub fn symmetric_letters(group: &Group) -> Vec<(usize, i8)> {
    (0..group.generator_count())
        .flat_map(|g| [(g, 1), (g, -1)])
        .collect()
}

/// Breadth-first ball of the given radius, stopping early once `node_cap`
/// elements are stored.
///
/// Frontier expansion runs in parallel but new elements are merged in
/// frontier order, so the table does not depend on the thread count.
pub fn ball(group: &Group, radius: usize, node_cap: usize) -> Result<BallTable> {
    let letters = symmetric_letters(group);
    let gens: Vec<GroupElement> = letters
        .iter()
        .map(|&(g, e)| {
            let x = group.generator(g);
            if e > 0 {
                Ok(x)
            } else {
                group.invert(&x)
            }
        })
        .collect::<Result<_>>()?;

    let id = group.identity();
    let mut table = BallTable {
        radius: 0,
        complete_radius: 0,
        stop: BallStop::Radius,
        elements: vec![id.clone()],
        lengths: vec![0],
        parents: vec![None],
        index: HashMap::from([(id, 0)]),
        counts: vec![1],
    };
    let node_cap = node_cap.max(1);
    let mut frontier = 0..1;
    for r in 1..=radius {
        let expanded: Vec<Vec<(GroupElement, usize, usize)>> = frontier
            .clone()
            .into_par_iter()
            .map(|i| {
                let g = &table.elements[i];
                gens.iter()
                    .enumerate()
                    .filter_map(|(li, s)| {
                        let h = group.multiply(g, s).ok()?;
                        (!table.index.contains_key(&h)).then_some((h, i, li))
                    })
                    .collect()
            })
            .collect();
        let start = table.elements.len();
        let mut capped = false;
        'merge: for batch in expanded {
            for (h, parent, li) in batch {
                if table.index.contains_key(&h) {
                    continue;
                }
                if table.elements.len() >= node_cap {
                    capped = true;
                    break 'merge;
                }
                table.index.insert(h.clone(), table.elements.len());
                table.elements.push(h);
                table.lengths.push(r);
                let (g, e) = letters[li];
                table.parents.push(Some((parent, g, e)));
            }
        }
        table.counts.push(table.elements.len());
        table.radius = r;
        if capped {
            table.stop = BallStop::NodeCap;
            return Ok(table);
        }
        table.complete_radius = r;
        frontier = start..table.elements.len();
        if frontier.is_empty() {
            // finite group exhausted
            break;
        }
    }
    Ok(table)
}

impl BallTable {
    /// Radius the BFS reached (the last layer may be partial if capped).
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Largest radius whose ball is fully enumerated.
    pub fn complete_radius(&self) -> usize {
        self.complete_radius
    }

    pub fn stop(&self) -> BallStop {
        self.stop
    }

    pub fn is_complete(&self) -> bool {
        self.stop == BallStop::Radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// `|B(r)|` for `r = 0, 1, …, radius`.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Exact word length, if the element is in the table.
    pub fn length(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).map(|&i| self.lengths[i])
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// A geodesic word for the `i`-th element.
    pub fn word_at(&self, mut i: usize) -> Word {
        let mut rev = Vec::new();
        while let Some((parent, g, e)) = self.parents[i] {
            rev.push((g, e));
            i = parent;
        }
        let mut w = Word::empty();
        for (g, e) in rev.into_iter().rev() {
            w.push(g, i64::from(e));
        }
        w
    }

    pub fn word(&self, g: &GroupElement) -> Option<Word> {
        self.position(g).map(|i| self.word_at(i))
    }

    /// Elements at exactly distance `r`.
    pub fn sphere(&self, r: usize) -> &[GroupElement] {
        let lo = if r == 0 { 0 } else { self.counts[r - 1] };
        let hi = self.counts.get(r).copied().unwrap_or(lo);
        &self.elements[lo..hi]
    }
}

/// Exact word lengths up to `2R` from a ball of radius `R`.
///
/// A geodesic for `g` of length `ℓ ≤ 2R` splits as `u · v` with both halves
/// of length `≤ R`, so `‖g‖ = min { |u| + |u⁻¹g| }` over `u` in the ball.
#[derive(Clone, Debug)]
pub struct WordMetric {
    group: Group,
    ball: BallTable,
}

impl WordMetric {
    pub fn new(group: &Group, half_radius: usize, node_cap: usize) -> Result<Self> {
        Ok(WordMetric {
            group: group.clone(),
            ball: ball(group, half_radius, node_cap)?,
        })
    }

    pub fn ball(&self) -> &BallTable {
        &self.ball
    }

    /// Largest length this metric decides exactly.
    pub fn envelope(&self) -> usize {
        2 * self.ball.complete_radius()
    }

    /// Exact `‖g‖` with a geodesic, if `‖g‖ ≤ min(radius_cap, envelope)`.
    pub fn geodesic(&self, g: &GroupElement, radius_cap: usize) -> Option<(usize, Word)> {
        if let Some(i) = self.ball.position(g) {
            let len = self.ball.lengths[i];
            // every stored entry sits one layer past a complete ball, so it is exact
            return (len <= radius_cap).then(|| (len, self.ball.word_at(i)));
        }
        let cap = radius_cap.min(self.envelope());
        let r = self.ball.complete_radius();
        let limit = self.ball.counts[r];
        // parallel scan, then pick the smallest (length, index) for determinism
        let best = (0..limit)
            .into_par_iter()
            .filter_map(|i| {
                let u = &self.ball.elements[i];
                let ui = self.group.invert(u).ok()?;
                let v = self.group.multiply(&ui, g).ok()?;
                let j = *self.ball.index.get(&v)?;
                (j < limit).then(|| (self.ball.lengths[i] + self.ball.lengths[j], i, j))
            })
            .min()?;
        let (len, i, j) = best;
        (len <= cap).then(|| (len, self.ball.word_at(i).concat(&self.ball.word_at(j))))
    }

    pub fn length(&self, g: &GroupElement, radius_cap: usize) -> Option<usize> {
        self.geodesic(g, radius_cap).map(|(l, _)| l)
    }
}

/// Exact `‖g‖_S` if it is at most `radius_cap`, by meet-in-the-middle BFS.
///
/// The practical envelope is set by `node_cap`: the ball of radius
/// `⌈radius_cap / 2⌉` must fit. For `bs:1:2` a cap of 20 needs about 10⁵
/// nodes; the Heisenberg group and Sol reach similar radii.
pub fn word_length_exact(
    group: &Group,
    g: &GroupElement,
    radius_cap: usize,
    node_cap: usize,
) -> Result<Option<usize>> {
    let metric = WordMetric::new(group, radius_cap.div_ceil(2), node_cap)?;
    Ok(metric.length(g, radius_cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_balls() {
        let g = Group::parse("bs:1:2").unwrap();
        let b0 = ball(&g, 0, 1000).unwrap();
        assert_eq!(b0.len(), 1);
        let b1 = ball(&g, 1, 1000).unwrap();
        assert_eq!(b1.counts(), &[1, 5]);
        let z = Group::parse("z:1").unwrap();
        assert_eq!(ball(&z, 3, 1000).unwrap().counts(), &[1, 3, 5, 7]);
    }

    #[test]
    fn node_cap_flags_partial_table() {
        let g = Group::parse("bs:1:2").unwrap();
        let b = ball(&g, 10, 50).unwrap();
        assert_eq!(b.stop(), BallStop::NodeCap);
        assert_eq!(b.len(), 50);
        assert!(b.complete_radius() < b.radius());
    }

    #[test]
    fn geodesic_words_evaluate_back() {
        let g = Group::parse("bs:1:2").unwrap();
        let b = ball(&g, 5, 100_000).unwrap();
        for (i, x) in b.elements().iter().enumerate() {
            let w = b.word_at(i);
            assert_eq!(w.len_u64().unwrap() as usize, b.lengths()[i]);
            assert_eq!(&g.evaluate_word(&w).unwrap(), x);
        }
    }

    #[test]
    fn exact_examples() {
        let g = Group::parse("bs:1:2").unwrap();
        assert_eq!(
            word_length_exact(&g, &GroupElement::bs(2, 0), 6, 100_000).unwrap(),
            Some(2)
        );
        // t a t⁻¹ is a second word for a², one letter longer than a a
        assert_eq!(g.evaluate("t a t^-1").unwrap(), GroupElement::bs(2, 0));
        assert_eq!(
            word_length_exact(&g, &GroupElement::bs(1, 0), 6, 100_000).unwrap(),
            Some(1)
        );
        let h = Group::parse("heis").unwrap();
        assert_eq!(
            word_length_exact(&h, &GroupElement::heisenberg(0, 0, 1), 6, 100_000).unwrap(),
            Some(4)
        );
        assert_eq!(
            word_length_exact(&h, &GroupElement::heisenberg(0, 0, 1), 3, 100_000).unwrap(),
            None
        );
    }

    #[test]
    fn meet_in_middle_agrees_with_plain_bfs() {
        let g = Group::parse("bs:1:2").unwrap();
        let full = ball(&g, 8, 1_000_000).unwrap();
        let metric = WordMetric::new(&g, 4, 1_000_000).unwrap();
        for (x, &len) in full.elements().iter().zip(full.lengths()) {
            let (l, w) = metric.geodesic(x, 8).unwrap();
            assert_eq!(l, len);
            assert_eq!(&g.evaluate_word(&w).unwrap(), x);
        }
    }

    #[test]
    fn parallel_merge_is_deterministic() {
        let g = Group::parse("sol").unwrap();
        let a = ball(&g, 4, 100_000).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| ball(&g, 4, 100_000).unwrap());
        assert_eq!(a.elements(), b.elements());
    }
}
