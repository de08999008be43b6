use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::perm::Perm;
use crate::error::{Error, Result};

/// Default cap on materialised group orders.
pub const DEFAULT_ORDER_CAP: usize = 20_000;
/// Groups up to this order get a full Cayley table on first use.
pub const TABLE_LIMIT: usize = 2048;

/// The cap in force: `RFGROW_ORDER_CAP` if set and valid, else the default.
pub fn order_cap() -> usize {
    std::env::var("RFGROW_ORDER_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_ORDER_CAP)
}

/// A finite permutation group with every element materialised.
///
/// Elements are addressed by index; index 0 is the identity and the
/// generators come next in the order given.
#[derive(Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<usize>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    table: OnceLock<Option<Vec<u32>>>,
    orders: OnceLock<Vec<usize>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            index: self.index.clone(),
            inverses: self.inverses.clone(),
            table: self.table.clone(),
            orders: self.orders.clone(),
        }
    }
}

/// A subgroup of a [`FiniteGroup`], as a sorted member list plus a mask.
///
/// Equality compares members only, not the stored generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl FiniteGroup {
    /// The group generated by `gens`, by breadth-first right multiplication.
    pub fn closure(gens: &[Perm], cap: usize) -> Result<Self> {
        let degree = gens.first().map_or(0, Perm::degree);
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, bad.degree()));
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut generators = Vec::new();
        for g in gens {
            let i = *index.entry(g.clone()).or_insert_with(|| {
                elements.push(g.clone());
                elements.len() - 1
            });
            generators.push(i);
        }
        if elements.len() > cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        let mut queue: VecDeque<usize> = (0..elements.len()).collect();
        while let Some(i) = queue.pop_front() {
            for &s in &generators {
                let p = elements[i].then(&elements[s]);
                if !index.contains_key(&p) {
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        Ok(FiniteGroup {
            degree,
            generators,
            elements,
            index,
            inverses,
            table: OnceLock::new(),
            orders: OnceLock::new(),
        })
    }

    /// [`FiniteGroup::closure`] under the configured [`order_cap`].
    pub fn generate(gens: &[Perm]) -> Result<Self> {
        Self::closure(gens, order_cap())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.generators.iter().map(|&g| self.elements[g].clone()).collect()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn table(&self) -> Option<&[u32]> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                (n <= TABLE_LIMIT).then(|| {
                    (0..n)
                        .into_par_iter()
                        .flat_map_iter(|i| (0..n).map(move |j| (i, j)))
                        .map(|(i, j)| self.index[&self.elements[i].then(&self.elements[j])] as u32)
                        .collect()
                })
            })
            .as_deref()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.table() {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g⁻¹ a g`.
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = 0;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Element orders, computed once.
    pub fn element_orders(&self) -> &[usize] {
        self.orders.get_or_init(|| {
            (0..self.order())
                .into_par_iter()
                .map(|i| self.elements[i].order())
                .collect()
        })
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders()[a]
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
            mask: vec![true; self.order()],
            gens: self.generators.clone(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        Subgroup {
            members: vec![0],
            mask,
            gens: Vec::new(),
        }
    }

    /// Subgroup generated by the given elements.
    ///
    /// Generators already inside the running subgroup are skipped, so the
    /// stored generating set stays short (at most `log₂ |H|` elements).
    pub fn subgroup(&self, gens: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut h = self.trivial();
        for g in gens {
            if !h.mask[g] {
                self.extend(&mut h, g);
            }
        }
        h
    }

    fn extend(&self, h: &mut Subgroup, g: usize) {
        h.gens.push(g);
        let mut queue: VecDeque<usize> = h.members.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &s in &h.gens {
                let y = self.mul(x, s);
                if !h.mask[y] {
                    h.mask[y] = true;
                    h.members.push(y);
                    queue.push_back(y);
                }
            }
        }
        h.members.sort_unstable();
    }

    pub fn subgroup_from_members(&self, members: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let mut mask = vec![false; self.order()];
        for m in members {
            mask[m] = true;
        }
        let h = self.subgroup((0..self.order()).filter(|&i| mask[i]));
        if h.mask != mask {
            return Err(Error::Precondition("member set is not closed".into()));
        }
        Ok(h)
    }

    /// Smallest subgroup normal in `ambient` containing `xs`.
    pub fn normal_closure_in(&self, ambient: &Subgroup, xs: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut n = self.subgroup(xs);
        loop {
            let mut grew = false;
            for i in 0..n.gens.len() {
                for &s in &ambient.gens {
                    let c = self.conjugate(n.gens[i], s);
                    if !n.mask[c] {
                        self.extend(&mut n, c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return n;
            }
        }
    }

    pub fn normal_closure(&self, xs: impl IntoIterator<Item = usize>) -> Subgroup {
        self.normal_closure_in(&self.whole(), xs)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.gens
            .iter()
            .all(|&x| self.generators.iter().all(|&s| h.mask[self.conjugate(x, s)]))
    }

    /// Conjugacy classes, each sorted, listed by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < class.len() {
                let x = class[k];
                for &s in &self.generators {
                    let y = self.conjugate(x, s);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        class.push(y);
                    }
                }
                k += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Checks closure under products and inverses and Lagrange for element orders.
    pub fn verify_axioms(&self) -> bool {
        let n = self.order();
        let closed = self
            .generators
            .iter()
            .all(|&s| (0..n).all(|i| self.index.contains_key(&self.elements[i].then(&self.elements[s]))));
        let inverses = (0..n).all(|i| self.mul(i, self.inv(i)) == 0);
        let lagrange = self.element_orders().iter().all(|&o| n.is_multiple_of(o));
        closed && inverses && lagrange
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.mask[m])
    }

    /// `true` iff every conjugate by `ambient` stays inside.
    pub fn is_normal_in(&self, g: &FiniteGroup, ambient: &Subgroup) -> bool {
        self.gens
            .iter()
            .all(|&x| ambient.gens.iter().all(|&s| self.mask[g.conjugate(x, s)]))
    }
}

/// Summary of a subgroup for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupInfo {
    pub order: usize,
    pub normal: bool,
    pub nilpotent: bool,
    /// Step length when nilpotent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_length: Option<usize>,
    pub generators: Vec<String>,
}
