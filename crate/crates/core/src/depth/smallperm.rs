//! Permutations of at most 16 points packed into one `u64`, four bits per
//! image. Used by the exhaustive homomorphism search, where millions of
//! compositions are needed.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::finite::Perm;
use crate::groups::Word;

pub const MAX_DEGREE: usize = 16;

/// Points at or above the degree in use are fixed, so one value serves
/// every degree up to [`MAX_DEGREE`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallPerm(u64);

impl SmallPerm {
    pub const IDENTITY: SmallPerm = SmallPerm(0xFEDC_BA98_7654_3210);

    pub fn from_images(images: &[usize]) -> Option<Self> {
        if images.len() > MAX_DEGREE {
            return None;
        }
        let mut seen = 0u32;
        let mut bits = Self::IDENTITY.0;
        for (i, &j) in images.iter().enumerate() {
            if j >= images.len() || seen & (1 << j) != 0 {
                return None;
            }
            seen |= 1 << j;
            bits = (bits & !(0xF << (4 * i))) | ((j as u64) << (4 * i));
        }
        Some(SmallPerm(bits))
    }

    pub fn from_perm(p: &Perm) -> Option<Self> {
        Self::from_images(&p.images().collect::<Vec<_>>())
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        ((self.0 >> (4 * i)) & 0xF) as usize
    }

    /// Apply `self`, then `other`.
    #[inline]
    pub fn then(self, other: SmallPerm) -> SmallPerm {
        let mut out = 0u64;
        for i in 0..MAX_DEGREE {
            out |= (other.apply(self.apply(i)) as u64) << (4 * i);
        }
        SmallPerm(out)
    }

    pub fn inverse(self) -> SmallPerm {
        let mut out = 0u64;
        for i in 0..MAX_DEGREE {
            out |= (i as u64) << (4 * self.apply(i));
        }
        SmallPerm(out)
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn order(self) -> u64 {
        let mut seen = 0u32;
        let mut acc = 1u64;
        for start in 0..MAX_DEGREE {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut len = 0u64;
            let mut j = start;
            while seen & (1 << j) == 0 {
                seen |= 1 << j;
                j = self.apply(j);
                len += 1;
            }
            acc = acc.lcm(&len);
        }
        acc
    }

    pub fn pow(self, mut e: u64) -> SmallPerm {
        let mut acc = Self::IDENTITY;
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(base);
            }
            base = base.then(base);
            e >>= 1;
        }
        acc
    }

    /// `self^e` for any integer `e`, reduced modulo the order.
    pub fn pow_big(self, e: &BigInt) -> SmallPerm {
        let ord = BigInt::from(self.order());
        let r = e.mod_floor(&ord).to_u64().expect("reduced exponent");
        self.pow(r)
    }

    pub fn to_perm(self, degree: usize) -> Perm {
        Perm::from_images((0..degree).map(|i| self.apply(i)).collect()).expect("valid images")
    }
}

/// Left-to-right product of the word's letters under `images`.
pub fn evaluate(images: &[SmallPerm], w: &Word) -> SmallPerm {
    let mut acc = SmallPerm::IDENTITY;
    for syl in w.syllables() {
        let g = images[syl.generator];
        let piece = if syl.exponent.abs() <= BigInt::from(2) {
            let e = syl.exponent.to_i64().unwrap();
            let base = if e < 0 { g.inverse() } else { g };
            base.pow(e.unsigned_abs())
        } else {
            g.pow_big(&syl.exponent)
        };
        acc = acc.then(piece);
    }
    acc
}

/// `S_d` in lexicographic order of image lists.
pub fn symmetric_group(d: usize) -> Vec<SmallPerm> {
    assert!(d <= MAX_DEGREE);
    let mut cur: Vec<usize> = (0..d).collect();
    let mut out = Vec::new();
    loop {
        out.push(SmallPerm::from_images(&cur).unwrap());
        // next permutation
        let Some(i) = (1..d).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..d).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Partitions of `d` as non-increasing part lists, in lexicographic order.
pub fn partitions(d: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in 1..=rest.min(max) {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// One permutation per cycle type of `S_d`, cycles on consecutive points.
/// The identity comes first.
pub fn cycle_type_representatives(d: usize) -> Vec<SmallPerm> {
    partitions(d)
        .into_iter()
        .map(|parts| {
            let mut images = Vec::with_capacity(d);
            let mut start = 0;
            for len in parts {
                images.extend((1..len).map(|k| start + k));
                images.push(start);
                start += len;
            }
            SmallPerm::from_images(&images).unwrap()
        })
        .collect()
}

/// Order of `⟨gens⟩`, or `None` once it passes `cap`.
pub fn closure_order(gens: &[SmallPerm], cap: usize) -> Option<usize> {
    let gens: Vec<SmallPerm> = gens.iter().copied().filter(|g| !g.is_identity()).collect();
    let mut seen = HashSet::from([SmallPerm::IDENTITY]);
    let mut stack = vec![SmallPerm::IDENTITY];
    while let Some(x) = stack.pop() {
        for &g in &gens {
            let y = x.then(g);
            if seen.insert(y) {
                if seen.len() > cap {
                    return None;
                }
                stack.push(y);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_sizes() {
        let sizes: Vec<usize> = (1..=6).map(|d| symmetric_group(d).len()).collect();
        assert_eq!(sizes, vec![1, 2, 6, 24, 120, 720]);
        let s4 = symmetric_group(4);
        assert_eq!(s4.iter().collect::<HashSet<_>>().len(), 24);
        assert_eq!(s4[0], SmallPerm::IDENTITY);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|d| partitions(d).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert!(cycle_type_representatives(5)[0].is_identity());
    }

    #[test]
    fn agrees_with_perm() {
        let a = Perm::from_cycles(&[vec![0, 1, 2], vec![3, 4]], 5).unwrap();
        let b = Perm::from_cycles(&[vec![1, 4]], 5).unwrap();
        let (sa, sb) = (SmallPerm::from_perm(&a).unwrap(), SmallPerm::from_perm(&b).unwrap());
        assert_eq!(sa.then(sb).to_perm(5), a.compose(&b).unwrap());
        assert_eq!(sa.inverse().to_perm(5), a.inverse());
        assert_eq!(sa.order(), 6);
        assert_eq!(sa.pow_big(&BigInt::from(-1)), sa.inverse());
        assert_eq!(sa.pow_big(&BigInt::from(6_000_001u64)), sa);
    }

    #[test]
    fn closure_orders() {
        let s = symmetric_group(4);
        let gens = [
            SmallPerm::from_images(&[1, 2, 3, 0]).unwrap(),
            SmallPerm::from_images(&[1, 0, 2, 3]).unwrap(),
        ];
        assert_eq!(closure_order(&gens, 100), Some(24));
        assert_eq!(closure_order(&gens, 10), None);
        assert_eq!(closure_order(&[s[0]], 10), Some(1));
    }
}
