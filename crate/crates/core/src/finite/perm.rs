use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, …, d − 1}`.
///
/// Products act on the right: `(g * h)(i) = h(g(i))`, so evaluating a word
/// left to right is a homomorphism from the free group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d > usize::from(u16::MAX) {
            return Err(Error::Precondition(format!("degree {d} too large")));
        }
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Parse(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::Parse(format!("point {a} exceeds degree {degree}")));
                }
                if std::mem::replace(&mut seen[a], true) {
                    return Err(Error::Parse(format!("point {a} repeated in cycles")));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        usize::from(self.images[i])
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| usize::from(i))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == usize::from(j))
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self
                .images
                .iter()
                .map(|&i| other.images[usize::from(i)])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[usize::from(j)] = i as u16;
        }
        Perm { images: inv }
    }

    /// Pads with fixed points up to `degree`.
    pub fn extended(&self, degree: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(self.degree() as u16..degree as u16);
        Perm { images }
    }

    /// Nontrivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Parses `"(0 1 2);(0 1)"` into permutations of a common degree.
///
/// Generators are separated by `;`. Each is a product of disjoint cycles
/// written `(a b c)`, with points separated by spaces or commas; `()` is the
/// identity. The degree is one more than the largest point mentioned, or
/// `min_degree` if that is larger.
pub fn parse_perms(text: &str, min_degree: usize) -> Result<Vec<Perm>> {
    let mut parsed: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut degree = min_degree;
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let mut cycles = Vec::new();
        let mut rest = part;
        while !rest.trim().is_empty() {
            let r = rest.trim_start();
            let body_end = r
                .strip_prefix('(')
                .and_then(|b| b.find(')'))
                .ok_or_else(|| Error::Parse(format!("expected `(…)` in `{part}`")))?;
            let body = &r[1..=body_end];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point `{t}` in `{part}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(&mx) = cycle.iter().max() {
                degree = degree.max(mx + 1);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
            rest = &r[body_end + 2..];
        }
        parsed.push(cycles);
    }
    parsed
        .iter()
        .map(|c| Perm::from_cycles(c, degree))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let ps = parse_perms("(0 1 2);(0 1)", 0).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].degree(), 3);
        assert_eq!(ps[0].to_string(), "(0 1 2)");
        assert_eq!(ps[1].to_string(), "(0 1)");
        assert_eq!(parse_perms("()", 2).unwrap()[0], Perm::identity(2));
        assert_eq!(parse_perms("(0 1)(2 3)", 0).unwrap()[0].order(), 2);
        assert!(parse_perms("(0 1 0)", 0).is_err());
        assert!(parse_perms("0 1", 0).is_err());
        assert!(parse_perms("(a b)", 0).is_err());
    }

    #[test]
    fn right_action() {
        let ps = parse_perms("(0 1 2);(0 1)", 0).unwrap();
        // 0 → 1 under the 3-cycle, then 1 → 0 under the transposition
        assert_eq!(ps[0].then(&ps[1]).apply(0), 0);
        assert_eq!(ps[0].then(&ps[0].inverse()), Perm::identity(3));
        assert_eq!(ps[0].order(), 3);
        assert!(matches!(
            ps[0].compose(&Perm::identity(4)),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }
}
