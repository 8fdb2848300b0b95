//! Permutations of `{1, ..., c}` and subgroups generated by them.
//!
//! Products compose left to right: `(a * b)(x) = b(a(x))`, so a running
//! product `ψ_0 * ψ_1 * ... * ψ_{n-1}` tracks where each class ends up after
//! `n` steps.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree || std::mem::replace(&mut used[x - 1], true) {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `e`, `(12)`, `(123)(45)` or `(1,10)`.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        if text == "e" || text == "()" {
            return Ok(Self::identity(degree));
        }
        let bad = || Error::InvalidPermutation(text.to_string());
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let (inner, tail) = body.split_once(')').ok_or_else(bad)?;
            let cycle = if inner.contains(',') {
                inner.split(',').map(|s| s.trim().parse::<usize>().map_err(|_| bad())).collect()
            } else {
                inner
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                    .collect::<Result<Vec<_>>>()
            }?;
            cycles.push(cycle);
            rest = tail.trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g * &(self * &g.inverse())
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = &p * self;
            k += 1;
        }
        k
    }

    /// Non-trivial cycles, 1-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Every permutation of the given degree, in lexicographic order of images.
    pub fn all(degree: usize) -> Vec<Permutation> {
        let mut current: Vec<usize> = (0..degree).collect();
        let mut out = vec![Permutation { images: current.clone() }];
        while next_lexicographic(&mut current) {
            out.push(Permutation { images: current.clone() });
        }
        out
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::then`] to get an error instead.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs).expect("permutations of equal degree")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        let sep = if self.degree() >= 10 { "," } else { "" };
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(sep))?;
        }
        Ok(())
    }
}

/// The subgroup generated by `generators` inside the symmetric group of `degree`.
pub fn generate<'a, I>(degree: usize, generators: I) -> Result<BTreeSet<Permutation>>
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let gens: Vec<&Permutation> = generators.into_iter().collect();
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch(degree, g.degree()));
    }
    let mut elements = BTreeSet::new();
    let id = Permutation::identity(degree);
    let mut queue = VecDeque::from([id.clone()]);
    elements.insert(id);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = &x * g;
            if elements.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(elements)
}

/// Some `g` with `h2 = g * h1 * g^-1`, by exhaustive search of the symmetric group.
pub fn find_conjugator(
    degree: usize,
    h1: &BTreeSet<Permutation>,
    h2: &BTreeSet<Permutation>,
) -> Option<Permutation> {
    if h1.len() != h2.len() {
        return None;
    }
    Permutation::all(degree)
        .into_iter()
        .find(|g| h1.iter().all(|h| h2.contains(&h.conjugate_by(g))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    #[test]
    fn cycle_notation_round_trip() {
        for (text, d) in [("e", 3), ("(12)", 2), ("(123)", 3), ("(13)(24)", 4), ("(1,10)", 10)] {
            assert_eq!(p(text, d).to_string(), text);
        }
        assert!(Permutation::parse("(11)", 3).is_err());
        assert!(Permutation::parse("(14)", 3).is_err());
        assert!(Permutation::parse("12", 3).is_err());
    }

    #[test]
    fn product_is_left_to_right() {
        let a = p("(12)", 3);
        let b = p("(23)", 3);
        // 1 -a-> 2 -b-> 3, 3 -a-> 3 -b-> 2, 2 -a-> 1 -b-> 1
        assert_eq!((&a * &b).to_string(), "(132)");
        assert_eq!((&b * &a).to_string(), "(123)");
    }

    #[test]
    fn inverse_and_order() {
        let c = p("(123)", 3);
        assert_eq!(c.inverse().to_string(), "(132)");
        assert!((&c * &c.inverse()).is_identity());
        assert_eq!(c.order(), 3);
        assert_eq!(p("e", 4).order(), 1);
    }

    #[test]
    fn degree_mismatch() {
        assert_eq!(p("e", 2).then(&p("e", 3)).unwrap_err(), Error::DegreeMismatch(2, 3));
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn symmetric_group_sizes() {
        assert_eq!(Permutation::all(1).len(), 1);
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(4).len(), 24);
        let s3 = generate(3, [&p("(12)", 3), &p("(123)", 3)]).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(generate(3, []).unwrap().len(), 1);
    }

    #[test]
    fn conjugacy_examples() {
        let h = generate(2, [&p("(12)", 2)]).unwrap();
        assert!(find_conjugator(2, &h, &h).unwrap().is_identity());
        let h12 = generate(3, [&p("(12)", 3)]).unwrap();
        let h13 = generate(3, [&p("(13)", 3)]).unwrap();
        assert_eq!(find_conjugator(3, &h12, &h13).unwrap().to_string(), "(23)");
        let a3 = generate(3, [&p("(123)", 3)]).unwrap();
        assert_eq!(find_conjugator(3, &h12, &a3), None);
    }
}
