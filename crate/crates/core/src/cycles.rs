//! Cycle types of permutations of `1..=n`, i.e. integer partitions of n.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::terms::factorial;

/// A cycle type, stored as `(length, multiplicity)` pairs with strictly
/// decreasing lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    parts: Vec<(usize, usize)>,
}

impl CycleType {
    /// Builds a cycle type from a list of cycle lengths in any order.
    pub fn from_lengths(lengths: &[usize]) -> Self {
        assert!(lengths.iter().all(|&l| l >= 1), "cycle lengths must be positive");
        let mut sorted = lengths.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<(usize, usize)> = Vec::new();
        for len in sorted {
            match parts.last_mut() {
                Some((l, mult)) if *l == len => *mult += 1,
                _ => parts.push((len, 1)),
            }
        }
        CycleType { parts }
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(|&(l, a)| l * a).sum()
    }

    pub fn multiplicity(&self, length: usize) -> usize {
        self.parts.iter().find(|&&(l, _)| l == length).map_or(0, |&(_, a)| a)
    }

    pub fn fixed_points(&self) -> usize {
        self.multiplicity(1)
    }

    /// Number of permutations with this cycle type: n! / Π_j (j^a_j · a_j!).
    pub fn permutation_count(&self) -> BigUint {
        let denom = self.parts.iter().fold(BigUint::one(), |acc, &(l, a)| {
            acc * BigUint::from(l).pow(a as u32) * factorial(a)
        });
        factorial(self.n()) / denom
    }
}

impl fmt::Display for CycleType {
    /// Renders as `4^1·1^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(l, a) in &self.parts {
            if !first {
                f.write_str("·")?;
            }
            write!(f, "{l}^{a}")?;
            first = false;
        }
        Ok(())
    }
}

/// All partitions of n, ordered by decreasing largest part, then
/// lexicographically decreasing on the remaining parts.
pub fn partitions(n: usize) -> Vec<CycleType> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<CycleType>) {
    if remaining == 0 {
        out.push(CycleType::from_lengths(current));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}
