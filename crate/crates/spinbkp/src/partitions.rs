//! Partitions: strict (DP), odd (OP), and the statistics z_μ, ℓ*, δ.

use crate::algebra::rational::{factorial, rint, Rational};
use num_traits::One;
use std::collections::BTreeMap;

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    pub fn ones(d: u32) -> Self {
        Partition(vec![1; d as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_odd(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 1)
    }

    /// Union of parts (the product p_μ p_ν ↦ p_{μ∪ν}).
    pub fn union(&self, o: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Partition::new(v)
    }

    /// Multiplicities: part size → count.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn transpose(&self) -> Partition {
        let Some(&first) = self.0.first() else { return Partition::empty() };
        Partition((1..=first).map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32).collect())
    }

    /// Cells (i, j), 1-based row i and column j.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (i, &p) in self.0.iter().enumerate() {
            for j in 1..=p {
                out.push((i as u32 + 1, j));
            }
        }
        out
    }

    pub fn parse(s: &str) -> Option<Partition> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.trim().is_empty() {
            return Some(Partition::empty());
        }
        let parts: Option<Vec<u32>> = s.split(',').map(|x| x.trim().parse().ok()).collect();
        let parts = parts?;
        if parts.contains(&0) {
            return None;
        }
        Some(Partition::new(parts))
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl From<&[u32]> for Partition {
    fn from(v: &[u32]) -> Self {
        Partition::new(v.to_vec())
    }
}

fn gen(d: u32, max: u32, filter: &dyn Fn(u32) -> bool, strict: bool, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if d == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=max.min(d)).rev() {
        if !filter(p) {
            continue;
        }
        cur.push(p);
        let next = if strict { p - 1 } else { p };
        gen(d - p, next, filter, strict, cur, out);
        cur.pop();
    }
}

/// All partitions of d, lexicographically decreasing.
pub fn all_partitions(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    gen(d, d, &|_| true, false, &mut vec![], &mut out);
    out
}

/// Partitions of d into distinct parts, lexicographically decreasing.
pub fn strict_partitions(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    gen(d, d, &|_| true, true, &mut vec![], &mut out);
    out
}

/// Partitions of d into odd parts, lexicographically decreasing.
pub fn odd_partitions(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    gen(d, d, &|p| p % 2 == 1, false, &mut vec![], &mut out);
    out
}

/// Odd partitions of every size up to d.
pub fn odd_partitions_upto(d: u32) -> Vec<Partition> {
    (0..=d).flat_map(odd_partitions).collect()
}

pub fn strict_partitions_upto(d: u32) -> Vec<Partition> {
    (0..=d).flat_map(strict_partitions).collect()
}

/// z_μ = Π_k μ(k)! k^{μ(k)}.
pub fn z_mu(mu: &Partition) -> Rational {
    let mut acc = Rational::one();
    for (k, m) in mu.multiplicities() {
        acc *= factorial(m);
        for _ in 0..m {
            acc *= rint(k as i64);
        }
    }
    acc
}

/// ℓ*(μ) = |μ| − ℓ(μ).
pub fn colength(mu: &Partition) -> u32 {
    mu.size() - mu.len() as u32
}

/// δ(μ) = ℓ(μ) mod 2.
pub fn delta(mu: &Partition) -> u32 {
    (mu.len() % 2) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn enumerations() {
        assert_eq!(strict_partitions(0), vec![Partition::empty()]);
        assert_eq!(strict_partitions(4), vec![p(&[4]), p(&[3, 1])]);
        assert_eq!(strict_partitions(6), vec![p(&[6]), p(&[5, 1]), p(&[4, 2]), p(&[3, 2, 1])]);
        assert_eq!(odd_partitions(0), vec![Partition::empty()]);
        assert_eq!(odd_partitions(3), vec![p(&[3]), p(&[1, 1, 1])]);
        assert_eq!(odd_partitions(4), vec![p(&[3, 1]), p(&[1, 1, 1, 1])]);
        assert_eq!(all_partitions(4).len(), 5);
    }

    #[test]
    fn statistics() {
        assert_eq!(z_mu(&Partition::empty()), rint(1));
        assert_eq!(z_mu(&p(&[1, 1, 1])), rint(6));
        assert_eq!(z_mu(&p(&[3, 1, 1])), rint(6));
        assert_eq!(colength(&p(&[3, 1])), 2);
        assert_eq!(delta(&p(&[3, 1])), 0);
        assert_eq!(delta(&p(&[3])), 1);
        assert_eq!(colength(&Partition::empty()), 0);
    }

    #[test]
    fn euler_theorem() {
        for d in 0..=20 {
            assert_eq!(strict_partitions(d).len(), odd_partitions(d).len(), "d={d}");
        }
    }

    #[test]
    fn transpose_and_parse() {
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(Partition::parse("[1,1]"), Some(p(&[1, 1])));
        assert_eq!(Partition::parse("[]"), Some(Partition::empty()));
        assert_eq!(p(&[2, 1]).to_string(), "[2,1]");
    }

    proptest! {
        #[test]
        fn odd_parity_and_even_offsets(d in 0u32..16) {
            for mu in odd_partitions(d) {
                prop_assert_eq!(mu.size() % 2, (mu.len() % 2) as u32);
            }
            for lam in all_partitions(d.min(10)) {
                let l = lam.len() as u32;
                prop_assert_eq!((l - delta(&lam)) % 2, 0);
                prop_assert_eq!((l + delta(&lam)) % 2, 0);
            }
        }

        #[test]
        fn transpose_involution(d in 0u32..12) {
            for lam in all_partitions(d) {
                prop_assert_eq!(lam.transpose().transpose(), lam.clone());
                prop_assert_eq!(lam.transpose().size(), d);
            }
        }
    }
}
