//! Multi-indices in `N^d`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial: a fixed-length multi-index.
///
/// Ordered graded-lexicographically (total degree first, ties by lexicographic
/// comparison), which is the canonical term order used everywhere for
/// deterministic serialization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVec(Vec<u32>);

impl ExponentVec {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        ExponentVec(vec![0; dim])
    }

    /// The multi-index of the single variable `x_{i+1}` in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        ExponentVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `<=`, the upward-move relation of the preorder.
    pub fn le_componentwise(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        ExponentVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, n: u32) -> Self {
        ExponentVec(self.0.iter().map(|&e| e * n).collect())
    }
}

impl From<Vec<u32>> for ExponentVec {
    fn from(v: Vec<u32>) -> Self {
        ExponentVec(v)
    }
}

impl Ord for ExponentVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = ExponentVec::new(vec![0, 2]); // degree 2
        let b = ExponentVec::new(vec![3, 0]); // degree 3
        let c = ExponentVec::new(vec![2, 1]); // degree 3, lex-larger than b? no: [3,0] > [2,1]
        assert!(a < b);
        assert!(c < b);
    }

    #[test]
    fn componentwise_order_is_partial() {
        let a = ExponentVec::new(vec![1, 0]);
        let b = ExponentVec::new(vec![0, 1]);
        assert!(!a.le_componentwise(&b));
        assert!(!b.le_componentwise(&a));
        assert!(ExponentVec::zeros(2).le_componentwise(&a));
    }
}
