//! Permutations of `{1,…,n}` in one-line notation.
//!
//! Composition follows function composition: `(s2 * s1)(k) = s2(s1(k))`.
//! Weight tuples are acted on from the right, `w^s = w ∘ s`, so that
//! `w^(s2*s1) = (w^s2)^s1`.

use crate::error::{EngineError, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    // images[k-1] = sigma(k), values 1..=n
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(EngineError::InvalidInput(format!(
                    "not a permutation of 1..={n}: {images:?}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (1..=n).collect(),
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Perm { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `sigma(k)` for `k` in `1..=n`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    /// Function composition: `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm {
            images: (1..=self.len()).map(|k| self.apply(other.apply(k))).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Perm { images }
    }

    /// Sign of the permutation.
    pub fn sign(&self) -> i32 {
        let mut inv = 0;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.images[i] > self.images[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Adjacent transpositions `(1 2), (2 3), …` — a generating set.
    pub fn adjacent_transpositions(n: usize) -> Vec<Perm> {
        (1..n).map(|i| Perm::transposition(n, i, i + 1)).collect()
    }

    /// Extend to `total` points, acting as the identity on the tail.
    pub fn extended(&self, total: usize) -> Perm {
        debug_assert!(total >= self.len());
        let mut images = self.images.clone();
        images.extend(self.len() + 1..=total);
        Perm { images }
    }

    /// All `n!` permutations, in a deterministic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        permute_rec(&mut current, 0, &mut out);
        out.sort();
        out
    }
}

fn permute_rec(current: &mut Vec<usize>, at: usize, out: &mut Vec<Perm>) {
    if at == current.len() {
        out.push(Perm {
            images: current.clone(),
        });
        return;
    }
    for i in at..current.len() {
        current.swap(at, i);
        permute_rec(current, at + 1, out);
        current.swap(at, i);
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_function_composition() {
        let s1 = Perm::new(vec![2, 1, 3]).unwrap();
        let s2 = Perm::new(vec![2, 3, 1]).unwrap();
        let c = s2.compose(&s1);
        // c(k) = s2(s1(k)): 1 -> s2(2) = 3, 2 -> s2(1) = 2, 3 -> s2(3) = 1
        assert_eq!(c.one_line(), &[3, 2, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        for p in Perm::all(4) {
            assert!(p.compose(&p.inverse()).is_identity());
            assert!(p.inverse().compose(&p).is_identity());
        }
    }

    #[test]
    fn all_has_factorial_size() {
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::all(1).len(), 1);
    }

    #[test]
    fn sign_multiplicative() {
        for a in Perm::all(4) {
            for b in Perm::all(4) {
                assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
            }
        }
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(Perm::new(vec![1, 1, 3]).is_err());
        assert!(Perm::new(vec![0, 2]).is_err());
        assert!(Perm::new(vec![4, 2, 3]).is_err());
    }
}
