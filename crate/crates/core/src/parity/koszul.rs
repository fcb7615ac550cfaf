use std::collections::BTreeMap;

use crate::error::{EngineError, Result};
use crate::perm::Perm;
use crate::superalg::Weight;

/// The Koszul sign `sgn(alpha, sigma)` collected when a permutation
/// transports the odd slots of a binary weight tuple.
///
/// Convention (pinned by the `koszul` acceptance suite): the sign counts the
/// inversions of `sigma` over positions whose transported weight
/// `alpha^sigma = alpha ∘ sigma` is 1, i.e.
///
/// ```text
/// sgn(alpha, sigma) = (-1)^{#{(k,l) : k<l, alpha(sigma(k))=alpha(sigma(l))=1, sigma(k)>sigma(l)}}
/// ```
///
/// equivalently the inversion count of `sigma^{-1}` restricted to the
/// 1-positions of `alpha`. For transpositions (and all involutions) this
/// agrees with the inversion count of `sigma` itself; for non-involutive
/// permutations the two differ, and only this orientation satisfies the
/// composition law `sgn(a, s2*s1) = sgn(a^{s2}, s1) * sgn(a, s2)` together
/// with the adjacent-transposition base case
/// `sgn(a, (i,i+1)) = (-1)^{a(i) a(i+1)}`.
pub fn koszul_sign(alpha: &Weight, sigma: &Perm) -> Result<i32> {
    let n = sigma.len();
    if alpha.slots() != n {
        return Err(EngineError::PermSize {
            expected: alpha.slots(),
            found: n,
        });
    }
    if !alpha.is_binary() {
        return Err(EngineError::InvalidInput(format!(
            "koszul sign needs a binary weight, got {alpha}"
        )));
    }
    let mut inversions = 0usize;
    for k in 1..=n {
        for l in (k + 1)..=n {
            let (sk, sl) = (sigma.apply(k), sigma.apply(l));
            if sk > sl && alpha.entry(sk) == 1 && alpha.entry(sl) == 1 {
                inversions += 1;
            }
        }
    }
    Ok(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Precomputed table of all Koszul signs for a fixed number of slots.
#[derive(Debug, Clone)]
pub struct SignTable {
    n: usize,
    signs: BTreeMap<(Vec<u32>, Perm), i32>,
}

impl SignTable {
    pub fn build(n: usize) -> SignTable {
        let mut signs = BTreeMap::new();
        for bits in 0..(1u32 << n) {
            let alpha = Weight((0..n).map(|i| (bits >> i) & 1).collect());
            for sigma in Perm::all(n) {
                let s = koszul_sign(&alpha, &sigma).expect("sizes match");
                signs.insert((alpha.0.clone(), sigma), s);
            }
        }
        SignTable { n, signs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, alpha: &Weight, sigma: &Perm) -> Option<i32> {
        self.signs.get(&(alpha.0.clone(), sigma.clone())).copied()
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Exhaustive check of `sgn(alpha, id) = 1`, triviality for
    /// `|alpha| <= 1`, and the composition law over all pairs.
    pub fn laws_hold(&self) -> bool {
        let perms = Perm::all(self.n);
        let id = Perm::identity(self.n);
        for ((bits, sigma), s) in &self.signs {
            let alpha = Weight(bits.clone());
            if sigma.is_identity() && *s != 1 {
                return false;
            }
            if alpha.total() <= 1 && *s != 1 {
                return false;
            }
        }
        for bits in self.signs.keys().map(|(b, _)| b.clone()).collect::<std::collections::BTreeSet<_>>() {
            let alpha = Weight(bits);
            if koszul_sign(&alpha, &id).unwrap() != 1 {
                return false;
            }
            for s2 in &perms {
                for s1 in &perms {
                    let lhs = koszul_sign(&alpha, &s2.compose(s1)).unwrap();
                    let rhs = koszul_sign(&alpha.permuted(s2), s1).unwrap()
                        * koszul_sign(&alpha, s2).unwrap();
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}
