use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Parity, Weight};
use crate::error::{EngineError, Result};

/// Structured identifier for coordinates and charts.
///
/// Functors decorate names instead of inventing fresh strings, so that
/// round trips restore identities exactly:
/// * `tuple` — the weight multi-index accumulated by tangent applications,
///   rendered `x@(0,1)`; each tangent application prepends one entry.
/// * `pi` — the set of grading slots through which a parity reversion has
///   passed, rendered `x@(1,0)~p2`; reversing the same slot twice cancels
///   the mark.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordName {
    pub base: String,
    pub tuple: Option<Vec<u8>>,
    pub pi: BTreeSet<usize>,
}

impl CoordName {
    pub fn plain(base: impl Into<String>) -> CoordName {
        CoordName {
            base: base.into(),
            tuple: None,
            pi: BTreeSet::new(),
        }
    }

    pub fn with_tuple(base: impl Into<String>, tuple: Vec<u8>) -> CoordName {
        CoordName {
            base: base.into(),
            tuple: Some(tuple),
            pi: BTreeSet::new(),
        }
    }

    /// Prepend one entry to the tuple (used by the tangent functor).
    pub fn tuple_prepended(&self, entry: u8) -> CoordName {
        let mut tuple = vec![entry];
        tuple.extend(self.tuple.iter().flatten().copied());
        CoordName {
            base: self.base.clone(),
            tuple: Some(tuple),
            pi: self.pi.clone(),
        }
    }

    /// Toggle the reversal mark for a slot.
    pub fn pi_toggled(&self, slot: usize) -> CoordName {
        let mut pi = self.pi.clone();
        if !pi.remove(&slot) {
            pi.insert(slot);
        }
        CoordName {
            base: self.base.clone(),
            tuple: self.tuple.clone(),
            pi,
        }
    }

    pub fn with_replaced_tuple(&self, tuple: Option<Vec<u8>>) -> CoordName {
        CoordName {
            base: self.base.clone(),
            tuple,
            pi: self.pi.clone(),
        }
    }

    pub fn prefixed(&self, prefix: &str) -> CoordName {
        CoordName {
            base: format!("{prefix}{}", self.base),
            tuple: self.tuple.clone(),
            pi: self.pi.clone(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = self.base.clone();
        if let Some(t) = &self.tuple {
            s.push_str("@(");
            for (i, v) in t.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&v.to_string());
            }
            s.push(')');
        }
        for slot in &self.pi {
            s.push_str(&format!("~p{slot}"));
        }
        s
    }
}

impl std::fmt::Display for CoordName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

/// One coordinate of a chart: identifier, Grassmann parity, and weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateSymbol {
    pub name: CoordName,
    pub parity: Parity,
    pub weight: Weight,
}

impl CoordinateSymbol {
    pub fn new(name: CoordName, parity: Parity, weight: Weight) -> Self {
        CoordinateSymbol {
            name,
            parity,
            weight,
        }
    }
}

/// An ordered coordinate system. The declaration order is the canonical
/// monomial order: products are always rewritten so factors appear in chart
/// order, with Koszul signs folded into the coefficient.
#[derive(Debug, Clone)]
pub struct Chart {
    name: CoordName,
    coords: Vec<CoordinateSymbol>,
    index: BTreeMap<String, usize>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    pub fn new(name: CoordName, coords: Vec<CoordinateSymbol>) -> Result<ChartRef> {
        let mut index = BTreeMap::new();
        for (i, c) in coords.iter().enumerate() {
            if index.insert(c.name.render(), i).is_some() {
                return Err(EngineError::InvalidInput(format!(
                    "duplicate coordinate `{}` in chart `{}`",
                    c.name, name
                )));
            }
        }
        Ok(Arc::new(Chart {
            name,
            coords,
            index,
        }))
    }

    pub fn name(&self) -> &CoordName {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[CoordinateSymbol] {
        &self.coords
    }

    pub fn coord(&self, idx: usize) -> &CoordinateSymbol {
        &self.coords[idx]
    }

    pub fn find(&self, name: &CoordName) -> Option<usize> {
        self.index.get(&name.render()).copied()
    }

    pub fn find_str(&self, rendered: &str) -> Option<usize> {
        self.index.get(rendered).copied()
    }

    pub fn parity(&self, idx: usize) -> Parity {
        self.coords[idx].parity
    }

    pub fn weight(&self, idx: usize) -> &Weight {
        &self.coords[idx].weight
    }

    /// Indices of the weight-zero (base) coordinates.
    pub fn base_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.coords[i].weight.is_zero())
            .collect()
    }

    /// Two charts are interchangeable as symbol tables when their full
    /// coordinate data agrees.
    pub fn same_symbols(&self, other: &Chart) -> bool {
        self.name == other.name && self.coords == other.coords
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.same_symbols(other)
    }
}

impl Eq for Chart {}

/// Compatibility check used by every polynomial operation: pointer equality
/// first, structural equality as fallback (functors rebuild charts).
pub fn same_chart(a: &ChartRef, b: &ChartRef) -> bool {
    Arc::ptr_eq(a, b) || a.same_symbols(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_render_and_toggle() {
        let n = CoordName::with_tuple("x", vec![0, 1]);
        assert_eq!(n.render(), "x@(0,1)");
        let m = n.pi_toggled(2);
        assert_eq!(m.render(), "x@(0,1)~p2");
        assert_eq!(m.pi_toggled(2), n);
        assert_eq!(n.tuple_prepended(1).render(), "x@(1,0,1)");
    }

    #[test]
    fn duplicate_coordinates_rejected() {
        let c = |s: &str| {
            CoordinateSymbol::new(CoordName::plain(s), Parity::Even, Weight(vec![0]))
        };
        assert!(Chart::new(CoordName::plain("U"), vec![c("x"), c("x")]).is_err());
    }
}
