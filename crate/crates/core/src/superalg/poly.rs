use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::chart::{same_chart, ChartRef};
use super::{Coeff, Parity, ParityClass, Weight, WeightClass};
use crate::error::{EngineError, Result};

/// Canonical monomial key: factors sorted by chart order, exponents >= 1,
/// odd coordinates never repeated.
pub(crate) type Key = Vec<(u32, u32)>;

/// One monomial of a polynomial, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    /// `(coordinate index, exponent)` pairs sorted by chart order.
    pub factors: Vec<(usize, u32)>,
    pub coeff: Coeff,
}

/// A supercommutative polynomial over a fixed chart, kept in canonical form:
/// factors of every monomial sorted by chart order with Koszul signs folded
/// into the coefficient, no vanishing terms, no repeated odd factor.
/// Two polynomials are equal iff their term maps are identical.
#[derive(Debug, Clone)]
pub struct Polynomial {
    chart: ChartRef,
    terms: BTreeMap<Key, Coeff>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(chart: ChartRef) -> Polynomial {
        Polynomial {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: ChartRef, c: Coeff) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Polynomial { chart, terms }
    }

    pub fn coordinate(chart: ChartRef, idx: usize) -> Polynomial {
        debug_assert!(idx < chart.len());
        let mut terms = BTreeMap::new();
        terms.insert(vec![(idx as u32, 1)], Coeff::one());
        Polynomial { chart, terms }
    }

    /// Build `c * z_{w_1}^{e_1} * … * z_{w_k}^{e_k}` from a factor word in
    /// arbitrary order; Koszul signs accumulate during normalization.
    pub fn monomial_word(chart: ChartRef, c: Coeff, word: &[(usize, u32)]) -> Polynomial {
        let mut acc = Polynomial::constant(chart.clone(), c);
        for &(idx, exp) in word {
            for _ in 0..exp {
                let f = Polynomial::coordinate(chart.clone(), idx);
                acc = acc.mul(&f).expect("same chart by construction");
            }
        }
        acc
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Monomials in canonical (deterministic) order.
    pub fn terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(k, c)| Term {
                factors: k.iter().map(|&(i, e)| (i as usize, e)).collect(),
                coeff: c.clone(),
            })
            .collect()
    }

    /// Is this polynomial the single coordinate `idx` with coefficient 1?
    pub fn is_coordinate(&self, idx: usize) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(k, c)| k.as_slice() == [(idx as u32, 1)] && c.is_one())
                .unwrap_or(false)
    }

    fn ensure_same_chart(&self, other: &Polynomial) -> Result<()> {
        if same_chart(&self.chart, &other.chart) {
            Ok(())
        } else {
            Err(EngineError::ChartMismatch {
                expected: self.chart.name().render(),
                found: other.chart.name().render(),
            })
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ensure_same_chart(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_term(&mut terms, k.clone(), c.clone());
        }
        Ok(Polynomial {
            chart: self.chart.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.chart.clone());
        }
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Product in canonical form. The sign `(-1)^{e(x)e(y)}` accumulates per
    /// transposition while sorting; monomials with a repeated odd factor
    /// vanish.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ensure_same_chart(other)?;
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if let Some((key, sign)) = mul_keys(&self.chart, ka, kb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    add_term(&mut terms, key, c);
                }
            }
        }
        Ok(Polynomial {
            chart: self.chart.clone(),
            terms,
        })
    }

    pub fn pow(&self, exp: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(self.chart.clone(), Coeff::one());
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Left partial derivative: one occurrence of the coordinate moves to the
    /// leftmost position (collecting parity signs past skipped factors) and is
    /// deleted there.
    pub fn partial(&self, idx: usize) -> Polynomial {
        let odd = self.chart.parity(idx).is_odd();
        let mut terms = BTreeMap::new();
        for (key, c) in &self.terms {
            let pos = match key.iter().position(|&(i, _)| i as usize == idx) {
                Some(p) => p,
                None => continue,
            };
            let exp = key[pos].1;
            let mut nk = key.clone();
            let mut nc = c.clone();
            if odd {
                let swaps = key[..pos]
                    .iter()
                    .filter(|&&(i, _)| self.chart.parity(i as usize).is_odd())
                    .count();
                if swaps % 2 == 1 {
                    nc = -nc;
                }
                nk.remove(pos);
            } else {
                nc *= Coeff::from_integer(exp.into());
                if exp == 1 {
                    nk.remove(pos);
                } else {
                    nk[pos].1 = exp - 1;
                }
            }
            add_term(&mut terms, nk, nc);
        }
        Polynomial {
            chart: self.chart.clone(),
            terms,
        }
    }

    /// Weight and parity classification of the whole polynomial. The zero
    /// polynomial is homogeneous of every weight and parity (wildcards).
    pub fn weight_and_parity(&self) -> (WeightClass, ParityClass) {
        let mut w: Option<Weight> = None;
        let mut p: Option<Parity> = None;
        let mut w_ok = true;
        let mut p_ok = true;
        for key in self.terms.keys() {
            let tw = term_weight(&self.chart, key);
            let tp = term_parity(&self.chart, key);
            match &w {
                None => w = Some(tw),
                Some(prev) => {
                    if *prev != tw {
                        w_ok = false;
                    }
                }
            }
            match &p {
                None => p = Some(tp),
                Some(prev) => {
                    if *prev != tp {
                        p_ok = false;
                    }
                }
            }
        }
        let wc = match (w, w_ok) {
            (None, _) => WeightClass::Any,
            (Some(w), true) => WeightClass::Homogeneous(w),
            (_, false) => WeightClass::Inhomogeneous,
        };
        let pc = match (p, p_ok) {
            (None, _) => ParityClass::Any,
            (Some(p), true) => ParityClass::Homogeneous(p),
            (_, false) => ParityClass::Mixed,
        };
        (wc, pc)
    }

    /// Rebind to a structurally different chart with identical length.
    /// Caller guarantees index-level compatibility; used by functors that
    /// relabel chart metadata without touching polynomial data.
    pub(crate) fn rebound(&self, chart: ChartRef) -> Polynomial {
        debug_assert_eq!(self.chart.len(), chart.len());
        Polynomial {
            chart,
            terms: self.terms.clone(),
        }
    }
}

pub(crate) fn add_term(terms: &mut BTreeMap<Key, Coeff>, key: Key, c: Coeff) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Merge two canonical keys; returns the merged key and the Koszul sign, or
/// `None` when an odd factor repeats.
fn mul_keys(chart: &ChartRef, a: &Key, b: &Key) -> Option<(Key, i32)> {
    let odd_a: Vec<u32> = a
        .iter()
        .filter(|&&(i, _)| chart.parity(i as usize).is_odd())
        .map(|&(i, _)| i)
        .collect();
    let mut swaps = 0usize;
    for &(ib, _) in b {
        if chart.parity(ib as usize).is_odd() {
            if odd_a.binary_search(&ib).is_ok() {
                return None;
            }
            let not_greater = odd_a.partition_point(|&x| x < ib);
            swaps += odd_a.len() - not_greater;
        }
    }
    let mut key = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                key.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                key.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                key.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    key.extend_from_slice(&a[i..]);
    key.extend_from_slice(&b[j..]);
    Some((key, if swaps.is_multiple_of(2) { 1 } else { -1 }))
}

pub(crate) fn term_weight(chart: &ChartRef, key: &Key) -> Weight {
    let slots = if chart.is_empty() {
        0
    } else {
        chart.weight(0).slots()
    };
    let mut w = Weight::zero(slots);
    for &(i, e) in key {
        w = w.add(&chart.weight(i as usize).scaled(e));
    }
    w
}

pub(crate) fn term_parity(chart: &ChartRef, key: &Key) -> Parity {
    let odd = key
        .iter()
        .filter(|&&(i, _)| chart.parity(i as usize).is_odd())
        .count();
    Parity::from_u32(odd as u32)
}

fn render_coeff(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl std::fmt::Display for Polynomial {
    /// Deterministic rendering: terms in canonical key order; within each
    /// monomial, positive-weight factors print first and weight-zero (base)
    /// factors move to the right, with the parity signs of that reordering
    /// absorbed into the coefficient.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in &self.terms {
            let (fibers, bases): (Vec<_>, Vec<_>) = key
                .iter()
                .partition(|&&(i, _)| !self.chart.weight(i as usize).is_zero());
            // sign of the stable partition: each odd base factor is crossed
            // by the odd fiber factors that followed it
            let is_odd_base = |i: usize| {
                self.chart.weight(i).is_zero() && self.chart.parity(i).is_odd()
            };
            let is_odd_fiber = |i: usize| {
                !self.chart.weight(i).is_zero() && self.chart.parity(i).is_odd()
            };
            let mut swaps = 0usize;
            for (p, &(i, _)) in key.iter().enumerate() {
                if is_odd_base(i as usize) {
                    swaps += key[p + 1..]
                        .iter()
                        .filter(|&&(j, _)| is_odd_fiber(j as usize))
                        .count();
                }
            }
            let mut c = coeff.clone();
            if swaps % 2 == 1 {
                c = -c;
            }

            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }

            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (fibers.is_empty() && bases.is_empty()) {
                parts.push(render_coeff(&mag));
            }
            for &(i, e) in fibers.iter().chain(bases.iter()) {
                let name = self.chart.coord(i as usize).name.render();
                if e == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
