use std::collections::BTreeMap;

use super::chart::{same_chart, ChartRef};
use super::poly::Polynomial;
use super::{Coeff, Parity, ParityClass, WeightClass};
use crate::error::{EngineError, Result};

/// A graded derivation of the polynomial algebra of a chart, given by its
/// values on coordinates and extended by the graded Leibniz rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    chart: ChartRef,
    parity: Parity,
    components: BTreeMap<usize, Polynomial>,
}

impl Derivation {
    /// A homogeneous-parity derivation must send each coordinate `z` to a
    /// polynomial of parity `e(z) + e(D)` (or zero).
    pub fn new(
        chart: ChartRef,
        parity: Parity,
        components: BTreeMap<usize, Polynomial>,
    ) -> Result<Self> {
        let mut clean = BTreeMap::new();
        for (idx, poly) in components {
            if !same_chart(poly.chart(), &chart) {
                return Err(EngineError::ChartMismatch {
                    expected: chart.name().render(),
                    found: poly.chart().name().render(),
                });
            }
            if poly.is_zero() {
                continue;
            }
            let want = chart.parity(idx) + parity;
            match poly.weight_and_parity().1 {
                ParityClass::Any => {}
                ParityClass::Homogeneous(p) if p == want => {}
                _ => {
                    return Err(EngineError::ParityMismatch {
                        coord: chart.coord(idx).name.render(),
                        detail: format!("component of a {parity} derivation must be {want}"),
                    })
                }
            }
            clean.insert(idx, poly);
        }
        Ok(Derivation {
            chart,
            parity,
            components: clean,
        })
    }

    pub fn zero(chart: ChartRef) -> Self {
        Derivation {
            chart,
            parity: Parity::Even,
            components: BTreeMap::new(),
        }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &BTreeMap<usize, Polynomial> {
        &self.components
    }

    pub fn component(&self, idx: usize) -> Polynomial {
        self.components
            .get(&idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.chart.clone()))
    }

    /// Apply by the graded Leibniz rule:
    /// `D(f_1 … f_k) = Σ_i (-1)^{e(D)(e(f_1)+…+e(f_{i-1}))} f_1 … D(f_i) … f_k`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_chart(p.chart(), &self.chart) {
            return Err(EngineError::ChartMismatch {
                expected: self.chart.name().render(),
                found: p.chart().name().render(),
            });
        }
        let mut acc = Polynomial::zero(self.chart.clone());
        for term in p.terms() {
            let factors = &term.factors;
            let mut odd_before = 0usize;
            for (pos, &(idx, exp)) in factors.iter().enumerate() {
                if let Some(dimg) = self.components.get(&idx) {
                    // prefix keeps z^{exp-1} in place (z even whenever exp > 1)
                    let mut left: Vec<(usize, u32)> = factors[..pos].to_vec();
                    if exp > 1 {
                        left.push((idx, exp - 1));
                    }
                    let right: Vec<(usize, u32)> = factors[pos + 1..].to_vec();
                    let mut c = term.coeff.clone() * Coeff::from_integer(exp.into());
                    if self.parity.is_odd() && odd_before % 2 == 1 {
                        c = -c;
                    }
                    let lp = Polynomial::monomial_word(self.chart.clone(), c, &left);
                    let rp = Polynomial::monomial_word(
                        self.chart.clone(),
                        Coeff::from_integer(1.into()),
                        &right,
                    );
                    acc = acc.add(&lp.mul(dimg)?.mul(&rp)?)?;
                }
                if self.chart.parity(idx).is_odd() {
                    odd_before += 1;
                }
            }
        }
        Ok(acc)
    }

    /// Graded commutator `D1 ∘ D2 - (-1)^{e(D1)e(D2)} D2 ∘ D1`, itself a
    /// derivation determined by its values on coordinates.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        if !same_chart(&self.chart, &other.chart) {
            return Err(EngineError::ChartMismatch {
                expected: self.chart.name().render(),
                found: other.chart.name().render(),
            });
        }
        let sign = self.parity.is_odd() && other.parity.is_odd();
        let mut components = BTreeMap::new();
        for idx in 0..self.chart.len() {
            let a = self.apply(&other.component(idx))?;
            let b = other.apply(&self.component(idx))?;
            let val = if sign { a.add(&b)? } else { a.sub(&b)? };
            if !val.is_zero() {
                components.insert(idx, val);
            }
        }
        Derivation::new(self.chart.clone(), self.parity + other.parity, components)
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        if self.parity != other.parity && !self.is_zero() && !other.is_zero() {
            return Err(EngineError::ParityMismatch {
                coord: "<derivation>".into(),
                detail: "cannot add derivations of different parity".into(),
            });
        }
        let mut components = self.components.clone();
        for (idx, poly) in &other.components {
            let merged = match components.get(idx) {
                Some(existing) => existing.add(poly)?,
                None => poly.clone(),
            };
            if merged.is_zero() {
                components.remove(idx);
            } else {
                components.insert(*idx, merged);
            }
        }
        let parity = if self.is_zero() { other.parity } else { self.parity };
        Derivation::new(self.chart.clone(), parity, components)
    }

    /// The common weight shift `w(D(z)) - w(z)` over nonzero components,
    /// when one exists (entries may be negative).
    pub fn weight_shift(&self) -> Option<Vec<i64>> {
        let mut shift: Option<Vec<i64>> = None;
        for (idx, poly) in &self.components {
            let w = match poly.weight_and_parity().0 {
                WeightClass::Homogeneous(w) => w,
                WeightClass::Any => continue,
                WeightClass::Inhomogeneous => return None,
            };
            let base = self.chart.weight(*idx);
            let cur: Vec<i64> = w
                .0
                .iter()
                .zip(&base.0)
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect();
            match &shift {
                None => shift = Some(cur),
                Some(prev) if *prev == cur => {}
                _ => return None,
            }
        }
        shift
    }
}

impl std::fmt::Display for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, poly) in &self.components {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*d/d{}", poly, self.chart.coord(*idx).name)?;
        }
        Ok(())
    }
}
