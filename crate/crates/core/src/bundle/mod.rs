//! Atlas-level model of weighted and multi-vector superbundles.
//!
//! An [`Atlas`] is a list of charts plus declared overlaps: transition maps
//! together with their declared inverses (formal inversion of polynomial
//! maps is out of scope, so inverses are data and the validator checks the
//! round trip). All structural conditions — weight homogeneity of
//! transitions, parity preservation, cocycle consistency on declared
//! triples, Euler-field compatibility — are checked symbolically and
//! reported through [`ValidationReport`] rather than raised as errors.

mod morphism;
mod validate;

pub use morphism::BundleMorphism;
pub use validate::ValidationReport;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::{EngineError, Result};
use crate::perm::Perm;
use crate::superalg::{
    Chart, ChartRef, Coeff, CoordinateSymbol, Derivation, Polynomial, PolynomialMap,
    Weight,
};

/// Grading shape of an atlas: one cap per weight slot. A cap of 1 marks a
/// vector-bundle (Euler) slot; a larger cap bounds an N-grading.
///
/// * `nweighted(n)` — a single slot with weights `0..=n`;
/// * `nvector(n)` — `n` slots with weights in `{0,1}`;
/// * mixed shapes arise from tangent prolongations of weighted atlases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleKind {
    caps: Vec<u32>,
}

impl BundleKind {
    pub fn nweighted(degree: u32) -> Self {
        BundleKind { caps: vec![degree] }
    }

    pub fn nvector(n: usize) -> Self {
        BundleKind { caps: vec![1; n] }
    }

    /// A supermanifold with no grading slots.
    pub fn plain() -> Self {
        BundleKind { caps: Vec::new() }
    }

    pub fn from_caps(caps: Vec<u32>) -> Self {
        BundleKind { caps }
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn slots(&self) -> usize {
        self.caps.len()
    }

    pub fn is_nvector(&self) -> bool {
        !self.caps.is_empty() && self.caps.iter().all(|&c| c == 1)
    }

    pub fn is_nweighted(&self) -> bool {
        self.caps.len() == 1
    }

    /// Declared degree of a single-slot kind.
    pub fn degree(&self) -> Option<u32> {
        if self.caps.len() == 1 {
            Some(self.caps[0])
        } else {
            None
        }
    }

    pub fn multiplicity(&self) -> Option<usize> {
        if self.is_nvector() {
            Some(self.caps.len())
        } else {
            None
        }
    }

    /// Prepend a vector-bundle slot (tangent prolongation).
    pub fn with_linear_slot_prepended(&self) -> BundleKind {
        let mut caps = vec![1];
        caps.extend_from_slice(&self.caps);
        BundleKind { caps }
    }

    pub fn permuted(&self, sigma: &Perm) -> BundleKind {
        BundleKind {
            caps: (1..=self.caps.len())
                .map(|k| self.caps[sigma.apply(k) - 1])
                .collect(),
        }
    }
}

impl std::fmt::Display for BundleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_nvector() {
            write!(f, "nvector {}", self.caps.len())
        } else if let Some(d) = self.degree() {
            write!(f, "nweighted degree {d}")
        } else {
            write!(f, "slots (")?;
            for (i, c) in self.caps.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

/// A chart-to-chart transition with its declared inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    /// Point map `source -> target`: each target coordinate gets a
    /// polynomial over the source chart.
    pub map: PolynomialMap,
    /// Declared inverse, point map `target -> source`.
    pub inverse: PolynomialMap,
}

/// Coordinate atlas of a graded superbundle.
#[derive(Debug, Clone, PartialEq)]
pub struct Atlas {
    kind: BundleKind,
    nmanifold: bool,
    charts: Vec<ChartRef>,
    transitions: Vec<Transition>,
    /// Declared overlap triples `(a, b, c)` by chart name: the cocycle
    /// `g_{a->c} = g_{b->c} ∘ g_{a->b}` is checked for each.
    triples: Vec<[String; 3]>,
}

pub type AtlasRef = Arc<Atlas>;

impl Atlas {
    pub fn new(
        kind: BundleKind,
        nmanifold: bool,
        charts: Vec<ChartRef>,
        transitions: Vec<Transition>,
        triples: Vec<[String; 3]>,
    ) -> Result<Atlas> {
        let mut names = std::collections::BTreeSet::new();
        for ch in &charts {
            if !names.insert(ch.name().render()) {
                return Err(EngineError::InvalidInput(format!(
                    "duplicate chart `{}`",
                    ch.name()
                )));
            }
            for c in ch.coords() {
                if c.weight.slots() != kind.slots() {
                    return Err(EngineError::KindMismatch(format!(
                        "coordinate `{}` has {} weight slots, kind `{}` has {}",
                        c.name,
                        c.weight.slots(),
                        kind,
                        kind.slots()
                    )));
                }
            }
        }
        let atlas = Atlas {
            kind,
            nmanifold,
            charts,
            transitions,
            triples,
        };
        for t in &atlas.transitions {
            for ch in [t.map.source(), t.map.target()] {
                if atlas.chart_index(&ch.name().render()).is_none() {
                    return Err(EngineError::InvalidInput(format!(
                        "transition references unknown chart `{}`",
                        ch.name()
                    )));
                }
            }
        }
        Ok(atlas)
    }

    pub fn single_chart(kind: BundleKind, nmanifold: bool, chart: ChartRef) -> Result<Atlas> {
        Atlas::new(kind, nmanifold, vec![chart], Vec::new(), Vec::new())
    }

    pub fn kind(&self) -> &BundleKind {
        &self.kind
    }

    pub fn nmanifold_flag(&self) -> bool {
        self.nmanifold
    }

    pub fn charts(&self) -> &[ChartRef] {
        &self.charts
    }

    pub fn chart(&self, i: usize) -> &ChartRef {
        &self.charts[i]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn triples(&self) -> &[[String; 3]] {
        &self.triples
    }

    pub fn chart_index(&self, name: &str) -> Option<usize> {
        self.charts
            .iter()
            .position(|c| c.name().render() == name)
    }

    pub fn transition_between(&self, source: &str, target: &str) -> Option<&Transition> {
        self.transitions.iter().find(|t| {
            t.map.source().name().render() == source && t.map.target().name().render() == target
        })
    }

    /// Does parity equal total weight mod 2 on every coordinate?
    pub fn parity_matches_weight(&self) -> bool {
        self.charts.iter().all(|ch| {
            ch.coords()
                .iter()
                .all(|c| c.parity == c.weight.induced_parity())
        })
    }

    /// Is every coordinate even?
    pub fn is_purely_even(&self) -> bool {
        self.charts
            .iter()
            .all(|ch| ch.coords().iter().all(|c| !c.parity.is_odd()))
    }

    /// The weight vector field of one chart: `Σ w z d/dz` with `w` the
    /// `slot` entry of each weight (or the total weight when `slot` is
    /// `None`).
    pub fn weight_field(&self, chart_idx: usize, slot: Option<usize>) -> Derivation {
        let ch = self.chart(chart_idx);
        let mut comps = BTreeMap::new();
        for i in 0..ch.len() {
            let w = match slot {
                Some(s) => ch.weight(i).entry(s),
                None => ch.weight(i).total(),
            };
            if w != 0 {
                comps.insert(
                    i,
                    Polynomial::coordinate(ch.clone(), i).scale(&Coeff::from_integer(w.into())),
                );
            }
        }
        Derivation::new(ch.clone(), crate::superalg::Parity::Even, comps)
            .expect("weight fields are even")
    }

    /// Weight vector fields on every chart, with the pushforward relation
    /// along each transition checked symbolically: the transition image of a
    /// weight-`w` coordinate must be an eigenfunction of the source weight
    /// field with eigenvalue `w`.
    pub fn weight_vector_fields(&self, slot: Option<usize>) -> Result<Vec<Derivation>> {
        if let Some(s) = slot {
            if s == 0 || s > self.kind.slots() {
                return Err(EngineError::InvalidInput(format!(
                    "slot {s} out of range 1..={}",
                    self.kind.slots()
                )));
            }
        }
        let fields: Vec<Derivation> = (0..self.charts.len())
            .map(|i| self.weight_field(i, slot))
            .collect();
        for t in &self.transitions {
            let si = self
                .chart_index(&t.map.source().name().render())
                .expect("validated in constructor");
            let nabla = &fields[si];
            let tgt = t.map.target();
            for (i, img) in t.map.images().iter().enumerate() {
                let w = match slot {
                    Some(s) => tgt.weight(i).entry(s),
                    None => tgt.weight(i).total(),
                };
                let lhs = nabla.apply(img)?;
                let rhs = img.scale(&Coeff::from_integer(w.into()));
                if lhs != rhs {
                    return Err(EngineError::InvalidInput(format!(
                        "weight field is not transition-compatible at `{}` in `{} -> {}`",
                        tgt.coord(i).name,
                        t.map.source().name(),
                        t.map.target().name()
                    )));
                }
            }
        }
        Ok(fields)
    }

    /// The dilation endomorphism `h_t`: every coordinate scales by
    /// `t^{|w|}`; `h_1 = id` and `h_0` projects onto the base.
    pub fn dilation(self: &AtlasRef, t: &Coeff) -> BundleMorphism {
        let maps = self
            .charts
            .iter()
            .map(|ch| {
                PolynomialMap::diagonal(ch.clone(), ch.clone(), |i| {
                    pow_coeff(t, ch.weight(i).total())
                })
                .expect("equal charts")
            })
            .collect();
        BundleMorphism::new_unchecked(self.clone(), self.clone(), maps)
    }

    /// Metadata relabeling `E -> E^sigma`: weights (and caps) permute by the
    /// right action `w -> w ∘ sigma`; polynomial data is untouched.
    pub fn permute(&self, sigma: &Perm) -> Result<Atlas> {
        if sigma.len() != self.kind.slots() {
            return Err(EngineError::PermSize {
                expected: self.kind.slots(),
                found: sigma.len(),
            });
        }
        let charts: Vec<ChartRef> = self
            .charts
            .iter()
            .map(|ch| {
                Chart::new(
                    ch.name().clone(),
                    ch.coords()
                        .iter()
                        .map(|c| {
                            CoordinateSymbol::new(
                                c.name.clone(),
                                c.parity,
                                c.weight.permuted(sigma),
                            )
                        })
                        .collect(),
                )
                .expect("renaming preserves uniqueness")
            })
            .collect();
        let rebind = |m: &PolynomialMap| -> PolynomialMap {
            let src = self
                .chart_index(&m.source().name().render())
                .expect("chart present");
            let tgt = self
                .chart_index(&m.target().name().render())
                .expect("chart present");
            m.with_source(charts[src].clone()).with_target(charts[tgt].clone())
        };
        let transitions = self
            .transitions
            .iter()
            .map(|t| Transition {
                map: rebind(&t.map),
                inverse: rebind(&t.inverse),
            })
            .collect();
        Atlas::new(
            self.kind.permuted(sigma),
            self.nmanifold,
            charts,
            transitions,
            self.triples.clone(),
        )
    }

    /// The vector subbundle `E[alpha]`: keep base coordinates and the
    /// weight-`alpha` coordinates, substitute zero for everything else. The
    /// result is a single-slot vector bundle over the total base.
    pub fn restrict_to_weight(&self, alpha: &Weight) -> Result<Atlas> {
        if !self.kind.is_nvector() {
            return Err(EngineError::KindMismatch(
                "restrict_to_weight needs an n-vector atlas".into(),
            ));
        }
        if alpha.slots() != self.kind.slots() || !alpha.is_binary() || alpha.is_zero() {
            return Err(EngineError::InvalidInput(format!(
                "alpha must be a nonzero binary weight with {} slots",
                self.kind.slots()
            )));
        }
        let tag: String = alpha.0.iter().map(|v| v.to_string()).collect();
        self.subatlas(
            &format!("R{tag}_"),
            BundleKind::nweighted(1),
            |c| c.weight.is_zero() || c.weight == *alpha,
            |c| {
                if c.weight.is_zero() {
                    Weight(vec![0])
                } else {
                    Weight(vec![1])
                }
            },
        )
    }

    /// The `(i,j)`-core: keep coordinates with equal weight entries in slots
    /// `i` and `j`, substitute zero for the rest; a vector bundle whose
    /// fiber coordinates are those simultaneously of weight 1 in both slots.
    pub fn core_bundle(&self, i: usize, j: usize) -> Result<Atlas> {
        if !self.kind.is_nvector() {
            return Err(EngineError::KindMismatch(
                "core_bundle needs an n-vector atlas".into(),
            ));
        }
        let n = self.kind.slots();
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(EngineError::InvalidInput(format!(
                "core slots must be distinct and within 1..={n}"
            )));
        }
        self.subatlas(
            &format!("C{i}{j}_"),
            BundleKind::nweighted(1),
            |c| c.weight.entry(i) == c.weight.entry(j),
            |c| Weight(vec![c.weight.entry(i)]),
        )
    }

    /// Keep the coordinates selected by `keep` (reassigning weights via
    /// `reweight`), substitute zero for dropped coordinates in all
    /// transition data.
    fn subatlas(
        &self,
        prefix: &str,
        kind: BundleKind,
        keep: impl Fn(&CoordinateSymbol) -> bool,
        reweight: impl Fn(&CoordinateSymbol) -> Weight,
    ) -> Result<Atlas> {
        struct ChartCut {
            new: ChartRef,
            kept: Vec<usize>,
            kill: PolynomialMap,
        }
        let mut cuts: Vec<ChartCut> = Vec::new();
        for ch in &self.charts {
            let kept: Vec<usize> = (0..ch.len()).filter(|&i| keep(ch.coord(i))).collect();
            let coords = kept
                .iter()
                .map(|&i| {
                    let c = ch.coord(i);
                    CoordinateSymbol::new(c.name.clone(), c.parity, reweight(c))
                })
                .collect();
            let new = Chart::new(ch.name().prefixed(prefix), coords)?;
            let kill = PolynomialMap::from_index_map(new.clone(), ch.clone(), |old| {
                kept.iter()
                    .position(|&k| k == old)
                    .map(|newi| (newi, Coeff::one()))
            })?;
            cuts.push(ChartCut { new, kept, kill });
        }
        let cut_of = |name: &str| {
            let i = self.chart_index(name).expect("chart present");
            &cuts[i]
        };
        let mut transitions = Vec::new();
        for t in &self.transitions {
            let s = cut_of(&t.map.source().name().render());
            let g = cut_of(&t.map.target().name().render());
            let fwd = PolynomialMap::new(
                s.new.clone(),
                g.new.clone(),
                g.kept
                    .iter()
                    .map(|&old| s.kill.substitute(t.map.image(old)))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            let bwd = PolynomialMap::new(
                g.new.clone(),
                s.new.clone(),
                s.kept
                    .iter()
                    .map(|&old| g.kill.substitute(t.inverse.image(old)))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            transitions.push(Transition {
                map: fwd,
                inverse: bwd,
            });
        }
        let triples = self
            .triples
            .iter()
            .map(|[a, b, c]| {
                [
                    format!("{prefix}{a}"),
                    format!("{prefix}{b}"),
                    format!("{prefix}{c}"),
                ]
            })
            .collect();
        let charts = cuts.into_iter().map(|c| c.new).collect();
        let mut atlas = Atlas::new(kind, false, charts, transitions, triples)?;
        atlas.nmanifold = atlas.parity_matches_weight();
        Ok(atlas)
    }

    /// Re-declare a single-slot atlas at a higher degree bound. Degree is
    /// part of the declared kind, so loosening it is an explicit operation;
    /// the new bound must still dominate every coordinate weight.
    pub fn redeclared_degree(&self, degree: u32) -> Result<Atlas> {
        if !self.kind.is_nweighted() {
            return Err(EngineError::KindMismatch(
                "degree re-declaration needs a single-slot atlas".into(),
            ));
        }
        let max = self
            .charts
            .iter()
            .flat_map(|ch| ch.coords())
            .map(|c| c.weight.total())
            .max()
            .unwrap_or(0);
        if degree < max {
            return Err(EngineError::InvalidInput(format!(
                "declared degree {degree} below the maximal coordinate weight {max}"
            )));
        }
        let mut out = self.clone();
        out.kind = BundleKind::nweighted(degree);
        Ok(out)
    }

    /// Recompute the N-manifold flag from the coordinate data.
    pub(crate) fn with_derived_flag(mut self) -> Atlas {
        self.nmanifold = self.parity_matches_weight();
        self
    }
}

pub(crate) fn pow_coeff(t: &Coeff, k: u32) -> Coeff {
    let mut acc = Coeff::one();
    for _ in 0..k {
        acc *= t.clone();
    }
    acc
}

#[cfg(test)]
pub(crate) mod tests;
