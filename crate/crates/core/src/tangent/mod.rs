//! The tangent functor on atlases, tangent lifts of derivations, iterated
//! tangents, and the flip action of the symmetric group.
//!
//! Each application of the tangent functor doubles a chart: every
//! coordinate `x` gains a dotted partner of the same parity whose identity
//! and weight pick up one prepended slot entry (0 for the original copy,
//! 1 for the dotted copy). Prepending keeps slot `k` of the iterated
//! tangent aligned with the `k`-th Euler field, so flips act by permuting
//! the leading tuple entries. Transition data prolongs by the formal total
//! differential with the dotted coordinate written to the left of the
//! partial derivative, then normalizes.

use std::sync::Arc;

use crate::bundle::{Atlas, AtlasRef, BundleMorphism, Transition};
use crate::error::{EngineError, Result};
use crate::perm::Perm;
use crate::superalg::{
    Chart, ChartRef, CoordinateSymbol, Derivation, Polynomial, PolynomialMap, Weight,
};
use crate::symmetry::{ActionTable, Flavor};

/// Chart-level data of one tangent application.
#[derive(Debug, Clone)]
pub struct TangentChart {
    /// The doubled chart: originals first, dotted copies after.
    pub chart: ChartRef,
    /// Pullback of base-chart functions along the projection `T(U) -> U`.
    pub lift: PolynomialMap,
    base_len: usize,
}

impl TangentChart {
    /// Index of the dotted copy of original coordinate `i`.
    pub fn dot(&self, i: usize) -> usize {
        self.base_len + i
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }
}

/// Double a chart: `x -> (x@0, x@1)` with parity kept and one weight slot
/// prepended.
pub fn tangent_of_chart(ch: &ChartRef) -> TangentChart {
    let mut coords: Vec<CoordinateSymbol> = Vec::with_capacity(2 * ch.len());
    for c in ch.coords() {
        let mut w = vec![0];
        w.extend_from_slice(&c.weight.0);
        coords.push(CoordinateSymbol::new(
            c.name.tuple_prepended(0),
            c.parity,
            Weight(w),
        ));
    }
    for c in ch.coords() {
        let mut w = vec![1];
        w.extend_from_slice(&c.weight.0);
        coords.push(CoordinateSymbol::new(
            c.name.tuple_prepended(1),
            c.parity,
            Weight(w),
        ));
    }
    let chart = Chart::new(ch.name().prefixed("T_"), coords).expect("doubling keeps names unique");
    let lift = PolynomialMap::new(
        chart.clone(),
        ch.clone(),
        (0..ch.len())
            .map(|i| Polynomial::coordinate(chart.clone(), i))
            .collect(),
    )
    .expect("undotted block mirrors the base chart");
    TangentChart {
        chart,
        lift,
        base_len: ch.len(),
    }
}

/// The formal total differential of a base-chart function:
/// `df = Σ_b x@1^b * (∂f/∂x^b)` lifted to the tangent chart, with the
/// dotted factor on the left and all signs folded in by normalization.
pub fn total_differential(f: &Polynomial, td: &TangentChart) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(td.chart.clone());
    for b in 0..td.base_len {
        let df = f.partial(b);
        if df.is_zero() {
            continue;
        }
        let dotted = Polynomial::coordinate(td.chart.clone(), td.dot(b));
        acc = acc.add(&dotted.mul(&td.lift.substitute(&df)?)?)?;
    }
    Ok(acc)
}

/// Prolong a polynomial map to the tangent charts: original components are
/// kept (lifted) and each gains its total differential on the dotted copy.
pub fn tangent_of_map(
    m: &PolynomialMap,
    td_source: &TangentChart,
    td_target: &TangentChart,
) -> Result<PolynomialMap> {
    let mut images = Vec::with_capacity(2 * m.images().len());
    for img in m.images() {
        images.push(td_source.lift.substitute(img)?);
    }
    for img in m.images() {
        images.push(total_differential(img, td_source)?);
    }
    PolynomialMap::new(td_source.chart.clone(), td_target.chart.clone(), images)
}

/// The tangent prolongation of an atlas: doubled charts, prolonged
/// transitions and inverses, one extra leading weight slot carrying the new
/// Euler field.
pub fn tangent_of_atlas(a: &Atlas) -> Result<Atlas> {
    let tds: Vec<TangentChart> = a.charts().iter().map(tangent_of_chart).collect();
    let td_of = |name: &str| {
        let i = a.chart_index(name).expect("chart present");
        &tds[i]
    };
    let transitions = a
        .transitions()
        .iter()
        .map(|t| {
            let s = td_of(&t.map.source().name().render());
            let g = td_of(&t.map.target().name().render());
            Ok(Transition {
                map: tangent_of_map(&t.map, s, g)?,
                inverse: tangent_of_map(&t.inverse, g, s)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let triples = a
        .triples()
        .iter()
        .map(|[x, y, z]| [format!("T_{x}"), format!("T_{y}"), format!("T_{z}")])
        .collect();
    Ok(Atlas::new(
        a.kind().with_linear_slot_prepended(),
        false,
        tds.iter().map(|t| t.chart.clone()).collect(),
        transitions,
        triples,
    )?
    .with_derived_flag())
}

/// The tangent lift of a derivation: `Y = f^a d/dx^a` becomes
/// `d_T Y = f^a d/dx^a + (x@1^b * ∂f^a/∂x^b) d/d(x@1^a)` on the tangent
/// chart. The lift respects brackets.
pub fn tangent_lift(d: &Derivation, td: &TangentChart) -> Result<Derivation> {
    if !crate::superalg::same_chart(td.lift.target(), d.chart()) {
        return Err(EngineError::ChartMismatch {
            expected: td.lift.target().name().render(),
            found: d.chart().name().render(),
        });
    }
    let mut comps = std::collections::BTreeMap::new();
    for (&i, f) in d.components() {
        let lifted = td.lift.substitute(f)?;
        if !lifted.is_zero() {
            comps.insert(i, lifted);
        }
        let diff = total_differential(f, td)?;
        if !diff.is_zero() {
            comps.insert(td.dot(i), diff);
        }
    }
    Derivation::new(td.chart.clone(), d.parity(), comps)
}

/// An iterated tangent atlas `T^(k)` together with its flip action.
#[derive(Debug, Clone)]
pub struct IteratedTangentAtlas {
    pub atlas: AtlasRef,
    pub source: Atlas,
    pub order: usize,
    /// The symmetric flip action: `sigma` sends `x@alpha` to
    /// `x@(alpha ∘ sigma)` on the leading tuple entries.
    pub flips: ActionTable,
}

/// Apply the tangent functor `k` times and populate the flip action of the
/// symmetric group on the `k` leading slots.
pub fn iterated_tangent(a: &Atlas, k: usize) -> Result<IteratedTangentAtlas> {
    if k == 0 {
        return Err(EngineError::InvalidInput(
            "iterated tangent needs k >= 1".into(),
        ));
    }
    let mut acc = a.clone();
    for _ in 0..k {
        acc = tangent_of_atlas(&acc)?;
    }
    let atlas = Arc::new(acc);
    let mut flips = ActionTable::new(k, Flavor::Symmetric);
    for sigma in Perm::all(k) {
        flips.insert(
            sigma.clone(),
            ActionTable::tuple_permutation_entry(&atlas, &sigma)?,
        )?;
    }
    Ok(IteratedTangentAtlas {
        atlas,
        source: a.clone(),
        order: k,
        flips,
    })
}

/// The flip automorphism `I^sigma : T^(k) -> (T^(k))^sigma`.
pub fn flip_action(it: &IteratedTangentAtlas, sigma: &Perm) -> Result<BundleMorphism> {
    if sigma.len() != it.order {
        return Err(EngineError::PermSize {
            expected: it.order,
            found: sigma.len(),
        });
    }
    it.flips.morphism(&it.atlas, sigma)
}

/// Prolong a morphism chart-wise (used by the polarization functor).
pub fn tangent_of_morphism(m: &BundleMorphism) -> Result<BundleMorphism> {
    let source = Arc::new(tangent_of_atlas(m.source())?);
    let target = Arc::new(tangent_of_atlas(m.target())?);
    let maps = m
        .maps()
        .iter()
        .enumerate()
        .map(|(i, map)| {
            let tds = tangent_of_chart(m.source().chart(i));
            let tdt = tangent_of_chart(m.target().chart(i));
            tangent_of_map(map, &tds, &tdt)
        })
        .collect::<Result<Vec<_>>>()?;
    BundleMorphism::new(source, target, maps)
}

#[cfg(test)]
mod tests;
