//! Polarization of weighted atlases, diagonalization back, and the
//! desuperization pipeline.
//!
//! Polarization embeds a degree-n weighted atlas into its n-fold iterated
//! tangent atlas and keeps exactly the coordinates whose leading weight
//! tuple sums to the original weight (base copies survive only at tuple
//! zero). Zero is substituted for every discarded coordinate before
//! normalization, so dropped coordinates never contribute signs. The flip
//! action restricts and the result is a symmetric n-vector atlas; the
//! original atlas sits inside it as the holonomic (flip-fixed) locus via
//! the diag embedding, and collapsing the fixed locus recovers it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::bundle::{Atlas, AtlasRef, BundleKind, BundleMorphism, Transition};
use crate::error::{EngineError, Result};
use crate::perm::Perm;
use crate::superalg::{
    coeff_int, Chart, ChartRef, Coeff, CoordName, CoordinateSymbol, Polynomial, PolynomialMap,
    Weight,
};
use crate::symmetry::{nice_coordinates, xi_functor, ActionTable, Flavor};
use crate::tangent::{iterated_tangent, tangent_of_morphism};

/// A polarized atlas with its inherited flip action and provenance.
#[derive(Debug, Clone)]
pub struct PolarizedAtlas {
    /// The symmetric n-vector atlas.
    pub atlas: AtlasRef,
    /// Restricted flip action (symmetric).
    pub action: ActionTable,
    /// The weighted atlas this was built from.
    pub source: Atlas,
    /// The ambient n-fold iterated tangent atlas.
    pub tangent_atlas: AtlasRef,
    /// Per chart: indices of the surviving coordinates inside the ambient
    /// tangent chart.
    pub kept: Vec<Vec<usize>>,
    /// Source coordinate name -> polarized coordinate names.
    pub dictionary: BTreeMap<String, Vec<String>>,
    pub multiplicity: usize,
}

impl PolarizedAtlas {
    /// Pullback of ambient-chart functions to the polarized chart
    /// (discarded coordinates go to zero).
    pub fn kill_map(&self, chart_idx: usize) -> PolynomialMap {
        let polarized = self.atlas.chart(chart_idx).clone();
        let ambient = self.tangent_atlas.chart(chart_idx).clone();
        let kept = &self.kept[chart_idx];
        PolynomialMap::from_index_map(polarized, ambient, |old| {
            kept.iter()
                .position(|&k| k == old)
                .map(|new| (new, Coeff::one()))
        })
        .expect("aligned charts")
    }
}

/// Strip the `n` leading tuple entries of a polarized coordinate identity,
/// recovering the source identity.
fn stripped_name(name: &CoordName, n: usize) -> CoordName {
    let tuple = name.tuple.as_ref().expect("polarized names carry tuples");
    let rest = tuple[n..].to_vec();
    name.with_replaced_tuple(if rest.is_empty() { None } else { Some(rest) })
}

/// Polarize a weighted atlas of degree <= n into a symmetric n-vector
/// atlas.
pub fn polarize(a: &Atlas, n: usize) -> Result<PolarizedAtlas> {
    let degree = match a.kind().degree() {
        Some(d) if a.kind().is_nweighted() => d,
        _ => {
            return Err(EngineError::KindMismatch(
                "polarization needs a weighted (single-slot) atlas".into(),
            ))
        }
    };
    if degree as usize > n || n == 0 {
        return Err(EngineError::InvalidInput(format!(
            "need degree <= n, got degree {degree} and n = {n}"
        )));
    }
    let source_report = a.validate();
    if !source_report.is_valid() {
        return Err(EngineError::InvalidInput(format!(
            "source atlas is invalid:\n{source_report}"
        )));
    }
    let it = iterated_tangent(a, n)?;
    let ambient = it.atlas.clone();

    let mut charts: Vec<ChartRef> = Vec::new();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    let mut kills: Vec<PolynomialMap> = Vec::new();
    for (ci, ch) in ambient.charts().iter().enumerate() {
        let keep: Vec<usize> = (0..ch.len())
            .filter(|&i| {
                let w = ch.weight(i);
                let alpha_total: u32 = w.0[..n].iter().sum();
                alpha_total == w.0[n]
            })
            .collect();
        let coords = keep
            .iter()
            .map(|&i| {
                let c = ch.coord(i);
                CoordinateSymbol::new(c.name.clone(), c.parity, Weight(c.weight.0[..n].to_vec()))
            })
            .collect();
        let name = a.chart(ci).name().prefixed(&format!("P{n}_"));
        let chart = Chart::new(name, coords)?;
        let kill = PolynomialMap::from_index_map(chart.clone(), ch.clone(), |old| {
            keep.iter()
                .position(|&k| k == old)
                .map(|new| (new, Coeff::one()))
        })?;
        charts.push(chart);
        kept.push(keep);
        kills.push(kill);
    }

    let pos = |name: &str| ambient.chart_index(name).expect("chart present");
    let transitions = ambient
        .transitions()
        .iter()
        .map(|t| {
            let si = pos(&t.map.source().name().render());
            let ti = pos(&t.map.target().name().render());
            let fwd = PolynomialMap::new(
                charts[si].clone(),
                charts[ti].clone(),
                kept[ti]
                    .iter()
                    .map(|&old| kills[si].substitute(t.map.image(old)))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            let bwd = PolynomialMap::new(
                charts[ti].clone(),
                charts[si].clone(),
                kept[si]
                    .iter()
                    .map(|&old| kills[ti].substitute(t.inverse.image(old)))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            Ok(Transition {
                map: fwd,
                inverse: bwd,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let triples = a
        .triples()
        .iter()
        .map(|[x, y, z]| {
            [
                format!("P{n}_{x}"),
                format!("P{n}_{y}"),
                format!("P{n}_{z}"),
            ]
        })
        .collect();
    let atlas = Arc::new(
        Atlas::new(
            BundleKind::nvector(n),
            false,
            charts,
            transitions,
            triples,
        )?
        .with_derived_flag(),
    );

    let mut action = ActionTable::new(n, Flavor::Symmetric);
    for sigma in Perm::all(n) {
        action.insert(
            sigma.clone(),
            ActionTable::tuple_permutation_entry(&atlas, &sigma)?,
        )?;
    }

    let mut dictionary: BTreeMap<String, Vec<String>> = BTreeMap::new();
    if let Some(ch) = atlas.charts().first() {
        for c in ch.coords() {
            dictionary
                .entry(stripped_name(&c.name, n).render())
                .or_default()
                .push(c.name.render());
        }
    }

    Ok(PolarizedAtlas {
        atlas,
        action,
        source: a.clone(),
        tangent_atlas: ambient,
        kept,
        dictionary,
        multiplicity: n,
    })
}

/// The induced morphism between polarizations: prolong n times, then
/// restrict to the surviving coordinates on both sides.
pub fn polarize_morphism(
    m: &BundleMorphism,
    n: usize,
) -> Result<(BundleMorphism, PolarizedAtlas, PolarizedAtlas)> {
    let ps = polarize(m.source(), n)?;
    let pt = polarize(m.target(), n)?;
    let mut prolonged = m.clone();
    for _ in 0..n {
        prolonged = tangent_of_morphism(&prolonged)?;
    }
    let maps = (0..prolonged.maps().len())
        .map(|ci| {
            let kill_src = ps.kill_map(ci);
            let images = pt.kept[ci]
                .iter()
                .map(|&old| kill_src.substitute(prolonged.map(ci).image(old)))
                .collect::<Result<Vec<_>>>()?;
            PolynomialMap::new(
                ps.atlas.chart(ci).clone(),
                pt.atlas.chart(ci).clone(),
                images,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism = BundleMorphism::new(ps.atlas.clone(), pt.atlas.clone(), maps)?;
    Ok((morphism, ps, pt))
}

/// How the diag embedding scales the polarized copies of a coordinate.
///
/// `Factorial` is the canonical choice: it is the unique constant making
/// the embedding commute with polarized transitions in every degree (a
/// weight-w shear splits into multinomially many polarized cross terms, and
/// `w! = C(w,p) * p! * q!` absorbs the count exactly). It agrees with the
/// simpler total-weight constant up to weight 2; the latter stays available
/// for experimentation, as does the unscaled embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiagScaling {
    /// `|alpha|!` — the multinomial-consistent canonical constant, pinned
    /// by the round-trip suite.
    #[default]
    Factorial,
    /// `|alpha|` — coincides with `Factorial` for weights up to 2 but does
    /// not close the transition square in higher degree.
    TotalWeight,
    /// Every copy pulls back to the bare coordinate.
    Unit,
}

pub(crate) fn factorial(w: u32) -> i64 {
    (1..=w as i64).product::<i64>().max(1)
}

/// The diag embedding `E -> P(E)`: each polarized copy `z@alpha` of a
/// weight-w coordinate `z` pulls back to a scaled `z` (base coordinates
/// pull back identically). Its image is the holonomic locus: the fixed
/// points of every flip.
pub fn diag_embedding(
    a: &AtlasRef,
    p: &PolarizedAtlas,
    scaling: DiagScaling,
) -> Result<BundleMorphism> {
    if p.source != **a {
        return Err(EngineError::Provenance(
            "polarization was not built from this atlas".into(),
        ));
    }
    let n = p.multiplicity;
    let maps = a
        .charts()
        .iter()
        .enumerate()
        .map(|(ci, src)| {
            let tgt = p.atlas.chart(ci).clone();
            let images = (0..tgt.len())
                .map(|i| {
                    let c = tgt.coord(i);
                    let orig = stripped_name(&c.name, n);
                    let j = src.find(&orig).ok_or_else(|| EngineError::Provenance(
                        format!("no source coordinate `{}`", orig.render()),
                    ))?;
                    let total = c.weight.total();
                    let scale = match (scaling, total) {
                        (_, 0) => Coeff::one(),
                        (DiagScaling::Factorial, t) => coeff_int(factorial(t)),
                        (DiagScaling::TotalWeight, t) => coeff_int(t as i64),
                        (DiagScaling::Unit, _) => Coeff::one(),
                    };
                    Ok(Polynomial::coordinate(src.clone(), j).scale(&scale))
                })
                .collect::<Result<Vec<_>>>()?;
            PolynomialMap::new(src.clone(), tgt, images)
        })
        .collect::<Result<Vec<_>>>()?;
    BundleMorphism::new(a.clone(), p.atlas.clone(), maps)
}

/// Result of collapsing the flip-fixed locus of a polarized atlas.
#[derive(Debug, Clone)]
pub struct Diagonalized {
    /// The recovered weighted atlas.
    pub atlas: Atlas,
    /// Point map `diagonalized -> polarized` identifying the fixed locus
    /// (pullback sends each polarized copy to its collapsed coordinate).
    pub include: Vec<PolynomialMap>,
}

/// Collapse a symmetric polarized atlas along `z@alpha = z@beta` for
/// `|alpha| = |beta|`: one coordinate survives per orbit, carrying the
/// total weight. Transitions are read off at the lexicographically first
/// weight of each class and checked for class independence.
pub fn diagonalize(p: &PolarizedAtlas) -> Result<Diagonalized> {
    diagonalize_atlas(&p.atlas, &p.action)
}

/// Diagonalize any symmetric multi-vector atlas given with its action.
pub fn diagonalize_atlas(atlas_in: &AtlasRef, action: &ActionTable) -> Result<Diagonalized> {
    if action.flavor() != Flavor::Symmetric {
        return Err(EngineError::NotSymmetric(
            "diagonalization needs a symmetric action".into(),
        ));
    }
    let nice = nice_coordinates(atlas_in, action)?;
    let n = action.n();
    let atlas = Arc::new(nice.atlas.clone());

    struct ChartCollapse {
        new: ChartRef,
        include: PolynomialMap,
        reps: Vec<usize>,
    }
    let mut collapses: Vec<ChartCollapse> = Vec::new();
    for ch in atlas.charts() {
        // group fiber coordinates by their collapsed identity
        let mut new_coords: Vec<CoordinateSymbol> = Vec::new();
        let mut class_of: Vec<Option<usize>> = vec![None; ch.len()];
        let mut reps: Vec<usize> = Vec::new();
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for (i, c) in ch.coords().iter().enumerate() {
            let collapsed = stripped_name(&c.name, n);
            let key = collapsed.render();
            let total = c.weight.total();
            match seen.get(&key) {
                Some(&k) => {
                    class_of[i] = Some(k);
                    if ch.coord(reps[k]).parity != c.parity {
                        return Err(EngineError::Internal(format!(
                            "parity differs inside orbit `{key}`"
                        )));
                    }
                }
                None => {
                    let k = new_coords.len();
                    seen.insert(key, k);
                    class_of[i] = Some(k);
                    reps.push(i);
                    new_coords.push(CoordinateSymbol::new(
                        collapsed,
                        c.parity,
                        Weight(vec![total]),
                    ));
                }
            }
        }
        let new = Chart::new(ch.name().prefixed("D_"), new_coords)?;
        let include = PolynomialMap::from_index_map(new.clone(), ch.clone(), |old| {
            class_of[old].map(|k| (k, Coeff::one()))
        })?;
        collapses.push(ChartCollapse { new, include, reps });
    }

    let pos = |name: &str| {
        atlas
            .chart_index(name)
            .expect("chart present")
    };
    let mut transitions = Vec::new();
    for t in nice.atlas.transitions() {
        let si = pos(&t.map.source().name().render());
        let ti = pos(&t.map.target().name().render());
        let collapse_images = |map: &PolynomialMap,
                               from: &ChartCollapse,
                               to: &ChartCollapse|
         -> Result<Vec<Polynomial>> {
            let target_chart = map.target();
            let mut images = Vec::with_capacity(to.new.len());
            for (k, &rep) in to.reps.iter().enumerate() {
                let collapsed = from.include.substitute(map.image(rep))?;
                // class independence: every member collapses identically
                for i in 0..target_chart.len() {
                    if i != rep
                        && stripped_name(&target_chart.coord(i).name, n)
                            == to.new.coord(k).name
                    {
                        let other = from.include.substitute(map.image(i))?;
                        if other != collapsed {
                            return Err(EngineError::Internal(format!(
                                "transition image of orbit `{}` depends on the representative",
                                to.new.coord(k).name
                            )));
                        }
                    }
                }
                images.push(collapsed);
            }
            Ok(images)
        };
        let (cs, ct) = (&collapses[si], &collapses[ti]);
        transitions.push(Transition {
            map: PolynomialMap::new(
                cs.new.clone(),
                ct.new.clone(),
                collapse_images(&t.map, cs, ct)?,
            )?,
            inverse: PolynomialMap::new(
                ct.new.clone(),
                cs.new.clone(),
                collapse_images(&t.inverse, ct, cs)?,
            )?,
        });
    }
    let triples = nice
        .atlas
        .triples()
        .iter()
        .map(|[x, y, z]| [format!("D_{x}"), format!("D_{y}"), format!("D_{z}")])
        .collect();
    let new_atlas = Atlas::new(
        BundleKind::nweighted(n as u32),
        false,
        collapses.iter().map(|c| c.new.clone()).collect(),
        transitions,
        triples,
    )?
    .with_derived_flag();
    // land the inclusion in the charts of the input polarized atlas, not
    // the nice reordering: compose with the inverse coordinate change
    let include = collapses
        .into_iter()
        .enumerate()
        .map(|(ci, c)| nice.change_inverse.map(ci).after(&c.include))
        .collect::<Result<Vec<_>>>()?;
    Ok(Diagonalized {
        atlas: new_atlas,
        include,
    })
}

/// The explicit isomorphism witnessing `diagonalize ∘ polarize ≅ id`:
/// pullback of each recovered coordinate is `w! * z` on the original atlas
/// (matching the canonical diag scaling; base coordinates identified),
/// inverted by the reciprocal scaling.
pub fn roundtrip_isomorphism(
    a: &AtlasRef,
    d: &Atlas,
) -> Result<(BundleMorphism, BundleMorphism)> {
    let d_ref = Arc::new(d.clone());
    let mut fwd_maps = Vec::new();
    let mut bwd_maps = Vec::new();
    for (ci, src) in a.charts().iter().enumerate() {
        let tgt = d_ref.chart(ci).clone();
        let mut fwd_images = Vec::with_capacity(tgt.len());
        let mut bwd_images = vec![Polynomial::zero(tgt.clone()); src.len()];
        for i in 0..tgt.len() {
            let name = &tgt.coord(i).name;
            let j = src.find(name).ok_or_else(|| {
                EngineError::Provenance(format!("no source coordinate `{}`", name.render()))
            })?;
            let w = factorial(tgt.weight(i).total());
            fwd_images.push(Polynomial::coordinate(src.clone(), j).scale(&coeff_int(w)));
            bwd_images[j] = Polynomial::coordinate(tgt.clone(), i)
                .scale(&(Coeff::one() / coeff_int(w)));
        }
        fwd_maps.push(PolynomialMap::new(src.clone(), tgt.clone(), fwd_images)?);
        bwd_maps.push(PolynomialMap::new(tgt, src.clone(), bwd_images)?);
    }
    Ok((
        BundleMorphism::new(a.clone(), d_ref.clone(), fwd_maps)?,
        BundleMorphism::new(d_ref, a.clone(), bwd_maps)?,
    ))
}

/// A desuperized atlas: the skew multi-vector image of a weighted atlas.
#[derive(Debug, Clone)]
pub struct Desuperized {
    pub atlas: Atlas,
    pub action: ActionTable,
    pub polarized: PolarizedAtlas,
}

/// The desuperization of a morphism of weighted atlases: polarize, then
/// totally reverse the parity. Preserves identities and compositions.
pub fn desuperize_morphism(m: &BundleMorphism) -> Result<BundleMorphism> {
    let degree = m
        .source()
        .kind()
        .degree()
        .filter(|_| m.source().kind().is_nweighted())
        .ok_or_else(|| {
            EngineError::KindMismatch("desuperization needs weighted atlases".into())
        })?;
    let (pm, _, _) = polarize_morphism(m, degree as usize)?;
    crate::parity::total_reversion_morphism(&pm)
}

/// Desuperization: polarize at the declared degree, then apply the
/// symmetric-to-skew equivalence. Weighted atlases whose parity equals the
/// weight mod 2 come out purely even.
pub fn desuperize(a: &Atlas) -> Result<Desuperized> {
    let degree = a.kind().degree().filter(|_| a.kind().is_nweighted()).ok_or_else(|| {
        EngineError::KindMismatch("desuperization needs a weighted atlas".into())
    })?;
    if degree == 0 {
        return Err(EngineError::InvalidInput(
            "desuperization needs degree >= 1".into(),
        ));
    }
    let p = polarize(a, degree as usize)?;
    let (atlas, action) = xi_functor(&p.atlas, &p.action)?;
    Ok(Desuperized {
        atlas,
        action,
        polarized: p,
    })
}

#[cfg(test)]
mod tests;
