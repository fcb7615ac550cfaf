use super::{pow_coeff, Atlas, AtlasRef, ValidationReport};
use crate::error::{EngineError, Result};
use crate::superalg::{coeff_int, PolynomialMap};

/// A morphism of bundles given chart-wise: `maps[i]` sends chart `i` of the
/// source atlas to chart `i` of the target atlas (functors preserve chart
/// order, so the aligned representation covers every morphism the engine
/// produces; overlaps are handled through the transition-compatibility
/// squares).
#[derive(Debug, Clone, PartialEq)]
pub struct BundleMorphism {
    source: AtlasRef,
    target: AtlasRef,
    maps: Vec<PolynomialMap>,
}

impl BundleMorphism {
    pub fn new(source: AtlasRef, target: AtlasRef, maps: Vec<PolynomialMap>) -> Result<Self> {
        if maps.len() != source.charts().len() || source.charts().len() != target.charts().len() {
            return Err(EngineError::InvalidInput(format!(
                "chart coverage gap: {} maps for {} source / {} target charts",
                maps.len(),
                source.charts().len(),
                target.charts().len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if !m.source().same_symbols(source.chart(i)) {
                return Err(EngineError::ChartMismatch {
                    expected: source.chart(i).name().render(),
                    found: m.source().name().render(),
                });
            }
            if !m.target().same_symbols(target.chart(i)) {
                return Err(EngineError::ChartMismatch {
                    expected: target.chart(i).name().render(),
                    found: m.target().name().render(),
                });
            }
        }
        Ok(BundleMorphism {
            source,
            target,
            maps,
        })
    }

    pub(crate) fn new_unchecked(
        source: AtlasRef,
        target: AtlasRef,
        maps: Vec<PolynomialMap>,
    ) -> Self {
        BundleMorphism {
            source,
            target,
            maps,
        }
    }

    pub fn identity(atlas: AtlasRef) -> Self {
        let maps = atlas
            .charts()
            .iter()
            .map(|ch| PolynomialMap::identity(ch.clone()))
            .collect();
        BundleMorphism {
            source: atlas.clone(),
            target: atlas,
            maps,
        }
    }

    pub fn source(&self) -> &AtlasRef {
        &self.source
    }

    pub fn target(&self) -> &AtlasRef {
        &self.target
    }

    pub fn maps(&self) -> &[PolynomialMap] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &PolynomialMap {
        &self.maps[i]
    }

    /// The same morphism between the slot-permuted atlases (pure metadata
    /// relabeling; polynomial data is untouched).
    pub fn permuted(&self, sigma: &crate::perm::Perm) -> Result<BundleMorphism> {
        let source = std::sync::Arc::new(self.source.permute(sigma)?);
        let target = std::sync::Arc::new(self.target.permute(sigma)?);
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                m.with_source(source.chart(i).clone())
                    .with_target(target.chart(i).clone())
            })
            .collect();
        Ok(BundleMorphism {
            source,
            target,
            maps,
        })
    }

    /// Point-map composition `self ∘ inner`.
    pub fn after(&self, inner: &BundleMorphism) -> Result<BundleMorphism> {
        if self.maps.len() != inner.maps.len() {
            return Err(EngineError::InvalidInput(
                "morphism chart counts differ".into(),
            ));
        }
        let maps = self
            .maps
            .iter()
            .zip(&inner.maps)
            .map(|(f, g)| f.after(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(BundleMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            maps,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(|m| m.is_identity())
    }

    /// Do the polynomial maps agree entry-wise? (Atlas metadata such as the
    /// slot-permuted weights may differ; functor-identity laws compare the
    /// underlying coordinate expressions.)
    pub fn same_maps(&self, other: &BundleMorphism) -> bool {
        self.maps.len() == other.maps.len()
            && self
                .maps
                .iter()
                .zip(&other.maps)
                .all(|(a, b)| a.images() == b.images())
    }

    /// Structural validity of the morphism:
    /// * pullbacks of homogeneous coordinates are homogeneous of the same
    ///   weight and parity (checked both directly and through the weight
    ///   vector fields);
    /// * the morphism intertwines the dilations `h_t` at `t = 0, 2, 3`;
    /// * every pair of corresponding transitions closes a commuting square.
    pub fn check(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        if self.maps.len() != self.source.charts().len()
            || self.source.charts().len() != self.target.charts().len()
        {
            rep.fail(
                "morphism",
                "chart coverage",
                format!(
                    "{} maps for {} source / {} target charts",
                    self.maps.len(),
                    self.source.charts().len(),
                    self.target.charts().len()
                ),
            );
            return rep;
        }
        for (ci, m) in self.maps.iter().enumerate() {
            let scope = format!("map {} -> {}", m.source().name(), m.target().name());
            super::validate::validate_map_homogeneity(&mut rep, &scope, m);
            // weight-field relation: nabla_src(img) = w * img for every slot
            let mut ok = true;
            for slot in 1..=self.source.kind().slots() {
                let nabla = self.source.weight_field(ci, Some(slot));
                for (i, img) in m.images().iter().enumerate() {
                    let w = m.target().weight(i).entry(slot);
                    let lhs = match nabla.apply(img) {
                        Ok(p) => p,
                        Err(e) => {
                            ok = false;
                            rep.fail(&scope, "weight-field relation", e.to_string());
                            continue;
                        }
                    };
                    if lhs != img.scale(&coeff_int(w as i64)) {
                        ok = false;
                        rep.fail(
                            &scope,
                            "weight-field relation",
                            format!(
                                "pullback of `{}` is not a weight-{} eigenfunction in slot {}",
                                m.target().coord(i).name,
                                w,
                                slot
                            ),
                        );
                    }
                }
            }
            if ok {
                rep.pass(&scope, "weight-field relation");
            }
        }
        // dilation intertwining at sample parameters
        for t in [0i64, 2, 3] {
            let tc = coeff_int(t);
            let hs = self.source.dilation(&tc);
            let ht = self.target.dilation(&tc);
            let lhs = self.after(&hs);
            let rhs = ht.after(self);
            let ok = match (&lhs, &rhs) {
                (Ok(a), Ok(b)) => a.same_maps(b),
                _ => false,
            };
            rep.record(
                "morphism",
                format!("dilation intertwining (t = {t})"),
                ok,
                "",
            );
        }
        // transition compatibility
        for st in self.source.transitions() {
            let a = self
                .source
                .chart_index(&st.map.source().name().render())
                .expect("chart present");
            let b = self
                .source
                .chart_index(&st.map.target().name().render())
                .expect("chart present");
            let scope = format!(
                "square over {} -> {}",
                st.map.source().name(),
                st.map.target().name()
            );
            let ta_name = self.target.chart(a).name().render();
            let tb_name = self.target.chart(b).name().render();
            match self.target.transition_between(&ta_name, &tb_name) {
                Some(tt) => {
                    let lhs = self.maps[b].after(&st.map);
                    let rhs = tt.map.after(&self.maps[a]);
                    let ok = match (&lhs, &rhs) {
                        (Ok(x), Ok(y)) => x.images() == y.images(),
                        _ => false,
                    };
                    rep.record(
                        &scope,
                        "transition compatibility",
                        ok,
                        if ok {
                            String::new()
                        } else {
                            "morphism does not intertwine the transitions".into()
                        },
                    );
                }
                None => rep.fail(
                    &scope,
                    "transition compatibility",
                    "target atlas lacks the corresponding transition",
                ),
            }
        }
        rep
    }

    /// Sanity check for dilations: `h_t ∘ h_s = h_{ts}` exactly.
    pub fn dilation_monoid_law(atlas: &AtlasRef) -> bool {
        let two = coeff_int(2);
        let three = coeff_int(3);
        let six = coeff_int(6);
        let one = coeff_int(1);
        let h2 = atlas.dilation(&two);
        let h3 = atlas.dilation(&three);
        let h6 = atlas.dilation(&six);
        let h1 = atlas.dilation(&one);
        h1.is_identity()
            && h2
                .after(&h3)
                .map(|m| m.same_maps(&h6))
                .unwrap_or(false)
    }
}

impl Atlas {
    /// Scale check used in examples/tests: pullback of `h_t` on a
    /// coordinate of total weight `w` is `t^w z`.
    pub fn dilation_scale(&self, t: &crate::superalg::Coeff, w: u32) -> crate::superalg::Coeff {
        pow_coeff(t, w)
    }
}
