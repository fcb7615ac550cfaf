use super::chart::{same_chart, ChartRef};
use super::poly::Polynomial;
use super::{Coeff, ParityClass};
use crate::error::{EngineError, Result};

/// A polynomial assignment of every `target`-chart coordinate to a
/// polynomial over the `source` chart. As a map of points it goes
/// `source -> target`; on functions it acts as the pullback
/// `f(z') -> f(z'(z))`. Transition maps, morphism blocks, and group-action
/// entries are all values of this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    source: ChartRef,
    target: ChartRef,
    images: Vec<Polynomial>,
}

impl PolynomialMap {
    /// Build a map from per-coordinate images (indexed like `target`).
    /// Parity soundness is not enforced here — validation reports check it —
    /// but every image must be bound to the `source` chart.
    pub fn new(source: ChartRef, target: ChartRef, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != target.len() {
            return Err(EngineError::MissingAssignment {
                coord: target
                    .coords()
                    .get(images.len())
                    .map(|c| c.name.render())
                    .unwrap_or_else(|| "<extra image>".into()),
            });
        }
        for img in &images {
            if !same_chart(img.chart(), &source) {
                return Err(EngineError::ChartMismatch {
                    expected: source.name().render(),
                    found: img.chart().name().render(),
                });
            }
        }
        Ok(PolynomialMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(chart: ChartRef) -> Self {
        let images = (0..chart.len())
            .map(|i| Polynomial::coordinate(chart.clone(), i))
            .collect();
        PolynomialMap {
            source: chart.clone(),
            target: chart,
            images,
        }
    }

    /// Diagonal map `z_i -> c_i * z_i` between charts of identical length.
    pub fn diagonal(
        source: ChartRef,
        target: ChartRef,
        scale: impl Fn(usize) -> Coeff,
    ) -> Result<Self> {
        if source.len() != target.len() {
            return Err(EngineError::InvalidInput(format!(
                "diagonal map requires equal coordinate counts ({} vs {})",
                source.len(),
                target.len()
            )));
        }
        let images = (0..target.len())
            .map(|i| Polynomial::coordinate(source.clone(), i).scale(&scale(i)))
            .collect();
        PolynomialMap::new(source, target, images)
    }

    /// Map each target coordinate to a scaled source coordinate chosen by
    /// index; `select` returns `None` to send the coordinate to zero.
    pub fn from_index_map(
        source: ChartRef,
        target: ChartRef,
        select: impl Fn(usize) -> Option<(usize, Coeff)>,
    ) -> Result<Self> {
        let images = (0..target.len())
            .map(|i| match select(i) {
                Some((j, c)) => Polynomial::coordinate(source.clone(), j).scale(&c),
                None => Polynomial::zero(source.clone()),
            })
            .collect();
        PolynomialMap::new(source, target, images)
    }

    pub fn source(&self) -> &ChartRef {
        &self.source
    }

    pub fn target(&self) -> &ChartRef {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, idx: usize) -> &Polynomial {
        &self.images[idx]
    }

    pub fn is_identity(&self) -> bool {
        same_chart(&self.source, &self.target)
            && self.images.iter().enumerate().all(|(i, p)| p.is_coordinate(i))
    }

    /// Homomorphic substitution: replace every coordinate of `p` (which must
    /// live over the target chart) by its image. Substituting an odd
    /// coordinate by a polynomial of even parity (or vice versa) is
    /// rejected; the zero polynomial carries every parity and is accepted.
    pub fn substitute(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_chart(p.chart(), &self.target) {
            return Err(EngineError::ChartMismatch {
                expected: self.target.name().render(),
                found: p.chart().name().render(),
            });
        }
        let mut acc = Polynomial::zero(self.source.clone());
        for term in p.terms() {
            let mut prod = Polynomial::constant(self.source.clone(), term.coeff);
            for (idx, exp) in term.factors {
                let img = &self.images[idx];
                let (_, pc) = img.weight_and_parity();
                let want = self.target.parity(idx);
                match pc {
                    ParityClass::Any => {}
                    ParityClass::Homogeneous(p) if p == want => {}
                    _ => {
                        return Err(EngineError::ParityMismatch {
                            coord: self.target.coord(idx).name.render(),
                            detail: format!(
                                "substituting a {want} coordinate by a non-{want} polynomial"
                            ),
                        })
                    }
                }
                prod = prod.mul(&img.pow(exp)?)?;
            }
            acc = acc.add(&prod)?;
        }
        Ok(acc)
    }

    /// Point-map composition `self ∘ inner` (`inner: U -> V`, `self: V -> W`);
    /// on functions this is `inner* ∘ self*`.
    pub fn after(&self, inner: &PolynomialMap) -> Result<PolynomialMap> {
        if !same_chart(&self.source, &inner.target) {
            return Err(EngineError::ChartMismatch {
                expected: self.source.name().render(),
                found: inner.target.name().render(),
            });
        }
        let images = self
            .images
            .iter()
            .map(|img| inner.substitute(img))
            .collect::<Result<Vec<_>>>()?;
        PolynomialMap::new(inner.source.clone(), self.target.clone(), images)
    }

    /// Rebind the target chart (metadata relabeling, e.g. permuted weights).
    pub(crate) fn with_target(&self, target: ChartRef) -> PolynomialMap {
        debug_assert_eq!(target.len(), self.target.len());
        PolynomialMap {
            source: self.source.clone(),
            target,
            images: self.images.clone(),
        }
    }

    /// Rebind the source chart and every image to it.
    pub(crate) fn with_source(&self, source: ChartRef) -> PolynomialMap {
        let images = self
            .images
            .iter()
            .map(|p| p.rebound(source.clone()))
            .collect();
        PolynomialMap {
            source,
            target: self.target.clone(),
            images,
        }
    }
}

impl std::fmt::Display for PolynomialMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "map {} -> {} {{",
            self.source.name(),
            self.target.name()
        )?;
        for (i, img) in self.images.iter().enumerate() {
            writeln!(f, "  {} = {};", self.target.coord(i).name, img)?;
        }
        write!(f, "}}")
    }
}
