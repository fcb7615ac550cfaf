//! Seeded generators for the randomized law suites.
//!
//! Everything here is driven by the in-crate [`Rng`], so a fixed seed pins
//! the exact fixture sequence. Atlases come out with declared inverses by
//! construction: transitions are composed from elementary invertible steps
//! (shears by products of lower-weight coordinates, nonzero rescalings),
//! inverted in reverse order.

use std::collections::BTreeMap;

use crate::bundle::{Atlas, BundleKind, Transition};
use crate::rng::Rng;
use crate::superalg::{
    coeff_int, Chart, ChartRef, CoordName, CoordinateSymbol, Derivation, Parity, Polynomial,
    PolynomialMap, Weight,
};

/// The worked double-vector-bundle fixture: coordinates `x@(a,b)` of parity
/// `a+b`, transition `x'@(1,1) = x@(1,1) + x@(1,0)*x@(0,1)` on two charts.
pub fn dvb_super_atlas() -> Atlas {
    let mk = |name: &str| {
        let coord = |a: u8, b: u8| {
            CoordinateSymbol::new(
                CoordName::with_tuple("x", vec![a, b]),
                Parity::from_u32((a + b) as u32),
                Weight(vec![a as u32, b as u32]),
            )
        };
        Chart::new(
            CoordName::plain(name),
            vec![coord(0, 0), coord(1, 0), coord(0, 1), coord(1, 1)],
        )
        .unwrap()
    };
    let u = mk("U");
    let v = mk("V");
    let shear = |ch: &ChartRef, sign: i64| -> Vec<Polynomial> {
        (0..ch.len())
            .map(|i| {
                let c = Polynomial::coordinate(ch.clone(), i);
                if i == 3 {
                    let a = Polynomial::coordinate(ch.clone(), 1);
                    let b = Polynomial::coordinate(ch.clone(), 2);
                    c.add(&a.mul(&b).unwrap().scale(&coeff_int(sign))).unwrap()
                } else {
                    c
                }
            })
            .collect()
    };
    Atlas::new(
        BundleKind::nvector(2),
        true,
        vec![u.clone(), v.clone()],
        vec![Transition {
            map: PolynomialMap::new(u.clone(), v.clone(), shear(&u, 1)).unwrap(),
            inverse: PolynomialMap::new(v.clone(), u, shear(&v, -1)).unwrap(),
        }],
        Vec::new(),
    )
    .unwrap()
}

/// Random polynomial over a chart: up to `max_terms` monomials with small
/// rational coefficients and up to three factors each.
pub fn random_polynomial(rng: &mut Rng, chart: &ChartRef, max_terms: usize) -> Polynomial {
    let mut acc = Polynomial::zero(chart.clone());
    let terms = rng.below(max_terms + 1);
    for _ in 0..terms {
        let nfactors = rng.below(4);
        let mut word = Vec::new();
        for _ in 0..nfactors {
            let idx = rng.below(chart.len());
            let exp = if chart.parity(idx).is_odd() {
                1
            } else {
                rng.range(1, 2) as u32
            };
            word.push((idx, exp));
        }
        let mono = Polynomial::monomial_word(chart.clone(), rng.rational(), &word);
        acc = acc.add(&mono).expect("same chart");
    }
    acc
}

/// Random parity-homogeneous polynomial. Returns zero when the chart offers
/// no monomial of the requested parity within the budget.
pub fn random_polynomial_of_parity(
    rng: &mut Rng,
    chart: &ChartRef,
    parity: Parity,
    max_terms: usize,
) -> Polynomial {
    let mut acc = Polynomial::zero(chart.clone());
    let want = rng.below(max_terms) + 1;
    let mut attempts = 0;
    while acc.num_terms() < want && attempts < 40 {
        attempts += 1;
        let p = random_polynomial(rng, chart, 1);
        let keep: Vec<_> = p
            .terms()
            .into_iter()
            .filter(|t| {
                t.factors
                    .iter()
                    .filter(|&&(i, _)| chart.parity(i).is_odd())
                    .count()
                    % 2
                    == if parity.is_odd() { 1 } else { 0 }
            })
            .collect();
        for t in keep {
            let mono = Polynomial::monomial_word(chart.clone(), t.coeff, &t.factors);
            acc = acc.add(&mono).expect("same chart");
        }
    }
    acc
}

/// Random homogeneous-parity derivation.
pub fn random_derivation(rng: &mut Rng, chart: &ChartRef, parity: Parity) -> Derivation {
    let mut components = BTreeMap::new();
    for idx in 0..chart.len() {
        if rng.chance(2, 3) {
            let want = chart.parity(idx) + parity;
            let poly = random_polynomial_of_parity(rng, chart, want, 2);
            if !poly.is_zero() {
                components.insert(idx, poly);
            }
        }
    }
    Derivation::new(chart.clone(), parity, components).expect("parities match by construction")
}

/// A mixed-parity weighted test chart:
/// `u` even `(0)`, `q` odd `(0)`, `xi1 xi2` odd `(1)`, `y` even `(1)`,
/// `z` even `(2)`, `th` odd `(2)` truncated to the requested degree.
pub fn weighted_test_chart(degree: u32) -> ChartRef {
    let mut coords = vec![
        CoordinateSymbol::new(CoordName::plain("u"), Parity::Even, Weight(vec![0])),
        CoordinateSymbol::new(CoordName::plain("q"), Parity::Odd, Weight(vec![0])),
    ];
    if degree >= 1 {
        coords.push(CoordinateSymbol::new(
            CoordName::plain("xi1"),
            Parity::Odd,
            Weight(vec![1]),
        ));
        coords.push(CoordinateSymbol::new(
            CoordName::plain("xi2"),
            Parity::Odd,
            Weight(vec![1]),
        ));
        coords.push(CoordinateSymbol::new(
            CoordName::plain("y"),
            Parity::Even,
            Weight(vec![1]),
        ));
    }
    if degree >= 2 {
        coords.push(CoordinateSymbol::new(
            CoordName::plain("z"),
            Parity::Even,
            Weight(vec![2]),
        ));
        coords.push(CoordinateSymbol::new(
            CoordName::plain("th"),
            Parity::Odd,
            Weight(vec![2]),
        ));
    }
    if degree >= 3 {
        coords.push(CoordinateSymbol::new(
            CoordName::plain("w"),
            Parity::Odd,
            Weight(vec![3]),
        ));
    }
    Chart::new(CoordName::plain("U"), coords).expect("fixture chart")
}

/// Random unipotent self-map of a chart: each positive-weight coordinate
/// picks up a shear by a product of strictly lower-weight coordinates of
/// matching weight and parity. Returns the map together with its exact
/// inverse (the shears invert in reverse order with negated coefficients).
pub fn random_shear_automorphism(
    rng: &mut Rng,
    chart: &ChartRef,
    attempts: usize,
) -> (PolynomialMap, PolynomialMap) {
    let mut forward = PolynomialMap::identity(chart.clone());
    let mut inverse = PolynomialMap::identity(chart.clone());
    for _ in 0..attempts {
        if let Some((step, step_inv)) = random_elementary_shear(rng, chart) {
            forward = step.after(&forward).expect("chart chain");
            inverse = inverse.after(&step_inv).expect("chart chain");
        }
    }
    (forward, inverse)
}

/// Random invertible self-map: a composite of shears, nonzero rescalings of
/// single coordinates, and base translations, with the exact inverse
/// accumulated alongside.
pub fn random_invertible_selfmap(
    rng: &mut Rng,
    chart: &ChartRef,
    steps: usize,
) -> (PolynomialMap, PolynomialMap) {
    let mut forward = PolynomialMap::identity(chart.clone());
    let mut inverse = PolynomialMap::identity(chart.clone());
    for _ in 0..steps {
        let step = match rng.below(3) {
            0 => random_elementary_shear(rng, chart),
            1 => random_scale(rng, chart),
            _ => random_base_translation(rng, chart),
        };
        if let Some((s, s_inv)) = step {
            forward = s.after(&forward).expect("chart chain");
            inverse = inverse.after(&s_inv).expect("chart chain");
        }
    }
    (forward, inverse)
}

fn selfmap_with_image(
    chart: &ChartRef,
    target: usize,
    image: Polynomial,
) -> PolynomialMap {
    let images = (0..chart.len())
        .map(|i| {
            if i == target {
                image.clone()
            } else {
                Polynomial::coordinate(chart.clone(), i)
            }
        })
        .collect();
    PolynomialMap::new(chart.clone(), chart.clone(), images).expect("well-formed")
}

fn random_scale(rng: &mut Rng, chart: &ChartRef) -> Option<(PolynomialMap, PolynomialMap)> {
    if chart.is_empty() {
        return None;
    }
    let i = rng.below(chart.len());
    let q = rng.rational();
    let fwd = selfmap_with_image(chart, i, Polynomial::coordinate(chart.clone(), i).scale(&q));
    let inv_q = num_traits::one::<crate::superalg::Coeff>() / q;
    let bwd = selfmap_with_image(
        chart,
        i,
        Polynomial::coordinate(chart.clone(), i).scale(&inv_q),
    );
    Some((fwd, bwd))
}

fn random_base_translation(
    rng: &mut Rng,
    chart: &ChartRef,
) -> Option<(PolynomialMap, PolynomialMap)> {
    let even_base: Vec<usize> = chart
        .base_indices()
        .into_iter()
        .filter(|&i| !chart.parity(i).is_odd())
        .collect();
    if even_base.is_empty() {
        return None;
    }
    let i = *rng.pick(&even_base);
    let c = rng.rational();
    let coord = Polynomial::coordinate(chart.clone(), i);
    let fwd = selfmap_with_image(
        chart,
        i,
        coord
            .add(&Polynomial::constant(chart.clone(), c.clone()))
            .expect("same chart"),
    );
    let bwd = selfmap_with_image(
        chart,
        i,
        coord.sub(&Polynomial::constant(chart.clone(), c)).expect("same chart"),
    );
    Some((fwd, bwd))
}

/// One elementary shear `z -> z + c * m` where `m` is a product of at least
/// two positive-weight coordinates other than `z`, weight- and
/// parity-matched to `z`; base coordinates may also enter `m` as factors of
/// weight zero.
fn random_elementary_shear(
    rng: &mut Rng,
    chart: &ChartRef,
) -> Option<(PolynomialMap, PolynomialMap)> {
    let positive: Vec<usize> = (0..chart.len())
        .filter(|&i| !chart.weight(i).is_zero())
        .collect();
    if positive.is_empty() {
        return None;
    }
    let target = *rng.pick(&positive);
    let tw = chart.weight(target).clone();
    // search for a pair of lower-weight coordinates whose weights sum to tw
    let mut candidates = Vec::new();
    for &a in &positive {
        for &b in &positive {
            if a == target || b == target || (a == b && chart.parity(a).is_odd()) {
                continue;
            }
            if a > b {
                continue;
            }
            let sum = chart.weight(a).add(chart.weight(b));
            let par = chart.parity(a) + chart.parity(b);
            if sum == tw && par == chart.parity(target) {
                candidates.push((a, b));
            }
        }
    }
    if candidates.is_empty() {
        return None;
    }
    let (a, b) = *rng.pick(&candidates);
    let c = rng.rational();
    // optional even base factor
    let base_even: Vec<usize> = chart
        .base_indices()
        .into_iter()
        .filter(|&i| !chart.parity(i).is_odd())
        .collect();
    let mut word = vec![(a, 1u32), (b, 1u32)];
    if !base_even.is_empty() && rng.chance(1, 2) {
        word.push((*rng.pick(&base_even), rng.range(1, 2) as u32));
    }
    let mono = Polynomial::monomial_word(chart.clone(), c, &word);
    let build = |shear: &Polynomial| -> PolynomialMap {
        let images = (0..chart.len())
            .map(|i| {
                let coord = Polynomial::coordinate(chart.clone(), i);
                if i == target {
                    coord.add(shear).expect("same chart")
                } else {
                    coord
                }
            })
            .collect();
        PolynomialMap::new(chart.clone(), chart.clone(), images).expect("well-formed")
    };
    Some((build(&mono), build(&mono.neg())))
}

/// Random weighted atlas on two charts with an invertible polynomial
/// transition. Coordinate parities follow the weight when `nmanifold` is
/// set; otherwise they are random and an odd base coordinate may appear.
pub fn random_weighted_atlas(rng: &mut Rng, degree: u32, nmanifold: bool) -> Atlas {
    let mut coords = vec![CoordinateSymbol::new(
        CoordName::plain("u"),
        Parity::Even,
        Weight(vec![0]),
    )];
    if !nmanifold && rng.chance(1, 2) {
        coords.push(CoordinateSymbol::new(
            CoordName::plain("q"),
            Parity::Odd,
            Weight(vec![0]),
        ));
    }
    for w in 1..=degree {
        let count = rng.range(1, 2);
        for c in 0..count {
            let parity = if nmanifold {
                Parity::from_u32(w)
            } else if rng.chance(1, 2) {
                Parity::Even
            } else {
                Parity::Odd
            };
            coords.push(CoordinateSymbol::new(
                CoordName::plain(format!("z{w}{c}")),
                parity,
                Weight(vec![w]),
            ));
        }
    }
    let u = Chart::new(CoordName::plain("U"), coords.clone()).expect("fixture chart");
    let v = Chart::new(CoordName::plain("V"), coords).expect("fixture chart");
    let (fwd, bwd) = random_invertible_selfmap(rng, &u, 4);
    let map = fwd.with_target(v.clone());
    let inverse = bwd.with_source(v.clone());
    Atlas::new(
        BundleKind::nweighted(degree),
        nmanifold,
        vec![u, v],
        vec![Transition { map, inverse }],
        Vec::new(),
    )
    .expect("well-formed fixture")
}

/// Random n-vector atlas with aligned weight classes (the coordinate count
/// depends only on the total weight), tuple-tagged names, and optionally
/// parity equal to the total weight. `charts` is 1 or 2; with 2 charts an
/// invertible transition is generated.
pub fn random_nvector_atlas(
    rng: &mut Rng,
    n: usize,
    max_per_class: usize,
    en_parity: bool,
    charts: usize,
) -> Atlas {
    let mut coords = vec![CoordinateSymbol::new(
        CoordName::plain("u"),
        Parity::Even,
        Weight(vec![0; n]),
    )];
    for m in 1..=(n as u32) {
        let count = rng.range(1, max_per_class);
        let mut parities = Vec::new();
        for _ in 0..count {
            parities.push(if en_parity {
                Parity::from_u32(m)
            } else if rng.chance(1, 2) {
                Parity::Even
            } else {
                Parity::Odd
            });
        }
        for bits in 0..(1u32 << n) {
            let alpha = Weight((0..n).map(|i| (bits >> i) & 1).collect());
            if alpha.total() != m {
                continue;
            }
            let tuple: Vec<u8> = alpha.0.iter().map(|&v| v as u8).collect();
            for (c, parity) in parities.iter().enumerate() {
                coords.push(CoordinateSymbol::new(
                    CoordName::with_tuple(format!("z{m}{c}"), tuple.clone()),
                    *parity,
                    alpha.clone(),
                ));
            }
        }
    }
    let u = Chart::new(CoordName::plain("U"), coords.clone()).expect("fixture chart");
    if charts <= 1 {
        return Atlas::single_chart(BundleKind::nvector(n), en_parity, u)
            .expect("well-formed fixture");
    }
    let v = Chart::new(CoordName::plain("V"), coords).expect("fixture chart");
    let (fwd, bwd) = random_invertible_selfmap(rng, &u, 4);
    Atlas::new(
        BundleKind::nvector(n),
        en_parity,
        vec![u.clone(), v.clone()],
        vec![Transition {
            map: fwd.with_target(v.clone()),
            inverse: bwd.with_source(v.clone()),
        }],
        Vec::new(),
    )
    .expect("well-formed fixture")
}

/// A symmetric action on a single-chart aligned n-vector atlas that is not
/// in nice coordinates: the pure tuple permutation conjugated by a random
/// shear automorphism.
pub fn random_symmetric_action(
    rng: &mut Rng,
    atlas: &std::sync::Arc<Atlas>,
) -> crate::symmetry::ActionTable {
    use crate::perm::Perm;
    use crate::symmetry::{ActionTable, Flavor};
    let n = atlas.kind().slots();
    let ch = atlas.chart(0).clone();
    let (psi, psi_inv) = random_shear_automorphism(rng, &ch, 3);
    let mut table = ActionTable::new(n, Flavor::Symmetric);
    for sigma in Perm::all(n) {
        let nice = ActionTable::tuple_permutation_entry(atlas, &sigma)
            .expect("aligned tuple names")
            .remove(0);
        let conjugated = psi_inv.after(&nice.after(&psi).expect("same chart")).expect("same chart");
        table
            .insert(sigma, vec![conjugated])
            .expect("matching size");
    }
    table
}

/// A random endomorphism of an atlas compatible with its transitions: an
/// invertible self-map of chart 0, conjugated through each transition.
pub fn random_endomorphism(
    rng: &mut Rng,
    atlas: &std::sync::Arc<Atlas>,
) -> crate::bundle::BundleMorphism {
    let ch0 = atlas.chart(0).clone();
    let (m0, _) = random_invertible_selfmap(rng, &ch0, 3);
    let mut maps = vec![m0.clone()];
    for i in 1..atlas.charts().len() {
        let t = atlas
            .transition_between(
                &atlas.chart(0).name().render(),
                &atlas.chart(i).name().render(),
            )
            .expect("fixtures chain chart 0 to every other chart");
        let conj = t
            .map
            .after(&m0)
            .expect("chart chain")
            .after(&t.inverse)
            .expect("chart chain");
        maps.push(conj);
    }
    crate::bundle::BundleMorphism::new(atlas.clone(), atlas.clone(), maps)
        .expect("aligned charts")
}
