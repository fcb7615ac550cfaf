use std::sync::Arc;

use super::*;
use crate::superalg::{coeff_int, CoordName, Parity};

/// Degree-2 weighted atlas on two charts:
/// coordinates `x` even w0, `xi1 xi2` odd w1, `z` even w2,
/// transition `z' = z + xi1*xi2`, everything else identity.
pub(crate) fn degree2_atlas() -> Atlas {
    let mk = |name: &str| {
        Chart::new(
            CoordName::plain(name),
            vec![
                CoordinateSymbol::new(CoordName::plain("x"), Parity::Even, Weight(vec![0])),
                CoordinateSymbol::new(CoordName::plain("xi1"), Parity::Odd, Weight(vec![1])),
                CoordinateSymbol::new(CoordName::plain("xi2"), Parity::Odd, Weight(vec![1])),
                CoordinateSymbol::new(CoordName::plain("z"), Parity::Even, Weight(vec![2])),
            ],
        )
        .unwrap()
    };
    let u = mk("U");
    let v = mk("V");
    let iz = u.find_str("z").unwrap();
    let shear = |ch: &ChartRef, sign: i64| -> Vec<Polynomial> {
        (0..ch.len())
            .map(|i| {
                let coord = Polynomial::coordinate(ch.clone(), i);
                if i == iz {
                    let xi1 = Polynomial::coordinate(ch.clone(), ch.find_str("xi1").unwrap());
                    let xi2 = Polynomial::coordinate(ch.clone(), ch.find_str("xi2").unwrap());
                    coord
                        .add(&xi1.mul(&xi2).unwrap().scale(&coeff_int(sign)))
                        .unwrap()
                } else {
                    coord
                }
            })
            .collect()
    };
    let map = PolynomialMap::new(u.clone(), v.clone(), shear(&u, 1)).unwrap();
    let inverse = PolynomialMap::new(v.clone(), u.clone(), shear(&v, -1)).unwrap();
    Atlas::new(
        BundleKind::nweighted(2),
        false,
        vec![u, v],
        vec![Transition { map, inverse }],
        Vec::new(),
    )
    .unwrap()
}

/// Double vector bundle chart (x; y, Y; z) with weights 00, 10, 01, 11.
pub(crate) fn dvb_chart(name: &str) -> ChartRef {
    Chart::new(
        CoordName::plain(name),
        vec![
            CoordinateSymbol::new(CoordName::plain("x"), Parity::Even, Weight(vec![0, 0])),
            CoordinateSymbol::new(CoordName::plain("y"), Parity::Even, Weight(vec![1, 0])),
            CoordinateSymbol::new(CoordName::plain("Y"), Parity::Even, Weight(vec![0, 1])),
            CoordinateSymbol::new(CoordName::plain("z"), Parity::Even, Weight(vec![1, 1])),
        ],
    )
    .unwrap()
}

#[test]
fn degree2_atlas_validates() {
    let rep = degree2_atlas().validate();
    assert!(rep.is_valid(), "{rep}");
}

#[test]
fn weight_mismatch_fails_homogeneity() {
    // z' = z + x adds a weight-0 term to a weight-2 coordinate
    let a = degree2_atlas();
    let u = a.chart(0).clone();
    let v = a.chart(1).clone();
    let iz = u.find_str("z").unwrap();
    let ix = u.find_str("x").unwrap();
    let images = (0..u.len())
        .map(|i| {
            let c = Polynomial::coordinate(u.clone(), i);
            if i == iz {
                c.add(&Polynomial::coordinate(u.clone(), ix)).unwrap()
            } else {
                c
            }
        })
        .collect();
    let map = PolynomialMap::new(u.clone(), v.clone(), images).unwrap();
    let inverse =
        PolynomialMap::from_index_map(v.clone(), u.clone(), |i| Some((i, coeff_int(1)))).unwrap();
    let broken = Atlas::new(
        BundleKind::nweighted(2),
        false,
        vec![u, v],
        vec![Transition { map, inverse }],
        Vec::new(),
    )
    .unwrap();
    let rep = broken.validate();
    assert!(!rep.is_valid());
    assert!(rep
        .failures()
        .any(|e| e.check == "homogeneity" && e.detail.contains("`z`")));
}

#[test]
fn nvector_kind_violation_reported() {
    let ch = Chart::new(
        CoordName::plain("U"),
        vec![CoordinateSymbol::new(
            CoordName::plain("w"),
            Parity::Even,
            Weight(vec![2, 0]),
        )],
    )
    .unwrap();
    let a = Atlas::single_chart(BundleKind::nvector(2), false, ch).unwrap();
    let rep = a.validate();
    assert!(!rep.is_valid());
    assert!(rep.failures().any(|e| e.check == "kind"));
}

#[test]
fn dvb_euler_fields() {
    let a = Atlas::single_chart(BundleKind::nvector(2), false, dvb_chart("U")).unwrap();
    let n1 = a.weight_field(0, Some(1));
    let ch = a.chart(0);
    let iy = ch.find_str("y").unwrap();
    let iz = ch.find_str("z").unwrap();
    // slot 1 grades y and z
    assert_eq!(n1.components().len(), 2);
    assert!(n1.component(iy).is_coordinate(iy));
    assert!(n1.component(iz).is_coordinate(iz));
    // slot fields commute
    let n2 = a.weight_field(0, Some(2));
    assert!(n1.bracket(&n2).unwrap().is_zero());
    // total field = sum of slot fields
    let total = a.weight_field(0, None);
    assert_eq!(n1.add(&n2).unwrap(), total);
}

#[test]
fn weighted_field_from_spec_example() {
    // degree-2: nabla = xi1 d/dxi1 + xi2 d/dxi2 + 2z d/dz
    let a = degree2_atlas();
    let nabla = a.weight_vector_fields(None).unwrap();
    let ch = a.chart(0);
    let iz = ch.find_str("z").unwrap();
    let z = Polynomial::coordinate(ch.clone(), iz);
    assert_eq!(nabla[0].component(iz), z.scale(&coeff_int(2)));
    assert_eq!(nabla[0].components().len(), 3);
}

#[test]
fn dilation_monoid_laws() {
    let a = Arc::new(degree2_atlas());
    assert!(BundleMorphism::dilation_monoid_law(&a));
    // t = 0 projects onto the base
    let h0 = a.dilation(&coeff_int(0));
    let ch = a.chart(0);
    for (i, img) in h0.map(0).images().iter().enumerate() {
        if ch.weight(i).is_zero() {
            assert!(img.is_coordinate(i));
        } else {
            assert!(img.is_zero());
        }
    }
    // dilations are valid morphisms
    assert!(h0.check().is_valid());
    let h2 = a.dilation(&coeff_int(2));
    assert!(h2.check().is_valid());
}

#[test]
fn identity_is_valid_morphism_and_weight_shift_fails() {
    let a = Arc::new(degree2_atlas());
    assert!(BundleMorphism::identity(a.clone()).check().is_valid());

    // a map sending weight-1 xi1 to weight-2 z-like data must fail
    let ch = a.chart(0).clone();
    let i1 = ch.find_str("xi1").unwrap();
    let ith = ch.find_str("xi2").unwrap();
    let iz = ch.find_str("z").unwrap();
    let images = (0..ch.len())
        .map(|i| {
            if i == i1 {
                // odd weight-2 candidate: z * xi2 has weight 3; use xi2*z
                Polynomial::coordinate(ch.clone(), ith)
                    .mul(&Polynomial::coordinate(ch.clone(), iz))
                    .unwrap()
            } else {
                Polynomial::coordinate(ch.clone(), i)
            }
        })
        .collect();
    let m = PolynomialMap::new(ch.clone(), ch.clone(), images).unwrap();
    let morped = BundleMorphism::new_unchecked(a.clone(), a.clone(), {
        let mut v = vec![m];
        v.push(PolynomialMap::identity(a.chart(1).clone()));
        v
    });
    assert!(!morped.check().is_valid());
}

#[test]
fn restrict_to_weight_of_dvb() {
    // DVB with z' = z + y*Y over a 2-chart atlas; E[(1,1)] keeps only z
    // and the transition collapses to the identity on z.
    let u = dvb_chart("U");
    let v = dvb_chart("V");
    let iz = u.find_str("z").unwrap();
    let iy = u.find_str("y").unwrap();
    let iy2 = u.find_str("Y").unwrap();
    let mk = |ch: &ChartRef, sign: i64| {
        (0..ch.len())
            .map(|i| {
                let c = Polynomial::coordinate(ch.clone(), i);
                if i == iz {
                    let y = Polynomial::coordinate(ch.clone(), iy);
                    let yy = Polynomial::coordinate(ch.clone(), iy2);
                    c.add(&y.mul(&yy).unwrap().scale(&coeff_int(sign))).unwrap()
                } else {
                    c
                }
            })
            .collect::<Vec<_>>()
    };
    let map = PolynomialMap::new(u.clone(), v.clone(), mk(&u, 1)).unwrap();
    let inverse = PolynomialMap::new(v.clone(), u.clone(), mk(&v, -1)).unwrap();
    let a = Atlas::new(
        BundleKind::nvector(2),
        false,
        vec![u.clone(), v.clone()],
        vec![Transition { map, inverse }],
        Vec::new(),
    )
    .unwrap();
    assert!(a.validate().is_valid());

    let core = a.restrict_to_weight(&Weight(vec![1, 1])).unwrap();
    assert!(core.validate().is_valid());
    let ch = core.chart(0);
    assert_eq!(ch.len(), 2); // x and z survive
    assert_eq!(ch.coord(0).name.base, "x");
    assert_eq!(ch.coord(1).name.base, "z");
    assert_eq!(ch.weight(1), &Weight(vec![1]));
    // transition reduced to identity: the y*Y term died
    let t = &core.transitions()[0];
    assert!(t.map.image(1).is_coordinate(1));

    // side bundle E[(1,0)] keeps y
    let side = a.restrict_to_weight(&Weight(vec![1, 0])).unwrap();
    assert!(side.validate().is_valid());
    assert_eq!(side.chart(0).len(), 2);
    assert_eq!(side.chart(0).coord(1).name.base, "y");

    // alpha = 0 rejected
    assert!(a.restrict_to_weight(&Weight(vec![0, 0])).is_err());
}

#[test]
fn core_bundle_of_dvb() {
    let a = Atlas::single_chart(BundleKind::nvector(2), false, dvb_chart("U")).unwrap();
    let core = a.core_bundle(1, 2).unwrap();
    assert!(core.validate().is_valid());
    let ch = core.chart(0);
    // x (00) and z (11) survive; y (10), Y (01) die
    assert_eq!(ch.len(), 2);
    assert_eq!(ch.coord(0).name.base, "x");
    assert_eq!(ch.coord(1).name.base, "z");
    assert_eq!(ch.weight(0), &Weight(vec![0]));
    assert_eq!(ch.weight(1), &Weight(vec![1]));
    assert!(a.core_bundle(1, 1).is_err());
}

#[test]
fn permute_relabels_weights_only() {
    let a = Atlas::single_chart(BundleKind::nvector(2), false, dvb_chart("U")).unwrap();
    let sigma = crate::perm::Perm::transposition(2, 1, 2);
    let p = a.permute(&sigma).unwrap();
    let ch = p.chart(0);
    assert_eq!(ch.coord(1).name.base, "y");
    assert_eq!(ch.weight(1), &Weight(vec![0, 1]));
    assert_eq!(ch.weight(3), &Weight(vec![1, 1]));
    // permuting twice restores the original
    assert_eq!(p.permute(&sigma).unwrap(), a);
}

#[test]
fn cocycle_check_on_triples() {
    // three charts with transitions z' = z + xi1*xi2 steps; U->W declared
    // consistently, then inconsistently
    let base = degree2_atlas();
    let u = base.chart(0).clone();
    let v = base.chart(1).clone();
    let w = Chart::new(CoordName::plain("W"), u.coords().to_vec()).unwrap();
    let t_uv = base.transitions()[0].clone();
    let shear = |src: &ChartRef, dst: &ChartRef, sign: i64| {
        let iz = src.find_str("z").unwrap();
        let images = (0..src.len())
            .map(|i| {
                let c = Polynomial::coordinate(src.clone(), i);
                if i == iz {
                    let a = Polynomial::coordinate(src.clone(), src.find_str("xi1").unwrap());
                    let b = Polynomial::coordinate(src.clone(), src.find_str("xi2").unwrap());
                    c.add(&a.mul(&b).unwrap().scale(&coeff_int(sign))).unwrap()
                } else {
                    c
                }
            })
            .collect();
        PolynomialMap::new(src.clone(), dst.clone(), images).unwrap()
    };
    let t_vw = Transition {
        map: shear(&v, &w, 1),
        inverse: shear(&w, &v, -1),
    };
    let good_uw = Transition {
        map: shear(&u, &w, 2),
        inverse: shear(&w, &u, -2),
    };
    let good = Atlas::new(
        BundleKind::nweighted(2),
        false,
        vec![u.clone(), v.clone(), w.clone()],
        vec![t_uv.clone(), t_vw.clone(), good_uw],
        vec![["U".into(), "V".into(), "W".into()]],
    )
    .unwrap();
    assert!(good.validate().is_valid(), "{}", good.validate());

    let bad_uw = Transition {
        map: shear(&u, &w, 5),
        inverse: shear(&w, &u, -5),
    };
    let bad = Atlas::new(
        BundleKind::nweighted(2),
        false,
        vec![u, v, w],
        vec![t_uv, t_vw, bad_uw],
        vec![["U".into(), "V".into(), "W".into()]],
    )
    .unwrap();
    let rep = bad.validate();
    assert!(!rep.is_valid());
    assert!(rep.failures().any(|e| e.check == "cocycle"));
}

#[test]
fn degree_redeclaration_is_explicit() {
    let a = degree2_atlas();
    let wider = a.redeclared_degree(3).unwrap();
    assert_eq!(wider.kind(), &BundleKind::nweighted(3));
    assert!(wider.validate().is_valid());
    // polarizing at the wider multiplicity now works
    let p = crate::polar::polarize(&wider, 3).unwrap();
    assert!(p.atlas.validate().is_valid());
    // but narrowing below an existing weight is rejected
    assert!(a.redeclared_degree(1).is_err());
}

#[test]
fn weight_field_pushforward_failure_is_an_error() {
    // z' = z + x breaks the eigenfunction relation for the weight field
    let a = degree2_atlas();
    let u = a.chart(0).clone();
    let v = a.chart(1).clone();
    let iz = u.find_str("z").unwrap();
    let ix = u.find_str("x").unwrap();
    let images = (0..u.len())
        .map(|i| {
            let c = Polynomial::coordinate(u.clone(), i);
            if i == iz {
                c.add(&Polynomial::coordinate(u.clone(), ix)).unwrap()
            } else {
                c
            }
        })
        .collect();
    let map = PolynomialMap::new(u.clone(), v.clone(), images).unwrap();
    let inverse =
        PolynomialMap::from_index_map(v.clone(), u.clone(), |i| Some((i, coeff_int(1)))).unwrap();
    let broken = Atlas::new(
        BundleKind::nweighted(2),
        false,
        vec![u, v],
        vec![Transition { map, inverse }],
        Vec::new(),
    )
    .unwrap();
    assert!(broken.weight_vector_fields(None).is_err());
    assert!(degree2_atlas().weight_vector_fields(None).is_ok());
}
