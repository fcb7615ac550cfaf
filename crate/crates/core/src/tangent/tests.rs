use std::collections::BTreeMap;

use super::*;
use crate::bundle::tests::degree2_atlas;
use crate::bundle::BundleKind;
use crate::laws::gen;
use crate::rng::Rng;
use crate::superalg::{coeff_int, CoordName, Parity};

fn plain_chart() -> ChartRef {
    Chart::new(
        CoordName::plain("U"),
        vec![CoordinateSymbol::new(
            CoordName::plain("x"),
            Parity::Even,
            Weight(vec![]),
        )],
    )
    .unwrap()
}

#[test]
fn differential_of_square() {
    // x' = x^2 prolongs to x@1' = 2 x@0 x@1
    let u = plain_chart();
    let v = Chart::new(CoordName::plain("V"), u.coords().to_vec()).unwrap();
    let m = PolynomialMap::new(
        u.clone(),
        v.clone(),
        vec![Polynomial::coordinate(u.clone(), 0).pow(2).unwrap()],
    )
    .unwrap();
    let tdu = tangent_of_chart(&u);
    let tdv = tangent_of_chart(&v);
    let tm = tangent_of_map(&m, &tdu, &tdv).unwrap();
    let x0 = Polynomial::coordinate(tdu.chart.clone(), 0);
    let x1 = Polynomial::coordinate(tdu.chart.clone(), 1);
    assert_eq!(tm.image(0), &x0.pow(2).unwrap());
    assert_eq!(
        tm.image(1),
        &x0.mul(&x1).unwrap().scale(&coeff_int(2))
    );
}

#[test]
fn graded_leibniz_in_transition_differential() {
    // z' = z + xi1*xi2 prolongs to z@1' = z@1 + xi1@1*xi2@0 + xi1@0*xi2@1
    let a = degree2_atlas();
    let ta = tangent_of_atlas(&a).unwrap();
    assert!(ta.validate().is_valid(), "{}", ta.validate());
    let ch = ta.chart(0);
    let idx = |s: &str| ch.find_str(s).unwrap();
    let c = |s: &str| Polynomial::coordinate(ch.clone(), idx(s));
    let expected = c("z@(1)")
        .add(&c("xi1@(1)").mul(&c("xi2@(0)")).unwrap())
        .unwrap()
        .add(&c("xi1@(0)").mul(&c("xi2@(1)")).unwrap())
        .unwrap();
    let img = ta.transitions()[0].map.image(idx("z@(1)"));
    assert_eq!(img, &expected);

    // dotted coordinates keep their parity
    assert_eq!(ch.parity(idx("xi1@(1)")), Parity::Odd);
    assert_eq!(ch.parity(idx("z@(1)")), Parity::Even);
    // kind gained one leading linear slot
    assert_eq!(ta.kind().caps(), &[1, 2]);
}

#[test]
fn tangent_lift_examples() {
    // Y = x d/dx lifts to x d/dx + x@1 d/d(x@1)
    let u = plain_chart();
    let td = tangent_of_chart(&u);
    let mut comps = BTreeMap::new();
    comps.insert(0, Polynomial::coordinate(u.clone(), 0));
    let y = Derivation::new(u.clone(), Parity::Even, comps).unwrap();
    let lift = tangent_lift(&y, &td).unwrap();
    assert_eq!(lift.components().len(), 2);
    assert!(lift.component(0).is_coordinate(0));
    assert!(lift.component(1).is_coordinate(1));
}

#[test]
fn tangent_lift_respects_brackets() {
    let ch = gen::weighted_test_chart(2);
    let td = tangent_of_chart(&ch);
    let mut rng = Rng::new(0x7a2);
    for _ in 0..40 {
        let pa = if rng.chance(1, 2) { Parity::Even } else { Parity::Odd };
        let pb = if rng.chance(1, 2) { Parity::Even } else { Parity::Odd };
        let a = gen::random_derivation(&mut rng, &ch, pa);
        let b = gen::random_derivation(&mut rng, &ch, pb);
        let lhs = tangent_lift(&a, &td)
            .unwrap()
            .bracket(&tangent_lift(&b, &td).unwrap())
            .unwrap();
        let rhs = tangent_lift(&a.bracket(&b).unwrap(), &td).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn iterated_tangent_second_order_terms() {
    let a = degree2_atlas();
    let it = iterated_tangent(&a, 2).unwrap();
    assert!(it.atlas.validate().is_valid());
    let ch = it.atlas.chart(0);
    let idx = |s: &str| ch.find_str(s).unwrap();
    let c = |s: &str| Polynomial::coordinate(ch.clone(), idx(s));
    // the second prolongation of z' = z + xi1*xi2 expands by the product rule
    let expected = c("z@(1,1)")
        .add(&c("xi1@(1,1)").mul(&c("xi2@(0,0)")).unwrap())
        .unwrap()
        .add(&c("xi1@(0,1)").mul(&c("xi2@(1,0)")).unwrap())
        .unwrap()
        .add(&c("xi1@(1,0)").mul(&c("xi2@(0,1)")).unwrap())
        .unwrap()
        .add(&c("xi1@(0,0)").mul(&c("xi2@(1,1)")).unwrap())
        .unwrap();
    assert_eq!(
        it.atlas.transitions()[0].map.image(idx("z@(1,1)")),
        &expected
    );
}

#[test]
fn iterated_k1_equals_tangent() {
    let a = degree2_atlas();
    assert_eq!(
        *iterated_tangent(&a, 1).unwrap().atlas,
        tangent_of_atlas(&a).unwrap()
    );
}

#[test]
fn second_euler_field_is_lifted_first() {
    // slot 2 of T^2 = tangent lift of slot 1 of T
    let a = degree2_atlas();
    let t1 = tangent_of_atlas(&a).unwrap();
    let t2 = tangent_of_atlas(&t1).unwrap();
    let td = tangent_of_chart(t1.chart(0));
    let lifted = tangent_lift(&t1.weight_field(0, Some(1)), &td).unwrap();
    assert_eq!(t2.weight_field(0, Some(2)), lifted);
}

#[test]
fn flip_swaps_dotted_slots() {
    let a = degree2_atlas();
    let it = iterated_tangent(&a, 2).unwrap();
    let kappa = Perm::transposition(2, 1, 2);
    let m = flip_action(&it, &kappa).unwrap();
    let ch = it.atlas.chart(0);
    let idx = |s: &str| ch.find_str(s).unwrap();
    // kappa swaps x@(1,0) <-> x@(0,1) and fixes x@(0,0), x@(1,1)
    assert!(m.map(0).image(idx("x@(1,0)")).is_coordinate(idx("x@(0,1)")));
    assert!(m.map(0).image(idx("x@(0,1)")).is_coordinate(idx("x@(1,0)")));
    assert!(m.map(0).image(idx("x@(0,0)")).is_coordinate(idx("x@(0,0)")));
    assert!(m.map(0).image(idx("x@(1,1)")).is_coordinate(idx("x@(1,1)")));
    // kappa is a genuine automorphism: it intertwines the prolonged
    // transitions (the super Schwarz symmetry of second derivatives)
    let rep = m.check();
    assert!(rep.is_valid(), "{rep}");
    // kappa^2 = id
    let e = it.flips.get(&kappa).unwrap();
    let square = e[0].after(&e[0]).unwrap();
    assert!(square.is_identity());
}

#[test]
fn flip_table_validates_symmetric() {
    let a = degree2_atlas();
    let it = iterated_tangent(&a, 2).unwrap();
    let rep = it.flips.validate(&it.atlas);
    assert!(rep.is_valid(), "{rep}");
}

#[test]
fn tangent_functoriality_chain_rule() {
    // T(f ∘ g) = T(f) ∘ T(g) on random unipotent maps
    let ch = gen::weighted_test_chart(2);
    let mut rng = Rng::new(0xc4a1);
    let td = tangent_of_chart(&ch);
    for _ in 0..25 {
        let (f, _) = gen::random_shear_automorphism(&mut rng, &ch, 2);
        let (g, _) = gen::random_shear_automorphism(&mut rng, &ch, 2);
        let lhs = tangent_of_map(&f.after(&g).unwrap(), &td, &td).unwrap();
        let rhs = tangent_of_map(&f, &td, &td)
            .unwrap()
            .after(&tangent_of_map(&g, &td, &td).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn one_one_dimensional_affine_atlas_t3_flips() {
    // (1|1)-dimensional supermanifold with affine transitions; its third
    // iterated tangent carries the full S3 flip action
    let mk = |name: &str| {
        Chart::new(
            CoordName::plain(name),
            vec![
                CoordinateSymbol::new(CoordName::plain("x"), Parity::Even, Weight(vec![])),
                CoordinateSymbol::new(CoordName::plain("th"), Parity::Odd, Weight(vec![])),
            ],
        )
        .unwrap()
    };
    let u = mk("U");
    let v = mk("V");
    let aff = |ch: &ChartRef, a: i64, b: i64, c: i64| {
        vec![
            Polynomial::coordinate(ch.clone(), 0)
                .scale(&coeff_int(a))
                .add(&Polynomial::constant(ch.clone(), coeff_int(b)))
                .unwrap(),
            Polynomial::coordinate(ch.clone(), 1).scale(&coeff_int(c)),
        ]
    };
    let a = Atlas::new(
        BundleKind::plain(),
        false,
        vec![u.clone(), v.clone()],
        vec![Transition {
            map: PolynomialMap::new(u.clone(), v.clone(), aff(&u, 2, 3, 5)).unwrap(),
            inverse: PolynomialMap::new(v.clone(), u.clone(), {
                vec![
                    Polynomial::coordinate(v.clone(), 0)
                        .scale(&crate::superalg::coeff_ratio(1, 2))
                        .add(&Polynomial::constant(
                            v.clone(),
                            crate::superalg::coeff_ratio(-3, 2),
                        ))
                        .unwrap(),
                    Polynomial::coordinate(v.clone(), 1)
                        .scale(&crate::superalg::coeff_ratio(1, 5)),
                ]
            })
            .unwrap(),
        }],
        Vec::new(),
    )
    .unwrap();
    assert!(a.validate().is_valid());
    let it = iterated_tangent(&a, 3).unwrap();
    assert!(it.atlas.validate().is_valid());
    assert_eq!(it.atlas.kind().caps(), &[1, 1, 1]);
    assert_eq!(it.atlas.chart(0).len(), 16);
    let rep = it.flips.validate(&it.atlas);
    assert!(rep.is_valid(), "{rep}");
}

#[test]
fn cocycles_are_inherited_by_the_prolongation() {
    // a three-chart atlas with a declared triple stays cocycle-consistent
    // after prolonging (the chain rule, symbolically)
    let base = degree2_atlas();
    let u = base.chart(0).clone();
    let v = base.chart(1).clone();
    let w = Chart::new(CoordName::plain("W"), u.coords().to_vec()).unwrap();
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
    let a = Atlas::new(
        base.kind().clone(),
        false,
        vec![u.clone(), v.clone(), w.clone()],
        vec![
            Transition { map: shear(&u, &v, 1), inverse: shear(&v, &u, -1) },
            Transition { map: shear(&v, &w, 1), inverse: shear(&w, &v, -1) },
            Transition { map: shear(&u, &w, 2), inverse: shear(&w, &u, -2) },
        ],
        vec![["U".into(), "V".into(), "W".into()]],
    )
    .unwrap();
    assert!(a.validate().is_valid());
    let t = tangent_of_atlas(&a).unwrap();
    assert_eq!(t.triples()[0], ["T_U", "T_V", "T_W"]);
    let rep = t.validate();
    assert!(rep.is_valid(), "{rep}");
}
