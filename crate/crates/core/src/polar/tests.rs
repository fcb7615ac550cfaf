use super::*;
use crate::bundle::tests::degree2_atlas;
use crate::superalg::Parity;

fn polarized_degree2() -> PolarizedAtlas {
    polarize(&degree2_atlas(), 2).unwrap()
}

#[test]
fn polarization_of_degree2_shear() {
    let p = polarized_degree2();
    let rep = p.atlas.validate();
    assert!(rep.is_valid(), "{rep}");
    assert!(p.action.validate(&p.atlas).is_valid());

    let ch = p.atlas.chart(0);
    // survivors: x@(0,0); xi1,xi2 @ (1,0) and (0,1); z@(1,1)
    assert_eq!(ch.len(), 6);
    let idx = |s: &str| ch.find_str(s).unwrap();
    let c = |s: &str| Polynomial::coordinate(ch.clone(), idx(s));
    // both cross terms survive with positive sign
    let expected = c("z@(1,1)")
        .add(&c("xi1@(0,1)").mul(&c("xi2@(1,0)")).unwrap())
        .unwrap()
        .add(&c("xi1@(1,0)").mul(&c("xi2@(0,1)")).unwrap())
        .unwrap();
    assert_eq!(
        p.atlas.transitions()[0].map.image(idx("z@(1,1)")),
        &expected
    );

    // dictionary: z polarizes to its weight-2 copy, xi1 to two side copies
    assert_eq!(p.dictionary["z"], vec!["z@(1,1)"]);
    assert_eq!(p.dictionary["xi1"], vec!["xi1@(0,1)", "xi1@(1,0)"]);
    assert_eq!(p.dictionary["x"], vec!["x@(0,0)"]);
}

#[test]
fn polarization_of_degree1_is_the_source_relabeled() {
    // a vector bundle polarizes to itself (coordinates gain a tuple tag)
    let mk = |name: &str| {
        Chart::new(
            CoordName::plain(name),
            vec![
                CoordinateSymbol::new(CoordName::plain("u"), Parity::Even, Weight(vec![0])),
                CoordinateSymbol::new(CoordName::plain("th"), Parity::Odd, Weight(vec![1])),
            ],
        )
        .unwrap()
    };
    let u = mk("U");
    let v = mk("V");
    let fwd = vec![
        Polynomial::coordinate(u.clone(), 0),
        Polynomial::coordinate(u.clone(), 1).scale(&coeff_int(3)),
    ];
    let bwd = vec![
        Polynomial::coordinate(v.clone(), 0),
        Polynomial::coordinate(v.clone(), 1).scale(&crate::superalg::coeff_ratio(1, 3)),
    ];
    let a = Atlas::new(
        BundleKind::nweighted(1),
        false,
        vec![u.clone(), v.clone()],
        vec![Transition {
            map: PolynomialMap::new(u.clone(), v.clone(), fwd).unwrap(),
            inverse: PolynomialMap::new(v, u, bwd).unwrap(),
        }],
        Vec::new(),
    )
    .unwrap();
    let p = polarize(&a, 1).unwrap();
    assert!(p.atlas.validate().is_valid());
    let ch = p.atlas.chart(0);
    assert_eq!(ch.len(), 2);
    assert_eq!(ch.coord(0).name.render(), "u@(0)");
    assert_eq!(ch.coord(1).name.render(), "th@(1)");
    let img = p.atlas.transitions()[0].map.image(1);
    assert_eq!(img, &Polynomial::coordinate(ch.clone(), 1).scale(&coeff_int(3)));
}

#[test]
fn diag_embedding_scales_by_total_weight() {
    let a = Arc::new(degree2_atlas());
    let p = polarize(&a, 2).unwrap();
    let diag = diag_embedding(&a, &p, DiagScaling::Factorial).unwrap();
    let src = a.chart(0);
    let tgt = p.atlas.chart(0);
    let m = diag.map(0);
    for i in 0..tgt.len() {
        let total = tgt.weight(i).total();
        let orig = src
            .find(&super::stripped_name(&tgt.coord(i).name, 2))
            .unwrap();
        let expected = Polynomial::coordinate(src.clone(), orig)
            .scale(&coeff_int(total.max(1) as i64));
        assert_eq!(m.image(i), &expected);
    }

    // image is fixed by every flip
    for sigma in Perm::all(2) {
        let entry = &p.action.get(&sigma).unwrap()[0];
        let composed = entry.after(m).unwrap();
        assert_eq!(composed.images(), m.images());
    }

    // provenance is enforced
    let other = Arc::new({
        let mut b = degree2_atlas();
        b = b.permute(&Perm::identity(1)).unwrap();
        // structurally identical; tweak a chart by removing the transition
        Atlas::new(
            b.kind().clone(),
            false,
            b.charts().to_vec(),
            Vec::new(),
            Vec::new(),
        )
        .unwrap()
    });
    assert!(matches!(
        diag_embedding(&other, &p, DiagScaling::Factorial),
        Err(EngineError::Provenance(_))
    ));
}

#[test]
fn diagonalize_recovers_the_weighted_atlas() {
    let a = Arc::new(degree2_atlas());
    let p = polarize(&a, 2).unwrap();
    let d = diagonalize(&p).unwrap();
    assert!(d.atlas.validate().is_valid(), "{}", d.atlas.validate());
    assert_eq!(d.atlas.kind(), &BundleKind::nweighted(2));

    // one coordinate per (name, weight) orbit
    let ch = d.atlas.chart(0);
    assert_eq!(ch.len(), 4);
    assert_eq!(ch.coord(0).name.render(), "x");
    assert_eq!(ch.weight(3), &Weight(vec![2]));

    // the explicit isomorphism passes morphism checks both ways
    let (fwd, bwd) = roundtrip_isomorphism(&a, &d.atlas).unwrap();
    let rep = fwd.check();
    assert!(rep.is_valid(), "{rep}");
    assert!(bwd.check().is_valid());
    assert!(fwd.after(&bwd).unwrap().is_identity());
    assert!(bwd.after(&fwd).unwrap().is_identity());

    // compatibility of the three maps: include ∘ roundtrip = diag
    let diag = diag_embedding(&a, &p, DiagScaling::Factorial).unwrap();
    for ci in 0..a.charts().len() {
        let through = d.include[ci].after(fwd.map(ci)).unwrap();
        assert_eq!(through.images(), diag.map(ci).images());
    }
}

#[test]
fn unit_scaling_breaks_the_collapse_compatibility() {
    // the alternative normalization is available but does not reproduce the
    // canonical embedding
    let a = Arc::new(degree2_atlas());
    let p = polarize(&a, 2).unwrap();
    let diag_unit = diag_embedding(&a, &p, DiagScaling::Unit).unwrap();
    let diag_canonical = diag_embedding(&a, &p, DiagScaling::Factorial).unwrap();
    // at degree 2 the total-weight constant agrees with the canonical
    // factorial one
    assert!(diag_canonical.same_maps(&diag_embedding(&a, &p, DiagScaling::TotalWeight).unwrap()));
    assert!(!diag_unit.same_maps(&diag_canonical));
}

#[test]
fn polarize_morphism_functor_laws() {
    let a = Arc::new(degree2_atlas());
    let id = BundleMorphism::identity(a.clone());
    let (pid, ps, _) = polarize_morphism(&id, 2).unwrap();
    assert!(pid.is_identity());

    // dilation polarizes to the dilation of the polarization
    let t = coeff_int(3);
    let h = a.dilation(&t);
    let (ph, _, _) = polarize_morphism(&h, 2).unwrap();
    assert!(ph.same_maps(&ps.atlas.dilation(&t)));

    // composition is preserved
    let mut rng = crate::rng::Rng::new(0xfeed);
    let ch0 = a.chart(0).clone();
    let ch1 = a.chart(1).clone();
    let mk_endo = |rng: &mut crate::rng::Rng| {
        let (m0, _) = crate::laws::gen::random_shear_automorphism(rng, &ch0, 2);
        // conjugate through the transition to stay compatible on chart 1
        let t01 = &a.transitions()[0];
        let m1 = t01
            .map
            .after(&m0)
            .unwrap()
            .after(&t01.inverse)
            .unwrap();
        BundleMorphism::new(a.clone(), a.clone(), vec![m0, m1.with_target(ch1.clone())]).unwrap()
    };
    for _ in 0..5 {
        let f = mk_endo(&mut rng);
        let g = mk_endo(&mut rng);
        assert!(f.check().is_valid());
        let (pf, _, _) = polarize_morphism(&f, 2).unwrap();
        let (pg, _, _) = polarize_morphism(&g, 2).unwrap();
        let (pfg, _, _) = polarize_morphism(&f.after(&g).unwrap(), 2).unwrap();
        assert!(pfg.same_maps(&pf.after(&pg).unwrap()));
    }
}

#[test]
fn desuperization_of_degree2_nmanifold() {
    // x even w0, xi odd w1, z even w2: parity equals weight mod 2
    let a = degree2_atlas().clone();
    assert!(a.parity_matches_weight());
    let d = desuperize(&a).unwrap();
    assert!(d.atlas.is_purely_even());
    assert!(d.atlas.validate().is_valid());
    assert_eq!(d.action.flavor(), Flavor::Skew);
    let atlas_ref = Arc::new(d.atlas.clone());
    let rep = d.action.validate(&atlas_ref);
    assert!(rep.is_valid(), "{rep}");

    // transposition entry multiplies the core coordinate by -1
    let sigma = Perm::transposition(2, 1, 2);
    let entry = &d.action.get(&sigma).unwrap()[0];
    let ch = atlas_ref.chart(0);
    let iz = ch.find_str("z@(1,1)~p1~p2").unwrap();
    assert_eq!(
        entry.image(iz),
        &Polynomial::coordinate(ch.clone(), iz).scale(&coeff_int(-1))
    );
}

#[test]
fn desuperization_of_degree1_odd_bundle() {
    let ch = Chart::new(
        CoordName::plain("U"),
        vec![
            CoordinateSymbol::new(CoordName::plain("u"), Parity::Even, Weight(vec![0])),
            CoordinateSymbol::new(CoordName::plain("th"), Parity::Odd, Weight(vec![1])),
        ],
    )
    .unwrap();
    let a = Atlas::single_chart(BundleKind::nweighted(1), true, ch).unwrap();
    let d = desuperize(&a).unwrap();
    assert!(d.atlas.is_purely_even());
    assert!(d.atlas.validate().is_valid());
}

#[test]
fn polarize_rejects_wrong_kinds() {
    let dvb = Atlas::single_chart(
        BundleKind::nvector(2),
        false,
        crate::bundle::tests::dvb_chart("U"),
    )
    .unwrap();
    assert!(matches!(
        polarize(&dvb, 2),
        Err(EngineError::KindMismatch(_))
    ));
    assert!(polarize(&degree2_atlas(), 1).is_err()); // degree 2 > n = 1
}
