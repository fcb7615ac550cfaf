use std::sync::Arc;

use super::gen;
use super::SuiteOutcome;
use crate::bundle::Atlas;
use crate::parity::{koszul_sign, phi_iso, total_reversion, total_reversion_morphism, SignTable};
use crate::perm::Perm;
use crate::polar::{
    desuperize, desuperize_morphism, diag_embedding, diagonalize, polarize,
    roundtrip_isomorphism, DiagScaling,
};
use crate::rng::Rng;
use crate::superalg::{coeff_int, Parity, Polynomial};
use crate::symmetry::{nice_coordinates, xi_functor, Flavor};
use crate::tangent::iterated_tangent;

/// The worked double-vector-bundle example: the total parity reversion of
/// `x'@(1,1) = x@(1,1) + x@(1,0)*x@(0,1)` flips the sign of the quadratic
/// term.
pub fn suite_worked_example() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("worked-example");
    let a = gen::dvb_super_atlas();
    out.check("source atlas validates", a.validate().is_valid());
    match total_reversion(&a) {
        Ok(pi) => {
            out.check("reversed atlas validates", pi.validate().is_valid());
            out.check("reversed atlas purely even", pi.is_purely_even());
            let ch = pi.chart(0).clone();
            let expected = Polynomial::coordinate(ch.clone(), 3)
                .sub(
                    &Polynomial::coordinate(ch.clone(), 1)
                        .mul(&Polynomial::coordinate(ch.clone(), 2))
                        .expect("same chart"),
                )
                .expect("same chart");
            out.check(
                "quadratic term flips sign",
                pi.transitions()[0].map.image(3) == &expected,
            );
            let back = crate::parity::total_reversion_with_order(
                &pi,
                &Perm::new(vec![2, 1]).expect("permutation"),
            );
            out.check(
                "reversed order inverts the functor",
                back.map(|b| b == a).unwrap_or(false),
            );
        }
        Err(e) => out.check(format!("total reversion runs ({e})"), false),
    }
    out
}

/// Koszul sign laws: identity normalization, triviality below two odd
/// slots, and the composition law, exhaustively up to `n_max` slots.
pub fn suite_koszul(n_max: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("koszul");
    for n in 1..=n_max.max(1) {
        let table = SignTable::build(n);
        let expected = (1usize << n) * Perm::all(n).len();
        out.check(
            format!("n = {n}: table covers {expected} pairs"),
            table.len() == expected,
        );
        out.check(format!("n = {n}: sign laws hold exhaustively"), table.laws_hold());
    }
    out
}

/// Algebra core laws on random polynomials: supercommutativity,
/// associativity, the graded Leibniz rule, and canonical-form idempotence.
pub fn suite_superalg(seed: u64, count: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("superalg");
    let ch = gen::weighted_test_chart(2);
    let mut rng = Rng::new(seed);
    let mut supercomm = true;
    let mut assoc = true;
    let mut leibniz = true;
    let mut idempotent = true;
    for _ in 0..count {
        let pa = if rng.chance(1, 2) { Parity::Even } else { Parity::Odd };
        let pb = if rng.chance(1, 2) { Parity::Even } else { Parity::Odd };
        let a = gen::random_polynomial_of_parity(&mut rng, &ch, pa, 3);
        let b = gen::random_polynomial_of_parity(&mut rng, &ch, pb, 3);
        let c = gen::random_polynomial(&mut rng, &ch, 3);
        let ab = a.mul(&b).expect("same chart");
        let sign = if pa.is_odd() && pb.is_odd() && !a.is_zero() && !b.is_zero() {
            -1
        } else {
            1
        };
        let ba = b.mul(&a).expect("same chart").scale(&coeff_int(sign));
        supercomm &= ab == ba;
        assoc &= ab.mul(&c).expect("same chart")
            == a.mul(&b.mul(&c).expect("same chart")).expect("same chart");
        // canonical idempotence: rebuilding every monomial word reproduces
        // the polynomial exactly
        let rebuilt = c
            .terms()
            .into_iter()
            .fold(Polynomial::zero(ch.clone()), |acc, t| {
                acc.add(&Polynomial::monomial_word(ch.clone(), t.coeff, &t.factors))
                    .expect("same chart")
            });
        idempotent &= rebuilt == c;
        let pd = if rng.chance(1, 2) { Parity::Even } else { Parity::Odd };
        let d = gen::random_derivation(&mut rng, &ch, pd);
        let lhs = d.apply(&ab).expect("same chart");
        let sign = if pd.is_odd() && pa.is_odd() && !a.is_zero() {
            coeff_int(-1)
        } else {
            coeff_int(1)
        };
        let rhs = d
            .apply(&a)
            .expect("same chart")
            .mul(&b)
            .expect("same chart")
            .add(&a.mul(&d.apply(&b).expect("same chart")).expect("same chart").scale(&sign))
            .expect("same chart");
        leibniz &= lhs == rhs;
    }
    out.check(format!("supercommutativity on {count} pairs"), supercomm);
    out.check(format!("associativity on {count} triples"), assoc);
    out.check(format!("graded Leibniz on {count} products"), leibniz);
    out.check(format!("canonical idempotence on {count} polynomials"), idempotent);
    out
}

/// Tangent calculus: the lift respects brackets, and the second
/// prolongation's flip is a valid automorphism (the super-Schwarz symmetry
/// of second-derivative coefficients).
pub fn suite_tangent(seed: u64, count: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("tangent");
    let ch = gen::weighted_test_chart(2);
    let td = crate::tangent::tangent_of_chart(&ch);
    let mut rng = Rng::new(seed);
    let mut brackets = true;
    for _ in 0..count {
        let pa = if rng.chance(1, 2) { Parity::Even } else { Parity::Odd };
        let pb = if rng.chance(1, 2) { Parity::Even } else { Parity::Odd };
        let a = gen::random_derivation(&mut rng, &ch, pa);
        let b = gen::random_derivation(&mut rng, &ch, pb);
        let ok = (|| {
            let lhs = crate::tangent::tangent_lift(&a, &td)?
                .bracket(&crate::tangent::tangent_lift(&b, &td)?)?;
            let rhs = crate::tangent::tangent_lift(&a.bracket(&b)?, &td)?;
            Ok::<bool, crate::EngineError>(lhs == rhs)
        })()
        .unwrap_or(false);
        brackets &= ok;
    }
    out.check(format!("bracket preservation on {count} pairs"), brackets);

    let mut schwarz = true;
    let mut partials = true;
    for i in 0..10 {
        let a = gen::random_weighted_atlas(&mut rng, 2 + (i % 2) as u32, false);
        let ok = (|| {
            let it = iterated_tangent(&a, 2)?;
            Ok::<bool, crate::EngineError>(it.flips.validate(&it.atlas).is_valid())
        })()
        .unwrap_or(false);
        schwarz &= ok;
    }
    for _ in 0..count {
        let p = gen::random_polynomial(&mut rng, &ch, 4);
        let i = rng.below(ch.len());
        let j = rng.below(ch.len());
        let lhs = p.partial(i).partial(j);
        let mut rhs = p.partial(j).partial(i);
        if ch.parity(i).is_odd() && ch.parity(j).is_odd() {
            rhs = rhs.neg();
        }
        partials &= lhs == rhs;
    }
    out.check("flip of the double prolongation is an automorphism", schwarz);
    out.check(format!("graded Schwarz on {count} second partials"), partials);
    out
}

/// The reversion-order isomorphisms: validity, the composition law, and
/// naturality against random morphisms, on random 3-vector atlases.
pub fn suite_phi(seed: u64, count: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("phi");
    let mut rng = Rng::new(seed);
    let perms = Perm::all(3);
    let mut valid = true;
    let mut zfcomp = true;
    let mut natural = true;
    for _ in 0..count {
        let en = rng.chance(1, 2);
        let a = gen::random_nvector_atlas(&mut rng, 3, 3, en, 2);
        let ok = (|| {
            let sigma = rng.pick(&perms).clone();
            Ok::<bool, crate::EngineError>(phi_iso(&a, &sigma)?.check().is_valid())
        })()
        .unwrap_or(false);
        valid &= ok;

        for _ in 0..6 {
            let s1 = rng.pick(&perms).clone();
            let s2 = rng.pick(&perms).clone();
            let ok = (|| {
                let lhs = phi_iso(&a, &s2.compose(&s1))?;
                let rhs = phi_iso(&a, &s2)?
                    .permuted(&s1)?
                    .after(&phi_iso(&a.permute(&s2)?, &s1)?)?;
                Ok::<bool, crate::EngineError>(lhs.same_maps(&rhs))
            })()
            .unwrap_or(false);
            zfcomp &= ok;
        }

        let aref = Arc::new(a.clone());
        for _ in 0..2 {
            let sigma = rng.pick(&perms).clone();
            let m = gen::random_endomorphism(&mut rng, &aref);
            let ok = (|| {
                let lhs = phi_iso(&a, &sigma)?
                    .after(&total_reversion_morphism(&m.permuted(&sigma)?)?)?;
                let rhs = total_reversion_morphism(&m)?
                    .permuted(&sigma)?
                    .after(&phi_iso(&a, &sigma)?)?;
                Ok::<bool, crate::EngineError>(lhs.same_maps(&rhs))
            })()
            .unwrap_or(false);
            natural &= ok;
        }
    }
    out.check(format!("isomorphism validity sampled over {count} atlases"), valid);
    out.check(format!("composition law on {count} x 6 pairs"), zfcomp);
    out.check(format!("naturality on {count} x 2 morphisms"), natural);
    out
}

/// The flip action on the third iterated tangent of random
/// (1|1)-dimensional atlases: full group law, involutivity of the flip,
/// and core triviality of every transposition.
pub fn suite_flips(seed: u64, count: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("flips");
    let mut rng = Rng::new(seed);
    let perms = Perm::all(3);
    let mut law = true;
    let mut involutive = true;
    let mut table_ok = true;
    for _ in 0..count.max(1) {
        let a = one_one_atlas(&mut rng);
        let it = match iterated_tangent(&a, 3) {
            Ok(it) => it,
            Err(_) => {
                table_ok = false;
                continue;
            }
        };
        table_ok &= it.flips.validate(&it.atlas).is_valid();
        for s1 in &perms {
            for s2 in &perms {
                let e1 = &it.flips.get(s2).expect("complete")[0];
                let e2 = &it.flips.get(s1).expect("complete")[0];
                let composed = e1.after(e2).expect("same chart");
                let direct = &it.flips.get(&s2.compose(s1)).expect("complete")[0];
                law &= composed.images() == direct.images();
            }
        }
        for i in 1..=3 {
            for j in (i + 1)..=3 {
                let kappa = Perm::transposition(3, i, j);
                let e = &it.flips.get(&kappa).expect("complete")[0];
                involutive &= e.after(e).expect("same chart").is_identity();
            }
        }
    }
    out.check("flip tables validate symmetric (cores fixed)", table_ok);
    out.check("group law over all of S3 x S3", law);
    out.check("every transposition squares to the identity", involutive);
    out
}

fn one_one_atlas(rng: &mut Rng) -> Atlas {
    use crate::bundle::{BundleKind, Transition};
    use crate::superalg::{
        Chart, ChartRef, CoordName, CoordinateSymbol, PolynomialMap, Weight,
    };
    let mk = |name: &str| {
        Chart::new(
            CoordName::plain(name),
            vec![
                CoordinateSymbol::new(CoordName::plain("x"), Parity::Even, Weight(vec![])),
                CoordinateSymbol::new(CoordName::plain("th"), Parity::Odd, Weight(vec![])),
            ],
        )
        .expect("fixture chart")
    };
    let u = mk("U");
    let v = mk("V");
    let a = rng.rational();
    let b = rng.rational();
    let c = rng.rational();
    let fwd = |ch: &ChartRef| {
        vec![
            Polynomial::coordinate(ch.clone(), 0)
                .scale(&a)
                .add(&Polynomial::constant(ch.clone(), b.clone()))
                .expect("same chart"),
            Polynomial::coordinate(ch.clone(), 1).scale(&c),
        ]
    };
    let inv_a = coeff_int(1) / a.clone();
    let bwd = |ch: &ChartRef| {
        vec![
            Polynomial::coordinate(ch.clone(), 0)
                .scale(&inv_a)
                .add(&Polynomial::constant(ch.clone(), -b.clone() * inv_a.clone()))
                .expect("same chart"),
            Polynomial::coordinate(ch.clone(), 1).scale(&(coeff_int(1) / c.clone())),
        ]
    };
    Atlas::new(
        BundleKind::plain(),
        false,
        vec![u.clone(), v.clone()],
        vec![Transition {
            map: PolynomialMap::new(u.clone(), v.clone(), fwd(&u)).expect("fixture"),
            inverse: PolynomialMap::new(v.clone(), u, bwd(&v)).expect("fixture"),
        }],
        Vec::new(),
    )
    .expect("fixture atlas")
}

/// Nice-coordinate construction on random non-nice symmetric actions.
pub fn suite_nice(seed: u64, count: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("nice");
    let mut rng = Rng::new(seed);
    let mut coord_sym = true;
    let mut change_valid = true;
    let mut action_nice = true;
    for k in 0..count {
        let n = 2 + (k % 2);
        let en = rng.chance(1, 2);
        let atlas = Arc::new(gen::random_nvector_atlas(&mut rng, n, 2, en, 1));
        let action = gen::random_symmetric_action(&mut rng, &atlas);
        let nice = match nice_coordinates(&atlas, &action) {
            Ok(nice) => nice,
            Err(_) => {
                coord_sym = false;
                continue;
            }
        };
        let new_chart = nice.atlas.chart(0).clone();
        let change = nice.change.map(0);
        for sigma in Perm::all(n) {
            let entry = &action.get(&sigma).expect("complete")[0];
            for i in 0..new_chart.len() {
                let transported = entry.substitute(change.image(i)).expect("same chart");
                let name = if new_chart.weight(i).is_zero() {
                    new_chart.coord(i).name.clone()
                } else {
                    let alpha = new_chart.weight(i).permuted(&sigma);
                    new_chart.coord(i).name.with_replaced_tuple(Some(
                        alpha.0.iter().map(|&v| v as u8).collect(),
                    ))
                };
                let j = new_chart.find(&name).expect("aligned names");
                coord_sym &= transported == *change.image(j);
            }
        }
        change_valid &= nice.change.check().is_valid()
            && nice.change_inverse.check().is_valid()
            && nice
                .change
                .after(&nice.change_inverse)
                .map(|m| m.is_identity())
                .unwrap_or(false);
        action_nice &= nice
            .action
            .validate(&Arc::new(nice.atlas.clone()))
            .is_valid();
    }
    out.check(
        format!("coordinate symmetry law on {count} actions"),
        coord_sym,
    );
    out.check("coordinate changes are isomorphisms both ways", change_valid);
    out.check("induced actions validate symmetric", action_nice);
    out
}

/// The symmetric-to-skew equivalence on random symmetric fixtures.
pub fn suite_xi(seed: u64, count: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("xi");
    let mut rng = Rng::new(seed);
    let mut skew_ok = true;
    let mut even_ok = true;
    for k in 0..count {
        let n = 2 + (k % 2);
        let en = rng.chance(1, 2);
        let atlas = Arc::new(gen::random_nvector_atlas(&mut rng, n, 2, en, 1));
        let action = gen::random_symmetric_action(&mut rng, &atlas);
        match xi_functor(&atlas, &action) {
            Ok((pi, j)) => {
                skew_ok &= j.flavor() == Flavor::Skew
                    && j.validate(&Arc::new(pi.clone())).is_valid();
                if en {
                    even_ok &= pi.is_purely_even();
                }
            }
            Err(_) => skew_ok = false,
        }
    }
    out.check(format!("skew action laws on {count} fixtures"), skew_ok);
    out.check("parity-graded inputs produce purely even output", even_ok);
    out
}

/// Polarization round trip with explicit isomorphisms, and flip-fixedness
/// of the diag embedding.
pub fn suite_polar(seed: u64, count: usize, degree_max: u32) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("polar");
    let mut rng = Rng::new(seed);
    let mut polar_ok = true;
    let mut roundtrip = true;
    let mut diag_fixed = true;
    let dmax = degree_max.clamp(1, 3) as usize;
    for k in 0..count {
        let degree = 1 + (k % dmax) as u32;
        let a = Arc::new(gen::random_weighted_atlas(&mut rng, degree, false));
        let ok = (|| {
            let p = polarize(&a, degree as usize)?;
            let pol_valid =
                p.atlas.validate().is_valid() && p.action.validate(&p.atlas).is_valid();

            let diag = diag_embedding(&a, &p, DiagScaling::Factorial)?;
            let mut fixed = true;
            for sigma in Perm::all(degree as usize) {
                for (ci, m) in diag.maps().iter().enumerate() {
                    let entry = &p.action.get(&sigma).expect("complete")[ci];
                    fixed &= entry.after(m)?.images() == m.images();
                }
            }

            let d = diagonalize(&p)?;
            let (fwd, bwd) = roundtrip_isomorphism(&a, &d.atlas)?;
            let rt = d.atlas.validate().is_valid()
                && fwd.check().is_valid()
                && bwd.check().is_valid()
                && fwd.after(&bwd)?.is_identity()
                && bwd.after(&fwd)?.is_identity()
                && (0..a.charts().len()).all(|ci| {
                    d.include[ci]
                        .after(fwd.map(ci))
                        .map(|through| through.images() == diag.map(ci).images())
                        .unwrap_or(false)
                });
            Ok::<(bool, bool, bool), crate::EngineError>((pol_valid, fixed, rt))
        })();
        match ok {
            Ok((p, f, r)) => {
                polar_ok &= p;
                diag_fixed &= f;
                roundtrip &= r;
            }
            Err(_) => {
                polar_ok = false;
                roundtrip = false;
            }
        }
    }
    out.check(
        format!("polarizations validate symmetric on {count} atlases"),
        polar_ok,
    );
    out.check("diag images are fixed by every flip", diag_fixed);
    out.check("diagonalize ∘ polarize = id with verified isomorphisms", roundtrip);
    out
}

/// Desuperization of parity-graded weighted atlases: purely even skew
/// output and functoriality on random morphism pairs.
pub fn suite_desuper(seed: u64, count: usize, degree_max: u32) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("desuper");
    let mut rng = Rng::new(seed);
    let mut even_skew = true;
    let mut functorial = true;
    let lo = 2u32.min(degree_max.max(1));
    let span = (degree_max.clamp(lo, 3) - lo + 1) as usize;
    for k in 0..count {
        let degree = lo + (k % span) as u32;
        let a = Arc::new(gen::random_weighted_atlas(&mut rng, degree, true));
        match desuperize(&a) {
            Ok(d) => {
                even_skew &= d.atlas.is_purely_even()
                    && d.atlas.validate().is_valid()
                    && d.action.flavor() == Flavor::Skew
                    && d.action.validate(&Arc::new(d.atlas.clone())).is_valid();
            }
            Err(_) => even_skew = false,
        }
        if k % 4 == 0 {
            let f = gen::random_endomorphism(&mut rng, &a);
            let g = gen::random_endomorphism(&mut rng, &a);
            let ok = (|| {
                let lhs = desuperize_morphism(&f.after(&g)?)?;
                let rhs = desuperize_morphism(&f)?.after(&desuperize_morphism(&g)?)?;
                Ok::<bool, crate::EngineError>(lhs.same_maps(&rhs))
            })()
            .unwrap_or(false);
            functorial &= ok;
        }
    }
    out.check(
        format!("purely even skew output on {count} graded atlases"),
        even_skew,
    );
    out.check("composition preserved on morphism pairs", functorial);
    out
}

/// Knobs for the randomized suites.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Override the per-suite default fixture count.
    pub count: Option<usize>,
    /// Cap on the symmetric-group size (slots) used by fixtures.
    pub n_max: Option<usize>,
    /// Cap on generated weighted-atlas degrees.
    pub degree_max: Option<u32>,
}

impl SuiteOptions {
    pub fn new(seed: u64) -> Self {
        SuiteOptions {
            seed,
            count: None,
            n_max: None,
            degree_max: None,
        }
    }
}

/// Names of all suites, in presentation order.
pub fn suite_names() -> &'static [&'static str] {
    &[
        "worked-example",
        "koszul",
        "superalg",
        "tangent",
        "phi",
        "flips",
        "nice",
        "xi",
        "polar",
        "desuper",
    ]
}

/// Run one suite by name; unknown names return `None`.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Option<SuiteOutcome> {
    let seed = opts.seed;
    let c = |default: usize| opts.count.unwrap_or(default);
    Some(match name {
        "worked-example" => suite_worked_example(),
        "koszul" => suite_koszul(opts.n_max.unwrap_or(4)),
        "superalg" => suite_superalg(seed, c(1000)),
        "tangent" => suite_tangent(seed, c(100)),
        "phi" => suite_phi(seed, c(100)),
        "flips" => suite_flips(seed, c(3)),
        "nice" => suite_nice(seed, c(50)),
        "xi" => suite_xi(seed, c(20)),
        "polar" => suite_polar(seed, c(50), opts.degree_max.unwrap_or(3)),
        "desuper" => suite_desuper(seed, c(20), opts.degree_max.unwrap_or(3)),
        _ => return None,
    })
}

/// Sanity helper shared by examples: the Koszul sign of the full-odd weight
/// equals the permutation sign.
pub fn full_odd_sign_matches(n: usize) -> bool {
    let alpha = crate::superalg::Weight(vec![1; n]);
    Perm::all(n)
        .into_iter()
        .all(|s| koszul_sign(&alpha, &s).map(|v| v == s.sign()).unwrap_or(false))
}
