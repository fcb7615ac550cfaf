//! The symmetric group acting on an iterated tangent atlas by canonical
//! flips: tuple transpositions that are genuine atlas automorphisms
//! because mixed second derivatives are super-symmetric.

use gsa::dsl::parse_document;
use gsa::perm::Perm;
use gsa::tangent::{flip_action, iterated_tangent};

const SRC: &str = r#"
kind nweighted degree 2;
chart U {
  x @(0) even;
  xi1 @(1) odd;
  xi2 @(1) odd;
  z @(2) even;
}
chart V {
  x @(0) even;
  xi1 @(1) odd;
  xi2 @(1) odd;
  z @(2) even;
}
transition U -> V {
  z = z + xi1*xi2;
  inverse { z = z - xi1*xi2; }
}
"#;

fn main() {
    let doc = parse_document(SRC).expect("parses");
    let it = iterated_tangent(&doc.atlas, 2).expect("prolongs twice");
    println!(
        "second prolongation: {} coordinates per chart, kind {}",
        it.atlas.chart(0).len(),
        it.atlas.kind()
    );

    let kappa = Perm::transposition(2, 1, 2);
    let flip = flip_action(&it, &kappa).expect("flip exists");
    println!("\nthe canonical flip on a few coordinates:");
    let m = flip.map(0);
    for name in ["x@(1,0)", "x@(0,1)", "z@(1,1)", "xi1@(0,1)"] {
        let i = m.target().find_str(name).unwrap();
        println!("  {name} -> {}", m.image(i));
    }
    println!("flip intertwines the prolonged transitions: {}", flip.check().is_valid());

    let e = &it.flips.get(&kappa).unwrap()[0];
    println!("flip squares to the identity: {}", e.after(e).unwrap().is_identity());

    println!(
        "\nfull flip table validates as a symmetric action: {}",
        it.flips.validate(&it.atlas).is_valid()
    );
}
