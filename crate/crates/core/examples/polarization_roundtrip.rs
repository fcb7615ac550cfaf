//! Polarize a weighted atlas into a symmetric multi-vector atlas, embed
//! the original as the flip-fixed (holonomic) locus, and collapse back:
//! the round trip is the identity up to an explicit verified isomorphism.

use std::sync::Arc;

use gsa::dsl::parse_document;
use gsa::perm::Perm;
use gsa::polar::{
    diag_embedding, diagonalize, polarize, roundtrip_isomorphism, DiagScaling,
};

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
    let atlas = Arc::new(doc.atlas);

    let p = polarize(&atlas, 2).expect("degree <= multiplicity");
    println!("polarized transition (each weight splits into tuple copies):");
    let t = &p.atlas.transitions()[0].map;
    for (i, img) in t.images().iter().enumerate() {
        println!("  {} = {}", t.target().coord(i).name, img);
    }
    println!(
        "polarization validates as a symmetric 2-vector atlas: {}",
        p.atlas.validate().is_valid() && p.action.validate(&p.atlas).is_valid()
    );
    for (src, copies) in &p.dictionary {
        println!("  {src} polarizes to {copies:?}");
    }

    let diag = diag_embedding(&atlas, &p, DiagScaling::Factorial).expect("provenance");
    println!("\nthe diag embedding (weight-w coordinates scale by w!):");
    println!("{}", diag.map(0));
    let fixed = Perm::all(2).into_iter().all(|s| {
        let entry = &p.action.get(&s).unwrap()[0];
        entry.after(diag.map(0)).unwrap().images() == diag.map(0).images()
    });
    println!("diag image is fixed by every flip: {fixed}");

    let d = diagonalize(&p).expect("symmetric polarization");
    println!("\ncollapsed atlas kind: {}", d.atlas.kind());
    let (fwd, bwd) = roundtrip_isomorphism(&atlas, &d.atlas).expect("names align");
    println!(
        "round trip closes with a verified isomorphism: {}",
        fwd.check().is_valid()
            && bwd.check().is_valid()
            && fwd.after(&bwd).unwrap().is_identity()
    );
}
