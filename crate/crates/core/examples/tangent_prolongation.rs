//! The tangent functor on atlases and derivations: charts double, every
//! transition gains its formal total differential, and vector fields lift
//! while respecting brackets.

use gsa::dsl::parse_document;
use gsa::superalg::{Derivation, Parity, Polynomial};
use gsa::tangent::{tangent_lift, tangent_of_atlas, tangent_of_chart};

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
    let t = tangent_of_atlas(&doc.atlas).expect("prolongs");
    println!("tangent atlas kind: {}", t.kind());
    println!("prolonged transition (graded product rule in the dotted copy):");
    let map = &t.transitions()[0].map;
    for (i, img) in map.images().iter().enumerate() {
        println!("  {} = {}", map.target().coord(i).name, img);
    }
    println!("validates: {}", t.validate().is_valid());

    // lift the Euler-like field z d/dz
    let ch = doc.atlas.chart(0).clone();
    let iz = ch.find_str("z").unwrap();
    let mut comps = std::collections::BTreeMap::new();
    comps.insert(iz, Polynomial::coordinate(ch.clone(), iz));
    let euler = Derivation::new(ch.clone(), Parity::Even, comps).unwrap();
    let td = tangent_of_chart(&ch);
    let lifted = tangent_lift(&euler, &td).unwrap();
    println!("\nfield:  {euler}");
    println!("lift:   {lifted}");
}
