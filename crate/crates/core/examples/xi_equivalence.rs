//! From symmetric to skew-symmetric: total parity reversion dressed with
//! the reversion-order signs turns a symmetric action into a skew one —
//! transpositions now multiply their core by -1.

use std::sync::Arc;

use gsa::dsl::parse_document;
use gsa::perm::Perm;
use gsa::symmetry::xi_functor;

const SRC: &str = r#"
kind nvector 2;
chart U {
  x @(0,0) even;
  y @(1,0) odd;
  Y @(0,1) odd;
  z @(1,1) even;
}
flavor symmetric;
action sigma (2 1) {
  y -> Y;
  Y -> y;
  z -> z + x*y*Y;
}
"#;

fn main() {
    let doc = parse_document(SRC).expect("parses");
    let atlas = Arc::new(doc.atlas);
    let action = doc.action.expect("declared action");

    let (pi, j) = xi_functor(&atlas, &action).expect("symmetric input");
    println!("reversed atlas is purely even: {}", pi.is_purely_even());

    let sigma = Perm::transposition(2, 1, 2);
    let entry = &j.get(&sigma).unwrap()[0];
    println!("\nthe dressed transposition entry:");
    for (i, img) in entry.images().iter().enumerate() {
        println!("  {} -> {}", entry.target().coord(i).name, img);
    }

    let pi_ref = Arc::new(pi);
    println!(
        "\nvalidates as a skew action (cores scale by -1): {}",
        j.validate(&pi_ref).is_valid()
    );
}
