//! Parse an atlas from the DSL and run the structural validator: weight
//! homogeneity and parity preservation of every transition, base
//! triangularity, declared-inverse round trips, commuting slot Euler
//! fields, and cocycle consistency on declared triples.

use gsa::dsl::parse_document;

const GOOD: &str = r#"
kind nweighted degree 2;
nmanifold;

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

const BROKEN: &str = r#"
kind nweighted degree 2;
chart U { x @(0) even; z @(2) even; }
chart V { x @(0) even; z @(2) even; }
transition U -> V {
  z = z + x;              # weight 2 polluted by weight 0
  inverse { z = z - x; }
}
"#;

fn main() {
    let good = parse_document(GOOD).expect("parses");
    println!("== a degree-2 graded supermanifold ==");
    println!("{}", good.atlas.validate());

    let broken = parse_document(BROKEN).expect("parses");
    println!("\n== the same shape with a weight-violating transition ==");
    let report = broken.atlas.validate();
    println!("{report}");
    assert!(!report.is_valid());
}
