//! Weight vector fields and the dilation monoid: the grading of an atlas
//! is encoded in the derivation `Σ w z d/dz`, whose flow scales each
//! coordinate by `t^w`. Slot fields of a multi-vector atlas commute, and
//! their sum is the total weight field.

use std::sync::Arc;

use gsa::dsl::parse_document;
use gsa::superalg::coeff_int;

const DVB: &str = r#"
kind nvector 2;
chart U {
  x @(0,0) even;
  y @(1,0) even;
  Y @(0,1) even;
  z @(1,1) even;
}
"#;

fn main() {
    let doc = parse_document(DVB).expect("parses");
    let atlas = Arc::new(doc.atlas);

    let n1 = atlas.weight_field(0, Some(1));
    let n2 = atlas.weight_field(0, Some(2));
    let total = atlas.weight_field(0, None);
    println!("slot-1 Euler field:  {n1}");
    println!("slot-2 Euler field:  {n2}");
    println!("total weight field:  {total}");
    println!(
        "bracket [n1, n2] vanishes: {}",
        n1.bracket(&n2).unwrap().is_zero()
    );
    println!("n1 + n2 = total: {}", n1.add(&n2).unwrap() == total);

    // dilations: h_1 = id, h_t . h_s = h_ts, h_0 projects onto the base
    let h2 = atlas.dilation(&coeff_int(2));
    let h3 = atlas.dilation(&coeff_int(3));
    let h6 = atlas.dilation(&coeff_int(6));
    println!(
        "\nh_2 ∘ h_3 = h_6 exactly: {}",
        h2.after(&h3).unwrap().same_maps(&h6)
    );
    let h0 = atlas.dilation(&coeff_int(0));
    println!("h_0 (projection onto the base):");
    println!("{}", h0.map(0));
    println!("h_t is a bundle morphism: {}", h2.check().is_valid());
}
