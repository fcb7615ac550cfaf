//! Parity reversion of multi-vector atlases.
//!
//! `reverse_parity` applies the single-slot reversion: coordinates carrying
//! weight 1 in the slot flip parity (and pick up a reversal mark in their
//! identity), and every transition monomial is rewritten by walking its
//! slot-carrying factor to the front at the old parities, flipping it, and
//! renormalizing at the new parities. The total reversion composes the
//! slot reversions; different application orders give genuinely different
//! atlases related by the canonical sign isomorphisms [`phi_iso`].

mod koszul;
mod reversion;

pub use koszul::{koszul_sign, SignTable};
pub use reversion::{
    reverse_parity, reverse_parity_morphism, total_reversion, total_reversion_morphism,
    total_reversion_with_order,
};

use std::sync::Arc;

use crate::bundle::{Atlas, BundleMorphism};
use crate::error::{EngineError, Result};
use crate::perm::Perm;
use crate::superalg::{coeff_int, PolynomialMap};

/// The canonical isomorphism `Phi^sigma : Pi(E^sigma) -> (Pi E)^sigma`
/// relating the two orders of permuting and reversing. On coordinates it is
/// the diagonal sign map `z -> sgn(w, sigma) * z` with `w` the weight of the
/// coordinate in `E`; in particular it is minus the identity exactly on the
/// core coordinates of a transposition.
pub fn phi_iso(atlas: &Atlas, sigma: &Perm) -> Result<BundleMorphism> {
    let n = atlas.kind().slots();
    if sigma.len() != n {
        return Err(EngineError::PermSize {
            expected: n,
            found: sigma.len(),
        });
    }
    if !atlas.kind().is_nvector() {
        return Err(EngineError::KindMismatch(
            "phi_iso needs an n-vector atlas".into(),
        ));
    }
    let source = Arc::new(total_reversion(&atlas.permute(sigma)?)?);
    let target = Arc::new(total_reversion(atlas)?.permute(sigma)?);
    let maps = atlas
        .charts()
        .iter()
        .enumerate()
        .map(|(ci, ch)| {
            let src = source.chart(ci).clone();
            let tgt = target.chart(ci).clone();
            PolynomialMap::diagonal(src, tgt, |i| {
                coeff_int(koszul_sign(ch.weight(i), sigma).expect("validated sizes") as i64)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    BundleMorphism::new(source, target, maps)
}
