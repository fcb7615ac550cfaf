use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{EngineError, Result};
use crate::superalg::{Coeff, Polynomial, PolynomialMap};

/// Exact inverse of a graded-unipotent coordinate change.
///
/// The map must send each target coordinate to `y + N` where `y` is a
/// unique source coordinate of the same total weight appearing linearly
/// with coefficient 1, and every other term of `N` only involves source
/// coordinates of strictly smaller total weight. Base coordinates must map
/// to base coordinates identically. The inverse is computed by
/// back-substitution along the weight grading and verified by composing
/// both ways.
pub fn invert_graded_unipotent(map: &PolynomialMap) -> Result<PolynomialMap> {
    let source = map.source().clone();
    let target = map.target().clone();
    if source.len() != target.len() {
        return Err(EngineError::NotUnipotent(
            "coordinate counts differ".into(),
        ));
    }

    // discover the correspondence target i -> source match(i)
    let mut match_of = vec![usize::MAX; target.len()];
    let mut used = vec![false; source.len()];
    for (i, img) in map.images().iter().enumerate() {
        let w = target.weight(i).clone();
        let mut linear: Option<usize> = None;
        for term in img.terms() {
            if term.factors.len() == 1 && term.factors[0].1 == 1 {
                let (j, _) = term.factors[0];
                if source.weight(j).total() == w.total() {
                    if !term.coeff.is_one() || linear.is_some() {
                        return Err(EngineError::NotUnipotent(format!(
                            "image of `{}` has a non-unit linear part",
                            target.coord(i).name
                        )));
                    }
                    linear = Some(j);
                } else if source.weight(j).total() > w.total() {
                    return Err(EngineError::NotUnipotent(format!(
                        "image of `{}` involves higher-weight coordinate `{}`",
                        target.coord(i).name,
                        source.coord(j).name
                    )));
                }
            } else {
                // every factor must sit strictly below the target weight
                for &(j, _) in &term.factors {
                    if source.weight(j).total() >= w.total().max(1) {
                        return Err(EngineError::NotUnipotent(format!(
                            "correction term of `{}` involves `{}` of weight >= {}",
                            target.coord(i).name,
                            source.coord(j).name,
                            w.total()
                        )));
                    }
                }
            }
        }
        let j = linear.ok_or_else(|| {
            EngineError::NotUnipotent(format!(
                "image of `{}` has no unit linear part",
                target.coord(i).name
            ))
        })?;
        if used[j] {
            return Err(EngineError::NotUnipotent(format!(
                "source coordinate `{}` matched twice",
                source.coord(j).name
            )));
        }
        used[j] = true;
        match_of[i] = j;
    }

    // back-substitute by increasing total weight
    let mut order: Vec<usize> = (0..target.len()).collect();
    order.sort_by_key(|&i| target.weight(i).total());
    let mut expr: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for &i in &order {
        let j = match_of[i];
        // N = image - y_j, rewritten over the target chart
        let n = map
            .image(i)
            .sub(&Polynomial::coordinate(source.clone(), j))
            .expect("same chart");
        let mut rewritten = Polynomial::zero(target.clone());
        if !n.is_zero() {
            // substitute already-known expressions for the lower coordinates
            let partial = PolynomialMap::new(
                target.clone(),
                source.clone(),
                (0..source.len())
                    .map(|k| {
                        expr.get(&k)
                            .cloned()
                            .unwrap_or_else(|| Polynomial::zero(target.clone()))
                    })
                    .collect(),
            )?;
            // guard: N must only use coordinates already expressed
            for term in n.terms() {
                for &(k, _) in &term.factors {
                    if !expr.contains_key(&k) {
                        return Err(EngineError::NotUnipotent(format!(
                            "correction of `{}` uses unresolved `{}`",
                            target.coord(i).name,
                            source.coord(k).name
                        )));
                    }
                }
            }
            rewritten = partial.substitute(&n)?;
        }
        let value = Polynomial::coordinate(target.clone(), i).sub(&rewritten)?;
        expr.insert(j, value);
    }

    let images = (0..source.len())
        .map(|j| {
            expr.remove(&j).ok_or_else(|| {
                EngineError::NotUnipotent(format!(
                    "source coordinate `{}` never matched",
                    source.coord(j).name
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inverse = PolynomialMap::new(target.clone(), source.clone(), images)?;

    let fwd = map.after(&inverse)?;
    let bwd = inverse.after(map)?;
    if !fwd.is_identity() || !bwd.is_identity() {
        return Err(EngineError::Internal(
            "unipotent inversion failed to verify".into(),
        ));
    }
    Ok(inverse)
}

/// Scale factors are the only non-unipotent changes the engine inverts:
/// `z -> c z` with `c` nonzero inverts coordinate-wise.
pub fn invert_diagonal(map: &PolynomialMap) -> Result<PolynomialMap> {
    let source = map.source().clone();
    let target = map.target().clone();
    let mut scales: Vec<Coeff> = Vec::with_capacity(target.len());
    for i in 0..target.len() {
        let img = map.image(i);
        let terms = img.terms();
        if terms.len() != 1 || terms[0].factors != vec![(i, 1)] {
            return Err(EngineError::NotUnipotent(format!(
                "image of `{}` is not a scaled coordinate",
                target.coord(i).name
            )));
        }
        if num_traits::Zero::is_zero(&terms[0].coeff) {
            return Err(EngineError::NotUnipotent("zero scale".into()));
        }
        scales.push(terms[0].coeff.clone());
    }
    PolynomialMap::diagonal(target, source, |i| Coeff::one() / scales[i].clone())
}
