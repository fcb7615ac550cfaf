use std::sync::Arc;

use crate::bundle::{Atlas, BundleMorphism, Transition};
use crate::error::{EngineError, Result};
use crate::perm::Perm;
use crate::superalg::{
    Chart, ChartRef, CoordinateSymbol, Polynomial, PolynomialMap,
};

/// Chart with the parities of the slot-carrying coordinates flipped and
/// their identities marked.
fn reverse_chart(chart: &ChartRef, slot: usize) -> Result<ChartRef> {
    let coords = chart
        .coords()
        .iter()
        .map(|c| {
            if c.weight.entry(slot) == 1 {
                CoordinateSymbol::new(c.name.pi_toggled(slot), c.parity.flip(), c.weight.clone())
            } else {
                c.clone()
            }
        })
        .collect();
    Chart::new(chart.name().pi_toggled(slot), coords)
}

/// Rewrite one polynomial under the slot reversion. Monomials of slot
/// degree 0 are renamed only; a monomial of slot degree 1 moves its unique
/// slot-carrying factor to the front (collecting signs at the old
/// parities), flips that factor, and renormalizes at the new parities.
/// Slot degree >= 2 cannot occur in valid multi-vector data and is surfaced
/// as corruption.
fn reverse_polynomial(
    p: &Polynomial,
    new_chart: &ChartRef,
    slot: usize,
) -> Result<Polynomial> {
    let old = p.chart();
    let mut acc = Polynomial::zero(new_chart.clone());
    for term in p.terms() {
        let slot_degree: u32 = term
            .factors
            .iter()
            .map(|&(i, e)| old.weight(i).entry(slot) * e)
            .sum();
        match slot_degree {
            0 => {
                let mono = Polynomial::monomial_word(new_chart.clone(), term.coeff, &term.factors);
                acc = acc.add(&mono)?;
            }
            1 => {
                let pos = term
                    .factors
                    .iter()
                    .position(|&(i, _)| old.weight(i).entry(slot) == 1)
                    .expect("degree-1 monomial has a slot factor");
                let (fi, _) = term.factors[pos];
                let swaps = term.factors[..pos]
                    .iter()
                    .filter(|&&(i, _)| old.parity(i).is_odd())
                    .count();
                let mut c = term.coeff.clone();
                if old.parity(fi).is_odd() && swaps % 2 == 1 {
                    c = -c;
                }
                let mut word = vec![(fi, 1u32)];
                word.extend(term.factors[..pos].iter().copied());
                word.extend(term.factors[pos + 1..].iter().copied());
                let mono = Polynomial::monomial_word(new_chart.clone(), c, &word);
                acc = acc.add(&mono)?;
            }
            _ => {
                return Err(EngineError::Internal(format!(
                    "monomial with slot-{slot} degree {slot_degree} in `{p}`: \
                     not multi-vector data"
                )))
            }
        }
    }
    Ok(acc)
}

fn reverse_map(
    map: &PolynomialMap,
    new_source: &ChartRef,
    new_target: &ChartRef,
    slot: usize,
) -> Result<PolynomialMap> {
    let images = map
        .images()
        .iter()
        .map(|img| reverse_polynomial(img, new_source, slot))
        .collect::<Result<Vec<_>>>()?;
    PolynomialMap::new(new_source.clone(), new_target.clone(), images)
}

/// Single-slot parity reversion of an n-vector atlas.
pub fn reverse_parity(atlas: &Atlas, slot: usize) -> Result<Atlas> {
    if !atlas.kind().is_nvector() {
        return Err(EngineError::KindMismatch(
            "parity reversion is defined for multi-vector atlases".into(),
        ));
    }
    let n = atlas.kind().slots();
    if slot == 0 || slot > n {
        return Err(EngineError::InvalidInput(format!(
            "slot {slot} out of range 1..={n}"
        )));
    }
    let charts = atlas
        .charts()
        .iter()
        .map(|ch| reverse_chart(ch, slot))
        .collect::<Result<Vec<_>>>()?;
    let chart_of = |name: &str| {
        let i = atlas.chart_index(name).expect("chart present");
        charts[i].clone()
    };
    let transitions = atlas
        .transitions()
        .iter()
        .map(|t| {
            let src = chart_of(&t.map.source().name().render());
            let tgt = chart_of(&t.map.target().name().render());
            Ok(Transition {
                map: reverse_map(&t.map, &src, &tgt, slot)?,
                inverse: reverse_map(&t.inverse, &tgt, &src, slot)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let triples = atlas
        .triples()
        .iter()
        .map(|[a, b, c]| {
            let fix = |s: &str| {
                let i = atlas.chart_index(s).expect("chart present");
                charts[i].name().render()
            };
            [fix(a), fix(b), fix(c)]
        })
        .collect();
    Ok(
        Atlas::new(atlas.kind().clone(), false, charts, transitions, triples)?
            .with_derived_flag(),
    )
}

/// Total parity reversion `Pi = Pi^1 ∘ Pi^2 ∘ … ∘ Pi^n` (slot n applied
/// first). Every coordinate's parity shifts by its total weight mod 2, so
/// multi-vector atlases whose parity equals the total weight come out
/// purely even.
pub fn total_reversion(atlas: &Atlas) -> Result<Atlas> {
    total_reversion_with_order(atlas, &Perm::identity(atlas.kind().slots()))
}

/// Total reversion in a chosen order: `Pi^{order(1)} ∘ … ∘ Pi^{order(n)}`.
/// The reversed identity order gives the inverse functor.
pub fn total_reversion_with_order(atlas: &Atlas, order: &Perm) -> Result<Atlas> {
    if order.len() != atlas.kind().slots() {
        return Err(EngineError::PermSize {
            expected: atlas.kind().slots(),
            found: order.len(),
        });
    }
    let mut acc = atlas.clone();
    for k in (1..=order.len()).rev() {
        acc = reverse_parity(&acc, order.apply(k))?;
    }
    Ok(acc)
}

/// Single-slot reversion of a morphism: both atlases reverse and every
/// chart map is rewritten by the same monomial rule as transition data.
pub fn reverse_parity_morphism(m: &BundleMorphism, slot: usize) -> Result<BundleMorphism> {
    let source = Arc::new(reverse_parity(m.source(), slot)?);
    let target = Arc::new(reverse_parity(m.target(), slot)?);
    let maps = m
        .maps()
        .iter()
        .enumerate()
        .map(|(i, map)| reverse_map(map, source.chart(i), target.chart(i), slot))
        .collect::<Result<Vec<_>>>()?;
    BundleMorphism::new(source, target, maps)
}

/// Total reversion of a morphism (identity slot order).
pub fn total_reversion_morphism(m: &BundleMorphism) -> Result<BundleMorphism> {
    let n = m.source().kind().slots();
    let mut acc = m.clone();
    for slot in (1..=n).rev() {
        acc = reverse_parity_morphism(&acc, slot)?;
    }
    Ok(acc)
}
