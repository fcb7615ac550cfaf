//! Symmetric-group actions on multi-vector atlases.
//!
//! An [`ActionTable`] assigns to each permutation an atlas automorphism
//! (onto the slot-permuted atlas). Validation checks the group law on a
//! generating set, the Euler-field permutation, transition equivariance,
//! and the core condition of the declared flavor: a transposition `(i,j)`
//! restricts to the `(i,j)`-core as the identity (symmetric) or as
//! multiplication by -1 on the fiber (skew).
//!
//! [`nice_coordinates`] rebuilds a symmetric atlas in coordinates on which
//! the action is the pure index permutation, via the stabilizer average and
//! orbit transport; [`xi_functor`] conjugates a symmetric action through
//! the total parity reversion into a skew one.

mod unipotent;

pub use unipotent::{invert_diagonal, invert_graded_unipotent};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::bundle::{Atlas, AtlasRef, BundleMorphism, Transition, ValidationReport};
use crate::error::{EngineError, Result};
use crate::parity::{phi_iso, total_reversion, total_reversion_morphism};
use crate::perm::Perm;
use crate::superalg::{
    coeff_int, Chart, ChartRef, Coeff, CoordinateSymbol, Polynomial, PolynomialMap, Weight,
};

/// Declared flavor of an action: how transpositions act on cores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Symmetric,
    Skew,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Flavor::Symmetric => write!(f, "symmetric"),
            Flavor::Skew => write!(f, "skew"),
        }
    }
}

/// A symmetric-group action by atlas automorphisms. Entries are stored as
/// chart self-maps; the permuted weight bookkeeping is recovered through
/// [`ActionTable::morphism`].
#[derive(Debug, Clone, PartialEq)]
pub struct ActionTable {
    n: usize,
    flavor: Flavor,
    entries: BTreeMap<Perm, Vec<PolynomialMap>>,
}

impl ActionTable {
    pub fn new(n: usize, flavor: Flavor) -> ActionTable {
        ActionTable {
            n,
            flavor,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> ActionTable {
        self.flavor = flavor;
        self
    }

    pub fn insert(&mut self, sigma: Perm, maps: Vec<PolynomialMap>) -> Result<()> {
        if sigma.len() != self.n {
            return Err(EngineError::PermSize {
                expected: self.n,
                found: sigma.len(),
            });
        }
        self.entries.insert(sigma, maps);
        Ok(())
    }

    pub fn get(&self, sigma: &Perm) -> Option<&[PolynomialMap]> {
        self.entries.get(sigma).map(|v| v.as_slice())
    }

    pub fn entries(&self) -> &BTreeMap<Perm, Vec<PolynomialMap>>
    {
        &self.entries
    }

    pub fn is_complete(&self) -> bool {
        self.entries.len() == Perm::all(self.n).len()
    }

    /// The identity-permutation action on an atlas: a seed for tables built
    /// from generators.
    pub fn identity_entry(atlas: &Atlas) -> Vec<PolynomialMap> {
        atlas
            .charts()
            .iter()
            .map(|ch| PolynomialMap::identity(ch.clone()))
            .collect()
    }

    /// The metadata permutation action (`z@alpha -> z@(alpha ∘ sigma)`) on
    /// an atlas whose coordinate identities carry their weight tuples in the
    /// leading slots; the canonical nice action. `sigma` may act on fewer
    /// slots than the atlas carries (iterated tangents of graded atlases
    /// keep their original grading in trailing slots).
    pub fn tuple_permutation_entry(atlas: &Atlas, sigma: &Perm) -> Result<Vec<PolynomialMap>> {
        let ext = sigma.extended(atlas.kind().slots());
        atlas
            .charts()
            .iter()
            .map(|ch| {
                let images = (0..ch.len())
                    .map(|i| {
                        let c = ch.coord(i);
                        let perm_weight = c.weight.permuted(&ext);
                        if perm_weight == c.weight {
                            return Ok(Polynomial::coordinate(ch.clone(), i));
                        }
                        // match the transported coordinate by name tuple
                        let tuple = c.name.tuple.clone().ok_or_else(|| {
                            EngineError::InvalidInput(format!(
                                "coordinate `{}` carries no weight tuple",
                                c.name
                            ))
                        })?;
                        let n = sigma.len();
                        if tuple.len() < n {
                            return Err(EngineError::InvalidInput(format!(
                                "coordinate `{}` has a {}-entry tuple, need {n}",
                                c.name,
                                tuple.len()
                            )));
                        }
                        let mut permuted = tuple.clone();
                        for k in 0..n {
                            permuted[k] = tuple[sigma.apply(k + 1) - 1];
                        }
                        let target_name = c.name.with_replaced_tuple(Some(permuted));
                        let j = ch.find(&target_name).ok_or_else(|| {
                            EngineError::UnknownCoordinate {
                                coord: target_name.render(),
                                chart: ch.name().render(),
                            }
                        })?;
                        Ok(Polynomial::coordinate(ch.clone(), j))
                    })
                    .collect::<Result<Vec<_>>>()?;
                PolynomialMap::new(ch.clone(), ch.clone(), images)
            })
            .collect()
    }

    /// Complete a table from generator entries by closing under
    /// composition: `entry(tau ∘ sigma) = entry(tau) ∘ entry(sigma)`.
    pub fn complete(&mut self, atlas: &Atlas) -> Result<()> {
        self.entries
            .entry(Perm::identity(self.n))
            .or_insert_with(|| Self::identity_entry(atlas));
        let generators: Vec<Perm> = self.entries.keys().cloned().collect();
        let total = {
            let mut f = 1usize;
            for k in 2..=self.n {
                f *= k;
            }
            f
        };
        let mut progress = true;
        while self.entries.len() < total && progress {
            progress = false;
            let snapshot: Vec<Perm> = self.entries.keys().cloned().collect();
            for g in &generators {
                for s in &snapshot {
                    let prod = g.compose(s);
                    if self.entries.contains_key(&prod) {
                        continue;
                    }
                    let composed = self.entries[g]
                        .iter()
                        .zip(self.entries[s].iter())
                        .map(|(f, inner)| f.after(inner))
                        .collect::<Result<Vec<_>>>()?;
                    self.entries.insert(prod, composed);
                    progress = true;
                }
            }
        }
        if self.entries.len() < total {
            return Err(EngineError::InvalidInput(format!(
                "declared action entries do not generate S{}",
                self.n
            )));
        }
        Ok(())
    }

    /// Materialize the entry for `sigma` as a morphism `E -> E^sigma`
    /// (`sigma` extends by the identity on any trailing grading slots).
    pub fn morphism(&self, atlas: &AtlasRef, sigma: &Perm) -> Result<BundleMorphism> {
        let maps = self.get(sigma).ok_or_else(|| {
            EngineError::InvalidInput(format!("no action entry for {sigma}"))
        })?;
        let permuted = Arc::new(atlas.permute(&sigma.extended(atlas.kind().slots()))?);
        let rebound = maps
            .iter()
            .enumerate()
            .map(|(i, m)| m.with_target(permuted.chart(i).clone()))
            .collect();
        BundleMorphism::new(atlas.clone(), permuted, rebound)
    }

    /// Full validation against an atlas: completeness, the group law
    /// `I^{tau sigma} = I^tau ∘ I^sigma` over the adjacent-transposition
    /// generators, per-entry morphism validity (Euler permutation, parity,
    /// transition equivariance), and the flavor's core condition on every
    /// transposition.
    pub fn validate(&self, atlas: &AtlasRef) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let n = self.n;
        let caps = atlas.kind().caps();
        if caps.len() < n || caps[..n].iter().any(|&c| c != 1) {
            rep.fail(
                "action",
                "kind",
                format!(
                    "table acts on {n} leading vector-bundle slots; atlas kind is `{}`",
                    atlas.kind()
                ),
            );
            return rep;
        }
        if !self.is_complete() {
            rep.fail(
                "action",
                "completeness",
                format!("{} of {} entries present", self.entries.len(), {
                    let mut f = 1usize;
                    for k in 2..=n {
                        f *= k;
                    }
                    f
                }),
            );
            return rep;
        }
        rep.pass("action", "completeness");

        match self.get(&Perm::identity(n)) {
            Some(maps) if maps.iter().all(|m| m.is_identity()) => {
                rep.pass("action", "identity entry")
            }
            _ => rep.fail("action", "identity entry", "identity must act trivially"),
        }

        // group law on generators x everything
        let mut law_ok = true;
        for tau in Perm::adjacent_transpositions(n) {
            for sigma in Perm::all(n) {
                let prod = tau.compose(&sigma);
                let lhs = &self.entries[&prod];
                let composed: Result<Vec<_>> = self.entries[&tau]
                    .iter()
                    .zip(self.entries[&sigma].iter())
                    .map(|(f, g)| f.after(g))
                    .collect();
                let ok = match composed {
                    Ok(maps) => maps
                        .iter()
                        .zip(lhs.iter())
                        .all(|(a, b)| a.images() == b.images()),
                    Err(_) => false,
                };
                if !ok {
                    law_ok = false;
                    rep.fail(
                        "action",
                        "group law",
                        format!("entry({prod}) != entry({tau}) ∘ entry({sigma})"),
                    );
                }
            }
        }
        if law_ok {
            rep.pass("action", "group law");
        }

        // each entry is a valid morphism E -> E^sigma
        for sigma in Perm::all(n) {
            match self.morphism(atlas, &sigma) {
                Ok(m) => {
                    let sub = m.check();
                    if sub.is_valid() {
                        rep.pass(format!("entry {sigma}"), "morphism validity");
                    } else {
                        for e in sub.failures() {
                            rep.fail(
                                format!("entry {sigma}"),
                                format!("morphism: {}", e.check),
                                e.detail.clone(),
                            );
                        }
                    }
                }
                Err(e) => rep.fail(format!("entry {sigma}"), "morphism validity", e.to_string()),
            }
        }

        // core conditions for every transposition
        for i in 1..=n {
            for j in (i + 1)..=n {
                let sigma = Perm::transposition(n, i, j);
                let maps = &self.entries[&sigma];
                let scope = format!("core ({i},{j})");
                let mut ok = true;
                for (ci, ch) in atlas.charts().iter().enumerate() {
                    let kept: Vec<usize> = (0..ch.len())
                        .filter(|&k| ch.weight(k).entry(i) == ch.weight(k).entry(j))
                        .collect();
                    let core_chart = match Chart::new(
                        ch.name().prefixed("core_"),
                        kept.iter()
                            .map(|&k| {
                                let c = ch.coord(k);
                                CoordinateSymbol::new(
                                    c.name.clone(),
                                    c.parity,
                                    Weight(vec![c.weight.entry(i)]),
                                )
                            })
                            .collect(),
                    ) {
                        Ok(c) => c,
                        Err(e) => {
                            ok = false;
                            rep.fail(&scope, "core restriction", e.to_string());
                            continue;
                        }
                    };
                    let kill = PolynomialMap::from_index_map(
                        core_chart.clone(),
                        ch.clone(),
                        |old| {
                            kept.iter()
                                .position(|&k| k == old)
                                .map(|new| (new, Coeff::one()))
                        },
                    )
                    .expect("aligned charts");
                    for (new_idx, &old_idx) in kept.iter().enumerate() {
                        let restricted = match kill.substitute(maps[ci].image(old_idx)) {
                            Ok(p) => p,
                            Err(e) => {
                                ok = false;
                                rep.fail(&scope, "core restriction", e.to_string());
                                continue;
                            }
                        };
                        let fiber = ch.weight(old_idx).entry(i) == 1;
                        let sign = match (self.flavor, fiber) {
                            (Flavor::Skew, true) => -1,
                            _ => 1,
                        };
                        let expected = Polynomial::coordinate(core_chart.clone(), new_idx)
                            .scale(&coeff_int(sign));
                        if restricted != expected {
                            ok = false;
                            rep.fail(
                                &scope,
                                "core restriction",
                                format!(
                                    "`{}` restricts to `{}`, expected sign {}",
                                    ch.coord(old_idx).name,
                                    restricted,
                                    sign
                                ),
                            );
                        }
                    }
                }
                if ok {
                    rep.pass(&scope, "core restriction");
                }
            }
        }
        rep
    }
}

/// Result of the nice-coordinate construction.
#[derive(Debug, Clone)]
pub struct NiceCoordinates {
    pub atlas: Atlas,
    pub action: ActionTable,
    /// Coordinate change, point map old -> new.
    pub change: BundleMorphism,
    /// Its exact inverse.
    pub change_inverse: BundleMorphism,
}

/// All binary weights of total `m` on `n` slots, ascending lexicographic.
fn binary_weights_of_total(n: usize, m: u32) -> Vec<Weight> {
    let mut out = Vec::new();
    for bits in 0..(1u32 << n) {
        let w = Weight((0..n).map(|i| (bits >> i) & 1).collect());
        if w.total() == m {
            out.push(w);
        }
    }
    out.sort();
    out
}

/// The reference weight `(1,…,1,0,…,0)` with `m` leading ones.
fn leading_weight(n: usize, m: u32) -> Weight {
    Weight((0..n).map(|i| if (i as u32) < m { 1 } else { 0 }).collect())
}

/// Build coordinates on which a validated symmetric action becomes the pure
/// index permutation `z^A_alpha ∘ I^sigma = z^A_{alpha^sigma}`.
///
/// For each total weight `m`, the frame of the reference weight
/// `beta = (1,…,1,0,…,0)` is corrected by the stabilizer average
/// `z^A_beta = (1/m!(n-m)!) Σ_{sigma ∈ Stab(beta)} y^A ∘ I^sigma` and
/// transported to the other weights of total `m` by averaging over the
/// coset `{sigma : beta^sigma = alpha}`. The change of coordinates is
/// graded-unipotent and inverted exactly.
pub fn nice_coordinates(atlas: &AtlasRef, action: &ActionTable) -> Result<NiceCoordinates> {
    if action.flavor() != Flavor::Symmetric {
        return Err(EngineError::NotSymmetric(
            "nice coordinates require a symmetric action".into(),
        ));
    }
    let report = action.validate(atlas);
    if !report.is_valid() {
        return Err(EngineError::NotSymmetric(format!(
            "action fails validation:\n{report}"
        )));
    }
    let n = action.n();
    let factorial = |k: u32| -> i64 { (1..=k as i64).product::<i64>().max(1) };

    struct ChartPlan {
        new: ChartRef,
        change: PolynomialMap,
    }
    let mut plans: Vec<ChartPlan> = Vec::new();
    for (ci, ch) in atlas.charts().iter().enumerate() {
        let mut coords: Vec<CoordinateSymbol> = Vec::new();
        let mut images: Vec<Polynomial> = Vec::new();
        for &bi in &ch.base_indices() {
            coords.push(ch.coord(bi).clone());
            images.push(Polynomial::coordinate(ch.clone(), bi));
        }
        for m in 1..=(n as u32) {
            let beta = leading_weight(n, m);
            let omega: Vec<usize> = (0..ch.len())
                .filter(|&k| *ch.weight(k) == beta)
                .collect();
            for alpha in binary_weights_of_total(n, m) {
                let count = (0..ch.len()).filter(|&k| *ch.weight(k) == alpha).count();
                if count != omega.len() {
                    return Err(EngineError::NotSymmetric(format!(
                        "{} coordinates of weight {alpha} vs {} of weight {beta} in chart {}",
                        count,
                        omega.len(),
                        ch.name()
                    )));
                }
            }
            let stab: Vec<Perm> = Perm::all(n)
                .into_iter()
                .filter(|s| beta.permuted(s) == beta)
                .collect();
            let stab_size = factorial(m) * factorial(n as u32 - m);
            debug_assert_eq!(stab.len() as i64, stab_size);
            let inv_stab = Coeff::one() / coeff_int(stab_size);

            // stabilizer average of the reference frame
            let mut frame: Vec<Polynomial> = Vec::new();
            for &a in &omega {
                let mut sum = Polynomial::zero(ch.clone());
                for s in &stab {
                    sum = sum.add(action.get(s).expect("complete")[ci].image(a))?;
                }
                frame.push(sum.scale(&inv_stab));
            }

            // orbit transport to every weight of total m
            for alpha in binary_weights_of_total(n, m) {
                let coset: Vec<Perm> = Perm::all(n)
                    .into_iter()
                    .filter(|s| beta.permuted(s) == alpha)
                    .collect();
                for (ai, &a) in omega.iter().enumerate() {
                    let mut sum = Polynomial::zero(ch.clone());
                    for s in &coset {
                        let entry = &action.get(s).expect("complete")[ci];
                        sum = sum.add(&entry.substitute(&frame[ai])?)?;
                    }
                    let value = sum.scale(&inv_stab);
                    let rep_name = &ch.coord(a).name;
                    let name = rep_name.with_replaced_tuple(Some(
                        alpha.0.iter().map(|&v| v as u8).collect(),
                    ));
                    coords.push(CoordinateSymbol::new(
                        name,
                        ch.coord(a).parity,
                        alpha.clone(),
                    ));
                    images.push(value);
                }
            }
        }
        let new = Chart::new(ch.name().clone(), coords)?;
        let change = PolynomialMap::new(ch.clone(), new.clone(), images)?;
        plans.push(ChartPlan { new, change });
    }

    // invert each chart change and conjugate the transitions
    let inverses: Vec<PolynomialMap> = plans
        .iter()
        .map(|p| invert_graded_unipotent(&p.change))
        .collect::<Result<Vec<_>>>()?;
    let chart_pos = |name: &str| atlas.chart_index(name).expect("chart present");
    let transitions = atlas
        .transitions()
        .iter()
        .map(|t| {
            let si = chart_pos(&t.map.source().name().render());
            let ti = chart_pos(&t.map.target().name().render());
            Ok(Transition {
                map: plans[ti]
                    .change
                    .after(&t.map)?
                    .after(&inverses[si])?,
                inverse: plans[si]
                    .change
                    .after(&t.inverse)?
                    .after(&inverses[ti])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let new_atlas = Atlas::new(
        atlas.kind().clone(),
        false,
        plans.iter().map(|p| p.new.clone()).collect(),
        transitions,
        atlas.triples().to_vec(),
    )?
    .with_derived_flag();

    // the induced action is the pure tuple permutation
    let mut table = ActionTable::new(n, Flavor::Symmetric);
    for sigma in Perm::all(n) {
        table.insert(
            sigma.clone(),
            ActionTable::tuple_permutation_entry(&new_atlas, &sigma)?,
        )?;
    }

    let new_ref = Arc::new(new_atlas);
    let change = BundleMorphism::new(
        atlas.clone(),
        new_ref.clone(),
        plans.iter().map(|p| p.change.clone()).collect(),
    )?;
    let change_inverse = BundleMorphism::new(new_ref.clone(), atlas.clone(), inverses)?;
    Ok(NiceCoordinates {
        atlas: Arc::try_unwrap(new_ref).unwrap_or_else(|a| (*a).clone()),
        action: table,
        change,
        change_inverse,
    })
}

/// The equivalence between symmetric and skew-symmetric multi-vector
/// atlases: totally reverse the parity and dress each entry with the
/// reversion-order sign isomorphism, `J^sigma = Phi^sigma ∘ Pi(I^sigma)`.
/// Atlases whose parity equals the total weight come out purely even.
pub fn xi_functor(atlas: &AtlasRef, action: &ActionTable) -> Result<(Atlas, ActionTable)> {
    if action.flavor() != Flavor::Symmetric {
        return Err(EngineError::NotSymmetric(
            "xi expects a symmetric action".into(),
        ));
    }
    let report = action.validate(atlas);
    if !report.is_valid() {
        return Err(EngineError::NotSymmetric(format!(
            "action fails validation:\n{report}"
        )));
    }
    let n = action.n();
    let pi_atlas = Arc::new(total_reversion(atlas)?);
    let mut table = ActionTable::new(n, Flavor::Skew);
    for sigma in Perm::all(n) {
        let i_sigma = action.morphism(atlas, &sigma)?;
        let pi_i = total_reversion_morphism(&i_sigma)?;
        let phi = phi_iso(atlas, &sigma)?;
        let j = phi.after(&pi_i)?;
        let entry = j
            .maps()
            .iter()
            .enumerate()
            .map(|(ci, m)| m.with_target(pi_atlas.chart(ci).clone()))
            .collect();
        table.insert(sigma, entry)?;
    }
    Ok((
        Arc::try_unwrap(pi_atlas).unwrap_or_else(|a| (*a).clone()),
        table,
    ))
}
