use super::Atlas;
use crate::superalg::{ParityClass, PolynomialMap, WeightClass};

/// Findings of a structural validation pass. Failures are entries, not
/// errors: callers inspect [`ValidationReport::is_valid`] and render the
/// full report when needed.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    entries: Vec<CheckEntry>,
}

#[derive(Debug, Clone)]
pub struct CheckEntry {
    pub scope: String,
    pub check: String,
    pub ok: bool,
    pub detail: String,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport::default()
    }

    pub fn record(
        &mut self,
        scope: impl Into<String>,
        check: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
    ) {
        self.entries.push(CheckEntry {
            scope: scope.into(),
            check: check.into(),
            ok,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, scope: impl Into<String>, check: impl Into<String>) {
        self.record(scope, check, true, "");
    }

    pub fn fail(
        &mut self,
        scope: impl Into<String>,
        check: impl Into<String>,
        detail: impl Into<String>,
    ) {
        self.record(scope, check, false, detail);
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }

    pub fn is_valid(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.ok)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.entries.extend(other.entries);
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for e in &self.entries {
            write!(
                f,
                "[{}] {}: {}",
                if e.ok { "ok" } else { "FAIL" },
                e.scope,
                e.check
            )?;
            if !e.detail.is_empty() {
                write!(f, " — {}", e.detail)?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{} checks, {} failed",
            self.entries.len(),
            self.entries.iter().filter(|e| !e.ok).count()
        )
    }
}

impl Atlas {
    /// Full structural validation: kind conformance of all weights, the
    /// parity/weight agreement when the N-manifold flag is set, per-transition
    /// homogeneity, parity preservation, base triangularity and inverse round
    /// trips, commutation of the slot Euler fields, and cocycle consistency
    /// on every declared overlap triple.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        self.validate_kinds(&mut rep);
        self.validate_transitions(&mut rep);
        self.validate_euler_brackets(&mut rep);
        self.validate_cocycles(&mut rep);
        rep
    }

    fn validate_kinds(&self, rep: &mut ValidationReport) {
        for ch in self.charts() {
            let scope = format!("chart {}", ch.name());
            let mut ok = true;
            for c in ch.coords() {
                for (slot, (&w, &cap)) in c.weight.0.iter().zip(self.kind().caps()).enumerate() {
                    if w > cap {
                        ok = false;
                        rep.fail(
                            &scope,
                            "kind",
                            format!(
                                "coordinate `{}` has weight {} in slot {} (cap {})",
                                c.name,
                                w,
                                slot + 1,
                                cap
                            ),
                        );
                    }
                }
            }
            if ok {
                rep.pass(&scope, "kind");
            }
            if self.nmanifold_flag() {
                let mut ok = true;
                for c in ch.coords() {
                    if c.parity != c.weight.induced_parity() {
                        ok = false;
                        rep.fail(
                            &scope,
                            "parity-weight agreement",
                            format!("coordinate `{}` breaks parity = |weight| mod 2", c.name),
                        );
                    }
                }
                if ok {
                    rep.pass(&scope, "parity-weight agreement");
                }
            }
        }
    }

}

/// Weight homogeneity, parity preservation, and base triangularity of one
/// polynomial map, judged against its own target-chart metadata.
pub(crate) fn validate_map_homogeneity(
    rep: &mut ValidationReport,
    scope: &str,
    map: &PolynomialMap,
) {
        let tgt = map.target();
        let mut hom_ok = true;
        let mut par_ok = true;
        let mut base_ok = true;
        for (i, img) in map.images().iter().enumerate() {
            let c = tgt.coord(i);
            let (wc, pc) = img.weight_and_parity();
            if !wc.admits(&c.weight) {
                hom_ok = false;
                let found = match wc {
                    WeightClass::Homogeneous(w) => format!("weight {w}"),
                    WeightClass::Inhomogeneous => "inhomogeneous".into(),
                    WeightClass::Any => unreachable!("wildcard admits everything"),
                };
                rep.fail(
                    scope,
                    "homogeneity",
                    format!("image of `{}` (weight {}) is {}", c.name, c.weight, found),
                );
            }
            if !pc.admits(c.parity) {
                par_ok = false;
                let found = match pc {
                    ParityClass::Homogeneous(p) => format!("{p}"),
                    ParityClass::Mixed => "of mixed parity".into(),
                    ParityClass::Any => unreachable!("wildcard admits everything"),
                };
                rep.fail(
                    scope,
                    "parity",
                    format!("image of `{}` ({}) is {}", c.name, c.parity, found),
                );
            }
            if c.weight.is_zero() {
                let src = map.source();
                let base_only = img.terms().iter().all(|t| {
                    t.factors
                        .iter()
                        .all(|&(j, _)| src.weight(j).is_zero())
                });
                if !base_only {
                    base_ok = false;
                    rep.fail(
                        scope,
                        "base triangularity",
                        format!("image of base coordinate `{}` leaves the base", c.name),
                    );
                }
            }
        }
        if hom_ok {
            rep.pass(scope, "homogeneity");
        }
        if par_ok {
            rep.pass(scope, "parity");
        }
        if base_ok {
            rep.pass(scope, "base triangularity");
        }
}

impl Atlas {
    fn validate_transitions(&self, rep: &mut ValidationReport) {
        for t in self.transitions() {
            let scope = format!(
                "transition {} -> {}",
                t.map.source().name(),
                t.map.target().name()
            );
            validate_map_homogeneity(rep, &scope, &t.map);
            validate_map_homogeneity(rep, &format!("{scope} (inverse)"), &t.inverse);
            match (t.map.after(&t.inverse), t.inverse.after(&t.map)) {
                (Ok(fwd), Ok(bwd)) => {
                    let ok = fwd.is_identity() && bwd.is_identity();
                    rep.record(
                        &scope,
                        "inverse roundtrip",
                        ok,
                        if ok {
                            String::new()
                        } else {
                            "declared inverse does not invert the transition".into()
                        },
                    );
                }
                _ => rep.fail(&scope, "inverse roundtrip", "charts do not line up"),
            }
        }
    }

    fn validate_euler_brackets(&self, rep: &mut ValidationReport) {
        let n = self.kind().slots();
        if n < 2 {
            return;
        }
        for (ci, ch) in self.charts().iter().enumerate() {
            let scope = format!("chart {}", ch.name());
            let fields: Vec<_> = (1..=n).map(|s| self.weight_field(ci, Some(s))).collect();
            let mut ok = true;
            for i in 0..n {
                for j in (i + 1)..n {
                    match fields[i].bracket(&fields[j]) {
                        Ok(b) if b.is_zero() => {}
                        _ => {
                            ok = false;
                            rep.fail(
                                &scope,
                                "commuting weight fields",
                                format!("slots {} and {} do not commute", i + 1, j + 1),
                            );
                        }
                    }
                }
            }
            if ok {
                rep.pass(&scope, "commuting weight fields");
            }
        }
    }

    fn validate_cocycles(&self, rep: &mut ValidationReport) {
        for [a, b, c] in self.triples() {
            let scope = format!("triple {a} {b} {c}");
            let (tab, tbc, tac) = (
                self.transition_between(a, b),
                self.transition_between(b, c),
                self.transition_between(a, c),
            );
            match (tab, tbc, tac) {
                (Some(tab), Some(tbc), Some(tac)) => match tbc.map.after(&tab.map) {
                    Ok(composite) => {
                        let ok = composite == tac.map;
                        rep.record(
                            &scope,
                            "cocycle",
                            ok,
                            if ok {
                                String::new()
                            } else {
                                "composite transition differs from the declared one".into()
                            },
                        );
                    }
                    Err(e) => rep.fail(&scope, "cocycle", e.to_string()),
                },
                _ => rep.fail(
                    &scope,
                    "cocycle",
                    "missing one of the three transitions",
                ),
            }
        }
    }

}
