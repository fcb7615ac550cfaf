use super::AtlasDocument;
use crate::bundle::Transition;
use crate::superalg::{Chart, PolynomialMap};

/// Canonical DSL emission: sorted charts, transitions, triples, and action
/// entries; coordinate declarations in chart order; polynomial terms in
/// canonical order with reduced fractions. `emit ∘ parse ∘ emit = emit`.
pub fn emit_dsl(doc: &AtlasDocument) -> String {
    let a = &doc.atlas;
    let mut out = String::new();
    out.push_str(&format!("kind {};\n", a.kind()));
    if a.nmanifold_flag() {
        out.push_str("nmanifold;\n");
    }

    let mut charts: Vec<&Chart> = a.charts().iter().map(|c| c.as_ref()).collect();
    charts.sort_by_key(|c| c.name().render());
    for ch in &charts {
        out.push('\n');
        out.push_str(&format!("chart {} {{\n", ch.name()));
        for c in ch.coords() {
            let name_tuple_is_weight = c
                .name
                .tuple
                .as_ref()
                .map(|t| {
                    t.len() == c.weight.slots()
                        && t.iter().zip(&c.weight.0).all(|(&a, &b)| a as u32 == b)
                })
                .unwrap_or(false);
            if name_tuple_is_weight {
                out.push_str(&format!("  {} {};\n", c.name, c.parity));
            } else {
                out.push_str(&format!("  {} @{} {};\n", c.name, c.weight, c.parity));
            }
        }
        out.push_str("}\n");
    }

    let mut transitions: Vec<&Transition> = a.transitions().iter().collect();
    transitions.sort_by_key(|t| {
        (
            t.map.source().name().render(),
            t.map.target().name().render(),
        )
    });
    for t in &transitions {
        out.push('\n');
        out.push_str(&format!(
            "transition {} -> {} {{\n",
            t.map.source().name(),
            t.map.target().name()
        ));
        emit_assignments(&mut out, &t.map, "  ", " = ");
        out.push_str("  inverse {\n");
        emit_assignments(&mut out, &t.inverse, "    ", " = ");
        out.push_str("  }\n}\n");
    }

    let mut triples = a.triples().to_vec();
    triples.sort();
    for [x, y, z] in &triples {
        out.push_str(&format!("triple {x} {y} {z};\n"));
    }

    if let Some(table) = &doc.action {
        out.push('\n');
        out.push_str(&format!("flavor {};\n", table.flavor()));
        for (sigma, maps) in table.entries() {
            out.push('\n');
            out.push_str(&format!(
                "action sigma ({}) {{\n",
                sigma
                    .one_line()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            for m in maps {
                out.push_str(&format!("  chart {} {{\n", m.source().name()));
                emit_assignments(&mut out, m, "    ", " -> ");
                out.push_str("  }\n");
            }
            out.push_str("}\n");
        }
    }
    out
}

fn emit_assignments(out: &mut String, map: &PolynomialMap, indent: &str, op: &str) {
    for (i, img) in map.images().iter().enumerate() {
        out.push_str(&format!(
            "{indent}{}{op}{};\n",
            map.target().coord(i).name,
            img
        ));
    }
}
