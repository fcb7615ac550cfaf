use serde_json::{json, Map, Value};

use super::AtlasDocument;
use crate::superalg::{Parity, Polynomial, PolynomialMap};

/// Schema-versioned JSON mirror of a document. Encodes the same polynomial
/// term sets as the DSL (terms in canonical order, reduced fractions);
/// output only.
pub fn emit_json(doc: &AtlasDocument) -> String {
    let a = &doc.atlas;
    let mut charts: Vec<Value> = Vec::new();
    let mut sorted = a.charts().to_vec();
    sorted.sort_by_key(|c| c.name().render());
    for ch in &sorted {
        charts.push(json!({
            "name": ch.name().render(),
            "coords": ch.coords().iter().map(|c| json!({
                "name": c.name.render(),
                "parity": match c.parity { Parity::Even => "even", Parity::Odd => "odd" },
                "weight": c.weight.0,
            })).collect::<Vec<_>>(),
        }));
    }
    let mut transitions: Vec<Value> = a
        .transitions()
        .iter()
        .map(|t| {
            json!({
                "source": t.map.source().name().render(),
                "target": t.map.target().name().render(),
                "images": map_json(&t.map),
                "inverse": map_json(&t.inverse),
            })
        })
        .collect();
    transitions.sort_by_key(|v| {
        (
            v["source"].as_str().unwrap_or_default().to_string(),
            v["target"].as_str().unwrap_or_default().to_string(),
        )
    });

    let mut root = Map::new();
    root.insert("schema".into(), json!("gsa/1"));
    root.insert("kind".into(), json!({ "caps": a.kind().caps() }));
    root.insert("nmanifold".into(), json!(a.nmanifold_flag()));
    root.insert("charts".into(), Value::Array(charts));
    root.insert("transitions".into(), Value::Array(transitions));
    root.insert("triples".into(), json!(a.triples()));
    if let Some(table) = &doc.action {
        root.insert(
            "action".into(),
            json!({
                "flavor": table.flavor().to_string(),
                "entries": table.entries().iter().map(|(sigma, maps)| json!({
                    "sigma": sigma.one_line(),
                    "charts": maps.iter().map(map_json).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }),
        );
    }
    serde_json::to_string_pretty(&Value::Object(root)).expect("serializable") + "\n"
}

/// JSON form of a chart-wise morphism (used by the CLI's rich outputs).
pub fn morphism_json(m: &crate::bundle::BundleMorphism) -> Value {
    Value::Array(
        m.maps()
            .iter()
            .map(|map| {
                json!({
                    "source": map.source().name().render(),
                    "target": map.target().name().render(),
                    "images": map_json(map),
                })
            })
            .collect(),
    )
}

fn map_json(map: &PolynomialMap) -> Value {
    let assigns: Vec<Value> = map
        .images()
        .iter()
        .enumerate()
        .map(|(i, img)| {
            json!({
                "coord": map.target().coord(i).name.render(),
                "terms": poly_json(img),
            })
        })
        .collect();
    Value::Array(assigns)
}

fn poly_json(p: &Polynomial) -> Value {
    let chart = p.chart();
    Value::Array(
        p.terms()
            .into_iter()
            .map(|t| {
                json!({
                    "coeff": format!("{}/{}", t.coeff.numer(), t.coeff.denom()),
                    "factors": t.factors.iter().map(|&(i, e)| {
                        json!([chart.coord(i).name.render(), e])
                    }).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}
