//! The `.gsa` atlas DSL: parser, canonical emitter, and JSON mirror.
//!
//! A document declares a bundle kind, charts with weighted/parity-tagged
//! coordinates, transitions with declared inverses, optional overlap
//! triples for cocycle checking, and optional symmetric-group action
//! blocks:
//!
//! ```text
//! kind nweighted degree 2;
//! nmanifold;
//!
//! chart U {
//!   x @(0) even;
//!   xi1 @(1) odd;
//!   xi2 @(1) odd;
//!   z @(2) even;
//! }
//! chart V { ... }
//!
//! transition U -> V {
//!   z = z + xi1*xi2;      # unassigned coordinates default to themselves
//!   inverse {
//!     z = z - xi1*xi2;
//!   }
//! }
//! triple U V W;
//!
//! flavor symmetric;
//! action sigma (2 1) {
//!   chart U { z@(1,1) -> z@(1,1); }
//! }
//! ```
//!
//! Coordinates whose identity carries a weight tuple (functor outputs such
//! as `z@(1,1)` or reversal-marked `z@(1,1)~p1`) may omit the redundant
//! weight annotation. Parsing never panics; every rejection carries a
//! line/column position. Emission is canonical: `emit ∘ parse ∘ emit =
//! emit` and identical documents produce byte-identical output.

mod emit;
mod json;
mod lex;
mod parse;

pub use emit::emit_dsl;
pub use json::{emit_json, morphism_json};
pub use lex::{ParseError, Pos};
pub use parse::{parse_document, parse_polynomial};

use crate::bundle::Atlas;
use crate::symmetry::ActionTable;

/// A parsed `.gsa` document.
#[derive(Debug, Clone)]
pub struct AtlasDocument {
    pub atlas: Atlas,
    pub action: Option<ActionTable>,
}

impl AtlasDocument {
    pub fn new(atlas: Atlas, action: Option<ActionTable>) -> Self {
        AtlasDocument { atlas, action }
    }
}

/// Output encodings of a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Dsl,
    Json,
}

impl OutputFormat {
    pub fn emit(self, doc: &AtlasDocument) -> String {
        match self {
            OutputFormat::Dsl => emit_dsl(doc),
            OutputFormat::Json => emit_json(doc),
        }
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dsl" => Ok(OutputFormat::Dsl),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected dsl or json)")),
        }
    }
}

#[cfg(test)]
mod tests;
