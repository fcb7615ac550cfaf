//! Command-line driver: parse a `.gsa` document, run one atlas
//! transformation or a law suite, and emit the result.
//!
//! Exit codes are scriptable: 0 success, 2 validation failure (including
//! semantically unusable inputs), 3 parse error, 4 internal invariant
//! violation, 1 usage or I/O error.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use crate::bundle::Atlas;
use crate::dsl::{emit_dsl, emit_json, parse_document, AtlasDocument, OutputFormat};
use crate::error::EngineError;
use crate::laws::{run_suite, suite_names, SuiteOptions};
use crate::parity::reverse_parity;
use crate::perm::Perm;
use crate::polar::{desuperize, diagonalize_atlas, polarize};
use crate::symmetry::nice_coordinates;
use crate::tangent::iterated_tangent;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// One invocation of the driver.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
    pub n_max: Option<usize>,
    pub degree_max: Option<u32>,
    pub slots: Option<Vec<usize>>,
    pub perm: Option<Vec<usize>>,
    pub multiplicity: Option<usize>,
    pub suite: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Tangent,
    Polarize,
    ReverseParity,
    Flip,
    NiceCoords,
    Desuperize,
    Diagonalize,
    CheckLaws,
    Help,
}

const USAGE: &str = "\
usage: gsa <command> [options] [file]

commands:
  validate <file>               structural validation report (exit 2 on failure)
  tangent <file>                tangent prolongation of the atlas
  polarize <file>               polarization into a symmetric n-vector atlas
                                  [--multiplicity N] (default: the degree)
  reverse-parity <file>         parity reversion [--slots 1,2] (default: all,
                                  applied left to right)
  flip <file> --perm \"2 1 3\"    iterated tangent with the flip action of the
                                  given permutation, validated
  nice-coords <file>            rebuild coordinates so the declared symmetric
                                  action becomes the index permutation
  diagonalize <file>            collapse a symmetric multi-vector atlas to its
                                  weighted fixed locus
  desuperize <file>             polarize + parity reversion: the skew
                                  multi-vector image of a weighted atlas
  check-laws                    run randomized law suites
                                  [--suite NAME|all] [--seed S] [--count C]
                                  [--n-max K] [--degree-max D]

options:
  -o, --output FILE             write the document here instead of stdout
  --format dsl|json             output encoding (default dsl)

The GSA_SEED environment variable supplies the default seed.
";

pub fn parse_args(args: &[String]) -> Result<RunConfig, String> {
    let mut cfg = RunConfig {
        command: Command::Help,
        inputs: Vec::new(),
        format: OutputFormat::Dsl,
        out: None,
        seed: None,
        count: None,
        n_max: None,
        degree_max: None,
        slots: None,
        perm: None,
        multiplicity: None,
        suite: None,
    };
    let mut it = args.iter().peekable();
    let cmd = match it.next() {
        Some(c) => c.as_str(),
        None => return Ok(cfg),
    };
    cfg.command = match cmd {
        "validate" => Command::Validate,
        "tangent" => Command::Tangent,
        "polarize" => Command::Polarize,
        "reverse-parity" => Command::ReverseParity,
        "flip" => Command::Flip,
        "nice-coords" => Command::NiceCoords,
        "desuperize" => Command::Desuperize,
        "diagonalize" => Command::Diagonalize,
        "check-laws" => Command::CheckLaws,
        "help" | "--help" | "-h" => Command::Help,
        other => return Err(format!("unknown subcommand `{other}`")),
    };
    while let Some(arg) = it.next() {
        let mut value_for = |name: &str| -> Result<String, String> {
            it.next()
                .cloned()
                .ok_or_else(|| format!("{name} needs a value"))
        };
        match arg.as_str() {
            "-o" | "--output" => cfg.out = Some(PathBuf::from(value_for(arg)?)),
            "--format" => {
                cfg.format = value_for(arg)?.parse::<OutputFormat>()?;
            }
            "--seed" => {
                cfg.seed = Some(
                    value_for(arg)?
                        .parse()
                        .map_err(|_| "--seed needs an integer".to_string())?,
                )
            }
            "--count" => {
                cfg.count = Some(
                    value_for(arg)?
                        .parse()
                        .map_err(|_| "--count needs an integer".to_string())?,
                )
            }
            "--n-max" => {
                cfg.n_max = Some(
                    value_for(arg)?
                        .parse()
                        .map_err(|_| "--n-max needs an integer".to_string())?,
                )
            }
            "--degree-max" => {
                cfg.degree_max = Some(
                    value_for(arg)?
                        .parse()
                        .map_err(|_| "--degree-max needs an integer".to_string())?,
                )
            }
            "--multiplicity" => {
                cfg.multiplicity = Some(
                    value_for(arg)?
                        .parse()
                        .map_err(|_| "--multiplicity needs an integer".to_string())?,
                )
            }
            "--suite" => cfg.suite = Some(value_for(arg)?),
            "--slots" => {
                let v = value_for(arg)?;
                let slots = v
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| "--slots needs a comma-separated list".to_string())?;
                cfg.slots = Some(slots);
            }
            "--perm" => {
                let v = value_for(arg)?;
                let perm = v
                    .split_whitespace()
                    .flat_map(|chunk| chunk.split(','))
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| "--perm needs numbers like \"2 1 3\"".to_string())?;
                cfg.perm = Some(perm);
            }
            other if !other.starts_with('-') => cfg.inputs.push(PathBuf::from(other)),
            other => return Err(format!("unknown option `{other}`")),
        }
    }
    Ok(cfg)
}

fn engine_exit(e: &EngineError) -> i32 {
    match e {
        EngineError::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

fn load(cfg: &RunConfig, stderr: &mut dyn Write) -> Result<AtlasDocument, i32> {
    let path = match cfg.inputs.first() {
        Some(p) => p,
        None => {
            let _ = writeln!(stderr, "error: this command needs an input file");
            return Err(EXIT_USAGE);
        }
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot read {}: {e}", path.display());
            return Err(EXIT_USAGE);
        }
    };
    parse_document(&text).map_err(|e| {
        let _ = writeln!(stderr, "{}: {e}", path.display());
        EXIT_PARSE
    })
}

fn write_doc(
    cfg: &RunConfig,
    doc: &AtlasDocument,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let text = match cfg.format {
        OutputFormat::Dsl => emit_dsl(doc),
        OutputFormat::Json => emit_json(doc),
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
            EXIT_OK
        }
    }
}

fn require_valid(atlas: &Atlas, stderr: &mut dyn Write) -> Result<(), i32> {
    let rep = atlas.validate();
    if rep.is_valid() {
        Ok(())
    } else {
        let _ = writeln!(stderr, "input atlas fails validation:\n{rep}");
        Err(EXIT_INVALID)
    }
}

/// Execute one configuration; returns the process exit code.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match cfg.command {
        Command::Help => {
            let _ = stdout.write_all(USAGE.as_bytes());
            EXIT_OK
        }
        Command::Validate => {
            let doc = match load(cfg, stderr) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let mut rep = doc.atlas.validate();
            if let Some(table) = &doc.action {
                rep.merge(table.validate(&Arc::new(doc.atlas.clone())));
            }
            let _ = writeln!(stdout, "{rep}");
            if rep.is_valid() {
                EXIT_OK
            } else {
                EXIT_INVALID
            }
        }
        Command::Tangent => {
            let doc = match load(cfg, stderr) {
                Ok(d) => d,
                Err(code) => return code,
            };
            if let Err(code) = require_valid(&doc.atlas, stderr) {
                return code;
            }
            match crate::tangent::tangent_of_atlas(&doc.atlas) {
                Ok(t) => write_doc(cfg, &AtlasDocument::new(t, None), stdout, stderr),
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    engine_exit(&e)
                }
            }
        }
        Command::Polarize => {
            let doc = match load(cfg, stderr) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let n = cfg
                .multiplicity
                .or_else(|| doc.atlas.kind().degree().map(|d| d as usize));
            let n = match n {
                Some(n) if n >= 1 => n,
                _ => {
                    let _ = writeln!(stderr, "error: polarization needs a positive multiplicity");
                    return EXIT_INVALID;
                }
            };
            match polarize(&doc.atlas, n) {
                Ok(p) => write_doc(
                    cfg,
                    &AtlasDocument::new((*p.atlas).clone(), Some(p.action.clone())),
                    stdout,
                    stderr,
                ),
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    engine_exit(&e)
                }
            }
        }
        Command::ReverseParity => {
            let doc = match load(cfg, stderr) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let slots = cfg
                .slots
                .clone()
                .unwrap_or_else(|| (1..=doc.atlas.kind().slots()).rev().collect());
            let mut acc = doc.atlas;
            for slot in slots {
                acc = match reverse_parity(&acc, slot) {
                    Ok(a) => a,
                    Err(e) => {
                        let _ = writeln!(stderr, "error: {e}");
                        return engine_exit(&e);
                    }
                };
            }
            write_doc(cfg, &AtlasDocument::new(acc, None), stdout, stderr)
        }
        Command::Flip => {
            let doc = match load(cfg, stderr) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let sigma = match cfg.perm.clone().map(Perm::new) {
                Some(Ok(p)) => p,
                Some(Err(e)) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_USAGE;
                }
                None => {
                    let _ = writeln!(stderr, "error: flip needs --perm");
                    return EXIT_USAGE;
                }
            };
            if let Err(code) = require_valid(&doc.atlas, stderr) {
                return code;
            }
            let it = match iterated_tangent(&doc.atlas, sigma.len()) {
                Ok(it) => it,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return engine_exit(&e);
                }
            };
            let morphism = match crate::tangent::flip_action(&it, &sigma) {
                Ok(m) => m,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return engine_exit(&e);
                }
            };
            let rep = morphism.check();
            if !rep.is_valid() {
                let _ = writeln!(stderr, "flip fails validation:\n{rep}");
                return EXIT_INVALID;
            }
            write_doc(
                cfg,
                &AtlasDocument::new((*it.atlas).clone(), Some(it.flips.clone())),
                stdout,
                stderr,
            )
        }
        Command::NiceCoords => {
            let doc = match load(cfg, stderr) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let table = match &doc.action {
                Some(t) => t,
                None => {
                    let _ = writeln!(stderr, "error: nice-coords needs action blocks");
                    return EXIT_INVALID;
                }
            };
            match nice_coordinates(&Arc::new(doc.atlas.clone()), table) {
                Ok(nice) => {
                    if cfg.format == OutputFormat::Json {
                        // rich output: document plus the change of coordinates
                        let doc_out =
                            AtlasDocument::new(nice.atlas.clone(), Some(nice.action.clone()));
                        let mut v: serde_json::Value =
                            serde_json::from_str(&emit_json(&doc_out)).expect("own output");
                        v["change_of_coordinates"] =
                            crate::dsl::morphism_json(&nice.change);
                        v["change_inverse"] =
                            crate::dsl::morphism_json(&nice.change_inverse);
                        let text =
                            serde_json::to_string_pretty(&v).expect("serializable") + "\n";
                        match &cfg.out {
                            Some(path) => {
                                if let Err(e) = std::fs::write(path, text) {
                                    let _ = writeln!(
                                        stderr,
                                        "error: cannot write {}: {e}",
                                        path.display()
                                    );
                                    return EXIT_USAGE;
                                }
                                EXIT_OK
                            }
                            None => {
                                let _ = stdout.write_all(text.as_bytes());
                                EXIT_OK
                            }
                        }
                    } else {
                        write_doc(
                            cfg,
                            &AtlasDocument::new(nice.atlas, Some(nice.action)),
                            stdout,
                            stderr,
                        )
                    }
                }
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    engine_exit(&e)
                }
            }
        }
        Command::Diagonalize => {
            let doc = match load(cfg, stderr) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let table = match &doc.action {
                Some(t) => t,
                None => {
                    let _ = writeln!(stderr, "error: diagonalize needs action blocks");
                    return EXIT_INVALID;
                }
            };
            match diagonalize_atlas(&Arc::new(doc.atlas.clone()), table) {
                Ok(d) => write_doc(cfg, &AtlasDocument::new(d.atlas, None), stdout, stderr),
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    engine_exit(&e)
                }
            }
        }
        Command::Desuperize => {
            let doc = match load(cfg, stderr) {
                Ok(d) => d,
                Err(code) => return code,
            };
            match desuperize(&doc.atlas) {
                Ok(d) => write_doc(
                    cfg,
                    &AtlasDocument::new(d.atlas, Some(d.action)),
                    stdout,
                    stderr,
                ),
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    engine_exit(&e)
                }
            }
        }
        Command::CheckLaws => {
            let seed = cfg
                .seed
                .or_else(|| {
                    std::env::var("GSA_SEED")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(0);
            let mut opts = SuiteOptions::new(seed);
            opts.count = cfg.count;
            opts.n_max = cfg.n_max;
            opts.degree_max = cfg.degree_max;
            let which: Vec<&str> = match cfg.suite.as_deref() {
                None | Some("all") => suite_names().to_vec(),
                Some(name) => vec![name],
            };
            let mut all_ok = true;
            for name in which {
                match run_suite(name, &opts) {
                    Some(outcome) => {
                        let _ = writeln!(stdout, "{outcome}");
                        all_ok &= outcome.passed();
                    }
                    None => {
                        let _ = writeln!(
                            stderr,
                            "error: unknown suite `{name}` (have: {})",
                            suite_names().join(", ")
                        );
                        return EXIT_USAGE;
                    }
                }
            }
            let _ = writeln!(
                stdout,
                "laws: {} (seed {seed})",
                if all_ok { "pass" } else { "FAIL" }
            );
            if all_ok {
                EXIT_OK
            } else {
                EXIT_INVALID
            }
        }
    }
}

/// Entry point used by the binary.
pub fn main_with(args: Vec<String>) -> i32 {
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    match parse_args(&args) {
        Ok(cfg) => run(&cfg, &mut stdout, &mut stderr),
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}\n\n{USAGE}");
            EXIT_USAGE
        }
    }
}
