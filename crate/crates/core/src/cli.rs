//! Command-line workflow. Every command returns its full output as a string
//! so the binary and the tests share one code path.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::GradedAlgebra;
use crate::bsz::{build_g_simple, omega_partition, verify_omega};
use crate::codim::{check_sandwich, codim_table, exponent_trend, CodimOptions};
use crate::error::{domain, Error, Result};
use crate::exponent::{evaluate_witness, graded_exponent, is_admissible};
use crate::poly::{regev_polynomial, DEFAULT_TERM_CEILING};
use crate::spec::{emit_raw, load_spec, BuiltSpec};

/// Version tag carried by every JSON report.
pub const REPORT_FORMAT: &str = "gradedpi-report/1";

#[derive(Debug, Parser)]
#[command(name = "gradedpi", version, about = "Graded PI-exponents and codimensions of finite-dimensional graded algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the algebra and check its declared decomposition.
    Validate { spec: PathBuf },
    /// Compute the graded exponent with a witness chain.
    Exponent { spec: PathBuf },
    /// Tabulate graded codimensions (CSV unless --json).
    Codim {
        spec: PathBuf,
        #[arg(long)]
        max_n: usize,
        /// Also compute ordinary codimensions.
        #[arg(long)]
        ordinary: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Build the graded-simple algebra of the first `bsz` block.
    Gsimple {
        spec: PathBuf,
        /// Print the raw structure-constant spec instead of a summary.
        #[arg(long)]
        emit: bool,
    },
    /// Build and verify the Ω partition of every modelled block.
    Omega { spec: PathBuf },
    /// Print the Regev central polynomial for d x d matrices.
    Regev {
        #[arg(long)]
        d: usize,
    },
    /// Evaluate the witness polynomial of an admissible chain.
    Witness {
        spec: PathBuf,
        /// 1-based block indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        chain: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// validate, exponent, codim, sandwich and trend in one JSON report.
    Report {
        spec: PathBuf,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn provenance(path: &Path, text: &str) -> Value {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    json!({ "file": name, "sha256": hex::encode(Sha256::digest(text.as_bytes())) })
}

fn algebra_json(a: &GradedAlgebra) -> Value {
    json!({
        "dim": a.dim(),
        "conductor": a.conductor(),
        "group": a.group().orders(),
        "gdims": a.homogeneous_dims(),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn validated(path: &Path) -> Result<(String, BuiltSpec, Value)> {
    let (text, built) = load_spec(path)?;
    let summary = built.validate()?;
    let v = json!({
        "format": REPORT_FORMAT,
        "spec": provenance(path, &text),
        "algebra": algebra_json(&built.algebra),
        "wedderburn": summary,
    });
    Ok((text, built, v))
}

fn exponent_json(built: &BuiltSpec) -> Result<Value> {
    let w = built.require_wedderburn()?;
    let (d, witness) = graded_exponent(&built.algebra, w)?;
    Ok(json!({ "d": d, "witness": witness.map(|w| w.to_json(&built.algebra)) }))
}

fn options(workers: Option<usize>, max_n: usize) -> CodimOptions {
    CodimOptions { max_n: max_n.max(CodimOptions::default().max_n), workers, ..CodimOptions::default() }
}

pub fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Validate { spec } => Ok(pretty(&validated(spec)?.2)),
        Command::Exponent { spec } => {
            let (text, built) = load_spec(spec)?;
            built.validate()?;
            let mut v = exponent_json(&built)?;
            v["format"] = json!(REPORT_FORMAT);
            v["spec"] = provenance(spec, &text);
            Ok(pretty(&v))
        }
        Command::Codim { spec, max_n, ordinary, workers, json } => {
            let (text, built) = load_spec(spec)?;
            let table = codim_table(&built.algebra, *max_n, *ordinary, &options(*workers, *max_n))?;
            if *json {
                Ok(pretty(&json!({
                    "format": REPORT_FORMAT,
                    "spec": provenance(spec, &text),
                    "codim": table,
                })))
            } else {
                Ok(table.to_csv())
            }
        }
        Command::Gsimple { spec, emit } => {
            let (text, built) = load_spec(spec)?;
            let data = built.bsz.first().ok_or_else(|| domain!("{} has no bsz block", spec.display()))?;
            let (a, w) = build_g_simple(data)?;
            if let Err(why) = a.g_simplicity(&w.blocks[0].members)? {
                return Err(Error::Validation(format!("built algebra is not graded simple: {why}")));
            }
            if *emit {
                return Ok(emit_raw(&a, Some(&w)));
            }
            Ok(pretty(&json!({
                "format": REPORT_FORMAT,
                "spec": provenance(spec, &text),
                "algebra": algebra_json(&a),
                "g_simple": true,
                "center_dim": a.center().dim(),
                "m": data.m(),
                "r": data.r(),
                "k": data.k(),
            })))
        }
        Command::Omega { spec } => {
            let (text, built) = load_spec(spec)?;
            let w = built.require_wedderburn()?;
            let mut blocks = Vec::new();
            for (b, block) in w.blocks.iter().enumerate() {
                let Some(model) = &block.model else { continue };
                let om = omega_partition(&model.data);
                let report = verify_omega(&model.data, &om).map_err(|e| Error::Validation(format!("block {}: {e}", b + 1)))?;
                let index: std::collections::HashMap<_, _> = model.assignment.iter().zip(&block.members).collect();
                let sets: Vec<Vec<&str>> = om
                    .sets
                    .iter()
                    .map(|s| s.iter().map(|t| built.algebra.label(*index[t])).collect())
                    .collect();
                blocks.push(json!({ "block": b + 1, "sets": sets, "check": report }));
            }
            if blocks.is_empty() {
                return Err(domain!("{} has no modelled block", spec.display()));
            }
            Ok(pretty(&json!({ "format": REPORT_FORMAT, "spec": provenance(spec, &text), "blocks": blocks })))
        }
        Command::Regev { d } => {
            if *d == 0 {
                return Err(domain!("d must be at least 1"));
            }
            Ok(format!("{}\n", regev_polynomial(*d)?))
        }
        Command::Witness { spec, chain, t } => {
            let (text, built) = load_spec(spec)?;
            built.validate()?;
            let w = built.require_wedderburn()?;
            if chain.iter().any(|&c| c == 0 || c > w.blocks.len()) {
                return Err(domain!("chain indices are 1-based and at most {}", w.blocks.len()));
            }
            let chain: Vec<usize> = chain.iter().map(|c| c - 1).collect();
            let a = &built.algebra;
            let witness = is_admissible(a, w, &chain)?.ok_or_else(|| domain!("the chain is not admissible"))?;
            let ev = evaluate_witness(a, w, &witness, *t, DEFAULT_TERM_CEILING)?;
            let nonzero = !crate::linalg::is_zero_vector(&ev.value);
            if !nonzero {
                return Err(Error::Validation("the witness polynomial vanished at the canonical assignment".into()));
            }
            Ok(pretty(&json!({
                "format": REPORT_FORMAT,
                "spec": provenance(spec, &text),
                "chain": witness.to_json(a),
                "t": t,
                "terms": ev.polynomial.poly.len(),
                "folds": ev.polynomial.folds(),
                "set_sizes": ev.polynomial.set_sizes(),
                "value": a.format_vector(&ev.value),
                "expected": a.format_vector(&ev.expected),
                "factorial_constant": ev.factorial_constant.to_string(),
                "nonzero": nonzero,
            })))
        }
        Command::Report { spec, max_n, workers } => report(spec, *max_n, *workers),
    }
}

/// The full pipeline as one deterministic JSON document.
pub fn report(spec: &Path, max_n: usize, workers: Option<usize>) -> Result<String> {
    let (_, built, mut v) = validated(spec)?;
    let exponent = exponent_json(&built)?;
    let d = exponent["d"].as_u64().unwrap_or(0) as usize;
    let table = codim_table(&built.algebra, max_n, true, &options(workers, max_n))?;
    let sandwich = check_sandwich(&table, built.algebra.group().order())?;
    v["exponent"] = exponent;
    v["trend"] = json!(exponent_trend(&table, d));
    v["codim"] = json!(table);
    v["sandwich"] = json!(sandwich);
    Ok(pretty(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_chain_flag() {
        let cli = Cli::try_parse_from(["gradedpi", "witness", "a.alg", "--chain", "1,2", "--t", "1"]).unwrap();
        match cli.command {
            Command::Witness { chain, t, .. } => assert_eq!((chain, t), (vec![1, 2], 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_flag() {
        assert!(Cli::try_parse_from(["gradedpi", "regev", "--e", "1"]).is_err());
    }

    #[test]
    fn regev_one() {
        assert_eq!(execute(&Command::Regev { d: 1 }).unwrap(), "x1*y1\n");
    }
}
