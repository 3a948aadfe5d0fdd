//! Command-line front end: validation, K-theory computation, Postnikov
//! invariant, τ checks, the nerve identification and biexact products as
//! batch commands over JSON descriptions.
//!
//! Exit codes: 0 = success, 1 = a mathematical check failed (a witness is
//! printed), 2 = input or schema error. Reports are byte-stable across runs
//! and parallelism settings.

use crate::sqg::{BiexactPairing, PairingFile};
use crate::squad::{dump_presentation, load_presentation, PresentationDump, SquadPresentation};
use crate::totalcx::identify;
use crate::waldcat::{
    check_tau, d_star, d_star_functor, d_star_homotopy, load_functor, load_transformation,
    CategoryFile, FiniteWaldhausenCategory, FunctorFile, TransformationFile,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "squadkit",
    about = "exact K-theory 1-type computations",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for relation enumeration (results are independent of
    /// this setting).
    #[arg(long, global = true)]
    parallel: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the category tables against the axioms.
    Validate { category: PathBuf },
    /// Generate the stable quadratic module presentation of a category.
    Dstar {
        category: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// K0 of a category (or pi0 of a raw presentation).
    K0 {
        category: Option<PathBuf>,
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// K1 of a category (or pi1 of a raw presentation).
    K1 {
        category: Option<PathBuf>,
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// First Postnikov invariant as a matrix on invariant-factor generators.
    Kinv {
        category: Option<PathBuf>,
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// Verify [τ_{A,A}] = ⟨[A],[A]⟩ for one object.
    CheckTau {
        category: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Run both presentation pipelines and compare the generated relations.
    NerveCompare { category: PathBuf },
    /// Verify a biexact pairing and print the induced K-theory products.
    Product {
        cat_c: PathBuf,
        cat_d: PathBuf,
        cat_e: PathBuf,
        #[arg(long)]
        pairing: PathBuf,
    },
    /// Check the homotopy induced by a natural weak equivalence between two
    /// exact functors.
    HomotopyCheck {
        cat_c: PathBuf,
        cat_d: PathBuf,
        /// Two functor files, comma separated.
        #[arg(long, value_delimiter = ',')]
        functors: Vec<PathBuf>,
        #[arg(long)]
        transformation: PathBuf,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

enum CliError {
    Input(String),
    Check(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT_ERROR,
            CliError::Check(_) => EXIT_CHECK_FAILED,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Check(m) => m,
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn check_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Check(e.to_string())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&data)
        .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

fn load_category(path: &Path) -> Result<FiniteWaldhausenCategory, CliError> {
    let file: CategoryFile = read_json(path)?;
    FiniteWaldhausenCategory::from_file(&file).map_err(input_err)
}

fn presentation_of(
    category: &Option<PathBuf>,
    presentation: &Option<PathBuf>,
) -> Result<Arc<SquadPresentation>, CliError> {
    match (category, presentation) {
        (Some(path), None) => {
            let cat = load_category(path)?;
            let d = d_star(&cat).map_err(check_err)?;
            Ok(d.presentation)
        }
        (None, Some(path)) => {
            let dump: PresentationDump = read_json(path)?;
            load_presentation(&dump).map(Arc::new).map_err(input_err)
        }
        _ => Err(CliError::Input(
            "pass exactly one of <category> or --presentation <file>".into(),
        )),
    }
}

fn matrix_lines(label: &str, columns: &[Vec<BigInt>]) -> Vec<String> {
    let mut out = Vec::new();
    if columns.is_empty() {
        out.push(format!("{}: zero map (trivial source)", label));
        return out;
    }
    for (j, col) in columns.iter().enumerate() {
        let entries: Vec<String> = col.iter().map(|x| x.to_string()).collect();
        out.push(format!("{}[{}] = [{}]", label, j, entries.join(", ")));
    }
    out
}

fn emit(format: Format, text: String, json: serde_json::Value) {
    match format {
        Format::Text => println!("{}", text.trim_end()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("serializable")),
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Validate { category } => {
            let cat = load_category(category)?;
            let report = cat.validate();
            emit(
                cli.format,
                report.render(),
                serde_json::json!({
                    "command": "validate",
                    "valid": report.is_valid(),
                    "violations": report.violations,
                    "notes": report.notes,
                }),
            );
            if report.is_valid() {
                Ok(())
            } else {
                Err(CliError::Check("category failed validation".into()))
            }
        }
        Command::Dstar { category, out } => {
            let cat = load_category(category)?;
            let d = d_star(&cat).map_err(check_err)?;
            let dump = dump_presentation(&d.presentation);
            let rendered = serde_json::to_string_pretty(&dump).expect("presentation serializes");
            match out {
                Some(path) => std::fs::write(path, rendered + "\n")
                    .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))?,
                None => println!("{}", rendered),
            }
            Ok(())
        }
        Command::K0 { category, presentation } => {
            let p = presentation_of(category, presentation)?;
            let g = &p.pi0().group;
            emit(
                cli.format,
                format!("pi0: {}", g.describe()),
                serde_json::json!({
                    "command": "k0",
                    "pi0": g.describe(),
                    "invariantFactors":
                        g.invariant_factors().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }),
            );
            Ok(())
        }
        Command::K1 { category, presentation } => {
            let p = presentation_of(category, presentation)?;
            let (g, _) = p.pi1();
            emit(
                cli.format,
                format!("pi1: {}", g.describe()),
                serde_json::json!({
                    "command": "k1",
                    "pi1": g.describe(),
                    "invariantFactors":
                        g.invariant_factors().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }),
            );
            Ok(())
        }
        Command::Kinv { category, presentation } => {
            let p = presentation_of(category, presentation)?;
            let k = p.k_invariant().map_err(check_err)?;
            let text = matrix_lines("k", &k).join("\n");
            let cols: Vec<Vec<String>> =
                k.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect();
            emit(
                cli.format,
                format!(
                    "pi0: {}\npi1: {}\n{}",
                    p.pi0().group.describe(),
                    p.pi1().0.describe(),
                    text
                ),
                serde_json::json!({
                    "command": "kinv",
                    "pi0": p.pi0().group.describe(),
                    "pi1": p.pi1().0.describe(),
                    "columns": cols,
                }),
            );
            Ok(())
        }
        Command::CheckTau { category, object } => {
            let cat = load_category(category)?;
            let a = cat.object_index(object).map_err(input_err)?;
            let d = d_star(&cat).map_err(check_err)?;
            let ok = check_tau(&cat, &d, a).map_err(check_err)?;
            emit(
                cli.format,
                format!("tau check for {}: {}", object, if ok { "PASS" } else { "FAIL" }),
                serde_json::json!({"command": "check-tau", "object": object, "ok": ok}),
            );
            if ok {
                Ok(())
            } else {
                Err(CliError::Check(format!(
                    "[τ] differs from the bracket square of [{}] in the presented module",
                    object
                )))
            }
        }
        Command::NerveCompare { category } => {
            let cat = load_category(category)?;
            let report = identify(&cat).map_err(check_err)?;
            emit(
                cli.format,
                report.render_text(),
                serde_json::to_value(&report).expect("report serializes"),
            );
            if report.matched {
                Ok(())
            } else {
                Err(CliError::Check(
                    report.first_failure.clone().unwrap_or_else(|| "mismatch".into()),
                ))
            }
        }
        Command::Product { cat_c, cat_d, cat_e, pairing } => {
            let cc = load_category(cat_c)?;
            let cd = load_category(cat_d)?;
            let ce = load_category(cat_e)?;
            let file: PairingFile = read_json(pairing)?;
            let dc = d_star(&cc).map_err(check_err)?;
            let dd = d_star(&cd).map_err(check_err)?;
            let de = d_star(&ce).map_err(check_err)?;
            let pairing =
                BiexactPairing::new(&cc, &cd, &ce, &dc, &dd, &de, &file).map_err(check_err)?;
            pairing.verify().map_err(check_err)?;
            let prods = pairing.k_products().map_err(check_err)?;
            let mut text = vec!["pairing cells: PASS".to_string()];
            text.extend(matrix_lines("K0⊗K0", &prods.k0_k0));
            text.extend(matrix_lines("K0⊗K1", &prods.k0_k1));
            text.extend(matrix_lines("K1⊗K0", &prods.k1_k0));
            let dump = |m: &Vec<Vec<BigInt>>| -> Vec<Vec<String>> {
                m.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect()
            };
            emit(
                cli.format,
                text.join("\n"),
                serde_json::json!({
                    "command": "product",
                    "cells": "pass",
                    "k0k0": dump(&prods.k0_k0),
                    "k0k1": dump(&prods.k0_k1),
                    "k1k0": dump(&prods.k1_k0),
                }),
            );
            Ok(())
        }
        Command::HomotopyCheck { cat_c, cat_d, functors, transformation } => {
            if functors.len() != 2 {
                return Err(CliError::Input("--functors takes exactly two files".into()));
            }
            let cc = load_category(cat_c)?;
            let cd = load_category(cat_d)?;
            let ffile: FunctorFile = read_json(&functors[0])?;
            let gfile: FunctorFile = read_json(&functors[1])?;
            let tfile: TransformationFile = read_json(transformation)?;
            let f = load_functor(&cc, &cd, &ffile).map_err(check_err)?;
            let g = load_functor(&cc, &cd, &gfile).map_err(check_err)?;
            let eps = load_transformation(&cc, &cd, &f, &g, &tfile).map_err(check_err)?;
            let dc = d_star(&cc).map_err(check_err)?;
            let dd = d_star(&cd).map_err(check_err)?;
            let mf = d_star_functor(&cc, &cd, &f, &dc, &dd).map_err(check_err)?;
            let mg = d_star_functor(&cc, &cd, &g, &dc, &dd).map_err(check_err)?;
            d_star_homotopy(&cc, &eps, &dc, &dd, &mf, &mg).map_err(check_err)?;
            emit(
                cli.format,
                "functor morphisms: PASS\ninduced homotopy laws: PASS".to_string(),
                serde_json::json!({"command": "homotopy-check", "ok": true}),
            );
            Ok(())
        }
    }
}

/// Entry point; returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT_ERROR,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.parallel {
        // Enumerations merge deterministically, so the thread count never
        // changes output.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}
