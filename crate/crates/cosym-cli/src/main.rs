//! Command-line front end for the exact co-symplectic/formality toolkit.
//!
//! Exit codes: 0 = the command ran and produced a verdict (including
//! NOT_EXISTS and NON_FORMAL — verdicts are results, not errors);
//! 1 = catalog expectations failed; 2 = parse/schema/usage error;
//! 3 = mathematical invalidity (Jacobi failure, d² ≠ 0, spec validation).

use clap::{Parser, Subcommand, ValueEnum};
use cosym_core::catalog;
use cosym_core::cdga::Cdga;
use cosym_core::liealg::{self, CosymplecticExistence, LieAlgebra, SymplecticDerivationData};
use cosym_core::mapping_torus::{self, MappingTorusSpec, Verdict};
use cosym_core::massey::{self, Cocycle};
use cosym_core::rational::display;
use cosym_cli::parse::{self, parse_document, parse_element, Document, ParseError};
use cosym_cli::print;
use cosym_cli::report::{self, emit, Format, Report};
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cosym", version, about = "Exact co-symplectic and formality computations")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers and canonical representatives of a Lie algebra or CDGA file
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Verify a given (eta, F) pair on a Lie algebra file
    CheckCosymplectic {
        file: PathBuf,
        #[arg(long)]
        eta: String,
        #[arg(long = "F")]
        f: String,
    },
    /// Decide co-symplectic existence: witness or zero-polynomial certificate
    FindCosymplectic { file: PathBuf },
    /// Split a co-symplectic algebra along ker eta into (h, omega, D)
    Split {
        file: PathBuf,
        #[arg(long)]
        eta: String,
        #[arg(long = "F")]
        f: String,
    },
    /// Extend a symplectic algebra by a derivation to a co-symplectic one
    Extend {
        file: PathBuf,
        #[arg(long)]
        omega: String,
        /// Derivation matrix, e.g. "[-1 0; 0 1]" (columns are images)
        #[arg(long = "d-matrix")]
        d_matrix: String,
        #[arg(long, default_value = "xi")]
        xi_name: String,
    },
    /// Mapping-torus cohomology, eigenvalue data and the formality verdict
    MappingTorus {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        /// Include the partial minimal model
        #[arg(long)]
        model: bool,
    },
    /// Triple or quadruple Massey product of comma-separated class expressions
    Massey {
        file: PathBuf,
        #[arg(long)]
        classes: String,
    },
    /// Built-in corpus of worked examples
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entry names and expectation counts
    List,
    /// Execute expectations (optionally filtered by a name substring)
    Run { pattern: Option<String> },
}

enum CliError {
    /// Exit 2: unreadable input, bad grammar, bad usage.
    Input(String),
    /// Exit 3: mathematically invalid input.
    Math(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_lie(path: &PathBuf) -> Result<LieAlgebra, CliError> {
    match parse_document(&read_file(path)?)? {
        Document::Lie(l) => {
            l.jacobi_check().map_err(|e| CliError::Math(e.to_string()))?;
            Ok(l)
        }
        _ => Err(CliError::Input(format!(
            "{} is not a Lie algebra file",
            path.display()
        ))),
    }
}

/// A Lie file (via its Chevalley-Eilenberg complex) or a CDGA file.
fn load_cdga(path: &PathBuf) -> Result<Cdga, CliError> {
    match parse_document(&read_file(path)?)? {
        Document::Lie(l) => l.ce_cdga().map_err(|e| CliError::Math(e.to_string())),
        Document::Cdga(doc) => Ok(doc.cdga),
        Document::MappingTorus(_) => Err(CliError::Input(
            "expected a Lie algebra or CDGA file, found a mapping-torus document".to_string(),
        )),
    }
}

fn load_torus(path: &PathBuf) -> Result<MappingTorusSpec, CliError> {
    match parse_document(&read_file(path)?)? {
        Document::MappingTorus(doc) => {
            doc.spec
                .validate()
                .map_err(|e| CliError::Math(e.to_string()))?;
            Ok(doc.spec)
        }
        _ => Err(CliError::Input(format!(
            "{} is not a mapping-torus document",
            path.display()
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Structured => Format::Structured,
    };
    match run(cli.command) {
        Ok((report, code)) => {
            print!("{}", emit(&report, format));
            code
        }
        Err(e) => {
            let (msg, code) = match e {
                CliError::Input(m) => (m, ExitCode::from(2)),
                CliError::Math(m) => (m, ExitCode::from(3)),
            };
            let report = Report {
                command: "error".to_string(),
                verdict: "ERROR".to_string(),
                data: serde_json::Value::Null,
                diagnostics: vec![msg.clone()],
                text: format!("error: {msg}"),
            };
            match format {
                Format::Text => eprint!("{}", emit(&report, format)),
                Format::Structured => print!("{}", emit(&report, format)),
            }
            code
        }
    }
}

fn run(command: Command) -> Result<(Report, ExitCode), CliError> {
    match command {
        Command::Cohomology { file, max_degree } => cmd_cohomology(&file, max_degree),
        Command::CheckCosymplectic { file, eta, f } => cmd_check(&file, &eta, &f),
        Command::FindCosymplectic { file } => cmd_find(&file),
        Command::Split { file, eta, f } => cmd_split(&file, &eta, &f),
        Command::Extend {
            file,
            omega,
            d_matrix,
            xi_name,
        } => cmd_extend(&file, &omega, &d_matrix, &xi_name),
        Command::MappingTorus {
            file,
            degree,
            model,
        } => cmd_mapping_torus(&file, degree, model),
        Command::Massey { file, classes } => cmd_massey(&file, &classes),
        Command::Catalog { action } => cmd_catalog(action),
    }
}

fn cmd_cohomology(
    file: &PathBuf,
    max_degree: Option<usize>,
) -> Result<(Report, ExitCode), CliError> {
    let cdga = load_cdga(file)?;
    let top = max_degree.unwrap_or(cdga.truncation() - 1);
    if top >= cdga.truncation() {
        return Err(CliError::Input(format!(
            "--max-degree {top} exceeds the truncation {}",
            cdga.truncation()
        )));
    }
    let mut text = String::new();
    let mut betti = Vec::new();
    let mut reps_json = Vec::new();
    writeln!(text, "degree  betti  representatives").unwrap();
    for k in 0..=top {
        let (b, reps) = cdga
            .cohomology_basis(k)
            .map_err(|e| CliError::Math(e.to_string()))?;
        let rendered: Vec<String> = reps.iter().map(|r| format!("[{}]", r.render())).collect();
        writeln!(text, "{k:>6}  {b:>5}  {}", rendered.join(", ")).unwrap();
        betti.push(b);
        reps_json.push(json!(rendered));
    }
    let report = Report {
        command: "cohomology".to_string(),
        verdict: "OK".to_string(),
        data: json!({"betti": betti, "representatives": reps_json}),
        diagnostics: Vec::new(),
        text,
    };
    Ok((report, ExitCode::SUCCESS))
}

fn cmd_check(file: &PathBuf, eta: &str, f: &str) -> Result<(Report, ExitCode), CliError> {
    let lie = load_lie(file)?;
    let ce = lie.ce_cdga().map_err(|e| CliError::Math(e.to_string()))?;
    let eta = parse_element(eta, ce.table(), 0)?;
    let f = parse_element(f, ce.table(), 0)?;
    let r = liealg::cosymplectic_check(&lie, &eta, &f).map_err(|e| CliError::Math(e.to_string()))?;
    let verdict = if r.passes() {
        "COSYMPLECTIC"
    } else {
        "NOT_COSYMPLECTIC"
    };
    let text = format!(
        "{verdict}\n  d eta = 0 : {}\n  d F = 0   : {}\n  eta∧F^n volume coefficient: {}",
        r.d_eta_zero,
        r.d_f_zero,
        display(&r.volume_coefficient)
    );
    let report = Report {
        command: "check-cosymplectic".to_string(),
        verdict: verdict.to_string(),
        data: json!({
            "d_eta_zero": r.d_eta_zero,
            "d_f_zero": r.d_f_zero,
            "volume_coefficient": display(&r.volume_coefficient),
        }),
        diagnostics: Vec::new(),
        text,
    };
    Ok((report, ExitCode::SUCCESS))
}

fn cmd_find(file: &PathBuf) -> Result<(Report, ExitCode), CliError> {
    let lie = load_lie(file)?;
    let outcome = liealg::cosymplectic_exists(&lie).map_err(|e| CliError::Math(e.to_string()))?;
    let report = match outcome {
        CosymplecticExistence::Exists { eta, f } => Report {
            command: "find-cosymplectic".to_string(),
            verdict: "EXISTS".to_string(),
            data: json!({"eta": eta.render(), "F": f.render()}),
            diagnostics: Vec::new(),
            text: format!("EXISTS\n  eta = {}\n  F   = {}", eta.render(), f.render()),
        },
        CosymplecticExistence::NotExists { certificate } => Report {
            command: "find-cosymplectic".to_string(),
            verdict: "NOT_EXISTS".to_string(),
            data: json!({
                "closed_one_cochains": certificate.closed_one_cochains,
                "closed_two_cochains": certificate.closed_two_cochains,
                "volume_polynomial": format!("{:?}", certificate.polynomial),
            }),
            diagnostics: vec![
                "certificate: the volume coefficient of eta∧F^n, expanded symbolically over \
                 the closed cochain spaces, is the zero polynomial"
                    .to_string(),
            ],
            text: format!(
                "NOT_EXISTS\n  dim Z1 = {}, dim Z2 = {}\n  volume polynomial = 0 (full symbolic expansion)",
                certificate.closed_one_cochains, certificate.closed_two_cochains
            ),
        },
    };
    Ok((report, ExitCode::SUCCESS))
}

fn cmd_split(file: &PathBuf, eta: &str, f: &str) -> Result<(Report, ExitCode), CliError> {
    let lie = load_lie(file)?;
    let ce = lie.ce_cdga().map_err(|e| CliError::Math(e.to_string()))?;
    let eta = parse_element(eta, ce.table(), 0)?;
    let f = parse_element(f, ce.table(), 0)?;
    let split =
        liealg::split_cosymplectic(&lie, &eta, &f).map_err(|e| CliError::Math(e.to_string()))?;
    let h_text = print::print_lie(&split.data.h);
    let xi: Vec<String> = split.xi.iter().map(display).collect();
    let text = format!(
        "SPLIT\nbase algebra:\n{h_text}omega = {}\nD = {}\nxi = ({})",
        split.data.omega.render(),
        print::matrix_text(&split.data.d),
        xi.join(", ")
    );
    let report = Report {
        command: "split".to_string(),
        verdict: "SPLIT".to_string(),
        data: json!({
            "h": h_text,
            "omega": split.data.omega.render(),
            "D": report::matrix_json(&split.data.d),
            "xi": report::vector_json(&split.xi),
        }),
        diagnostics: Vec::new(),
        text,
    };
    Ok((report, ExitCode::SUCCESS))
}

fn cmd_extend(
    file: &PathBuf,
    omega: &str,
    d_matrix: &str,
    xi_name: &str,
) -> Result<(Report, ExitCode), CliError> {
    let h = load_lie(file)?;
    let ce = h.ce_cdga().map_err(|e| CliError::Math(e.to_string()))?;
    let omega = parse_element(omega, ce.table(), 0)?;
    let d = parse::parse_matrix_arg(d_matrix).map_err(CliError::Input)?;
    let data = SymplecticDerivationData { h, omega, d };
    let (extended, eta, f) = liealg::extend_by_derivation(&data, xi_name)
        .map_err(|e| CliError::Math(e.to_string()))?;
    let lie_text = print::print_lie(&extended);
    let text = format!(
        "EXTENDED\n{lie_text}eta = {}\nF   = {}",
        eta.render(),
        f.render()
    );
    let report = Report {
        command: "extend".to_string(),
        verdict: "EXTENDED".to_string(),
        data: json!({
            "algebra": lie_text,
            "eta": eta.render(),
            "F": f.render(),
        }),
        diagnostics: Vec::new(),
        text,
    };
    Ok((report, ExitCode::SUCCESS))
}

fn cmd_mapping_torus(
    file: &PathBuf,
    degree: Option<usize>,
    model: bool,
) -> Result<(Report, ExitCode), CliError> {
    let spec = load_torus(file)?;
    let cohomology =
        mapping_torus::mv_cohomology(&spec).map_err(|e| CliError::Math(e.to_string()))?;
    let verdict_report =
        mapping_torus::formality_verdict(&spec).map_err(|e| CliError::Math(e.to_string()))?;

    let mut text = String::new();
    writeln!(
        text,
        "mapping torus over a fiber of dimension {}",
        spec.top_degree()
    )
    .unwrap();
    writeln!(text, "betti: {:?}", cohomology.betti).unwrap();
    for c in &verdict_report.checklist {
        writeln!(
            text,
            "  degree {}: filtration dims {:?}, r = {}",
            c.p, c.dims, c.r
        )
        .unwrap();
    }
    let verdict_str = match verdict_report.verdict {
        Verdict::NonFormal { p } => format!("NON_FORMAL(p={p})"),
        Verdict::PFormal { p } => format!("P_FORMAL(p={p})"),
        Verdict::Inconclusive => "INCONCLUSIVE".to_string(),
    };
    writeln!(text, "verdict: {verdict_str}").unwrap();
    let mut data = json!({
        "betti": cohomology.betti,
        "checklist": verdict_report.checklist.iter().map(|c| json!({
            "degree": c.p, "dims": c.dims, "r": c.r
        })).collect::<Vec<_>>(),
    });
    if let Some(w) = &verdict_report.witness {
        let labels = spec.fiber.labels(w.p);
        let dual_labels = spec.fiber.labels(spec.top_degree() - w.p);
        writeln!(text, "witness at degree {}:", w.p).unwrap();
        writeln!(text, "  beta  = {}", print::class_in_labels(&w.beta, labels)).unwrap();
        writeln!(
            text,
            "  alpha = {} (fixed, and in im(phi-id))",
            print::class_in_labels(&w.alpha, labels)
        )
        .unwrap();
        writeln!(text, "  xi    = {}", print::class_in_labels(&w.xi, dual_labels)).unwrap();
        writeln!(
            text,
            "  <beta, xi> = {} != 0, <alpha, xi> = 0",
            display(&w.kappa)
        )
        .unwrap();
        data["witness"] = json!({
            "degree": w.p,
            "alpha": report::vector_json(&w.alpha),
            "beta": report::vector_json(&w.beta),
            "xi": report::vector_json(&w.xi),
            "kappa": display(&w.kappa),
        });
    }
    if let Some(p) = degree {
        if p > spec.top_degree() {
            return Err(CliError::Input(format!(
                "--degree {p} exceeds the fiber top degree {}",
                spec.top_degree()
            )));
        }
        let f = mapping_torus::eigen1_data(&spec, p).map_err(|e| CliError::Math(e.to_string()))?;
        writeln!(
            text,
            "eigenvalue-1 data at degree {p}: dims {:?}, r = {}, blocks {:?}",
            f.dims,
            f.r,
            f.jordan_blocks()
        )
        .unwrap();
        data["eigen"] = json!({
            "degree": p,
            "dims": f.dims,
            "r": f.r,
            "blocks": f.jordan_blocks(),
        });
    }
    if model {
        let p = degree.or(match verdict_report.verdict {
            Verdict::NonFormal { p } | Verdict::PFormal { p } => Some(p),
            Verdict::Inconclusive => None,
        });
        let Some(p) = p else {
            return Err(CliError::Input(
                "--model needs --degree or a conclusive verdict".to_string(),
            ));
        };
        let m = mapping_torus::partial_minimal_model(&spec, p)
            .map_err(|e| CliError::Math(e.to_string()))?;
        writeln!(text, "partial minimal model up to degree {p}:").unwrap();
        writeln!(text, "  W^1 = <{}>, d{} = 0", m.a_label, m.a_label).unwrap();
        for (j, layer) in m.layers.iter().enumerate() {
            writeln!(
                text,
                "  G_{} = <{}> (dim {})",
                j + 1,
                layer.labels.join(", "),
                layer.reps.len()
            )
            .unwrap();
        }
        for (label, terms) in &m.differential {
            if terms.is_empty() {
                writeln!(text, "  d {label} = 0").unwrap();
            } else {
                let rhs: Vec<String> = terms
                    .iter()
                    .map(|(t, c)| format!("{}*{}^{t}", display(c), m.a_label))
                    .collect();
                writeln!(text, "  d {label} = {}", rhs.join(" + ")).unwrap();
            }
        }
        writeln!(text, "  fragment betti: {:?}", m.fragment_betti).unwrap();
        data["model"] = json!({
            "degree": m.p,
            "layer_dims": m.layers.iter().map(|l| l.reps.len()).collect::<Vec<_>>(),
            "fragment_betti": m.fragment_betti,
            "differential": m.differential.iter().map(|(k, v)| json!({
                "generator": k,
                "value": v.iter().map(|(t, c)| json!([t, display(c)])).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
    }
    let report = Report {
        command: "mapping-torus".to_string(),
        verdict: verdict_str,
        data,
        diagnostics: Vec::new(),
        text,
    };
    Ok((report, ExitCode::SUCCESS))
}

fn cmd_massey(file: &PathBuf, classes: &str) -> Result<(Report, ExitCode), CliError> {
    let cdga = load_cdga(file)?;
    let parts: Vec<&str> = classes.split(',').map(str::trim).collect();
    if parts.len() != 3 && parts.len() != 4 {
        return Err(CliError::Input(format!(
            "--classes needs 3 or 4 comma-separated expressions, got {}",
            parts.len()
        )));
    }
    let cocycles: Vec<Cocycle> = parts
        .iter()
        .map(|p| {
            let e = parse_element(p, cdga.table(), 0)?;
            Cocycle::infer(&cdga, e).map_err(|e| CliError::Math(e.to_string()))
        })
        .collect::<Result<_, CliError>>()?;
    let verdict = if parts.len() == 3 {
        massey::triple_massey(&cdga, &cocycles[0], &cocycles[1], &cocycles[2])
    } else {
        massey::quadruple_massey(
            &cdga,
            [&cocycles[0], &cocycles[1], &cocycles[2], &cocycles[3]],
        )
    }
    .map_err(|e| CliError::Math(e.to_string()))?;
    let verdict_str = if verdict.nonzero {
        "NONZERO"
    } else if verdict.vanishes {
        "ZERO"
    } else {
        "NOT_CERTIFIED"
    };
    let mut text = format!(
        "{verdict_str}\n  representative = [{}] (degree {})\n  indeterminacy dimension = {}",
        verdict.representative.render(),
        verdict.degree,
        verdict.indeterminacy.dim()
    );
    if !verdict.indeterminacy_complete {
        text.push_str(
            "\n  note: quadruple variation family is sound for NONZERO; \
             vanishing is only certified by a zero representative",
        );
    }
    let report = Report {
        command: "massey".to_string(),
        verdict: verdict_str.to_string(),
        data: json!({
            "representative": verdict.representative.render(),
            "degree": verdict.degree,
            "indeterminacy_dim": verdict.indeterminacy.dim(),
            "indeterminacy_complete": verdict.indeterminacy_complete,
        }),
        diagnostics: Vec::new(),
        text,
    };
    Ok((report, ExitCode::SUCCESS))
}

fn cmd_catalog(action: CatalogAction) -> Result<(Report, ExitCode), CliError> {
    match action {
        CatalogAction::List => {
            let entries = catalog::catalog_entries();
            let mut text = String::new();
            let mut data = Vec::new();
            for e in &entries {
                writeln!(
                    text,
                    "{:<28} {:>2} expectations  {}",
                    e.name,
                    e.expectations.len(),
                    e.description
                )
                .unwrap();
                data.push(json!({
                    "name": e.name,
                    "description": e.description,
                    "expectations": e.expectations.len(),
                }));
            }
            let report = Report {
                command: "catalog list".to_string(),
                verdict: "OK".to_string(),
                data: json!(data),
                diagnostics: Vec::new(),
                text,
            };
            Ok((report, ExitCode::SUCCESS))
        }
        CatalogAction::Run { pattern } => {
            let result = catalog::run_catalog(pattern.as_deref());
            if result.entries.is_empty() {
                return Err(CliError::Input(format!(
                    "no catalog entries match `{}`",
                    pattern.unwrap_or_default()
                )));
            }
            let (passed, failed) = result.counts();
            let mut text = String::new();
            let mut data = Vec::new();
            for entry in &result.entries {
                for r in &entry.results {
                    let status = if r.outcome.is_ok() { "pass" } else { "FAIL" };
                    writeln!(
                        text,
                        "{status}  {:<28} {:<28} [{}]",
                        entry.name,
                        r.label,
                        r.origin.as_str()
                    )
                    .unwrap();
                    if let Err(e) = &r.outcome {
                        writeln!(text, "      {e}").unwrap();
                    }
                    data.push(json!({
                        "entry": entry.name,
                        "expectation": r.label,
                        "origin": r.origin.as_str(),
                        "passed": r.outcome.is_ok(),
                        "error": r.outcome.as_ref().err(),
                    }));
                }
            }
            writeln!(text, "{passed} passed, {failed} failed").unwrap();
            let verdict = if failed == 0 { "PASS" } else { "FAIL" };
            let report = Report {
                command: "catalog run".to_string(),
                verdict: verdict.to_string(),
                data: json!(data),
                diagnostics: Vec::new(),
                text,
            };
            let code = if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            Ok((report, code))
        }
    }
}
