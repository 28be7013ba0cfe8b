//! Command-line front end: load charts, run pipelines, emit reports.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::chart::load_spec_with;
use crate::classify::{classification_report, Geometry};
use crate::connection::torsion;
use crate::corpus;
use crate::curvature::{
    ricci, riemann, tensor_zero_check, verify_curvature_relation, verify_ricci_relation, RicciSign,
};
use crate::error::{Error, Result};
use crate::expr::{nsum, Expr, ZeroCfg};
use crate::report::{christoffel_table, render_latex, render_text, ricci_matrix, riemann_table, Report, Tables};
use crate::tensor::{TensorField, Variance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConnectionArg {
    Lc,
    Ssmc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    Christoffel,
    Riemann,
    Ricci,
    Classify,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RicciSignArg {
    Paper,
    Standard,
}

impl From<RicciSignArg> for RicciSign {
    fn from(v: RicciSignArg) -> RicciSign {
        match v {
            RicciSignArg::Paper => RicciSign::Paper,
            RicciSignArg::Standard => RicciSign::Standard,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sqe",
    about = "Symbolic curvature and quasi-Einstein structure analysis for coordinate charts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a chart (builtin name or spec-file path) and emit reports.
    Compute {
        /// Builtin chart name (schwarzschild, kottler, example3) or a path
        /// to a spec file.
        input: String,
        #[arg(long, value_enum, default_value = "lc")]
        connection: ConnectionArg,
        #[arg(long, value_enum, default_value = "all")]
        report: ReportKind,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Sample points for the randomized zero test.
        #[arg(long, default_value_t = 16)]
        points: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Zero-test tolerance.
        #[arg(long, env = "SQE_TOL", default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "paper")]
        ricci_sign: RicciSignArg,
    },
    /// Write the exact spec-file JSON for a builtin chart.
    Corpus { name: String },
}

fn load_input(input: &str, cfg: &ZeroCfg) -> Result<crate::chart::ChartSpec> {
    if let Some(doc) = corpus::builtin(input) {
        return load_spec_with(doc.as_bytes(), cfg);
    }
    let bytes = std::fs::read(input).map_err(|e| Error::Io {
        path: input.to_string(),
        msg: e.to_string(),
    })?;
    load_spec_with(&bytes, cfg)
}

/// Exit code mapping: 0 = requested checks pass (or report-only run),
/// 1 = a requested verification failed, 2 = input or format error.
pub fn run<W: Write, E: Write>(cli: Cli, out: &mut W, err: &mut E) -> i32 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute<W: Write>(cli: Cli, out: &mut W) -> Result<i32> {
    match cli.command {
        Command::Corpus { name } => {
            let doc = corpus::builtin(&name).ok_or_else(|| Error::UnknownBuiltin(name.clone()))?;
            out.write_all(doc.as_bytes()).map_err(|e| Error::Io {
                path: "<stdout>".into(),
                msg: e.to_string(),
            })?;
            Ok(0)
        }
        Command::Compute {
            input,
            connection,
            report,
            format,
            points,
            seed,
            tol,
            ricci_sign,
        } => {
            let cfg = ZeroCfg { points, seed, tol };
            let sign: RicciSign = ricci_sign.into();
            let chart = load_input(&input, &cfg)?;
            let geom = Geometry::new(chart, &cfg)?;
            let conn = match connection {
                ConnectionArg::Lc => &geom.lc,
                ConnectionArg::Ssmc => geom.ssmc.as_ref().ok_or(Error::MissingOneForm)?,
            };

            let want_christoffel = matches!(report, ReportKind::Christoffel | ReportKind::All);
            let want_riemann = matches!(report, ReportKind::Riemann | ReportKind::All);
            let want_ricci = matches!(report, ReportKind::Ricci | ReportKind::All);
            let want_classify = matches!(report, ReportKind::Classify | ReportKind::All);

            let coords = geom.chart.coordinates().to_vec();
            let christoffel = want_christoffel.then(|| christoffel_table(conn, &coords));
            let riemann_entries = if want_riemann {
                let r = riemann(conn, &geom.chart)?;
                Some(riemann_table(&r, &coords))
            } else {
                None
            };
            let ricci_rows = if want_ricci {
                let bundle = match connection {
                    ConnectionArg::Lc => geom.lc_bundle.clone(),
                    ConnectionArg::Ssmc => ricci(conn, &geom.chart, &cfg)?,
                };
                Some(ricci_matrix(&bundle, sign)?)
            } else {
                None
            };

            let mut residual_summaries = BTreeMap::new();
            let mut verification_failed = false;
            let classification = if want_classify {
                if geom.chart.one_form.is_some() {
                    let cr = verify_curvature_relation(&geom.chart, &cfg)?;
                    residual_summaries.insert("curvature_relation".into(), cr.max_residual);
                    verification_failed |= !cr.passed;
                    let rr = verify_ricci_relation(&geom.chart, &cfg)?;
                    residual_summaries.insert("ricci_relation".into(), rr.max_residual);
                    verification_failed |= !rr.passed;
                    let tf = torsion_form_residual(&geom)?;
                    let tc = tensor_zero_check(&tf, &geom.chart.sample_ranges, &cfg)?;
                    residual_summaries.insert("torsion_form".into(), tc.max_residual);
                    verification_failed |= !tc.passed;
                }
                Some(classification_report(&geom, sign, &cfg)?)
            } else {
                None
            };

            let report = Report {
                chart: geom.chart.name.clone(),
                connection: conn.kind.label().to_string(),
                tables: Tables {
                    christoffel,
                    riemann: riemann_entries,
                    ricci: ricci_rows,
                },
                classification,
                residual_summaries,
            };

            let rendered = match format {
                FormatArg::Text => render_text(&report),
                FormatArg::Json => {
                    let mut s = serde_json::to_string_pretty(&report).map_err(|e| Error::Io {
                        path: "<stdout>".into(),
                        msg: e.to_string(),
                    })?;
                    s.push('\n');
                    s
                }
                FormatArg::Latex => render_latex(&report)?,
            };
            out.write_all(rendered.as_bytes()).map_err(|e| Error::Io {
                path: "<stdout>".into(),
                msg: e.to_string(),
            })?;
            Ok(if verification_failed { 1 } else { 0 })
        }
    }
}

/// Residual of the defining torsion form:
/// T^k_{ij} − (π_j δ^k_i − π_i δ^k_j).
pub fn torsion_form_residual(geom: &Geometry) -> Result<TensorField> {
    let ss = geom.ssmc.as_ref().ok_or(Error::MissingOneForm)?;
    let pi = geom.chart.one_form()?.clone();
    let t = torsion(ss)?;
    let n = geom.chart.dimension();
    TensorField::from_fn(
        n,
        vec![Variance::Up, Variance::Down, Variance::Down],
        |idx| {
            let (k, i, j) = (idx[0], idx[1], idx[2]);
            let mut terms = vec![t.get(&[k, i, j]).clone()];
            if k == i {
                terms.push(Expr::neg(pi.get(&[j]).clone()));
            }
            if k == j {
                terms.push(pi.get(&[i]).clone());
            }
            nsum(terms)
        },
    )
    .map_err(Into::into)
}

