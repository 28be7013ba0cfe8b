//! Report assembly and rendering (text, JSON, LaTeX).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::ClassificationReport;
use crate::connection::Connection;
use crate::curvature::{CurvatureBundle, RicciSign};
use crate::error::Result;
use crate::expr::to_latex;
use crate::tensor::TensorField;

#[derive(Debug, Clone, Serialize)]
pub struct ChristoffelEntry {
    pub indices: Vec<String>,
    pub expr: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tables {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub christoffel: Option<Vec<ChristoffelEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub riemann: Option<Vec<ChristoffelEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ricci: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub chart: String,
    pub connection: String,
    pub tables: Tables,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
    pub residual_summaries: BTreeMap<String, f64>,
}

/// Nontrivial connection coefficients, ordered by index tuple. Zero entries
/// are omitted, matching the usual presentation of such tables.
pub fn christoffel_table(conn: &Connection, coords: &[String]) -> Vec<ChristoffelEntry> {
    let mut out = Vec::new();
    for idx in conn.gamma.indices() {
        let e = conn.gamma.get(&idx);
        if e.is_zero_const() {
            continue;
        }
        out.push(ChristoffelEntry {
            indices: idx.iter().map(|&i| coords[i].clone()).collect(),
            expr: format!("{e}"),
        });
    }
    out
}

pub fn riemann_table(riemann: &TensorField, coords: &[String]) -> Vec<ChristoffelEntry> {
    let mut out = Vec::new();
    for idx in riemann.indices() {
        let e = riemann.get(&idx);
        if e.is_zero_const() {
            continue;
        }
        out.push(ChristoffelEntry {
            indices: idx.iter().map(|&i| coords[i].clone()).collect(),
            expr: format!("{e}"),
        });
    }
    out
}

/// Full Ricci matrix in the reporting convention.
pub fn ricci_matrix(bundle: &CurvatureBundle, sign: RicciSign) -> Result<Vec<Vec<String>>> {
    let reported = bundle.ricci_reported(sign)?;
    let n = reported.dim();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            row.push(format!("{}", reported.get(&[j, k])));
        }
        out.push(row);
    }
    Ok(out)
}

fn gamma_symbol(connection: &str) -> &'static str {
    if connection == "semi-symmetric" {
        "Gbar"
    } else {
        "G"
    }
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "chart: {}\nconnection: {}\n",
        report.chart, report.connection
    ));
    let gsym = gamma_symbol(&report.connection);
    if let Some(christoffel) = &report.tables.christoffel {
        out.push_str("\nnontrivial connection coefficients:\n");
        for e in christoffel {
            out.push_str(&format!(
                "  {}^{}_({},{}) = {}\n",
                gsym, e.indices[0], e.indices[1], e.indices[2], e.expr
            ));
        }
    }
    if let Some(riemann) = &report.tables.riemann {
        out.push_str("\nnontrivial curvature components R^l_(i,j,k):\n");
        for e in riemann {
            out.push_str(&format!(
                "  R^{}_({},{},{}) = {}\n",
                e.indices[0], e.indices[1], e.indices[2], e.indices[3], e.expr
            ));
        }
    }
    if let Some(ricci) = &report.tables.ricci {
        out.push_str("\nricci matrix:\n");
        for row in ricci {
            out.push_str(&format!("  [{}]\n", row.join(", ")));
        }
    }
    if let Some(c) = &report.classification {
        out.push_str("\nclassification:\n");
        out.push_str(&format!(
            "  killing: {:?}\n  parallel: {:?}\n  closed: {:?}\n  unit_norm: {:?}\n  einstein: {:?}\n  sqe: {:?}\n  semi_ricci_flat: {:?}\n",
            c.flags.killing, c.flags.parallel, c.flags.closed, c.flags.unit_norm,
            c.flags.einstein, c.flags.sqe, c.flags.semi_ricci_flat
        ));
        if let Some(a) = &c.witnesses.einstein_a {
            out.push_str(&format!("  einstein a = {a}\n"));
        }
        if let (Some(a), Some(b)) = (&c.witnesses.sqe_a, &c.witnesses.sqe_b) {
            out.push_str(&format!("  sqe a = {a}, b = {b}\n"));
        }
        out.push_str(&format!(
            "  semisymmetry: Rbar.Rbar={:?} Rbar.Shat={:?} R.S={:?} nablabar.Rbar={:?} nablabar.Shat={:?}\n",
            c.semisymmetry.rbar_rbar,
            c.semisymmetry.rbar_shat,
            c.semisymmetry.r_s,
            c.semisymmetry.nablabar_rbar,
            c.semisymmetry.nablabar_shat
        ));
        out.push_str("  theorem checks:\n");
        for (name, entry) in &c.theorems {
            out.push_str(&format!("    {name}: {:?} ({})\n", entry.verdict, entry.note));
        }
    }
    if !report.residual_summaries.is_empty() {
        out.push_str("\nresidual summaries (max |value| over samples):\n");
        for (name, v) in &report.residual_summaries {
            out.push_str(&format!("  {name}: {v:e}\n"));
        }
    }
    out
}

fn latex_indices(e: &ChristoffelEntry) -> (String, String) {
    let up = crate::expr::symbol_to_latex(&e.indices[0]);
    let down = e.indices[1..]
        .iter()
        .map(|s| crate::expr::symbol_to_latex(s))
        .collect::<Vec<_>>()
        .join(" ");
    (up, down)
}

pub fn render_latex(report: &Report) -> Result<String> {
    let mut out = String::new();
    out.push_str(&format!(
        "%% chart: {} / connection: {}\n",
        report.chart, report.connection
    ));
    let head = if report.connection == "semi-symmetric" {
        r"\bar{\Gamma}"
    } else {
        r"\Gamma"
    };
    if let Some(christoffel) = &report.tables.christoffel {
        out.push_str("\\begin{align*}\n");
        for (i, e) in christoffel.iter().enumerate() {
            let (up, down) = latex_indices(e);
            let expr = reparse_latex(&report.chart, &e.expr)?;
            let sep = if i + 1 == christoffel.len() { "" } else { r", \quad" };
            out.push_str(&format!("{head}^{{{up}}}_{{{down}}} &= {expr}{sep}\\\\\n"));
        }
        out.push_str("\\end{align*}\n");
    }
    if let Some(riemann) = &report.tables.riemann {
        let rhead = if report.connection == "semi-symmetric" {
            r"\bar{R}"
        } else {
            "R"
        };
        out.push_str("\\begin{align*}\n");
        for e in riemann {
            let (up, down) = latex_indices(e);
            let expr = reparse_latex(&report.chart, &e.expr)?;
            out.push_str(&format!("{rhead}^{{{up}}}_{{{down}}} &= {expr}\\\\\n"));
        }
        out.push_str("\\end{align*}\n");
    }
    if let Some(ricci) = &report.tables.ricci {
        let shead = if report.connection == "semi-symmetric" {
            r"\bar{S}"
        } else {
            "S"
        };
        out.push_str(&format!("%% {shead}_{{ij}}\n"));
        out.push_str("\\begin{pmatrix}\n");
        for row in ricci {
            let cells: Result<Vec<String>> = row
                .iter()
                .map(|c| reparse_latex(&report.chart, c))
                .collect();
            out.push_str(&format!("{} \\\\\n", cells?.join(" & ")));
        }
        out.push_str("\\end{pmatrix}\n");
    }
    Ok(out)
}

/// Expressions travel through reports as canonical strings; for LaTeX we
/// re-parse them against the chart's builtin symbols.
fn reparse_latex(chart: &str, text: &str) -> Result<String> {
    let _ = chart;
    // Build a permissive symbol table from the identifiers in the string.
    let mut names: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            cur.push(ch);
        } else {
            if !cur.is_empty() && !cur.chars().next().unwrap().is_ascii_digit() {
                names.push(cur.clone());
            }
            cur.clear();
        }
    }
    if !cur.is_empty() && !cur.chars().next().unwrap().is_ascii_digit() {
        names.push(cur);
    }
    names.sort();
    names.dedup();
    names.retain(|n| {
        !matches!(
            n.as_str(),
            "sin" | "cos" | "tan" | "exp" | "log" | "sqrt"
        )
    });
    let table = crate::expr::SymbolTable::new(names, vec![])?;
    let e = crate::expr::parse(text, &table)?;
    Ok(to_latex(&e))
}
