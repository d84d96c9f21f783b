pub mod analyze;
pub mod graph;
pub mod simulate;
pub mod sweep;
pub mod verify;

use coopnet::{DelayGraph, PDPayoffs, Topology};
use serde::Serialize;

use crate::error::CliError;
use crate::output::{decimal, exact, parse_rational_arg};
use crate::TopologyKind;

pub(crate) fn parse_payoffs(a: &str, b: &str, c: &str) -> Result<PDPayoffs, CliError> {
    let a = parse_rational_arg("a", a)?;
    let b = parse_rational_arg("b", b)?;
    let c = parse_rational_arg("c", c)?;
    Ok(PDPayoffs::new(a, b, c)?)
}

pub(crate) fn build_topology(
    kind: TopologyKind,
    n: Option<usize>,
    delay: u64,
    ba_m: usize,
    seed: u64,
) -> Result<DelayGraph, CliError> {
    let n = n.ok_or_else(|| CliError::Validation("--n is required with --topology".into()))?;
    let topology = match kind {
        TopologyKind::Path => Topology::Path(n),
        TopologyKind::Cycle => Topology::Cycle(n),
        TopologyKind::Star => Topology::Star(n),
        TopologyKind::Complete => Topology::Complete(n),
        TopologyKind::BarabasiAlbert => Topology::BarabasiAlbert {
            nodes: n,
            attach: ba_m,
            seed,
        },
    };
    Ok(topology.generate(delay)?)
}

pub(crate) fn load_graph(path: &std::path::Path) -> Result<DelayGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    DelayGraph::parse_edge_list(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// One analysis row, shared by `analyze` (single) and `sweep` (many).
#[derive(Serialize)]
pub(crate) struct AnalysisRow {
    pub n: u64,
    pub tau: u64,
    pub a: String,
    pub b: String,
    pub c: String,
    pub bound_b: String,
    pub sustainable: bool,
    pub v_avg: String,
    pub n_c: String,
    pub margin: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    pub a_dec: f64,
    pub b_dec: f64,
    pub c_dec: f64,
    pub bound_b_dec: f64,
    pub v_avg_dec: f64,
    pub n_c_dec: f64,
    pub margin_dec: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_dec: Option<f64>,
}

impl AnalysisRow {
    pub fn build(n: u64, tau: u64, p: &PDPayoffs, alpha: Option<&coopnet::Rational>) -> Self {
        let report = coopnet::check_sustainability(n, tau, p);
        let v_avg = coopnet::average_deviation_payoff_direct(n, tau, p);
        let n_c = coopnet::rational::count(n) * p.c();
        AnalysisRow {
            n,
            tau,
            a: exact(p.a()),
            b: exact(p.b()),
            c: exact(p.c()),
            bound_b: exact(&report.bound_b),
            sustainable: report.sustainable,
            v_avg: exact(&v_avg),
            n_c: exact(&n_c),
            margin: exact(&report.margin),
            alpha: alpha.map(exact),
            a_dec: decimal(p.a()),
            b_dec: decimal(p.b()),
            c_dec: decimal(p.c()),
            bound_b_dec: decimal(&report.bound_b),
            v_avg_dec: decimal(&v_avg),
            n_c_dec: decimal(&n_c),
            margin_dec: decimal(&report.margin),
            alpha_dec: alpha.map(decimal),
        }
    }

    pub fn csv_header(with_alpha: bool) -> String {
        let mut cols = vec![
            "n",
            "tau",
            "a",
            "b",
            "c",
            "bound_b",
            "sustainable",
            "v_avg",
            "n_c",
            "margin",
        ];
        if with_alpha {
            cols.push("alpha");
        }
        cols.extend([
            "a_dec",
            "b_dec",
            "c_dec",
            "bound_b_dec",
            "v_avg_dec",
            "n_c_dec",
            "margin_dec",
        ]);
        if with_alpha {
            cols.push("alpha_dec");
        }
        cols.join(",")
    }

    pub fn csv_row(&self, with_alpha: bool) -> String {
        let mut fields = vec![
            self.n.to_string(),
            self.tau.to_string(),
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.bound_b.clone(),
            self.sustainable.to_string(),
            self.v_avg.clone(),
            self.n_c.clone(),
            self.margin.clone(),
        ];
        if with_alpha {
            fields.push(self.alpha.clone().unwrap_or_default());
        }
        fields.extend([
            self.a_dec.to_string(),
            self.b_dec.to_string(),
            self.c_dec.to_string(),
            self.bound_b_dec.to_string(),
            self.v_avg_dec.to_string(),
            self.n_c_dec.to_string(),
            self.margin_dec.to_string(),
        ]);
        if with_alpha {
            fields.push(self.alpha_dec.map(|d| d.to_string()).unwrap_or_default());
        }
        fields.join(",")
    }
}
