//! Flat text records for pair and centrality results.

use crate::centrality::{decimal, CentralityReport, Rational};
use crate::network::Network;
use crate::quantities::PairQuantities;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    /// `key=value` fields separated by spaces, one record per line.
    #[default]
    Text,
    /// Tab-separated values under a header line.
    Tsv,
}

pub const PAIR_FIELDS: [&str; 9] = [
    "y",
    "z",
    "X",
    "phi_total",
    "phi_restricted",
    "phi_X",
    "lambda_X",
    "delta_X",
    "witness",
];

pub const CENTRALITY_FIELDS: [&str; 7] = [
    "set",
    "vitality_num",
    "vitality_den",
    "betweenness_num",
    "betweenness_den",
    "vitality_dec",
    "betweenness_dec",
];

const NOT_COMPUTED: &str = "-";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| NOT_COMPUTED.to_string(), |v| v.to_string())
}

fn render(format: Format, fields: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            for row in rows {
                let parts: Vec<String> = fields.iter().zip(row).map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&parts.join(" "));
                out.push('\n');
            }
        }
        Format::Tsv => {
            out.push_str(&fields.join("\t"));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
    }
    out
}

pub fn pair_row(net: &Network, q: &PairQuantities) -> Vec<String> {
    vec![
        net.token(q.y).to_string(),
        net.token(q.z).to_string(),
        net.render_set(&q.set),
        q.phi_total.to_string(),
        q.phi_restricted.to_string(),
        q.phi_x.to_string(),
        opt(q.lambda_x),
        opt(q.delta_x),
        opt(q.witness.as_ref().map(|w| w.render(net))),
    ]
}

pub fn format_pair(net: &Network, q: &PairQuantities, format: Format) -> String {
    render(format, &PAIR_FIELDS, &[pair_row(net, q)])
}

fn parts(r: Option<&Rational>) -> [String; 3] {
    match r {
        Some(r) => [r.numer().to_string(), r.denom().to_string(), decimal(r, 6)],
        None => [NOT_COMPUTED.into(), NOT_COMPUTED.into(), NOT_COMPUTED.into()],
    }
}

pub fn centrality_row(net: &Network, r: &CentralityReport) -> Vec<String> {
    let [vn, vd, vdec] = parts(Some(&r.vitality));
    let [bn, bd, bdec] = parts(r.betweenness.as_ref());
    vec![net.render_set(&r.set), vn, vd, bn, bd, vdec, bdec]
}

pub fn format_centrality(net: &Network, reports: &[CentralityReport], format: Format) -> String {
    let rows: Vec<Vec<String>> = reports.iter().map(|r| centrality_row(net, r)).collect();
    render(format, &CENTRALITY_FIELDS, &rows)
}

/// Per-pair summands of one report, if it carries them.
pub fn format_terms(net: &Network, r: &CentralityReport, format: Format) -> String {
    let Some(terms) = &r.terms else {
        return String::new();
    };
    let rows: Vec<Vec<String>> = terms
        .iter()
        .map(|t| {
            vec![
                net.render_set(&r.set),
                net.token(t.y).to_string(),
                net.token(t.z).to_string(),
                t.phi_total.to_string(),
                t.phi_x.to_string(),
                opt(t.lambda_x),
                t.vitality().to_string(),
                opt(t.betweenness()),
            ]
        })
        .collect();
    render(
        format,
        &["set", "y", "z", "phi_total", "phi_X", "lambda_X", "vitality_term", "betweenness_term"],
        &rows,
    )
}
