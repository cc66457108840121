use std::fmt::Write as _;

use clap::ValueEnum;
use edgemerge_core::{
    contract, format_weight, ContractionRequest, EdgeId, ErrorReport, MarkState, Marking, NeighborProfile,
    OracleVerdict, Side, Verdict, WeightedGraph, Witness,
};

use crate::{CliError, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned, human-readable sections.
    Table,
    /// One `key=value` line per fact.
    Records,
}

fn edge_name(g: &WeightedGraph, e: EdgeId) -> String {
    let edge = g.edges()[e.0];
    format!("{}-{}", g.label(edge.u), g.label(edge.v))
}

fn state_name(s: MarkState) -> String {
    match s {
        MarkState::Unmarked => "unmarked".into(),
        MarkState::Marked => "marked".into(),
        MarkState::Fractional(c) => format!("fraction {}", format_weight(&c)),
    }
}

pub(crate) fn compress(
    g: &WeightedGraph,
    req: &ContractionRequest,
    outcome: &Outcome,
    report: &ErrorReport,
    format: Format,
) -> Result<String, CliError> {
    let contracted = contract(g, req, &outcome.redistribution)?;
    let edges = edgemerge_core::write_edge_list(contracted.base());
    let changed: Vec<_> = outcome
        .redistribution
        .iter()
        .map(|(e, d)| {
            let old = g.edges()[e.0].weight;
            (edge_name(g, e), old, old + d, d)
        })
        .collect();
    let mut out = String::new();
    match format {
        Format::Table => {
            let _ = writeln!(out, "mode: {}", outcome.mode.name());
            let _ = writeln!(out, "contracted: {}", names(g, req.targets()));
            let _ = writeln!(out, "\ncontracted graph:");
            for line in edges.lines() {
                let _ = writeln!(out, "  {line}");
            }
            let _ = writeln!(out, "\nchanged edges:");
            if changed.is_empty() {
                let _ = writeln!(out, "  (none)");
            } else {
                let _ = writeln!(out, "  {:<16} {:>10} {:>10} {:>10}", "edge", "old", "new", "delta");
                for (name, old, new, d) in &changed {
                    let _ = writeln!(
                        out,
                        "  {:<16} {:>10} {:>10} {:>10}",
                        name,
                        format_weight(old),
                        format_weight(new),
                        format_weight(d)
                    );
                }
            }
            if let Some(tree) = &outcome.tree {
                let _ = writeln!(out, "\nmarking ({} partial chosen):", tree.chosen.name());
                for (e, s) in tree.marking().iter() {
                    let _ = writeln!(out, "  {:<16} {}", edge_name(g, e), state_name(s));
                }
                let _ = writeln!(out, "partial unit errors: left {} right {}", tree.left_units, tree.right_units);
            }
            let _ = writeln!(out, "\nerror:");
            let _ = writeln!(out, "  total          {}", format_weight(&report.total));
            let _ = writeln!(out, "  outside pairs  {}", format_weight(&report.outside_pairs));
            let _ = writeln!(out, "  cross pairs    {}", format_weight(&report.cross_pairs));
            if let Some(units) = report.unit_count {
                let _ = writeln!(out, "  units          {units}");
            }
        }
        Format::Records => {
            let _ = writeln!(out, "mode={}", outcome.mode.name());
            for &t in req.targets() {
                let _ = writeln!(out, "contracted={}", edge_name(g, t));
            }
            for line in edges.lines() {
                let _ = writeln!(out, "edge={line}");
            }
            for (name, old, new, d) in &changed {
                let _ = writeln!(
                    out,
                    "changed={name} old={} new={} delta={}",
                    format_weight(old),
                    format_weight(new),
                    format_weight(d)
                );
            }
            if let Some(tree) = &outcome.tree {
                let _ = writeln!(out, "chosen={}", tree.chosen.name());
                for (e, s) in tree.marking().iter() {
                    let _ = writeln!(out, "mark={} state={}", edge_name(g, e), state_name(s).replace(' ', ":"));
                }
                let _ = writeln!(out, "left_units={}", tree.left_units);
                let _ = writeln!(out, "right_units={}", tree.right_units);
            }
            let _ = writeln!(out, "error={}", format_weight(&report.total));
            let _ = writeln!(out, "outside_pairs={}", format_weight(&report.outside_pairs));
            let _ = writeln!(out, "cross_pairs={}", format_weight(&report.cross_pairs));
            if let Some(units) = report.unit_count {
                let _ = writeln!(out, "units={units}");
            }
        }
    }
    Ok(out)
}

fn names(g: &WeightedGraph, edges: &[EdgeId]) -> String {
    edges.iter().map(|&e| edge_name(g, e)).collect::<Vec<_>>().join(", ")
}

pub(crate) fn profile(g: &WeightedGraph, p: &NeighborProfile, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Table => {
            let _ = writeln!(out, "edge: {}", edge_name(g, p.edge));
            for side in [Side::Left, Side::Right] {
                let vertex = if side == Side::Left { p.left_vertex } else { p.right_vertex };
                let _ = writeln!(out, "{} ({}): total {}", side.name(), g.label(vertex), p.sum(side));
                for &(e, size) in p.side(side) {
                    let _ = writeln!(out, "  {:<16} {size}", edge_name(g, e));
                }
            }
        }
        Format::Records => {
            let _ = writeln!(out, "edge={}", edge_name(g, p.edge));
            let _ = writeln!(out, "left_vertex={}", g.label(p.left_vertex));
            let _ = writeln!(out, "right_vertex={}", g.label(p.right_vertex));
            for (side, e, size) in p.neighbors() {
                let _ = writeln!(out, "neighbor={} side={} size={size}", edge_name(g, e), side.name());
            }
            let _ = writeln!(out, "sum_left={}", p.sum_left);
            let _ = writeln!(out, "sum_right={}", p.sum_right);
        }
    }
    out
}

fn witness(g: &WeightedGraph, w: &Witness) -> String {
    match w {
        Witness::Redistribution(r) if r.is_empty() => "no change".into(),
        Witness::Redistribution(r) => {
            r.iter().map(|(e, d)| format!("{}:{}", edge_name(g, e), format_weight(&d))).collect::<Vec<_>>().join(" ")
        }
        Witness::Marking(m) => marking(g, m),
    }
}

fn marking(g: &WeightedGraph, m: &Marking) -> String {
    let marked: Vec<String> = m
        .iter()
        .filter(|&(_, s)| s != MarkState::Unmarked)
        .map(|(e, s)| match s {
            MarkState::Fractional(c) => format!("{}:{}", edge_name(g, e), format_weight(&c)),
            _ => edge_name(g, e),
        })
        .collect();
    if marked.is_empty() {
        "nothing marked".into()
    } else {
        format!("marked {}", marked.join(" "))
    }
}

pub(crate) fn verify(g: &WeightedGraph, runs: &[(&str, OracleVerdict)], format: Format) -> String {
    let mut out = String::new();
    for (name, v) in runs {
        let (verdict, gap) = match v.verdict {
            Verdict::Confirmed => ("confirmed", None),
            Verdict::Refuted { gap } => ("refuted", Some(gap)),
        };
        match format {
            Format::Table => {
                let _ = write!(
                    out,
                    "{name:<11} {verdict:<9} claimed {} best {}",
                    format_weight(&v.claimed_value),
                    format_weight(&v.best_value)
                );
                if let Some(gap) = gap {
                    let _ = write!(out, " gap {}", format_weight(&gap));
                }
                let _ = writeln!(out, " witness: {}", witness(g, &v.best_witness));
            }
            Format::Records => {
                let _ = write!(
                    out,
                    "oracle={name} verdict={verdict} claimed={} best={}",
                    format_weight(&v.claimed_value),
                    format_weight(&v.best_value)
                );
                if let Some(gap) = gap {
                    let _ = write!(out, " gap={}", format_weight(&gap));
                }
                let _ = writeln!(out);
            }
        }
    }
    out
}
