use std::collections::HashMap;
use std::fmt::Write as _;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::weight::{format_weight, parse_weight};

/// Reads a whitespace-separated `u v w` edge list.
///
/// `#` starts a comment, blank lines are skipped, and weights are decimals
/// or `p/q` rationals. Vertex labels are taken verbatim; edge ids follow
/// input order. Errors carry the 1-based line of the offending edge.
pub fn load_graph(text: &str) -> Result<WeightedGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut lines = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let [u, v, weight] = fields[..] else {
            return Err(Error::Parse { line, message: format!("expected `u v w`, found {} fields", fields.len()) });
        };
        let weight = parse_weight(weight).map_err(|message| Error::Parse { line, message })?;

        let mut id = |label: &str| -> usize {
            *index.entry(label.to_string()).or_insert_with(|| {
                labels.push(label.to_string());
                labels.len() - 1
            })
        };
        let (a, b) = (id(u), id(v));
        edges.push((a, b, weight));
        lines.push(line);
    }

    if edges.is_empty() {
        return Err(Error::Empty);
    }

    let at = |edge_line: usize| lines[edge_line - 1];
    let cards = vec![1; labels.len()];
    WeightedGraph::with_cardinalities(labels, cards, edges).map_err(|err| match err {
        Error::NegativeWeight { line } => Error::NegativeWeight { line: at(line) },
        Error::HasCycle { line } => Error::HasCycle { line: at(line) },
        Error::Disconnected { line } => Error::Disconnected { line: at(line) },
        other => other,
    })
}

/// Writes `g` in the format read by [`load_graph`].
pub fn write_edge_list(g: &WeightedGraph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", g.label(e.u), g.label(e.v), format_weight(&e.weight));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphKind;
    use crate::weight::{ratio, w};

    #[test]
    fn smallest_path() {
        let g = load_graph("1 2 3.0\n2 3 4.0").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.kind(), GraphKind::Path);
        assert_eq!(g.edges()[1].weight, w(4));
    }

    #[test]
    fn star_is_tree() {
        let g = load_graph("1 2 1\n1 3 1\n1 4 1").unwrap();
        assert_eq!(g.kind(), GraphKind::Tree);
    }

    #[test]
    fn triangle_has_cycle() {
        assert_eq!(load_graph("1 2 1\n2 3 1\n3 1 1").unwrap_err(), Error::HasCycle { line: 3 });
    }

    #[test]
    fn errors_name_file_lines() {
        let text = "# header\n\n1 2 1\n2 3 -1\n";
        assert_eq!(load_graph(text).unwrap_err(), Error::NegativeWeight { line: 4 });
        assert_eq!(load_graph("1 2 1\n\n3 4 1").unwrap_err(), Error::Disconnected { line: 3 });
        assert!(matches!(load_graph("1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_graph("1 2 x\n"), Err(Error::Parse { line: 1, .. })));
        assert_eq!(load_graph("1 1 2"), Err(Error::HasCycle { line: 1 }));
        assert_eq!(load_graph("# nothing\n"), Err(Error::Empty));
    }

    #[test]
    fn comments_and_rationals() {
        let g = load_graph("a b 1/3 # trailing\nb c 0.5\n").unwrap();
        assert_eq!(g.edges()[0].weight, ratio(1, 3));
        assert_eq!(write_edge_list(&g), "a b 1/3\nb c 0.5\n");
    }
}
