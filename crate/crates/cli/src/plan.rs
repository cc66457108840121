use edgemerge_core::{ContractionRequest, EdgeId, Mode, WeightedGraph};

use crate::CliError;

/// A parsed plan file: `contract u v` lines and an optional `mode` line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Plan {
    pub contract: Vec<(String, String)>,
    pub mode: Option<Mode>,
}

impl Plan {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut plan = Plan::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let fields: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
            match fields[..] {
                [] => {}
                ["contract", u, v] => plan.contract.push((u.to_string(), v.to_string())),
                ["mode", name] => {
                    let mode = Mode::from_name(name).ok_or_else(|| CliError::Parse {
                        line,
                        message: format!("unknown mode `{name}` (expected single, independent, subpath or tree)"),
                    })?;
                    if plan.mode.replace(mode).is_some() {
                        return Err(CliError::Parse { line, message: "mode given twice".into() });
                    }
                }
                _ => {
                    return Err(CliError::Parse {
                        line,
                        message: format!("expected `contract u v` or `mode <name>`, found `{}`", raw.trim()),
                    })
                }
            }
        }
        if plan.contract.is_empty() {
            return Err(CliError::Parse { line: 0, message: "plan contracts no edges".into() });
        }
        Ok(plan)
    }

    /// Resolves the named edges; `mode` overrides the plan's own mode line.
    pub fn request(&self, g: &WeightedGraph, mode: Option<Mode>) -> Result<ContractionRequest, CliError> {
        let targets: Vec<EdgeId> =
            self.contract.iter().map(|(u, v)| g.edge_by_labels(u, v)).collect::<Result<_, _>>()?;
        Ok(ContractionRequest::new(g, targets, mode.or(self.mode))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_contract_and_mode() {
        let plan = Plan::parse("# plan\ncontract a b\nmode tree\n\ncontract b c # trailing\n").unwrap();
        assert_eq!(plan.contract, vec![("a".into(), "b".into()), ("b".into(), "c".into())]);
        assert_eq!(plan.mode, Some(Mode::TreeSingleEdge));
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(Plan::parse("contract a\n"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(Plan::parse("contract a b\nmode fast\n"), Err(CliError::Parse { line: 2, .. })));
        assert!(matches!(Plan::parse("# nothing\n"), Err(CliError::Parse { .. })));
    }
}
