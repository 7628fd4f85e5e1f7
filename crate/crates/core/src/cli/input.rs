//! Cycle and graph descriptions from flags or JSON documents.
//!
//! ```json
//! {"cycle": [2, 5, 3]}
//! {"graph": {"vertices": 3, "edges": [[1, 2, 2], [2, 3, 5], [3, 1, 3]]}}
//! ```

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::Value;

use crate::spline::{EdgeLabeledCycle, EdgeLabeledGraph, LabeledGraph, Spline};

use super::CliError;

#[derive(Debug, Clone)]
pub enum Input {
    Cycle(EdgeLabeledCycle),
    Graph(EdgeLabeledGraph),
}

impl Input {
    pub fn graph(&self) -> &dyn LabeledGraph {
        match self {
            Input::Cycle(c) => c,
            Input::Graph(g) => g,
        }
    }

    pub fn cycle(&self) -> Result<&EdgeLabeledCycle, CliError> {
        match self {
            Input::Cycle(c) => Ok(c),
            Input::Graph(_) => Err(CliError::Domain(
                "this command needs a cycle (--cycle or a document with key `cycle`)".into(),
            )),
        }
    }
}

/// Comma-separated integers, e.g. `2,5,3` or `-1,0,4`.
pub fn parse_list(text: &str) -> Result<Vec<BigInt>, CliError> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            BigInt::from_str(part)
                .map_err(|_| CliError::Parse(format!("`{part}` is not an integer")))
        })
        .collect()
}

/// Semicolon-separated splines, e.g. `1,1,1;0,2,12;0,0,15`.
pub fn parse_splines(text: &str) -> Result<Vec<Spline>, CliError> {
    text.split(';')
        .map(|row| parse_list(row).map(Spline::new))
        .collect()
}

pub fn from_flags(cycle: Option<&str>, file: Option<&Path>) -> Result<Input, CliError> {
    match (cycle, file) {
        (Some(_), Some(_)) => Err(CliError::Parse(
            "give either --cycle or --input, not both".into(),
        )),
        (None, None) => Err(CliError::Parse("missing --cycle or --input".into())),
        (Some(labels), None) => Ok(Input::Cycle(EdgeLabeledCycle::new(parse_list(labels)?)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
            parse_document(&text)
        }
    }
}

pub fn parse_document(text: &str) -> Result<Input, CliError> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| CliError::Parse("document must be a JSON object".into()))?;
    match (obj.get("cycle"), obj.get("graph")) {
        (Some(_), Some(_)) => Err(CliError::Parse(
            "document has both `cycle` and `graph`".into(),
        )),
        (None, None) => Err(CliError::Parse(
            "document needs a `cycle` or a `graph` key".into(),
        )),
        (Some(cycle), None) => {
            let labels = integers(cycle, "cycle")?;
            Ok(Input::Cycle(EdgeLabeledCycle::new(labels)?))
        }
        (None, Some(graph)) => {
            let vertices = graph
                .get("vertices")
                .ok_or_else(|| CliError::Parse("graph needs `vertices`".into()))
                .and_then(|v| index(v, "graph.vertices"))?;
            let edges = graph
                .get("edges")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::Parse("graph needs an `edges` list".into()))?;
            let triples = edges
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let what = format!("graph.edges[{i}]");
                    match e.as_array().map(Vec::as_slice) {
                        Some([u, v, label]) => {
                            Ok((index(u, &what)?, index(v, &what)?, integer(label, &what)?))
                        }
                        _ => Err(CliError::Parse(format!("{what} must be [u, v, label]"))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Input::Graph(EdgeLabeledGraph::new(vertices, triples)?))
        }
    }
}

fn integer(value: &Value, what: &str) -> Result<BigInt, CliError> {
    match value {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| CliError::Parse(format!("{what}: `{n}` is not an integer"))),
        other => Err(CliError::Parse(format!("{what}: expected an integer, got {other}"))),
    }
}

fn integers(value: &Value, what: &str) -> Result<Vec<BigInt>, CliError> {
    value
        .as_array()
        .ok_or_else(|| CliError::Parse(format!("`{what}` must be a list of integers")))?
        .iter()
        .map(|v| integer(v, what))
        .collect()
}

fn index(value: &Value, what: &str) -> Result<usize, CliError> {
    let n = integer(value, what)?;
    usize::try_from(&n).map_err(|_| CliError::Parse(format!("{what}: `{n}` is not a vertex index")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cycle_and_graph_documents() {
        match parse_document(r#"{"cycle": [2, 5, 3]}"#).unwrap() {
            Input::Cycle(c) => assert_eq!(c.to_string(), "{2,5,3}"),
            other => panic!("{other:?}"),
        }
        let g = parse_document(r#"{"graph": {"vertices": 2, "edges": [[1, 2, 2]]}}"#).unwrap();
        assert_eq!(g.graph().edges().len(), 1);
        let big = parse_document(r#"{"cycle": [123456789012345678901234567890, 5, 3]}"#).unwrap();
        assert_eq!(
            big.cycle().unwrap().label(1).to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn rejects_malformed_documents() {
        for doc in [
            "[1,2,3]",
            r#"{"cycle": [2, 5]}"#,
            r#"{"cycle": [2, 5.5, 3]}"#,
            r#"{"cycle": [2, 5, 3], "graph": {}}"#,
            r#"{"graph": {"vertices": 2, "edges": [[1, 2]]}}"#,
            r#"{"labels": [1]}"#,
            "not json",
        ] {
            assert!(parse_document(doc).is_err(), "{doc}");
        }
    }

    #[test]
    fn parses_lists() {
        assert_eq!(parse_list("-1, 0,4").unwrap(), vec![BigInt::from(-1), BigInt::from(0), BigInt::from(4)]);
        assert!(parse_list("1,,2").is_err());
        assert_eq!(parse_splines("1,1;0,2").unwrap().len(), 2);
    }
}
