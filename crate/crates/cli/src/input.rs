use std::fs;
use std::path::Path;

use cdv_core::graph::{parse_edge_list, parse_graph6};
use cdv_core::{ExactMatrix, FieldScalar, Graph, NamedGraph, Scalar};

use crate::CliError;

/// A graph argument is a file (edge list, or graph6 for `.g6`) when such a
/// file exists, otherwise a graph name such as `K7`, `K3,3` or `petersen`.
pub fn load_graph(arg: &str) -> Result<Graph, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(arg.to_string(), e))?;
        let g = if path.extension().is_some_and(|e| e == "g6") {
            parse_graph6(&text)
        } else {
            parse_edge_list(&text)
        };
        return g.map_err(|e| CliError::Input(format!("{arg}: {e}")));
    }
    arg.parse::<NamedGraph>()
        .and_then(|n| n.build())
        .map_err(|e| CliError::Input(format!("{arg}: neither a readable file nor a graph name ({e})")))
}

/// A matrix argument is a JSON file or one of the keywords `neg-adjacency`
/// (`-A(G)`) and `neg-all-ones` (`-J`).
pub fn load_matrix(arg: &str, g: &Graph) -> Result<ExactMatrix, CliError> {
    let n = g.n();
    match arg {
        "neg-adjacency" => Ok(g.adjacency::<FieldScalar>().map(|x| FieldScalar::from_i64(0) - x.clone())),
        "neg-all-ones" => Ok(ExactMatrix::from_fn(n, n, |_, _| FieldScalar::from_i64(-1))),
        _ => {
            let text = fs::read_to_string(arg).map_err(|e| CliError::Io(arg.to_string(), e))?;
            ExactMatrix::from_json(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")))
        }
    }
}

/// Parses `u-v,u-v,...` (spaces and `u v` pairs separated by `,` also work).
pub fn parse_edges(arg: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let bad = || CliError::Input(format!("edge list {arg:?} must look like 0-1,2-3"));
    arg.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (a, b) = pair.split_once(['-', ' ']).ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_lists() {
        assert_eq!(parse_edges("0-1, 2-3").unwrap(), vec![(0, 1), (2, 3)]);
        assert_eq!(parse_edges("").unwrap(), vec![]);
        assert!(parse_edges("0-x").is_err());
    }

    #[test]
    fn names_and_keywords() {
        let g = load_graph("K4").unwrap();
        assert_eq!(g.edge_count(), 6);
        let m = load_matrix("neg-all-ones", &g).unwrap();
        assert_eq!(m.rows(), 4);
        assert!(matches!(load_graph("no-such-graph"), Err(CliError::Input(_))));
    }
}
