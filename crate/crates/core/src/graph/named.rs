use std::str::FromStr;

use super::{Graph, GraphError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    Cycle(usize),
    /// `K_{1,k}` with center 0.
    Star(usize),
    Petersen,
    Heawood,
}

impl NamedGraph {
    pub fn build(&self) -> Result<Graph, GraphError> {
        let bad = || GraphError::BadParameters(format!("{self:?}"));
        match *self {
            NamedGraph::Complete(n) => {
                if n == 0 {
                    return Err(bad());
                }
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            NamedGraph::CompleteBipartite(a, b) => {
                if a == 0 || b == 0 {
                    return Err(bad());
                }
                Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            }
            NamedGraph::Path(n) => {
                if n == 0 {
                    return Err(bad());
                }
                Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
            }
            NamedGraph::Cycle(n) => {
                if n < 3 {
                    return Err(bad());
                }
                Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
            }
            NamedGraph::Star(k) => {
                if k == 0 {
                    return Err(bad());
                }
                Graph::from_edges(k + 1, (1..=k).map(|v| (0, v)))
            }
            NamedGraph::Petersen => {
                // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i ~ i+5.
                let outer = (0..5).map(|i| (i, (i + 1) % 5));
                let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
                let spokes = (0..5).map(|i| (i, i + 5));
                Graph::from_edges(10, outer.chain(inner).chain(spokes))
            }
            NamedGraph::Heawood => {
                // LCF notation [5, -5]^7 on a 14-cycle.
                let ring = (0..14).map(|i| (i, (i + 1) % 14));
                let chords = (0..14).step_by(2).map(|i| (i, (i + 5) % 14));
                Graph::from_edges(14, ring.chain(chords))
            }
        }
    }
}

/// Accepts `K4`, `K_4`, `K3,3`, `K_{3,3}`, `path5`, `cycle5`, `C5`, `star3`,
/// `petersen` and `heawood` (case-insensitive).
impl FromStr for NamedGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let unknown = || GraphError::UnknownName(s.to_string());
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '{' | '}' | '(' | ')' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        match key.as_str() {
            "petersen" => return Ok(NamedGraph::Petersen),
            "heawood" => return Ok(NamedGraph::Heawood),
            _ => {}
        }
        for (prefix, make) in [
            ("path", NamedGraph::Path as fn(usize) -> NamedGraph),
            ("cycle", NamedGraph::Cycle),
            ("star", NamedGraph::Star),
            ("c", NamedGraph::Cycle),
            ("p", NamedGraph::Path),
        ] {
            if let Some(rest) = key.strip_prefix(prefix) {
                if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
                    return Ok(make(num(rest)?));
                }
            }
        }
        if let Some(rest) = key.strip_prefix('k') {
            return match rest.split_once(',') {
                Some((a, b)) => Ok(NamedGraph::CompleteBipartite(num(a)?, num(b)?)),
                None => Ok(NamedGraph::Complete(num(rest)?)),
            };
        }
        Err(unknown())
    }
}
