use std::fmt::Write as _;

use super::{Graph, GraphError};

/// Reads `n m` followed by `m` lines `u v`. Blank lines and `#` comments are
/// skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| GraphError::Parse("empty input".into()))?;
    let nums = parse_numbers(header)?;
    let [n, m] = nums[..] else {
        return Err(GraphError::Parse(format!("header must be `n m`, got {header:?}")));
    };
    let mut g = Graph::empty(n);
    let mut count = 0;
    for line in lines {
        let pair = parse_numbers(line)?;
        let [u, v] = pair[..] else {
            return Err(GraphError::Parse(format!("edge line must be `u v`, got {line:?}")));
        };
        if g.has_edge(u, v) {
            return Err(GraphError::Parse(format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v)?;
        count += 1;
    }
    if count != m {
        return Err(GraphError::Parse(format!("header declares {m} edges, found {count}")));
    }
    Ok(g)
}

fn parse_numbers(line: &str) -> Result<Vec<usize>, GraphError> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| GraphError::Parse(format!("not a vertex id: {t:?}")))
        })
        .collect()
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

/// Reads the graph6 format (graphs with fewer than 258048 vertices).
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let body = text.trim().strip_prefix(">>graph6<<").unwrap_or(text.trim());
    let bytes: Vec<u8> = body.bytes().collect();
    if bytes.is_empty() || bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Parse("graph6 characters must lie in 63..=126".into()));
    }
    let (n, rest) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        return Err(GraphError::Parse("graph6 input too large".into()));
    };
    let needed = n * n.saturating_sub(1) / 2;
    if rest.len() * 6 < needed {
        return Err(GraphError::Parse("graph6 adjacency data truncated".into()));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                g.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    Ok(g)
}
