//! Simple undirected graphs on vertices `0..n`.

mod cycles;
mod io;
mod named;

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{Scalar, Sign};

#[cfg(any(test, feature = "oracles"))]
pub use cycles::brute_force_cycle_count;
pub use cycles::{enumerate_cycles, CycleId, DEFAULT_CYCLE_CAP};
pub use io::{parse_edge_list, parse_graph6, write_edge_list};
pub use named::NamedGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    MissingVertex(usize, usize),
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("contraction set contains a cycle")]
    NotAForest,
    #[error("graph has more than {cap} cycles")]
    CapExceeded { cap: usize },
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("bad parameters for {0}")]
    BadParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    /// Duplicate edges are merged; self-loops are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::MissingVertex(w, n));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
            .collect()
    }

    /// Pairs `(u, v)`, `u < v`, that are not edges, lexicographically ordered.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.induced_components(&(0..self.n()).collect::<Vec<_>>()).len() == 1
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![None; self.n()];
        for s in 0..self.n() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for v in self.neighbors(u) {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Connected components of `G[S]`, each sorted, ordered by least vertex.
    pub fn induced_components(&self, set: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut sorted: Vec<usize> = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut comps = Vec::new();
        for &s in &sorted {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if inside[v] && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// `N(S)`: vertices outside `S` adjacent to some vertex of `S`.
    pub fn neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut out: BTreeSet<usize> = BTreeSet::new();
        for &u in set {
            for v in self.neighbors(u) {
                if !inside[v] {
                    out.insert(v);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn has_edge_between(&self, a: &[usize], b: &[usize]) -> bool {
        let mut in_b = vec![false; self.n()];
        for &v in b {
            in_b[v] = true;
        }
        a.iter().any(|&u| self.neighbors(u).any(|v| in_b[v]))
    }

    /// Shortest path from `from` to `to` inside `G[allowed]`; neighbors are
    /// explored in increasing order so ties resolve to the lexicographically
    /// first BFS tree.
    pub fn shortest_path_within(&self, allowed: &[usize], from: usize, to: usize) -> Option<Vec<usize>> {
        let mut ok = vec![false; self.n()];
        for &v in allowed {
            ok[v] = true;
        }
        if !ok[from] || !ok[to] {
            return None;
        }
        let mut parent = vec![usize::MAX; self.n()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for v in self.neighbors(u) {
                if ok[v] && parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Applies a deletion or contraction, relabeling survivors densely.
    pub fn modify(&self, op: &Modification) -> Result<Modified, GraphError> {
        let n = self.n();
        match op {
            Modification::DeleteVertices(vs) => {
                for &v in vs {
                    if v >= n {
                        return Err(GraphError::MissingVertex(v, n));
                    }
                }
                let gone: BTreeSet<usize> = vs.iter().copied().collect();
                let mut label_map = vec![None; n];
                let mut next = 0;
                for (v, slot) in label_map.iter_mut().enumerate() {
                    if !gone.contains(&v) {
                        *slot = Some(next);
                        next += 1;
                    }
                }
                let edges = self.edges().into_iter().filter_map(|(u, v)| {
                    Some((label_map[u]?, label_map[v]?))
                });
                Ok(Modified {
                    graph: Graph::from_edges(next, edges)?,
                    label_map,
                })
            }
            Modification::DeleteEdges(es) => {
                let mut g = self.clone();
                for &(u, v) in es {
                    if !self.has_edge(u, v) {
                        return Err(GraphError::MissingEdge(u, v));
                    }
                    g.adj[u].remove(&v);
                    g.adj[v].remove(&u);
                }
                Ok(Modified {
                    graph: g,
                    label_map: (0..n).map(Some).collect(),
                })
            }
            Modification::ContractEdges(es) => {
                // Union-find over the contracted edges; a repeated root means
                // the set is not a forest.
                let mut parent: Vec<usize> = (0..n).collect();
                fn find(p: &mut [usize], x: usize) -> usize {
                    let mut r = x;
                    while p[r] != r {
                        r = p[r];
                    }
                    let mut c = x;
                    while p[c] != r {
                        let nx = p[c];
                        p[c] = r;
                        c = nx;
                    }
                    r
                }
                for &(u, v) in es {
                    if !self.has_edge(u, v) {
                        return Err(GraphError::MissingEdge(u, v));
                    }
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru == rv {
                        return Err(GraphError::NotAForest);
                    }
                    // Keep the smaller label as representative.
                    let (lo, hi) = if ru < rv { (ru, rv) } else { (rv, ru) };
                    parent[hi] = lo;
                }
                let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
                let mut new_id = vec![usize::MAX; n];
                let mut next = 0;
                for v in 0..n {
                    if roots[v] == v {
                        new_id[v] = next;
                        next += 1;
                    }
                }
                let label_map: Vec<Option<usize>> = (0..n).map(|v| Some(new_id[roots[v]])).collect();
                let edges: Vec<(usize, usize)> = self
                    .edges()
                    .into_iter()
                    .map(|(u, v)| (label_map[u].unwrap(), label_map[v].unwrap()))
                    .filter(|(a, b)| a != b)
                    .collect();
                Ok(Modified {
                    graph: Graph::from_edges(next, edges)?,
                    label_map,
                })
            }
        }
    }

    /// Adjacency matrix as 0/1 entries.
    pub fn adjacency<S: Scalar>(&self) -> crate::matrix::Matrix<S> {
        crate::matrix::Matrix::from_fn(self.n(), self.n(), |i, j| {
            if self.has_edge(i, j) {
                S::one()
            } else {
                S::zero()
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Modification {
    DeleteVertices(Vec<usize>),
    DeleteEdges(Vec<(usize, usize)>),
    /// Must form a forest. Loops are dropped and parallel edges merged.
    ContractEdges(Vec<(usize, usize)>),
}

#[derive(Clone, Debug)]
pub struct Modified {
    pub graph: Graph,
    /// Old vertex id to new id; `None` for deleted vertices.
    pub label_map: Vec<Option<usize>>,
}

/// Supports and the separator/remote split of a vector on the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SupportProfile {
    pub supp_plus: Vec<usize>,
    pub supp_minus: Vec<usize>,
    /// `S(x) = N(supp(x))`.
    pub separator: Vec<usize>,
    /// `R(x) = V \ (supp(x) ∪ S(x))`.
    pub remote: Vec<usize>,
}

impl SupportProfile {
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.supp_plus.iter().chain(&self.supp_minus).copied().collect();
        s.sort_unstable();
        s
    }
}

/// Profile of a sign vector; zero entries are outside the support.
pub fn profile_of_signs(g: &Graph, signs: &[Sign]) -> SupportProfile {
    assert_eq!(signs.len(), g.n());
    let supp_plus: Vec<usize> = (0..g.n()).filter(|&v| signs[v] == Sign::Positive).collect();
    let supp_minus: Vec<usize> = (0..g.n()).filter(|&v| signs[v] == Sign::Negative).collect();
    let supp: Vec<usize> = (0..g.n()).filter(|&v| signs[v] != Sign::Zero).collect();
    let separator = g.neighborhood(&supp);
    let mut taken = vec![false; g.n()];
    for &v in supp.iter().chain(&separator) {
        taken[v] = true;
    }
    let remote = (0..g.n()).filter(|&v| !taken[v]).collect();
    SupportProfile {
        supp_plus,
        supp_minus,
        separator,
        remote,
    }
}

pub fn support_profile<S: Scalar>(g: &Graph, x: &[S]) -> SupportProfile {
    let signs: Vec<Sign> = x.iter().map(Scalar::sign).collect();
    profile_of_signs(g, &signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn components_examples() {
        let star = NamedGraph::Star(3).build().unwrap();
        assert_eq!(star.induced_components(&[1, 2]).len(), 2);
        let c4 = NamedGraph::Cycle(4).build().unwrap();
        assert_eq!(c4.induced_components(&[0, 1]).len(), 1);
        assert_eq!(c4.induced_components(&[0, 2]).len(), 2);
        assert!(c4.induced_components(&[]).is_empty());
    }

    #[test]
    fn profile_examples() {
        let star = NamedGraph::Star(3).build().unwrap();
        let p = support_profile(&star, &ints(&[0, 1, 1, -2]));
        assert_eq!(p.supp_plus, vec![1, 2]);
        assert_eq!(p.supp_minus, vec![3]);
        assert_eq!(p.separator, vec![0]);
        assert!(p.remote.is_empty());

        let p = support_profile(&star, &ints(&[0, 0, 0, 0]));
        assert!(p.supp_plus.is_empty() && p.supp_minus.is_empty() && p.separator.is_empty());
        assert_eq!(p.remote, vec![0, 1, 2, 3]);

        let c4 = NamedGraph::Cycle(4).build().unwrap();
        let p = support_profile(&c4, &ints(&[1, 1, -1, -1]));
        assert_eq!(p.supp_plus, vec![0, 1]);
        assert_eq!(p.supp_minus, vec![2, 3]);
        assert!(p.separator.is_empty() && p.remote.is_empty());
    }

    #[test]
    fn modify_examples() {
        let k4 = NamedGraph::Complete(4).build().unwrap();
        let k3 = k4.modify(&Modification::DeleteVertices(vec![2])).unwrap();
        assert_eq!(k3.graph, NamedGraph::Complete(3).build().unwrap());
        assert_eq!(k3.label_map, vec![Some(0), Some(1), None, Some(2)]);

        let c4 = NamedGraph::Cycle(4).build().unwrap();
        let c3 = c4.modify(&Modification::ContractEdges(vec![(0, 1)])).unwrap();
        assert_eq!(c3.graph, NamedGraph::Cycle(3).build().unwrap());

        assert_eq!(
            c4.modify(&Modification::DeleteEdges(vec![(0, 2)])).unwrap_err(),
            GraphError::MissingEdge(0, 2)
        );
        assert_eq!(
            c4.modify(&Modification::DeleteVertices(vec![9])).unwrap_err(),
            GraphError::MissingVertex(9, 4)
        );
        assert_eq!(
            c4.modify(&Modification::ContractEdges(vec![(0, 1), (1, 2), (2, 3), (0, 3)]))
                .unwrap_err(),
            GraphError::NotAForest
        );
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..9).prop_flat_map(|n| {
            prop::collection::vec(prop::bool::ANY, n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            g.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn components_partition_the_set(g in arb_graph(), mask in any::<u16>()) {
            let set: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
            let comps = g.induced_components(&set);
            let mut all: Vec<usize> = comps.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(&all, &set);
            for (i, a) in comps.iter().enumerate() {
                prop_assert!(!a.is_empty());
                for b in &comps[i + 1..] {
                    prop_assert!(!g.has_edge_between(a, b));
                }
            }
        }

        #[test]
        fn profile_partitions_vertices(g in arb_graph(), signs in prop::collection::vec(-1i64..=1, 8)) {
            let x = ints(&signs[..g.n()]);
            let p = support_profile(&g, &x);
            let mut all: Vec<usize> = p.supp_plus.iter().chain(&p.supp_minus).chain(&p.separator).chain(&p.remote).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
            prop_assert!(!g.has_edge_between(&p.support(), &p.remote));
        }
    }
}
