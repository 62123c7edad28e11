use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use super::PolytopeComplex;
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::signcells::SignPattern;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellularMapError {
    #[error("broken cone {0} has an empty separator")]
    EmptySeparator(SignPattern),
    #[error("vertex {0} sees more than one broken cone among its antipodal edges")]
    AmbiguousBrokenCone(usize),
    #[error("no allowed node for vertex {0}")]
    NoAllowedNode(usize),
    #[error("no walk for edge {0:?} inside its node set")]
    NoWalk(Vec<usize>),
    #[error("complex has {found} coordinates but the graph has {expected} nodes")]
    AmbientMismatch { expected: usize, found: usize },
}

/// Images of the vertices and edges of `P` in `G`, with the node sets `W(F)`.
#[derive(Clone, Debug)]
pub struct CellularMap {
    pub vertex_image: Vec<usize>,
    /// Walk per edge face, keyed by face index.
    pub edge_walks: BTreeMap<usize, Vec<usize>>,
    /// `W(F)` per face as a node bit mask.
    pub w_sets: Vec<u128>,
    pub broken_anchors: BTreeMap<SignPattern, usize>,
}

fn mask(nodes: impl IntoIterator<Item = usize>) -> u128 {
    nodes.into_iter().fold(0, |m, v| m | 1u128 << v)
}

fn nodes(mut m: u128) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Single broken cone among the broken edges antipodal to face `i`.
fn antipodal_broken_cone<S: Scalar>(p: &PolytopeComplex<S>, i: usize) -> Result<Option<SignPattern>, ()> {
    let cones: BTreeSet<SignPattern> = p
        .antipodal_partners(i)
        .into_iter()
        .filter(|&j| p.faces[j].len() == 2 && p.is_broken_face(j))
        .map(|j| p.gamma[j])
        .collect();
    match cones.len() {
        0 => Ok(None),
        1 => Ok(cones.into_iter().next()),
        _ => Err(()),
    }
}

/// Maps the 1-skeleton of `P` into `G` so that antipodal faces get disjoint
/// node sets.
pub fn build_cellular_map<S: Scalar>(p: &PolytopeComplex<S>, g: &Graph) -> Result<CellularMap, CellularMapError> {
    let n = g.n();
    let found = p.coords.first().map_or(n, Vec::len);
    if found != n {
        return Err(CellularMapError::AmbientMismatch { expected: n, found });
    }
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };

    let mut broken_anchors = BTreeMap::new();
    for beta in p.broken_cones() {
        let sep = g.neighborhood(&beta.support());
        let v = *sep.first().ok_or(CellularMapError::EmptySeparator(*beta))?;
        broken_anchors.insert(*beta, v);
    }

    let mut w_sets = vec![0u128; p.faces.len()];
    let mut vertex_image = vec![usize::MAX; p.vertex_count()];
    for (u, image) in vertex_image.iter_mut().enumerate() {
        let fi = p.index[&vec![u]];
        let plus = p.gamma[fi].plus_mask();
        let allowed = match antipodal_broken_cone(p, fi).map_err(|_| CellularMapError::AmbiguousBrokenCone(u))? {
            Some(beta) => {
                let closed = beta.plus_mask() | beta.minus_mask() | mask(g.neighborhood(&beta.support()));
                plus & closed & !(1u128 << broken_anchors[&beta])
            }
            None => plus,
        };
        if allowed == 0 {
            return Err(CellularMapError::NoAllowedNode(u));
        }
        let f = allowed.trailing_zeros() as usize;
        *image = f;
        w_sets[fi] = 1u128 << f;
    }

    let mut edge_walks = BTreeMap::new();
    for e in p.edges().collect::<Vec<_>>() {
        let plus = p.gamma[e].plus_mask();
        let w = if p.is_broken_face(e) {
            plus | 1u128 << broken_anchors[&p.gamma[e]]
        } else {
            match antipodal_broken_cone(p, e) {
                Ok(Some(beta)) => plus & !(1u128 << broken_anchors[&beta]),
                Ok(None) => plus,
                Err(()) => return Err(CellularMapError::AmbiguousBrokenCone(p.faces[e][0])),
            }
        } & all;
        let (a, b) = (vertex_image[p.faces[e][0]], vertex_image[p.faces[e][1]]);
        let walk = g
            .shortest_path_within(&nodes(w), a, b)
            .ok_or_else(|| CellularMapError::NoWalk(p.faces[e].clone()))?;
        w_sets[e] = w;
        edge_walks.insert(e, walk);
    }

    for i in 0..p.faces.len() {
        if p.faces[i].len() > 2 {
            w_sets[i] = p.faces[i]
                .iter()
                .copied()
                .tuple_combinations()
                .map(|(a, b)| w_sets[p.index[&vec![a, b]]])
                .fold(0, |m, w| m | w);
        }
    }

    Ok(CellularMap {
        vertex_image,
        edge_walks,
        w_sets,
        broken_anchors,
    })
}

impl CellularMap {
    pub fn w_set(&self, face: usize) -> Vec<usize> {
        nodes(self.w_sets[face])
    }

    /// Checks that each walk runs between the endpoint images inside `G[W(e)]`.
    pub fn check_walks<S: Scalar>(&self, p: &PolytopeComplex<S>, g: &Graph) -> bool {
        self.edge_walks.iter().all(|(&e, walk)| {
            let (a, b) = (p.faces[e][0], p.faces[e][1]);
            walk.first() == Some(&self.vertex_image[a])
                && walk.last() == Some(&self.vertex_image[b])
                && walk.iter().all(|&v| self.w_sets[e] >> v & 1 == 1)
                && walk.windows(2).all(|s| g.has_edge(s[0], s[1]))
        })
    }

    pub fn to_json<S: Scalar>(&self, p: &PolytopeComplex<S>) -> serde_json::Value {
        #[derive(Serialize)]
        struct WalkJson<'a> {
            edge: &'a [usize],
            walk: &'a [usize],
        }
        let walks: Vec<WalkJson> = self
            .edge_walks
            .iter()
            .map(|(&e, w)| WalkJson { edge: &p.faces[e], walk: w })
            .collect();
        let w: Vec<Vec<usize>> = (0..self.w_sets.len()).map(|i| self.w_set(i)).collect();
        let anchors: BTreeMap<String, usize> = self.broken_anchors.iter().map(|(b, &v)| (b.to_string(), v)).collect();
        serde_json::json!({
            "f": self.vertex_image,
            "walks": walks,
            "W": w,
            "brokenAnchors": anchors,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DisjointnessReport {
    pub pairs_checked: usize,
    /// Antipodal face pairs (as vertex sets) whose node sets meet, with the shared nodes.
    pub failures: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)>,
}

impl DisjointnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_disjointness<S: Scalar>(p: &PolytopeComplex<S>, map: &CellularMap) -> DisjointnessReport {
    let pairs = p.antipodal_pairs();
    let failures = pairs
        .iter()
        .filter_map(|&(i, j)| {
            let common = map.w_sets[i] & map.w_sets[j];
            (common != 0).then(|| (p.faces[i].clone(), p.faces[j].clone(), nodes(common)))
        })
        .collect();
    DisjointnessReport {
        pairs_checked: pairs.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;
    use crate::linalg::kernel_basis;
    use crate::matrix::Matrix;
    use crate::polytopal::build_polytopal_representation;
    use crate::scalar::Rational;

    #[test]
    fn star_routes_broken_edges_through_the_center() {
        let g = NamedGraph::Star(3).build().unwrap();
        let l = kernel_basis(&g.adjacency::<Rational>());
        let p = build_polytopal_representation(&l, &g, 4).unwrap();
        let map = build_cellular_map(&p, &g).unwrap();
        assert!(map.broken_anchors.values().all(|&v| v == 0));
        assert!(map.check_walks(&p, &g));
        for e in p.edges().filter(|&e| p.is_broken_face(e)) {
            assert!(map.w_set(e).contains(&0));
        }
        assert!(verify_disjointness(&p, &map).passed());
    }

    #[test]
    fn triangle_w_sets_are_small() {
        let g = NamedGraph::Complete(3).build().unwrap();
        let l = kernel_basis(&Matrix::from_fn(3, 3, |_, _| Rational::from_i64(-1)));
        let p = build_polytopal_representation(&l, &g, 4).unwrap();
        let map = build_cellular_map(&p, &g).unwrap();
        assert!(p.edges().all(|e| map.w_set(e).len() <= 2));
        let report = verify_disjointness(&p, &map);
        assert!(report.pairs_checked > 0);
        assert!(report.passed());
    }
}
