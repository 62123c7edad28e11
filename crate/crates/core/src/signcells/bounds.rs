use std::collections::BTreeSet;

use serde::Serialize;

use super::{enumerate_cells, Fan, SignCellError, SignPattern};
use crate::graph::{Graph, Modification};
use crate::schrodinger::SchrodingerMatrix;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// How the broken-vector hypothesis on `F` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum HypothesisCheck {
    /// Every broken kernel cone was enumerated and inspected.
    Exact,
    /// Maximum degree at most 3, so broken kernel vectors have at most three
    /// support components.
    DegreeAtMostThree,
    /// Maximum degree 4 and `F` nonempty: a broken vector with four support
    /// components leaves an independent complement, so it meets every edge.
    DegreeFourWithEdge,
}

#[derive(Clone, Debug)]
pub struct EtaCertificate<S> {
    /// `η(G) ≥ bound`, and `η(G - F) ≥ bound` when `G - F` is connected.
    pub bound: usize,
    pub subspace: Subspace<S>,
    pub hypothesis: HypothesisCheck,
    pub g_minus_f_connected: bool,
}

/// `L = {y ∈ ker M : y_u + y_v = 0 for uv ∈ F}` is a semivalid representation
/// once every broken kernel vector with more than three support components
/// meets an edge of `F`; its dimension bounds η from below.
pub fn eta_lower_bound<S: Scalar>(
    g: &Graph,
    m: &SchrodingerMatrix<S>,
    f: &[(usize, usize)],
    dim_guard: usize,
) -> Result<EtaCertificate<S>, SignCellError> {
    for &(u, v) in f {
        if !g.has_edge(u, v) {
            return Err(SignCellError::EdgeNotInGraph(u, v));
        }
    }
    if !g.is_connected() {
        return Err(SignCellError::Disconnected);
    }
    let kernel = m.kernel();
    let d = g.max_degree();
    let hypothesis = if kernel.dim() <= dim_guard {
        let fan = enumerate_cells(&kernel, dim_guard)?.classify(g)?;
        if let Some(bad) = hypothesis_counterexample(g, &fan, f) {
            return Err(SignCellError::HypothesisFails(bad));
        }
        HypothesisCheck::Exact
    } else if d <= 3 {
        HypothesisCheck::DegreeAtMostThree
    } else if d == 4 && !f.is_empty() {
        HypothesisCheck::DegreeFourWithEdge
    } else {
        return Err(SignCellError::HypothesisUnverified);
    };
    let n = g.n();
    let functionals: Vec<Vec<S>> = f
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![S::zero(); n];
            row[u] = S::one();
            row[v] = S::one();
            row
        })
        .collect();
    let subspace = kernel.constrain(&functionals);
    let g_minus_f_connected = g
        .modify(&Modification::DeleteEdges(f.to_vec()))
        .map(|m| m.graph.is_connected())
        .unwrap_or(false);
    Ok(EtaCertificate {
        bound: subspace.dim(),
        subspace,
        hypothesis,
        g_minus_f_connected,
    })
}

fn hypothesis_counterexample<S: Scalar>(g: &Graph, fan: &Fan<S>, f: &[(usize, usize)]) -> Option<SignPattern> {
    let touched: BTreeSet<usize> = f.iter().flat_map(|&(u, v)| [u, v]).collect();
    fan.broken_cells()
        .filter(|c| g.induced_components(&c.pattern.support()).len() > 3)
        .find(|c| c.pattern.support().iter().all(|v| !touched.contains(v)))
        .map(|c| c.pattern)
}

/// Heuristic choice of `F`: repeatedly take the edge meeting the most broken
/// kernel supports with more than three components that are still uncovered.
pub fn greedy_edge_cover<S: Scalar>(g: &Graph, fan: &Fan<S>) -> Vec<(usize, usize)> {
    let mut pending: Vec<BTreeSet<usize>> = fan
        .broken_cells()
        .map(|c| c.pattern.support())
        .filter(|s| g.induced_components(s).len() > 3)
        .map(|s| s.into_iter().collect())
        .collect();
    let edges = g.edges();
    let mut chosen = Vec::new();
    while !pending.is_empty() {
        let hits = |&(u, v): &(usize, usize)| {
            pending.iter().filter(|s| s.contains(&u) || s.contains(&v)).count()
        };
        let best = *edges
            .iter()
            .max_by(|a, b| hits(a).cmp(&hits(b)).then_with(|| b.cmp(a)))
            .expect("supports are nonempty, so some edge meets them");
        chosen.push(best);
        pending.retain(|s| !s.contains(&best.0) && !s.contains(&best.1));
    }
    chosen
}

/// `λ(G) ≥ corank(M) - d + 1` for `d` the maximum degree, clamped at zero.
pub fn lambda_lower_bound<S: Scalar>(g: &Graph, m: &SchrodingerMatrix<S>) -> Result<usize, SignCellError> {
    if !g.is_connected() {
        return Err(SignCellError::Disconnected);
    }
    Ok((m.corank() + 1).saturating_sub(g.max_degree()))
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FanSanityReport {
    pub broken_checked: usize,
    pub failures: Vec<String>,
}

impl FanSanityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Structural facts about broken cones of a semivalid fan: each is a 2-cone
/// bounded by two 1-cones that keep its negative support and each carry one
/// component of its positive support; no 1-cone bounds two broken cones.
pub fn fan_sanity<S: Scalar>(fan: &Fan<S>, g: &Graph) -> FanSanityReport {
    let mut rep = FanSanityReport::default();
    let fail = |rep: &mut FanSanityReport, p: &SignPattern, msg: &str| {
        rep.failures.push(format!("{p}: {msg}"));
    };
    for beta in fan.broken_cells() {
        rep.broken_checked += 1;
        let p = &beta.pattern;
        if beta.dim != 2 {
            fail(&mut rep, p, &format!("broken cone has dimension {}", beta.dim));
        }
        let boundary = fan.boundary(p);
        if boundary.len() != 2 {
            fail(&mut rep, p, &format!("boundary has {} cones, expected two", boundary.len()));
        }
        let comps = g.induced_components(&p.plus());
        let mut used = BTreeSet::new();
        for a in &boundary {
            if a.dim != 1 {
                fail(&mut rep, p, &format!("boundary cone {} is not a 1-cone", a.pattern));
            }
            if a.pattern.minus() != p.minus() {
                fail(&mut rep, p, &format!("boundary cone {} changes the negative support", a.pattern));
            }
            match comps.iter().position(|c| *c == a.pattern.plus()) {
                Some(i) if used.insert(i) => {}
                _ => fail(
                    &mut rep,
                    p,
                    &format!("boundary cone {} is not a fresh component of the positive support", a.pattern),
                ),
            }
        }
    }
    for alpha in fan.one_cones() {
        let over = fan
            .broken_cells()
            .filter(|b| alpha.pattern.is_proper_face_of(&b.pattern))
            .count();
        if over > 1 {
            fail(&mut rep, &alpha.pattern, &format!("1-cone bounds {over} broken cones"));
        }
    }
    rep
}
