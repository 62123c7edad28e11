//! Deciding `σ(G) ≤ 5` through the symmetric 4-cycles of the deleted product
//! of the 2-closure, and certificates for `σ(G) > 5`.
//!
//! The 2-closure attaches a disk to every cycle of `G`. Its symmetric 4-chains
//! are spanned by unordered pairs `{r, s}` of vertex-disjoint cycles, and the
//! boundary of such a pair is `Σ_{e ∈ r} {e, s} + Σ_{e ∈ s} {e, r}`. The crossing
//! form `I` is evaluated with the vertices on the moment curve in `R^4` and
//! every disk fan-triangulated from its least vertex.

mod certificate;
mod crossing;

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf2::Gf2Matrix;
use crate::graph::{enumerate_cycles, CycleId, Graph, GraphError};

pub use certificate::{pushforward, verify_certificate, CertificateCheck, ObstructionCertificate, TrianglePair};
pub use crossing::{triangles_cross, Triangle};

pub const MAX_PARAM_RETRIES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sigma5Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("degenerate moment-curve position: {0}")]
    DegeneratePosition(String),
    #[error("moment parameters must be one distinct integer per vertex")]
    BadParameters,
    #[error("graph has {0} vertices; at most 128 are supported")]
    TooManyVertices(usize),
    #[error("chain is not a cycle")]
    NotACycle,
}

/// `G` with a disk glued into every cycle.
#[derive(Clone, Debug)]
pub struct TwoClosure {
    pub graph: Graph,
    pub cycles: Vec<CycleId>,
    /// Fan triangulation of each disk from the least vertex of its cycle.
    pub disks: Vec<Vec<Triangle>>,
    masks: Vec<u128>,
}

/// Triangles `(v_0, v_i, v_{i+1})` of a cycle in canonical form.
pub fn fan_triangulation(c: &CycleId) -> Vec<Triangle> {
    let v = c.vertices();
    (1..v.len() - 1)
        .map(|i| {
            let mut t = [v[0], v[i], v[i + 1]];
            t.sort_unstable();
            t
        })
        .collect()
}

pub fn two_closure(g: &Graph, cap: usize) -> Result<TwoClosure, Sigma5Error> {
    if g.n() > 128 {
        return Err(Sigma5Error::TooManyVertices(g.n()));
    }
    let cycles = enumerate_cycles(g, cap)?;
    let disks = cycles.iter().map(fan_triangulation).collect();
    let masks = cycles
        .iter()
        .map(|c| c.vertices().iter().fold(0u128, |m, &v| m | 1 << v))
        .collect();
    Ok(TwoClosure {
        graph: g.clone(),
        cycles,
        disks,
        masks,
    })
}

impl TwoClosure {
    pub fn disjoint(&self, r: usize, s: usize) -> bool {
        self.masks[r] & self.masks[s] == 0
    }

    fn edge_mask(&self, (u, v): (usize, usize)) -> u128 {
        1u128 << u | 1u128 << v
    }
}

/// Generators of the symmetric 4- and 3-chains and the boundary between them.
#[derive(Clone, Debug)]
pub struct SymChainBasis {
    /// Unordered vertex-disjoint cycle pairs `(r, s)` with `r < s`.
    pub gen4: Vec<(usize, usize)>,
    /// Pairs of an edge and a cycle avoiding it.
    pub gen3: Vec<((usize, usize), usize)>,
    /// Boundary of each 4-generator as indices into `gen3`.
    pub boundary: Vec<Vec<usize>>,
}

/// A symmetric 4-chain, given by the generators with coefficient one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymChain4 {
    pub support: Vec<usize>,
}

impl SymChain4 {
    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

impl SymChainBasis {
    pub fn boundary_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_columns(self.gen3.len(), &self.boundary)
    }

    pub fn is_cycle(&self, z: &SymChain4) -> bool {
        self.boundary_matrix().apply(&z.support).is_clear()
    }

    /// Applies the boundary again, landing in chains generated by
    /// `{vertex, cycle}` and `{edge, edge}` pairs, and checks that it vanishes.
    pub fn boundary_squared_vanishes(&self, t: &TwoClosure) -> bool {
        #[derive(PartialEq, Eq, Hash)]
        enum Cell2 {
            VertexDisk(usize, usize),
            EdgeEdge((usize, usize), (usize, usize)),
        }
        self.boundary.iter().all(|col| {
            let mut acc: HashMap<Cell2, bool> = HashMap::new();
            let mut flip = |k| {
                let e = acc.entry(k).or_insert(false);
                *e = !*e;
            };
            for &i in col {
                let ((u, v), s) = self.gen3[i];
                flip(Cell2::VertexDisk(u, s));
                flip(Cell2::VertexDisk(v, s));
                for f in t.cycles[s].edges() {
                    flip(Cell2::EdgeEdge((u, v).min(f), (u, v).max(f)));
                }
            }
            acc.values().all(|&odd| !odd)
        })
    }
}

/// Generators and a basis of the symmetric 4-cycles.
pub fn sym_cycle_basis(t: &TwoClosure) -> (SymChainBasis, Vec<SymChain4>) {
    let k = t.cycles.len();
    let gen4: Vec<(usize, usize)> = (0..k)
        .into_par_iter()
        .flat_map_iter(|r| (r + 1..k).filter(move |&s| t.disjoint(r, s)).map(move |s| (r, s)))
        .collect();
    let mut index: HashMap<((usize, usize), usize), usize> = HashMap::new();
    let mut gen3 = Vec::new();
    let mut boundary = Vec::with_capacity(gen4.len());
    for &(r, s) in &gen4 {
        let mut col = Vec::new();
        for (a, b) in [(r, s), (s, r)] {
            for e in t.cycles[a].edges() {
                debug_assert_eq!(t.edge_mask(e) & t.masks[b], 0);
                let next = gen3.len();
                let i = *index.entry((e, b)).or_insert(next);
                if i == next {
                    gen3.push((e, b));
                }
                col.push(i);
            }
        }
        col.sort_unstable();
        boundary.push(col);
    }
    let basis = SymChainBasis { gen4, gen3, boundary };
    let kernel = basis
        .boundary_matrix()
        .kernel()
        .into_iter()
        .map(|support| SymChain4 { support })
        .collect();
    (basis, kernel)
}

/// Parity of crossings between the images of the disks of `r` and `s`.
pub fn crossing_parity(t: &TwoClosure, r: usize, s: usize, params: &[i64]) -> Result<bool, Sigma5Error> {
    check_params(params, t.graph.n())?;
    if !t.disjoint(r, s) {
        return Err(Sigma5Error::DegeneratePosition(format!("cycles {r} and {s} share a vertex")));
    }
    let mut odd = false;
    for a in &t.disks[r] {
        for b in &t.disks[s] {
            odd ^= triangles_cross(a, b, params)?;
        }
    }
    Ok(odd)
}

pub(crate) fn check_params(params: &[i64], n: usize) -> Result<(), Sigma5Error> {
    let mut sorted = params.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if params.len() != n || sorted.len() != n {
        return Err(Sigma5Error::BadParameters);
    }
    Ok(())
}

/// `I(z)`: the crossing form summed over the generators of `z`.
pub fn evaluate_i(z: &SymChain4, t: &TwoClosure, basis: &SymChainBasis, params: &[i64]) -> Result<bool, Sigma5Error> {
    if !basis.is_cycle(z) {
        return Err(Sigma5Error::NotACycle);
    }
    let parts: Vec<bool> = z
        .support
        .par_iter()
        .map(|&i| {
            let (r, s) = basis.gen4[i];
            crossing_parity(t, r, s, params)
        })
        .collect::<Result<_, _>>()?;
    Ok(parts.into_iter().fold(false, |a, b| a ^ b))
}

/// Default moment parameters `t_v = v + 1`.
pub fn default_params(n: usize) -> Vec<i64> {
    (1..=n as i64).collect()
}

/// Distinct pseudorandom parameters in `1..=10n`.
pub fn random_params(n: usize, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample(&mut rng, 10 * n.max(1), n)
        .into_iter()
        .map(|x| x as i64 + 1)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Sigma5Verdict {
    AtMostFive,
    AboveFive,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Sigma5Decision {
    pub verdict: Sigma5Verdict,
    pub cycles: usize,
    pub generators: usize,
    pub kernel_dim: usize,
    pub i_values: Vec<bool>,
    pub moment_params: Vec<i64>,
    pub certificate: Option<ObstructionCertificate>,
}

/// Evaluates `I` on a basis of the symmetric 4-cycles; `σ ≤ 5` exactly when
/// every value vanishes. A nonvanishing basis vector is pushed forward into
/// the 2-skeleton of the simplex and returned as a certificate.
pub fn decide_sigma_le_5(g: &Graph, cap: usize, seed: u64) -> Result<Sigma5Decision, Sigma5Error> {
    let t = two_closure(g, cap)?;
    let (basis, kernel) = sym_cycle_basis(&t);
    let mut params = default_params(g.n());
    let mut attempt = 0;
    let i_values = loop {
        match kernel
            .iter()
            .map(|z| evaluate_i(z, &t, &basis, &params))
            .collect::<Result<Vec<bool>, _>>()
        {
            Ok(v) => break v,
            Err(Sigma5Error::DegeneratePosition(msg)) => {
                attempt += 1;
                if attempt > MAX_PARAM_RETRIES {
                    return Err(Sigma5Error::DegeneratePosition(msg));
                }
                params = random_params(g.n(), seed.wrapping_add(attempt as u64));
            }
            Err(e) => return Err(e),
        }
    };
    let certificate = i_values
        .iter()
        .position(|&x| x)
        .map(|i| ObstructionCertificate::from_chain(&t, &basis, &kernel[i], &params))
        .transpose()?;
    Ok(Sigma5Decision {
        verdict: if certificate.is_some() {
            Sigma5Verdict::AboveFive
        } else {
            Sigma5Verdict::AtMostFive
        },
        cycles: t.cycles.len(),
        generators: basis.gen4.len(),
        kernel_dim: kernel.len(),
        i_values,
        moment_params: params,
        certificate,
    })
}
