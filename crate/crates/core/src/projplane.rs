//! Projective planes of prime order, their incidence graphs `H_q`, the matrix
//! `M_q = √q I - A_q` and the μ/σ separation computations built on them.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, Modification};
use crate::matrix::Matrix;
use crate::scalar::{QuadSurd, Rational, Scalar};
use crate::schrodinger::{mu_edge_upper_bound, EdgeBound, SchrodingerError, SchrodingerMatrix};
use crate::signcells::{eta_lower_bound, lambda_lower_bound, HypothesisCheck, SignCellError, DEFAULT_DIM_GUARD};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProjPlaneError {
    #[error("order {0} is not prime; prime powers are not supported")]
    NotPrime(u64),
    #[error("mode {mode} needs q = {needs}, got q = {q}")]
    ModeParamMismatch { mode: Mode, q: u64, needs: u64 },
    #[error("plane axioms fail: {0}")]
    Axioms(String),
    #[error(transparent)]
    Schrodinger(#[from] SchrodingerError),
    #[error(transparent)]
    Cells(#[from] SignCellError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("construction step failed: {0}")]
    Construction(String),
}

/// `PG(2, q)`: points and lines are normalized homogeneous triples over `GF(q)`.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectivePlane {
    pub q: u64,
    pub points: Vec<[u64; 3]>,
    /// Each line as the sorted list of its point indices.
    pub lines: Vec<Vec<usize>>,
    #[serde(skip)]
    pub incidence: Matrix<Rational>,
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Triples whose first nonzero coordinate is 1, in lexicographic order.
fn normalized_triples(q: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let first = [x, y, z].into_iter().find(|&c| c != 0);
                if first == Some(1) {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

pub fn build_plane(q: u64) -> Result<ProjectivePlane, ProjPlaneError> {
    if !is_prime(q) {
        return Err(ProjPlaneError::NotPrime(q));
    }
    let points = normalized_triples(q);
    let lines: Vec<Vec<usize>> = points
        .iter()
        .map(|l| {
            (0..points.len())
                .filter(|&p| (0..3).map(|i| l[i] * points[p][i]).sum::<u64>() % q == 0)
                .collect()
        })
        .collect();
    let n = points.len();
    let incidence = Matrix::from_fn(n, n, |p, l| {
        if lines[l].binary_search(&p).is_ok() {
            Rational::from_i64(1)
        } else {
            Rational::from_i64(0)
        }
    });
    let plane = ProjectivePlane {
        q,
        points,
        lines,
        incidence,
    };
    plane.check_axioms()?;
    Ok(plane)
}

impl ProjectivePlane {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// `N Nᵀ = qI + J` exactly, plus the dual statement that two lines meet once.
    pub fn check_axioms(&self) -> Result<(), ProjPlaneError> {
        let n = self.size();
        let q = self.q as i64;
        if n as i64 != q * q + q + 1 {
            return Err(ProjPlaneError::Axioms(format!("{n} points")));
        }
        let gram = self.incidence.matmul(&self.incidence.transpose());
        let expected = Matrix::from_fn(n, n, |i, j| Rational::from_i64(if i == j { q + 1 } else { 1 }));
        if gram != expected {
            return Err(ProjPlaneError::Axioms("N Nᵀ differs from qI + J".into()));
        }
        for (a, b) in self.lines.iter().tuple_combinations() {
            let common = a.iter().filter(|p| b.binary_search(p).is_ok()).count();
            if common != 1 {
                return Err(ProjPlaneError::Axioms(format!("two lines share {common} points")));
            }
        }
        Ok(())
    }

    pub fn collinear(&self, pts: &[usize]) -> bool {
        self.lines.iter().any(|l| pts.iter().all(|p| l.binary_search(p).is_ok()))
    }

    /// Bipartite incidence graph: points first, then lines.
    pub fn incidence_graph(&self) -> Graph {
        let n = self.size();
        let edges = self
            .lines
            .iter()
            .enumerate()
            .flat_map(|(l, pts)| pts.iter().map(move |&p| (p, n + l)));
        Graph::from_edges(2 * n, edges).expect("incidences are valid edges")
    }
}

#[derive(Clone, Debug)]
pub struct IncidenceGraphReport {
    pub hq: Graph,
    pub mq: SchrodingerMatrix<QuadSurd>,
    pub corank: usize,
    /// `N Nᵀ = qI + J`, which pins down the spectrum of `A_q`.
    pub spectrum_certificate: bool,
}

pub fn incidence_graph(plane: &ProjectivePlane) -> Result<IncidenceGraphReport, ProjPlaneError> {
    let hq = plane.incidence_graph();
    let root = QuadSurd::sqrt(plane.q).map_err(|e| ProjPlaneError::Construction(e.to_string()))?;
    let a = hq.adjacency::<QuadSurd>();
    let m = Matrix::identity(hq.n()).scale(&root).add(&a.map(|x| -x.clone()));
    let mq = SchrodingerMatrix::validate(&hq, m)?;
    Ok(IncidenceGraphReport {
        corank: mq.corank(),
        spectrum_certificate: plane.check_axioms().is_ok(),
        hq,
        mq,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `μ(H_3) ≤ 9` against `σ(H_3) ≥ η(H_3 - e) ≥ 11`.
    MuSigma,
    /// A graph cut out of `H_3` with `μ ≤ 7` and `σ ≥ 8`.
    Gap,
    /// Edge bound on μ against `λ ≥ q²` for general prime `q`.
    Asymptotic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::MuSigma => "mu-sigma",
            Mode::Gap => "gap",
            Mode::Asymptotic => "asymptotic",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mu-sigma" => Ok(Mode::MuSigma),
            "gap" => Ok(Mode::Gap),
            "asymptotic" => Ok(Mode::Asymptotic),
            other => Err(format!("unknown mode {other:?} (expected mu-sigma, gap or asymptotic)")),
        }
    }
}

/// Choices made while cutting the gap graph out of `H_3`, in `H_3` labels.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapConstruction {
    pub deleted_points: Vec<usize>,
    pub deleted_edge: (usize, usize),
    pub degree_two_before_edge: usize,
    pub degree_two_vertices: Vec<usize>,
    pub contracted: Vec<(usize, usize)>,
    pub vertices: usize,
    pub edges: usize,
    #[serde(skip)]
    pub graph: Graph,
    #[serde(skip)]
    pub contracted_graph: Graph,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeparationReport {
    pub q: u64,
    pub mode: Mode,
    pub edges: usize,
    pub corank: usize,
    pub mu_upper: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<HypothesisCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapConstruction>,
    /// Human-readable deduction steps, including the cited ones.
    pub chain: Vec<String>,
}

fn edge_bound(g: &Graph) -> Result<usize, ProjPlaneError> {
    match mu_edge_upper_bound(g) {
        Ok(EdgeBound::Bound(k)) => Ok(k),
        Ok(EdgeBound::K33Exception) => Err(ProjPlaneError::Construction("unexpected K33".into())),
        Err(e) => Err(ProjPlaneError::Construction(e.to_string())),
    }
}

pub fn separation_report(q: u64, mode: Mode) -> Result<SeparationReport, ProjPlaneError> {
    if matches!(mode, Mode::MuSigma | Mode::Gap) && q != 3 {
        return Err(ProjPlaneError::ModeParamMismatch { mode, q, needs: 3 });
    }
    let plane = build_plane(q)?;
    let inc = incidence_graph(&plane)?;
    let hq = &inc.hq;
    let mu_upper = edge_bound(hq)?;
    let mut report = SeparationReport {
        q,
        mode,
        edges: hq.edge_count(),
        corank: inc.corank,
        mu_upper,
        eta_lower: None,
        hypothesis: None,
        sigma_lower: None,
        lambda_lower: None,
        gap: None,
        chain: vec![format!("|E(H_{q})| = {} gives μ(H_{q}) ≤ {mu_upper}", hq.edge_count())],
    };
    match mode {
        Mode::MuSigma => {
            let e = hq.edges()[0];
            let eta = eta_lower_bound(hq, &inc.mq, &[e], DEFAULT_DIM_GUARD)?;
            report.chain.push(format!("corank(M_3) = {}", inc.corank));
            report.chain.push(format!(
                "L = ker(M_3) ∩ {{y_{} + y_{} = 0}} has dimension {}, so η(H_3 - e) ≥ {}",
                e.0, e.1, eta.bound, eta.bound
            ));
            report.chain.push(format!("σ(H_3) ≥ σ(H_3 - e) ≥ η(H_3 - e) ≥ {}", eta.bound));
            report.eta_lower = Some(eta.bound);
            report.hypothesis = Some(eta.hypothesis);
            report.sigma_lower = Some(eta.bound);
        }
        Mode::Gap => {
            let gap = gap_construction(&plane, hq, 0)?;
            let eta = eta_lower_bound(hq, &inc.mq, &[gap.deleted_edge], DEFAULT_DIM_GUARD)?;
            let mu = edge_bound(&gap.contracted_graph)?;
            let sigma = eta.bound.saturating_sub(gap.deleted_points.len());
            report.chain.push(format!(
                "|E(G/F)| = {} gives μ(G) = μ(G/F) ≤ {mu} (subdividing edges preserves μ ≥ 3, cited)",
                gap.edges
            ));
            report.chain.push(format!("η(H_3 - e) ≥ {} for the deleted edge e", eta.bound));
            report.chain.push(format!(
                "deleting {} vertices lowers σ by at most {} (cited), so σ(G) ≥ {sigma}",
                gap.deleted_points.len(),
                gap.deleted_points.len()
            ));
            report.mu_upper = mu;
            report.eta_lower = Some(eta.bound);
            report.hypothesis = Some(eta.hypothesis);
            report.sigma_lower = Some(sigma);
            report.gap = Some(gap);
        }
        Mode::Asymptotic => {
            let lambda = lambda_lower_bound(hq, &inc.mq)?;
            report.chain.push(format!(
                "λ(H_{q}) ≥ corank(M_{q}) - {} + 1 = {lambda}",
                hq.max_degree()
            ));
            report.lambda_lower = Some(lambda);
        }
    }
    Ok(report)
}

/// Deletes the first non-collinear point triple, then the `pick`-th edge at a
/// degree-3 vertex, then contracts one edge at each degree-2 vertex.
pub fn gap_construction(plane: &ProjectivePlane, hq: &Graph, pick: usize) -> Result<GapConstruction, ProjPlaneError> {
    let triple = (0..plane.size())
        .combinations(3)
        .find(|t| !plane.collinear(t))
        .ok_or_else(|| ProjPlaneError::Construction("all points collinear".into()))?;
    let cut = hq.modify(&Modification::DeleteVertices(triple.clone()))?;
    let g1 = cut.graph;
    let back: Vec<usize> = (0..hq.n()).filter(|&v| cut.label_map[v].is_some()).collect();
    let degree_two_before_edge = (0..g1.n()).filter(|&v| g1.degree(v) == 2).count();
    let (u, v) = g1
        .edges()
        .into_iter()
        .filter(|&(u, v)| g1.degree(u) == 3 || g1.degree(v) == 3)
        .nth(pick)
        .ok_or_else(|| ProjPlaneError::Construction(format!("no edge number {pick} at a degree-3 vertex")))?;
    let g = g1.modify(&Modification::DeleteEdges(vec![(u, v)]))?.graph;
    let degree_two: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 2).collect();
    let contracted: Vec<(usize, usize)> = degree_two
        .iter()
        .map(|&w| {
            let x = g.neighbors(w).next().expect("degree two");
            (w.min(x), w.max(x))
        })
        .collect();
    let contracted_graph = g.modify(&Modification::ContractEdges(contracted.clone()))?.graph;
    let relabel = |(a, b): (usize, usize)| (back[a], back[b]);
    Ok(GapConstruction {
        deleted_points: triple,
        deleted_edge: relabel((u, v)),
        degree_two_before_edge,
        degree_two_vertices: degree_two.iter().map(|&w| back[w]).collect(),
        contracted: contracted.into_iter().map(relabel).collect(),
        vertices: contracted_graph.n(),
        edges: contracted_graph.edge_count(),
        graph: g,
        contracted_graph,
    })
}
