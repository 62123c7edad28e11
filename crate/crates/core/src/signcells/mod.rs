//! The fan P(L) of a subspace: the sign-vector cones it cuts out of the
//! coordinate arrangement, broken cones, and representation checks built on
//! top of them.

mod bounds;
mod pattern;
mod verify;

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

pub use bounds::{
    eta_lower_bound, fan_sanity, greedy_edge_cover, lambda_lower_bound, EtaCertificate,
    FanSanityReport, HypothesisCheck,
};
pub use pattern::{SignPattern, MAX_COORDINATES};
pub use verify::{
    check_pattern, verify_representation, verify_representation_sampled, Clause,
    RepresentationKind, RepresentationVerdict, Violation,
};

pub const DEFAULT_DIM_GUARD: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignCellError {
    #[error("subspace has dimension {dim}, above the enumeration guard {guard}; use the sampled verifier")]
    DimGuardExceeded { dim: usize, guard: usize },
    #[error("ambient dimension {0} exceeds the supported {MAX_COORDINATES} coordinates")]
    TooManyCoordinates(usize),
    #[error("subspace lives in R^{found} but the graph has {expected} vertices")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("edge {0}-{1} is not in the graph")]
    EdgeNotInGraph(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("no exact check or degree criterion applies to the broken-vector hypothesis")]
    HypothesisUnverified,
    #[error("broken kernel cell {0} with more than three support components avoids every edge of F")]
    HypothesisFails(SignPattern),
    #[error("sample count must be positive")]
    NoSamples,
}

/// A relatively open cone of the fan together with a point inside it.
#[derive(Clone, Debug, PartialEq)]
pub struct SignCell<S> {
    pub pattern: SignPattern,
    pub dim: usize,
    pub witness: Vec<S>,
    pub broken: bool,
}

#[derive(Clone, Debug)]
pub struct Fan<S> {
    subspace: Subspace<S>,
    cells: Vec<SignCell<S>>,
    index: HashMap<SignPattern, usize>,
    classified: bool,
}

/// All sign cones of `L`, ordered by dimension and then by pattern.
///
/// The nonzero cones are exactly the compositions of cocircuits, the cones of
/// inclusion-minimal support. Cocircuits come from `(d-1)`-subsets of
/// coordinates whose vanishing cuts `L` down to a line.
pub fn enumerate_cells<S: Scalar>(l: &Subspace<S>, dim_guard: usize) -> Result<Fan<S>, SignCellError> {
    let n = l.ambient_dim();
    let d = l.dim();
    if d > dim_guard {
        return Err(SignCellError::DimGuardExceeded { dim: d, guard: dim_guard });
    }
    if n > MAX_COORDINATES {
        return Err(SignCellError::TooManyCoordinates(n));
    }
    let mut dims: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut cells: BTreeMap<SignPattern, Vec<S>> = BTreeMap::new();
    cells.insert(SignPattern::zero(n), vec![S::zero(); n]);
    dims.insert((0..n).collect(), 0);

    if d > 0 {
        let lines: Vec<Vec<S>> = (0..n)
            .combinations(d - 1)
            .par_bridge()
            .filter_map(|zeros| {
                let line = l.vanishing_on(&zeros);
                (line.dim() == 1).then(|| line.basis()[0].clone())
            })
            .collect();
        let mut cocircuits: BTreeMap<SignPattern, Vec<S>> = BTreeMap::new();
        for v in lines {
            let p = SignPattern::of_vector(&v);
            if !cocircuits.contains_key(&p) {
                let neg: Vec<S> = v.iter().map(|x| -x.clone()).collect();
                cocircuits.insert(p.negate(), neg);
                cocircuits.insert(p, v);
            }
        }
        let cocircuits: Vec<(SignPattern, Vec<S>)> = cocircuits.into_iter().collect();
        let mut frontier: Vec<SignPattern> = vec![SignPattern::zero(n)];
        while let Some(x) = frontier.pop() {
            let wx = cells[&x].clone();
            for (y, wy) in &cocircuits {
                let z = x.compose(y);
                if cells.contains_key(&z) {
                    continue;
                }
                cells.insert(z, compose_witness(&wx, wy));
                frontier.push(z);
            }
        }
    }

    let mut out: Vec<SignCell<S>> = cells
        .into_iter()
        .map(|(pattern, witness)| {
            let zeros = pattern.zeros();
            let dim = *dims
                .entry(zeros)
                .or_insert_with_key(|z| l.dim_vanishing_on(z));
            SignCell {
                pattern,
                dim,
                witness,
                broken: false,
            }
        })
        .collect();
    out.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.pattern.cmp(&b.pattern)));
    let index = out.iter().enumerate().map(|(i, c)| (c.pattern, i)).collect();
    Ok(Fan {
        subspace: l.clone(),
        cells: out,
        index,
        classified: false,
    })
}

/// A point of the cone `X ∘ Y` given points of `X` and `Y`: step from `wx`
/// towards `wy` by less than any nonzero coordinate of `wx` allows.
fn compose_witness<S: Scalar>(wx: &[S], wy: &[S]) -> Vec<S> {
    let mut eps: Option<S> = None;
    for (a, b) in wx.iter().zip(wy) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let r = Scalar::abs(&(a.clone() / b.clone()));
        eps = Some(match eps {
            Some(e) if (e.clone() - r.clone()).sign() != crate::scalar::Sign::Positive => e,
            _ => r,
        });
    }
    let eps = match eps {
        Some(e) => e / S::from_i64(2),
        None => S::one(),
    };
    wx.iter()
        .zip(wy)
        .map(|(a, b)| a.clone() + eps.clone() * b.clone())
        .collect()
}

impl<S: Scalar> Fan<S> {
    pub fn subspace(&self) -> &Subspace<S> {
        &self.subspace
    }

    pub fn cells(&self) -> &[SignCell<S>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, p: &SignPattern) -> Option<&SignCell<S>> {
        self.index.get(p).map(|&i| &self.cells[i])
    }

    pub fn position(&self, p: &SignPattern) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Nonzero cells, i.e. the cones on which the representation clauses bite.
    pub fn nonzero_cells(&self) -> impl Iterator<Item = &SignCell<S>> {
        self.cells.iter().filter(|c| !c.pattern.is_zero())
    }

    pub fn one_cones(&self) -> impl Iterator<Item = &SignCell<S>> {
        self.cells.iter().filter(|c| c.dim == 1)
    }

    /// Nonzero cells contained in the relative boundary of `p`.
    pub fn boundary(&self, p: &SignPattern) -> Vec<&SignCell<S>> {
        self.nonzero_cells()
            .filter(|c| c.pattern.is_proper_face_of(p))
            .collect()
    }

    /// Face relation `α ⊆ ∂β` over nonzero cells, as index pairs `(α, β)`.
    pub fn face_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, b) in self.cells.iter().enumerate() {
            for (i, a) in self.cells.iter().enumerate() {
                if !a.pattern.is_zero() && a.pattern.is_proper_face_of(&b.pattern) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Marks the cells whose positive support induces a disconnected graph.
    pub fn classify(mut self, g: &Graph) -> Result<Self, SignCellError> {
        if g.n() != self.subspace.ambient_dim() {
            return Err(SignCellError::AmbientMismatch {
                expected: g.n(),
                found: self.subspace.ambient_dim(),
            });
        }
        for c in &mut self.cells {
            c.broken = is_broken(g, &c.pattern);
        }
        self.classified = true;
        Ok(self)
    }

    pub fn is_classified(&self) -> bool {
        self.classified
    }

    pub fn broken_cells(&self) -> impl Iterator<Item = &SignCell<S>> {
        self.cells.iter().filter(|c| c.broken)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct CellJson {
            pattern: SignPattern,
            dim: usize,
            broken: bool,
        }
        let cells: Vec<CellJson> = self
            .cells
            .iter()
            .map(|c| CellJson {
                pattern: c.pattern,
                dim: c.dim,
                broken: c.broken,
            })
            .collect();
        serde_json::json!({
            "ambientDim": self.subspace.ambient_dim(),
            "dim": self.subspace.dim(),
            "classified": self.classified,
            "cells": cells,
        })
    }
}

/// Nonzero pattern whose positive support induces a disconnected subgraph.
pub fn is_broken(g: &Graph, p: &SignPattern) -> bool {
    g.induced_components(&p.plus()).len() > 1
}
