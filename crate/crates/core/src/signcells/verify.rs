use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{enumerate_cells, is_broken, SignCellError, SignPattern};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepresentationKind {
    /// Every nonzero vector has a nonempty connected positive support.
    Valid,
    Semivalid,
}

/// The defining conditions of a (semi)valid representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Clause {
    /// Both supports nonempty.
    BothSigns,
    /// Positive support connected, or two components with connected negative support.
    PositiveSupport,
    /// Minimal-support vectors have connected positive and negative supports.
    MinimalSupport,
    /// Broken vectors: no +/- edge and every support component sees the whole separator.
    BrokenSeparation,
    /// Positive support nonempty and connected.
    ValidConnected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pattern: SignPattern,
    pub clause: Clause,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RepresentationVerdict {
    pub kind: RepresentationKind,
    pub holds: bool,
    /// False for the sampled verifier.
    pub exhaustive: bool,
    pub patterns_checked: usize,
    pub violations: Vec<Violation>,
    pub broken_cells: Vec<SignPattern>,
}

/// Clauses violated by a nonzero pattern. `minimal` says whether the pattern
/// has inclusion-minimal support in the subspace.
pub fn check_pattern(g: &Graph, p: &SignPattern, kind: RepresentationKind, minimal: bool) -> Vec<Clause> {
    let plus = p.plus();
    let minus = p.minus();
    let plus_parts = g.induced_components(&plus).len();
    let minus_parts = g.induced_components(&minus).len();
    let mut out = Vec::new();
    if kind == RepresentationKind::Valid {
        if plus_parts != 1 {
            out.push(Clause::ValidConnected);
        }
        return out;
    }
    if plus.is_empty() || minus.is_empty() {
        out.push(Clause::BothSigns);
    }
    if !(plus_parts == 1 || (plus_parts == 2 && minus_parts == 1)) {
        out.push(Clause::PositiveSupport);
    }
    if minimal && (plus_parts != 1 || minus_parts != 1) {
        out.push(Clause::MinimalSupport);
    }
    if plus_parts > 1 {
        let supp = p.support();
        let sep = g.neighborhood(&supp);
        let separated = !g.has_edge_between(&plus, &minus)
            && g.induced_components(&supp).iter().all(|c| g.neighborhood(c) == sep);
        if !separated {
            out.push(Clause::BrokenSeparation);
        }
    }
    out
}

/// Checks every nonzero cone of the fan of `L`.
pub fn verify_representation<S: Scalar>(
    l: &Subspace<S>,
    g: &Graph,
    kind: RepresentationKind,
    dim_guard: usize,
) -> Result<RepresentationVerdict, SignCellError> {
    let fan = enumerate_cells(l, dim_guard)?.classify(g)?;
    let mut violations = Vec::new();
    for c in fan.nonzero_cells() {
        for clause in check_pattern(g, &c.pattern, kind, c.dim == 1) {
            violations.push(Violation {
                pattern: c.pattern,
                clause,
            });
        }
    }
    Ok(RepresentationVerdict {
        kind,
        holds: violations.is_empty(),
        exhaustive: true,
        patterns_checked: fan.len() - 1,
        violations,
        broken_cells: fan.broken_cells().map(|c| c.pattern).collect(),
    })
}

/// Checks the sign patterns of random integer combinations of the basis.
/// Minimal-support cones are measure zero and are not reached by sampling,
/// so that clause is left unchecked.
pub fn verify_representation_sampled<S: Scalar>(
    l: &Subspace<S>,
    g: &Graph,
    kind: RepresentationKind,
    samples: usize,
    seed: u64,
) -> Result<RepresentationVerdict, SignCellError> {
    if samples == 0 {
        return Err(SignCellError::NoSamples);
    }
    if g.n() != l.ambient_dim() {
        return Err(SignCellError::AmbientMismatch {
            expected: g.n(),
            found: l.ambient_dim(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    let mut violations = Vec::new();
    let mut broken = std::collections::BTreeSet::new();
    let mut checked = 0;
    if l.dim() > 0 {
        for _ in 0..samples {
            let coeffs: Vec<S> = (0..l.dim())
                .map(|_| S::from_i64(rng.gen_range(-1000..=1000)))
                .collect();
            let x = l.combine(&coeffs);
            let p = SignPattern::of_vector(&x);
            if p.is_zero() || !seen.insert(p) {
                continue;
            }
            checked += 1;
            if is_broken(g, &p) {
                broken.insert(p);
            }
            for clause in check_pattern(g, &p, kind, false) {
                violations.push(Violation { pattern: p, clause });
            }
        }
    }
    Ok(RepresentationVerdict {
        kind,
        holds: violations.is_empty(),
        exhaustive: false,
        patterns_checked: checked,
        violations,
        broken_cells: broken.into_iter().collect(),
    })
}
