use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{check_params, fan_triangulation, triangles_cross, Sigma5Error, SymChain4, SymChainBasis, TwoClosure, Triangle};
use crate::graph::{CycleId, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CyclePair {
    pub cycle_a: Vec<usize>,
    pub cycle_b: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TrianglePair {
    pub tri_a: Triangle,
    pub tri_b: Triangle,
}

/// Evidence for `σ(G) > 5`: a symmetric 4-cycle of the 2-closure, its image
/// among triangle pairs of the simplex on `V(G)`, and the moment parameters
/// under which that image has odd crossing number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ObstructionCertificate {
    pub moment_params: Vec<i64>,
    pub pairs: Vec<CyclePair>,
    pub pushforward: Vec<TrianglePair>,
    pub i_value: u8,
}

/// Image of the cycle pairs: every pair of triangles from the two fan
/// triangulations, with coefficients mod 2.
pub fn pushforward<'a>(pairs: impl IntoIterator<Item = (&'a CycleId, &'a CycleId)>) -> Vec<TrianglePair> {
    let mut acc: BTreeSet<TrianglePair> = BTreeSet::new();
    for (r, s) in pairs {
        for a in fan_triangulation(r) {
            for b in fan_triangulation(s) {
                let (tri_a, tri_b) = if a < b { (a, b) } else { (b, a) };
                let key = TrianglePair { tri_a, tri_b };
                if !acc.remove(&key) {
                    acc.insert(key);
                }
            }
        }
    }
    acc.into_iter().collect()
}

fn crossing_number(pf: &[TrianglePair], params: &[i64]) -> Result<bool, Sigma5Error> {
    let mut odd = false;
    for p in pf {
        odd ^= triangles_cross(&p.tri_a, &p.tri_b, params)?;
    }
    Ok(odd)
}

impl ObstructionCertificate {
    pub fn from_chain(
        t: &TwoClosure,
        basis: &SymChainBasis,
        z: &SymChain4,
        params: &[i64],
    ) -> Result<Self, Sigma5Error> {
        let ids: Vec<(&CycleId, &CycleId)> = z
            .support
            .iter()
            .map(|&i| {
                let (r, s) = basis.gen4[i];
                (&t.cycles[r], &t.cycles[s])
            })
            .collect();
        let pf = pushforward(ids.iter().copied());
        let i_value = crossing_number(&pf, params)? as u8;
        Ok(ObstructionCertificate {
            moment_params: params.to_vec(),
            pairs: ids
                .iter()
                .map(|(r, s)| CyclePair {
                    cycle_a: r.vertices().to_vec(),
                    cycle_b: s.vertices().to_vec(),
                })
                .collect(),
            pushforward: pf,
            i_value,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub valid: bool,
    pub reason: Option<String>,
}

impl CertificateCheck {
    fn reject(reason: impl Into<String>) -> Self {
        CertificateCheck {
            valid: false,
            reason: Some(reason.into()),
        }
    }
}

fn toggle<T: Ord>(set: &mut BTreeSet<T>, key: T) {
    if !set.remove(&key) {
        set.insert(key);
    }
}

/// Rechecks a certificate from scratch against `g`.
pub fn verify_certificate(c: &ObstructionCertificate, g: &Graph) -> CertificateCheck {
    let n = g.n();
    if check_params(&c.moment_params, n).is_err() {
        return CertificateCheck::reject("moment parameters are not one distinct integer per vertex");
    }
    if c.pairs.is_empty() {
        return CertificateCheck::reject("empty chain");
    }

    let mut pairs: Vec<(CycleId, CycleId)> = Vec::with_capacity(c.pairs.len());
    let mut seen = BTreeSet::new();
    for (k, p) in c.pairs.iter().enumerate() {
        let ok_len = |v: &[usize]| v.len() >= 3 && v.iter().all(|&x| x < n);
        if !ok_len(&p.cycle_a) || !ok_len(&p.cycle_b) {
            return CertificateCheck::reject(format!("pair {k}: malformed cycle"));
        }
        let (a, b) = (CycleId::canonical(&p.cycle_a), CycleId::canonical(&p.cycle_b));
        if !a.is_valid_in(g) || !b.is_valid_in(g) {
            return CertificateCheck::reject(format!("pair {k}: not a cycle of the graph"));
        }
        if a.vertices().iter().any(|v| b.vertices().contains(v)) {
            return CertificateCheck::reject(format!("pair {k}: cycles share a vertex"));
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if !seen.insert(key.clone()) {
            return CertificateCheck::reject(format!("pair {k} is repeated"));
        }
        pairs.push(key);
    }

    let mut bd: BTreeSet<((usize, usize), &CycleId)> = BTreeSet::new();
    for (a, b) in &pairs {
        for e in a.edges() {
            toggle(&mut bd, (e, b));
        }
        for e in b.edges() {
            toggle(&mut bd, (e, a));
        }
    }
    if !bd.is_empty() {
        return CertificateCheck::reject("chain has nonzero boundary");
    }

    let expected = pushforward(pairs.iter().map(|(a, b)| (a, b)));
    let mut given = c.pushforward.clone();
    for p in &mut given {
        p.tri_a.sort_unstable();
        p.tri_b.sort_unstable();
        if p.tri_b < p.tri_a {
            std::mem::swap(&mut p.tri_a, &mut p.tri_b);
        }
    }
    given.sort();
    if given != expected {
        return CertificateCheck::reject("pushforward does not match the chain");
    }

    let mut bd: BTreeSet<([usize; 2], Triangle)> = BTreeSet::new();
    for p in &expected {
        for (x, y) in [(&p.tri_a, &p.tri_b), (&p.tri_b, &p.tri_a)] {
            for skip in 0..3 {
                let e: Vec<usize> = (0..3).filter(|&i| i != skip).map(|i| x[i]).collect();
                toggle(&mut bd, ([e[0], e[1]], *y));
            }
        }
    }
    if !bd.is_empty() {
        return CertificateCheck::reject("pushforward has nonzero boundary");
    }

    match crossing_number(&expected, &c.moment_params) {
        Ok(true) if c.i_value == 1 => CertificateCheck {
            valid: true,
            reason: None,
        },
        Ok(true) => CertificateCheck::reject("claimed value is not 1"),
        Ok(false) => CertificateCheck::reject("crossing number is even"),
        Err(e) => CertificateCheck::reject(e.to_string()),
    }
}
