use std::collections::BTreeSet;

use serde::Serialize;

use super::{Graph, GraphError};

pub const DEFAULT_CYCLE_CAP: usize = 100_000;

/// A simple cycle in canonical form: least vertex first, then the smaller of
/// its two cycle neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleId(Vec<usize>);

impl CycleId {
    /// Canonicalizes any rotation or reflection of a cyclic vertex list.
    pub fn canonical(seq: &[usize]) -> Self {
        assert!(seq.len() >= 3, "cycles have length at least 3");
        let k = seq.len();
        let start = (0..k).min_by_key(|&i| seq[i]).unwrap();
        let next = seq[(start + 1) % k];
        let prev = seq[(start + k - 1) % k];
        let out: Vec<usize> = if next < prev {
            (0..k).map(|i| seq[(start + i) % k]).collect()
        } else {
            (0..k).map(|i| seq[(start + k - i) % k]).collect()
        };
        CycleId(out)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Edges `(min, max)` in traversal order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.0.len();
        (0..k)
            .map(|i| {
                let (a, b) = (self.0[i], self.0[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let distinct: BTreeSet<usize> = self.0.iter().copied().collect();
        distinct.len() == self.0.len() && self.edges().iter().all(|&(u, v)| g.has_edge(u, v))
    }
}

/// All simple cycles ordered by length, then lexicographically.
///
/// Each cycle is found once from its least vertex `r`, walking only through
/// vertices above `r` and closing back at `r` when the second vertex is
/// smaller than the last.
pub fn enumerate_cycles(g: &Graph, cap: usize) -> Result<Vec<CycleId>, GraphError> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    for root in 0..g.n() {
        let mut path = vec![root];
        on_path[root] = true;
        extend(g, root, &mut path, &mut on_path, &mut out, cap)?;
        on_path[root] = false;
    }
    out.sort_by(|a: &CycleId, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn extend(
    g: &Graph,
    root: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<CycleId>,
    cap: usize,
) -> Result<(), GraphError> {
    let last = *path.last().unwrap();
    for w in g.neighbors(last) {
        if w == root && path.len() >= 3 && path[1] < last {
            if out.len() == cap {
                return Err(GraphError::CapExceeded { cap });
            }
            out.push(CycleId(path.clone()));
        }
        if w > root && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend(g, root, path, on_path, out, cap)?;
            path.pop();
            on_path[w] = false;
        }
    }
    Ok(())
}

/// Cycle count by checking every Hamiltonian cycle of every induced vertex
/// subset. Exponential; for small test graphs only.
#[cfg(any(test, feature = "oracles"))]
pub fn brute_force_cycle_count(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 10, "brute force is limited to tiny graphs");
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if verts.len() < 3 {
            continue;
        }
        // Fix the first vertex and permute the rest.
        let mut rest = verts[1..].to_vec();
        permute(&mut rest, 0, &mut |perm| {
            let mut seq = vec![verts[0]];
            seq.extend_from_slice(perm);
            let k = seq.len();
            if (0..k).all(|i| g.has_edge(seq[i], seq[(i + 1) % k])) {
                seen.insert(CycleId::canonical(&seq).0);
            }
        });
    }
    seen.len()
}

#[cfg(any(test, feature = "oracles"))]
fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
