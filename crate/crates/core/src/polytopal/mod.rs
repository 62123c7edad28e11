//! Polytopal representations: a centrally symmetric simplicial polytope in `L`
//! whose boundary subdivides the fan of a semivalid representation, and the
//! cellular map of its 1-skeleton into the graph.
//!
//! Everything is combinatorial. The boundary of `Q = C ∩ L` (with `C` the
//! cross-polytope) is read off the fan: faces are nonzero cones, vertices are
//! 1-cones. Non-simplex faces are then stellarly subdivided, and the result is
//! barycentrically subdivided twice. The cone containing a face is the join
//! of the sign patterns of its vertices.

mod cellular;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::signcells::{
    enumerate_cells, is_broken, verify_representation, Fan, RepresentationKind, SignCellError,
    SignPattern, Violation,
};
use crate::subspace::Subspace;

pub use cellular::{
    build_cellular_map, verify_disjointness, CellularMap, CellularMapError, DisjointnessReport,
};

pub const DEFAULT_POLYTOPAL_DIM_GUARD: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolytopalError {
    #[error("subspace has dimension {dim}, above the polytopal guard {guard}")]
    DimGuardExceeded { dim: usize, guard: usize },
    #[error("the zero subspace has no polytopal representation")]
    ZeroSubspace,
    #[error("subspace is not a semivalid representation ({} violations)", .0.len())]
    NotSemivalid(Vec<Violation>),
    #[error(transparent)]
    Cells(#[from] SignCellError),
    #[error("construction produced an invalid complex: {0}")]
    Construction(String),
    #[error("clause {clause} fails: {detail}")]
    ClauseFailed { clause: &'static str, detail: String },
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructionStats {
    /// f-vector of the boundary of `Q`, indexed by face dimension.
    pub q_f_vector: Vec<usize>,
    pub stellar_steps: usize,
    pub simplicial_f_vector: Vec<usize>,
    pub f_vector: Vec<usize>,
}

/// Boundary complex of a polytopal representation.
#[derive(Clone, Debug)]
pub struct PolytopeComplex<S> {
    dim: usize,
    coords: Vec<Vec<S>>,
    vertex_cone: Vec<SignPattern>,
    antipode: Vec<usize>,
    /// All nonempty faces as sorted vertex lists, ordered by size then lexicographically.
    faces: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    gamma: Vec<SignPattern>,
    facets: Vec<usize>,
    vertex_facets: Vec<Vec<usize>>,
    broken_cones: BTreeSet<SignPattern>,
    stats: ConstructionStats,
}

/// Vertex data shared by all construction stages.
#[derive(Clone, Debug)]
struct Vertices<S> {
    coords: Vec<Vec<S>>,
    cone: Vec<SignPattern>,
    antipode: Vec<usize>,
}

impl<S: Scalar> Vertices<S> {
    /// Adds the normalized barycenter of `face` and returns its id.
    fn push_barycenter(&mut self, face: &[usize]) -> usize {
        let n = self.coords[face[0]].len();
        let mut sum = vec![S::zero(); n];
        let mut cone = self.cone[face[0]];
        for &v in face {
            for (s, x) in sum.iter_mut().zip(&self.coords[v]) {
                *s = s.clone() + x.clone();
            }
            cone = cone
                .join(&self.cone[v])
                .unwrap_or_else(|| panic!("face {face:?} straddles two cones"));
        }
        self.coords.push(normalize(sum));
        self.cone.push(cone);
        self.antipode.push(usize::MAX);
        self.coords.len() - 1
    }

    fn antipodal_set(&self, face: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = face.iter().map(|&v| self.antipode[v]).collect();
        out.sort_unstable();
        out
    }
}

/// Scales to unit 1-norm, placing the point on the boundary of the cross-polytope.
fn normalize<S: Scalar>(x: Vec<S>) -> Vec<S> {
    let norm = x.iter().fold(S::zero(), |acc, v| acc + Scalar::abs(v));
    x.into_iter().map(|v| v / norm.clone()).collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

fn f_vector<'a>(dims: impl Iterator<Item = &'a usize>, top: usize) -> Vec<usize> {
    let mut f = vec![0; top + 1];
    for &d in dims {
        f[d] += 1;
    }
    f
}

/// Checks that every ridge lies in exactly two facets.
fn check_pseudomanifold(faces: &BTreeMap<Vec<usize>, usize>, dim: usize) -> Result<(), String> {
    if dim < 2 {
        return Ok(());
    }
    let facets: Vec<&Vec<usize>> = faces.iter().filter(|(_, &k)| k == dim - 1).map(|(f, _)| f).collect();
    for (ridge, _) in faces.iter().filter(|(_, &k)| k + 2 == dim) {
        let count = facets.iter().filter(|f| is_subset(ridge, f)).count();
        if count != 2 {
            return Err(format!("ridge {ridge:?} lies in {count} facets"));
        }
    }
    Ok(())
}

fn euler_characteristic(f: &[usize]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Builds the polytopal representation of `L` and checks every clause of its
/// definition.
pub fn build_polytopal_representation<S: Scalar>(
    l: &Subspace<S>,
    g: &Graph,
    dim_guard: usize,
) -> Result<PolytopeComplex<S>, PolytopalError> {
    let d = l.dim();
    if d > dim_guard {
        return Err(PolytopalError::DimGuardExceeded { dim: d, guard: dim_guard });
    }
    if d == 0 {
        return Err(PolytopalError::ZeroSubspace);
    }
    let verdict = verify_representation(l, g, RepresentationKind::Semivalid, dim_guard)?;
    if !verdict.holds {
        return Err(PolytopalError::NotSemivalid(verdict.violations));
    }
    let fan = enumerate_cells(l, dim_guard)?.classify(g)?;
    let mut stats = ConstructionStats::default();

    // Boundary of Q: vertices are the 1-cones, faces the nonzero cones.
    let rays: Vec<&crate::signcells::SignCell<S>> = fan.one_cones().collect();
    let ray_id: HashMap<SignPattern, usize> = rays.iter().enumerate().map(|(i, c)| (c.pattern, i)).collect();
    let mut verts = Vertices {
        coords: rays.iter().map(|c| normalize(c.witness.clone())).collect(),
        cone: rays.iter().map(|c| c.pattern).collect(),
        antipode: rays.iter().map(|c| ray_id[&c.pattern.negate()]).collect(),
    };
    let mut lattice: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for cell in fan.nonzero_cells() {
        let vs: Vec<usize> = rays
            .iter()
            .enumerate()
            .filter(|(_, r)| r.pattern.conforms_to(&cell.pattern))
            .map(|(i, _)| i)
            .collect();
        lattice.insert(vs, cell.dim - 1);
    }
    stats.q_f_vector = f_vector(lattice.values(), d - 1);
    let sphere_chi = if d % 2 == 1 { 2 } else { 0 };
    if euler_characteristic(&stats.q_f_vector) != sphere_chi {
        return Err(PolytopalError::Construction(format!(
            "boundary of Q has f-vector {:?}, not a {}-sphere",
            stats.q_f_vector,
            d - 1
        )));
    }
    check_pseudomanifold(&lattice, d).map_err(PolytopalError::Construction)?;

    // Stellar subdivisions of non-simplex faces, largest first, F with -F.
    loop {
        let next = lattice
            .iter()
            .filter(|(vs, &k)| vs.len() != k + 1)
            .max_by(|(a, ka), (b, kb)| ka.cmp(kb).then_with(|| b.cmp(a)))
            .map(|(vs, _)| vs.clone());
        let Some(face) = next else { break };
        let opposite = verts.antipodal_set(&face);
        let a = stellar(&mut lattice, &mut verts, &face);
        let b = stellar(&mut lattice, &mut verts, &opposite);
        verts.antipode[a] = b;
        verts.antipode[b] = a;
        stats.stellar_steps += 2;
        check_pseudomanifold(&lattice, d).map_err(PolytopalError::Construction)?;
    }
    stats.simplicial_f_vector = f_vector(lattice.values(), d - 1);

    // Two barycentric subdivisions.
    let mut facets: Vec<Vec<usize>> = lattice
        .iter()
        .filter(|(_, &k)| k == d - 1)
        .map(|(vs, _)| vs.clone())
        .collect();
    for _ in 0..2 {
        let (next_verts, next_facets) = barycentric(&verts, &facets);
        verts = next_verts;
        facets = next_facets;
    }

    let broken_cones: BTreeSet<SignPattern> = fan.broken_cells().map(|c| c.pattern).collect();
    let complex = PolytopeComplex::from_facets(d, verts, facets, broken_cones, stats)?;
    let failures = complex.check_definition(&fan, g);
    if let Some((clause, detail)) = failures.into_iter().next() {
        return Err(PolytopalError::ClauseFailed { clause, detail });
    }
    Ok(complex)
}

/// Stellar subdivision of the lattice at `face`; returns the new vertex.
fn stellar<S: Scalar>(lattice: &mut BTreeMap<Vec<usize>, usize>, verts: &mut Vertices<S>, face: &[usize]) -> usize {
    let a = verts.push_barycenter(face);
    let star: Vec<Vec<usize>> = lattice
        .keys()
        .filter(|g| is_subset(face, g))
        .cloned()
        .collect();
    for g in &star {
        lattice.remove(g);
    }
    let mut added: Vec<(Vec<usize>, usize)> = vec![(vec![a], 0)];
    for g in &star {
        for (h, &k) in lattice.iter() {
            if is_subset(h, g) && !is_subset(face, h) {
                let mut vs = h.clone();
                vs.push(a);
                added.push((vs, k + 1));
            }
        }
    }
    lattice.extend(added);
    a
}

/// Barycentric subdivision of a pure simplicial complex given by its facets.
fn barycentric<S: Scalar>(verts: &Vertices<S>, facets: &[Vec<usize>]) -> (Vertices<S>, Vec<Vec<usize>>) {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        for k in 1..=f.len() {
            all.extend(f.iter().copied().combinations(k));
        }
    }
    let mut next = Vertices {
        coords: Vec::with_capacity(all.len()),
        cone: Vec::with_capacity(all.len()),
        antipode: Vec::with_capacity(all.len()),
    };
    let mut id: HashMap<Vec<usize>, usize> = HashMap::with_capacity(all.len());
    for face in &all {
        let mut sum = vec![S::zero(); verts.coords[face[0]].len()];
        let mut cone = verts.cone[face[0]];
        for &v in face {
            for (s, x) in sum.iter_mut().zip(&verts.coords[v]) {
                *s = s.clone() + x.clone();
            }
            cone = cone.join(&verts.cone[v]).expect("faces lie in a single cone");
        }
        id.insert(face.clone(), next.coords.len());
        next.coords.push(normalize(sum));
        next.cone.push(cone);
        next.antipode.push(usize::MAX);
    }
    for face in &all {
        next.antipode[id[face]] = id[&verts.antipodal_set(face)];
    }
    let mut out = Vec::new();
    for f in facets {
        for perm in f.iter().copied().permutations(f.len()) {
            let mut chain: Vec<usize> = (1..=perm.len())
                .map(|k| {
                    let mut prefix = perm[..k].to_vec();
                    prefix.sort_unstable();
                    id[&prefix]
                })
                .collect();
            chain.sort_unstable();
            out.push(chain);
        }
    }
    out.sort();
    (next, out)
}

impl<S: Scalar> PolytopeComplex<S> {
    fn from_facets(
        dim: usize,
        verts: Vertices<S>,
        facet_sets: Vec<Vec<usize>>,
        broken_cones: BTreeSet<SignPattern>,
        mut stats: ConstructionStats,
    ) -> Result<Self, PolytopalError> {
        let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for f in &facet_sets {
            for k in 1..=f.len() {
                for s in f.iter().copied().combinations(k) {
                    all.insert((s.len(), s));
                }
            }
        }
        let faces: Vec<Vec<usize>> = all.into_iter().map(|(_, s)| s).collect();
        let index: HashMap<Vec<usize>, usize> = faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let mut gamma = Vec::with_capacity(faces.len());
        for f in &faces {
            let mut p = verts.cone[f[0]];
            for &v in &f[1..] {
                p = p.join(&verts.cone[v]).ok_or_else(|| PolytopalError::ClauseFailed {
                    clause: "ii",
                    detail: format!("face {f:?} meets two opposite orthants"),
                })?;
            }
            gamma.push(p);
        }
        let facets: Vec<usize> = facet_sets.iter().map(|f| index[f]).collect();
        let mut vertex_facets = vec![Vec::new(); verts.coords.len()];
        for &fi in &facets {
            for &v in &faces[fi] {
                vertex_facets[v].push(fi);
            }
        }
        stats.f_vector = f_vector(faces.iter().map(|f| f.len() - 1).collect::<Vec<_>>().iter(), dim - 1);
        Ok(PolytopeComplex {
            dim,
            coords: verts.coords,
            vertex_cone: verts.cone,
            antipode: verts.antipode,
            faces,
            index,
            gamma,
            facets,
            vertex_facets,
            broken_cones,
            stats,
        })
    }

    /// Dimension of the polytope, equal to `dim L`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn coordinates(&self, v: usize) -> &[S] {
        &self.coords[v]
    }

    pub fn antipode(&self, v: usize) -> usize {
        self.antipode[v]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_index(&self, vs: &[usize]) -> Option<usize> {
        self.index.get(vs).copied()
    }

    pub fn facets(&self) -> &[usize] {
        &self.facets
    }

    /// Cone of the fan containing face `i`.
    pub fn gamma(&self, i: usize) -> SignPattern {
        self.gamma[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&i| self.faces[i].len() == 2)
    }

    pub fn is_broken_face(&self, i: usize) -> bool {
        self.broken_cones.contains(&self.gamma[i])
    }

    pub fn broken_cones(&self) -> &BTreeSet<SignPattern> {
        &self.broken_cones
    }

    pub fn stats(&self) -> &ConstructionStats {
        &self.stats
    }

    /// Face `-F`.
    pub fn opposite_face(&self, i: usize) -> usize {
        let vs: Vec<usize> = {
            let mut v: Vec<usize> = self.faces[i].iter().map(|&x| self.antipode[x]).collect();
            v.sort_unstable();
            v
        };
        self.index[&vs]
    }

    fn facets_containing(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let f = &self.faces[i];
        self.vertex_facets[f[0]]
            .iter()
            .copied()
            .filter(move |&t| is_subset(f, &self.faces[t]))
    }

    /// Faces `F'` antipodal to face `i`: those with `F ∪ -F'` inside a face.
    pub fn antipodal_partners(&self, i: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for t in self.facets_containing(i) {
            let facet = &self.faces[t];
            for k in 1..=facet.len() {
                for sub in facet.iter().copied().combinations(k) {
                    let mut neg: Vec<usize> = sub.iter().map(|&v| self.antipode[v]).collect();
                    neg.sort_unstable();
                    out.insert(self.index[&neg]);
                }
            }
        }
        out
    }

    /// All unordered antipodal pairs `(i, j)` with `i < j`.
    pub fn antipodal_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.faces.len() {
            for j in self.antipodal_partners(i) {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Clauses of the definition that fail, as `(clause, detail)` pairs.
    pub fn check_definition(&self, fan: &Fan<S>, g: &Graph) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let nv = self.vertex_count();

        // (i) central symmetry.
        for v in 0..nv {
            let w = self.antipode[v];
            if w >= nv || w == v || self.antipode[w] != v {
                out.push(("i", format!("vertex {v} has no proper antipode")));
                continue;
            }
            let neg: Vec<S> = self.coords[v].iter().map(|x| -x.clone()).collect();
            if self.coords[w] != neg {
                out.push(("i", format!("vertices {v} and {w} are not opposite points")));
            }
        }
        for i in 0..self.faces.len() {
            let mut neg: Vec<usize> = self.faces[i].iter().map(|&v| self.antipode[v]).collect();
            neg.sort_unstable();
            if !self.index.contains_key(&neg) {
                out.push(("i", format!("face {:?} has no opposite face", self.faces[i])));
            }
        }

        // (ii) every face lies in one cone, and every cone is hit.
        let mut hit: BTreeSet<SignPattern> = BTreeSet::new();
        for (i, p) in self.gamma.iter().enumerate() {
            if fan.get(p).is_none() {
                out.push(("ii", format!("face {:?} lies in no cone", self.faces[i])));
            }
            hit.insert(*p);
        }
        for c in fan.nonzero_cells() {
            if !hit.contains(&c.pattern) {
                out.push(("ii", format!("cone {} contains no face", c.pattern)));
            }
        }
        for (v, x) in self.coords.iter().enumerate() {
            if SignPattern::of_vector(x) != self.vertex_cone[v] {
                out.push(("ii", format!("vertex {v} is not inside its recorded cone")));
            }
        }

        // (iii) simplicial sphere.
        let f = &self.stats.f_vector;
        let sphere_chi = if self.dim % 2 == 1 { 2 } else { 0 };
        if euler_characteristic(f) != sphere_chi {
            out.push(("iii", format!("f-vector {f:?} is not that of a sphere")));
        }
        if self.facets.iter().any(|&t| self.faces[t].len() != self.dim) {
            out.push(("iii", "a facet is not a simplex of full dimension".to_string()));
        }
        if self.dim >= 2 {
            let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
            for &t in &self.facets {
                for r in self.faces[t].iter().copied().combinations(self.dim - 1) {
                    *ridge_count.entry(r).or_default() += 1;
                }
            }
            if let Some((r, c)) = ridge_count.iter().find(|(_, &c)| c != 2) {
                out.push(("iii", format!("ridge {r:?} lies in {c} facets")));
            }
        }

        // (iv) cones of faces of a common face form a chain.
        for &t in &self.facets {
            let facet = &self.faces[t];
            let cones: Vec<SignPattern> = (1..=facet.len())
                .flat_map(|k| facet.iter().copied().combinations(k))
                .map(|s| self.gamma[self.index[&s]])
                .collect();
            for (a, b) in cones.iter().tuple_combinations() {
                if !a.conforms_to(b) && !b.conforms_to(a) {
                    out.push(("iv", format!("cones {a} and {b} of facet {facet:?} are incomparable")));
                    break;
                }
            }
        }

        // (v) broken edges in a closed vertex star share one broken cone.
        for v in 0..nv {
            let mut cones: BTreeSet<SignPattern> = BTreeSet::new();
            for &t in &self.vertex_facets[v] {
                for e in self.faces[t].iter().copied().combinations(2) {
                    let p = self.gamma[self.index[&e]];
                    if is_broken(g, &p) {
                        cones.insert(p);
                    }
                }
            }
            if cones.len() > 1 {
                out.push(("v", format!("star of vertex {v} meets broken cones {cones:?}")));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct FaceJson<'a> {
            vertices: &'a [usize],
            gamma: SignPattern,
            broken: bool,
        }
        let faces: Vec<FaceJson> = self
            .faces
            .iter()
            .enumerate()
            .map(|(i, f)| FaceJson {
                vertices: f,
                gamma: self.gamma[i],
                broken: self.is_broken_face(i),
            })
            .collect();
        serde_json::json!({
            "dim": self.dim,
            "vertexCount": self.vertex_count(),
            "antipode": self.antipode,
            "stats": self.stats,
            "faces": faces,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;
    use crate::linalg::kernel_basis;
    use crate::matrix::Matrix;
    use crate::scalar::Rational;

    fn minus_j_kernel(n: usize) -> Subspace<Rational> {
        kernel_basis(&Matrix::from_fn(n, n, |_, _| Rational::from_i64(-1)))
    }

    #[test]
    fn triangle_gives_a_subdivided_hexagon() {
        let g = NamedGraph::Complete(3).build().unwrap();
        let p = build_polytopal_representation(&minus_j_kernel(3), &g, 4).unwrap();
        assert_eq!(p.stats().q_f_vector, vec![6, 6]);
        assert_eq!(p.stats().stellar_steps, 0);
        // Each barycentric subdivision doubles the edges of a polygon.
        assert_eq!(p.stats().f_vector, vec![24, 24]);
        for v in 0..p.vertex_count() {
            let vs = vec![v];
            let partners = p.antipodal_partners(p.face_index(&vs).unwrap());
            let opposite = p.face_index(&[p.antipode(v)]).unwrap();
            assert!(partners.contains(&opposite));
        }
    }

    #[test]
    fn star_representation_has_broken_edges() {
        let g = NamedGraph::Star(3).build().unwrap();
        let l = kernel_basis(&g.adjacency::<Rational>());
        let p = build_polytopal_representation(&l, &g, 4).unwrap();
        assert_eq!(p.stats().q_f_vector, vec![6, 6]);
        assert_eq!(p.broken_cones().len(), 3);
        // Each broken 2-cone is cut into four edges by sd^2.
        assert_eq!(p.edges().filter(|&e| p.is_broken_face(e)).count(), 12);
    }

    #[test]
    fn k4_gives_a_simplicial_sphere() {
        let g = NamedGraph::Complete(4).build().unwrap();
        let p = build_polytopal_representation(&minus_j_kernel(4), &g, 4).unwrap();
        // Cuboctahedron: 12 vertices, 24 edges, 8 triangles and 6 squares.
        assert_eq!(p.stats().q_f_vector, vec![12, 24, 14]);
        assert_eq!(p.stats().stellar_steps, 6);
        assert_eq!(p.stats().simplicial_f_vector, vec![18, 48, 32]);
        assert_eq!(p.facets().len(), 32 * 36);
        assert!(p.edges().all(|e| !p.is_broken_face(e)));
    }

    #[test]
    fn guards_and_rejections() {
        let g = NamedGraph::Complete(4).build().unwrap();
        assert!(matches!(
            build_polytopal_representation(&minus_j_kernel(4), &g, 2),
            Err(PolytopalError::DimGuardExceeded { dim: 3, guard: 2 })
        ));
        let c4 = NamedGraph::Cycle(4).build().unwrap();
        let ints = |v: &[i64]| v.iter().map(|&x| Rational::from_i64(x)).collect::<Vec<_>>();
        let bad = Subspace::span(4, vec![ints(&[1, -1, 1, -1])]);
        assert!(matches!(
            build_polytopal_representation(&bad, &c4, 4),
            Err(PolytopalError::NotSemivalid(_))
        ));
    }
}
