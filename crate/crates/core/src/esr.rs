//! The existential sentence `φ_{G,k}` over the reals that holds exactly when
//! `μ(G) ≥ k`.
//!
//! The sentence searches for an eigendecomposition `M = L D Lᵀ` with one
//! negative eigenvalue and `k` forced zeros, and a singular value
//! decomposition `N(M) = A S Bᵀ` with positive singular values, which is the
//! Strong Arnold Hypothesis in existential form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::scalar::{is_perfect_square, QuadSurd, Rational, Scalar, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EsrError {
    #[error("k = {k} is outside 0..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("no value for variable {0}")]
    MissingVariable(String),
    #[error("block {block} has shape {found:?}, expected {expected:?}")]
    BlockShape {
        block: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Var(pub u32);

/// Positions of the quantified variables, block by block.
#[derive(Clone, Debug, Serialize)]
pub struct VariableLayout {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub non_edges: Vec<(usize, usize)>,
    /// Diagonal positions of `D` that are variables: `0` and `k+1..n`.
    pub d_slots: Vec<usize>,
    l0: u32,
    d0: u32,
    a0: u32,
    b0: u32,
    s0: u32,
    total: u32,
}

impl VariableLayout {
    pub fn new(g: &Graph, k: usize) -> Result<Self, EsrError> {
        let n = g.n();
        if n == 0 || k >= n {
            return Err(EsrError::KOutOfRange { k, max: n.saturating_sub(1) });
        }
        let non_edges = g.non_edges();
        let p = non_edges.len();
        let d_slots: Vec<usize> = std::iter::once(0).chain(k + 1..n).collect();
        let l0 = 0;
        let d0 = l0 + (n * n) as u32;
        let a0 = d0 + d_slots.len() as u32;
        let b0 = a0 + (p * p) as u32;
        let s0 = b0 + (n * n * n * n) as u32;
        let total = s0 + p as u32;
        Ok(VariableLayout {
            n,
            k,
            p,
            non_edges,
            d_slots,
            l0,
            d0,
            a0,
            b0,
            s0,
            total,
        })
    }

    pub fn var_count(&self) -> usize {
        self.total as usize
    }

    pub fn l(&self, i: usize, j: usize) -> Var {
        Var(self.l0 + (i * self.n + j) as u32)
    }

    /// `D_ii` when it is a variable; the other diagonal entries are zero.
    pub fn d(&self, i: usize) -> Option<Var> {
        self.d_slots.iter().position(|&s| s == i).map(|t| Var(self.d0 + t as u32))
    }

    pub fn a(&self, i: usize, j: usize) -> Var {
        Var(self.a0 + (i * self.p + j) as u32)
    }

    pub fn b(&self, i: usize, j: usize) -> Var {
        Var(self.b0 + (i * self.n * self.n + j) as u32)
    }

    pub fn s(&self, i: usize) -> Var {
        Var(self.s0 + i as u32)
    }

    pub fn name(&self, v: Var) -> String {
        let x = v.0;
        let nn = (self.n * self.n) as u32;
        if x < self.d0 {
            format!("L_{}_{}", (x - self.l0) / self.n as u32, (x - self.l0) % self.n as u32)
        } else if x < self.a0 {
            format!("D_{}", self.d_slots[(x - self.d0) as usize])
        } else if x < self.b0 {
            let p = self.p as u32;
            format!("A_{}_{}", (x - self.a0) / p, (x - self.a0) % p)
        } else if x < self.s0 {
            format!("B_{}_{}", (x - self.b0) / nn, (x - self.b0) % nn)
        } else {
            format!("S_{}", x - self.s0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub coeff: i64,
    pub vars: Vec<Var>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Poly(pub Vec<Monomial>);

impl Poly {
    fn term(coeff: i64, vars: Vec<Var>) -> Self {
        Poly(vec![Monomial { coeff, vars }])
    }

    fn push(&mut self, coeff: i64, vars: Vec<Var>) {
        self.0.push(Monomial { coeff, vars });
    }

    fn extend(&mut self, other: &Poly, sign: i64) {
        self.0.extend(other.0.iter().map(|m| Monomial {
            coeff: sign * m.coeff,
            vars: m.vars.clone(),
        }));
    }

    fn size(&self) -> usize {
        self.0.iter().map(|m| 1 + m.vars.len()).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    fn holds(self, s: Sign) -> bool {
        match self {
            Relation::Lt => s == Sign::Negative,
            Relation::Le => s != Sign::Positive,
            Relation::Eq => s == Sign::Zero,
            Relation::Ge => s != Sign::Negative,
            Relation::Gt => s == Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Family {
    /// `λ_1 < 0` and the trailing eigenvalues nonnegative.
    Spectrum,
    /// `L Lᵀ = I_n`.
    EigenbasisOrthogonal,
    /// `M = L D Lᵀ` is negative on edges and zero on non-edges.
    Pattern,
    /// Diagonal of `S` positive.
    SingularValues,
    /// `Aᵀ A = I_p`.
    LeftOrthogonal,
    /// `Bᵀ B = I_{n²}`.
    RightOrthogonal,
    /// `A S Bᵀ = N(M)`.
    Decomposition,
}

/// `poly rel 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Atom {
    pub family: Family,
    pub poly: Poly,
    pub rel: Relation,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Formula {
    pub atoms: Vec<Atom>,
}

/// `M_uv = Σ_i L_ui D_ii L_vi`, over the variable diagonal entries.
fn m_entry(layout: &VariableLayout, u: usize, v: usize) -> Poly {
    let mut out = Poly::default();
    for &i in &layout.d_slots {
        out.push(1, vec![layout.l(u, i), layout.d(i).unwrap(), layout.l(v, i)]);
    }
    out
}

pub fn build_phi(g: &Graph, k: usize) -> Result<(VariableLayout, Formula), EsrError> {
    let layout = VariableLayout::new(g, k)?;
    let (n, p) = (layout.n, layout.p);
    let mut atoms = Vec::new();
    let mut add = |family, poly, rel| atoms.push(Atom { family, poly, rel });

    add(Family::Spectrum, Poly::term(1, vec![layout.d(0).unwrap()]), Relation::Lt);
    for &i in &layout.d_slots[1..] {
        add(Family::Spectrum, Poly::term(1, vec![layout.d(i).unwrap()]), Relation::Ge);
    }

    for i in 0..n {
        for j in i..n {
            let mut poly = Poly::default();
            for t in 0..n {
                poly.push(1, vec![layout.l(i, t), layout.l(j, t)]);
            }
            if i == j {
                poly.push(-1, vec![]);
            }
            add(Family::EigenbasisOrthogonal, poly, Relation::Eq);
        }
    }

    for u in 0..n {
        for v in u + 1..n {
            let rel = if g.has_edge(u, v) { Relation::Lt } else { Relation::Eq };
            add(Family::Pattern, m_entry(&layout, u, v), rel);
        }
    }

    for i in 0..p {
        add(Family::SingularValues, Poly::term(1, vec![layout.s(i)]), Relation::Gt);
    }

    for i in 0..p {
        for j in i..p {
            let mut poly = Poly::default();
            for r in 0..p {
                poly.push(1, vec![layout.a(r, i), layout.a(r, j)]);
            }
            if i == j {
                poly.push(-1, vec![]);
            }
            add(Family::LeftOrthogonal, poly, Relation::Eq);
        }
    }

    let nn = n * n;
    for i in 0..nn {
        for j in i..nn {
            let mut poly = Poly::default();
            for r in 0..nn {
                poly.push(1, vec![layout.b(r, i), layout.b(r, j)]);
            }
            if i == j {
                poly.push(-1, vec![]);
            }
            add(Family::RightOrthogonal, poly, Relation::Eq);
        }
    }

    // Column (i, j) of N(M) at non-edge uv is [j = v] M_ui + [j = u] M_iv.
    for (r, &(u, v)) in layout.non_edges.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let c = i * n + j;
                let mut poly = Poly::default();
                for t in 0..p {
                    poly.push(1, vec![layout.a(r, t), layout.s(t), layout.b(c, t)]);
                }
                if j == v {
                    poly.extend(&m_entry(&layout, u, i), -1);
                }
                if j == u {
                    poly.extend(&m_entry(&layout, i, v), -1);
                }
                add(Family::Decomposition, poly, Relation::Eq);
            }
        }
    }
    Ok((layout, Formula { atoms }))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FormulaStats {
    pub vars: usize,
    pub atoms: usize,
    /// Monomials plus variable occurrences, summed over all atoms.
    pub total_term_size: usize,
    pub atoms_per_family: BTreeMap<Family, usize>,
}

pub fn formula_stats(f: &Formula, layout: &VariableLayout) -> FormulaStats {
    let mut atoms_per_family = BTreeMap::new();
    for a in &f.atoms {
        *atoms_per_family.entry(a.family).or_insert(0) += 1;
    }
    FormulaStats {
        vars: layout.var_count(),
        atoms: f.atoms.len(),
        total_term_size: f.atoms.iter().map(|a| a.poly.size()).sum(),
        atoms_per_family,
    }
}

fn smt_number(c: i64) -> String {
    if c < 0 {
        format!("(- {}.0)", -c)
    } else {
        format!("{c}.0")
    }
}

fn smt_poly(p: &Poly, layout: &VariableLayout, out: &mut String) {
    let mono = |m: &Monomial, out: &mut String| {
        let names: Vec<String> = m.vars.iter().map(|&v| layout.name(v)).collect();
        match (m.coeff, names.len()) {
            (c, 0) => out.push_str(&smt_number(c)),
            (1, 1) => out.push_str(&names[0]),
            (1, _) => {
                let _ = write!(out, "(* {})", names.join(" "));
            }
            (c, _) => {
                let _ = write!(out, "(* {} {})", smt_number(c), names.join(" "));
            }
        }
    };
    match p.0.len() {
        0 => out.push_str("0.0"),
        1 => mono(&p.0[0], out),
        _ => {
            out.push_str("(+");
            for m in &p.0 {
                out.push(' ');
                mono(m, out);
            }
            out.push(')');
        }
    }
}

/// SMT-LIB 2.6 script in `QF_NRA` with one assertion.
pub fn serialize_smtlib(f: &Formula, layout: &VariableLayout) -> String {
    let mut out = String::from("(set-logic QF_NRA)\n");
    for v in 0..layout.total {
        let _ = writeln!(out, "(declare-const {} Real)", layout.name(Var(v)));
    }
    let atom = |a: &Atom, out: &mut String| {
        let _ = write!(out, "({} ", a.rel.symbol());
        smt_poly(&a.poly, layout, out);
        out.push_str(" 0.0)");
    };
    match f.atoms.len() {
        0 => out.push_str("(assert true)\n"),
        1 => {
            out.push_str("(assert ");
            atom(&f.atoms[0], &mut out);
            out.push_str(")\n");
        }
        _ => {
            out.push_str("(assert (and");
            for a in &f.atoms {
                out.push_str("\n  ");
                atom(a, &mut out);
            }
            out.push_str("))\n");
        }
    }
    out.push_str("(check-sat)\n");
    out
}

/// Values for every layout variable, indexed by [`Var`].
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment<S>(pub Vec<Option<S>>);

impl<S: Scalar> Assignment<S> {
    pub fn empty(layout: &VariableLayout) -> Self {
        Assignment(vec![None; layout.var_count()])
    }

    pub fn set(&mut self, v: Var, x: S) {
        self.0[v.0 as usize] = Some(x);
    }

    pub fn get(&self, v: Var) -> Option<&S> {
        self.0.get(v.0 as usize).and_then(Option::as_ref)
    }

    /// Fills every block from explicit matrices; `d` and `s` are the full diagonals.
    pub fn from_blocks(
        layout: &VariableLayout,
        l: &Matrix<S>,
        d: &[S],
        a: &Matrix<S>,
        s: &[S],
        b: &Matrix<S>,
    ) -> Result<Self, EsrError> {
        let (n, p) = (layout.n, layout.p);
        let shape = |block, m: &Matrix<S>, r: usize| {
            if (m.rows(), m.cols()) != (r, r) {
                Err(EsrError::BlockShape {
                    block,
                    expected: (r, r),
                    found: (m.rows(), m.cols()),
                })
            } else {
                Ok(())
            }
        };
        shape("L", l, n)?;
        shape("A", a, p)?;
        shape("B", b, n * n)?;
        if d.len() != n || s.len() != p {
            return Err(EsrError::BlockShape {
                block: "diagonal",
                expected: (n, p),
                found: (d.len(), s.len()),
            });
        }
        let mut out = Self::empty(layout);
        for i in 0..n {
            for j in 0..n {
                out.set(layout.l(i, j), l[(i, j)].clone());
            }
        }
        for &i in &layout.d_slots {
            out.set(layout.d(i).unwrap(), d[i].clone());
        }
        for i in 0..p {
            out.set(layout.s(i), s[i].clone());
            for j in 0..p {
                out.set(layout.a(i, j), a[(i, j)].clone());
            }
        }
        for i in 0..n * n {
            for j in 0..n * n {
                out.set(layout.b(i, j), b[(i, j)].clone());
            }
        }
        Ok(out)
    }

    /// `M = L D Lᵀ` read back from the assignment.
    pub fn m_matrix(&self, layout: &VariableLayout) -> Result<Matrix<S>, EsrError> {
        let n = layout.n;
        let mut rows = Vec::with_capacity(n);
        for u in 0..n {
            let mut row = Vec::with_capacity(n);
            for v in 0..n {
                row.push(eval_poly(&m_entry(layout, u, v), self, layout)?);
            }
            rows.push(row);
        }
        Ok(Matrix::from_rows(n, rows))
    }
}

fn eval_poly<S: Scalar>(p: &Poly, x: &Assignment<S>, layout: &VariableLayout) -> Result<S, EsrError> {
    let mut total = S::zero();
    for m in &p.0 {
        let mut t = S::from_i64(m.coeff);
        for &v in &m.vars {
            let value = x.get(v).ok_or_else(|| EsrError::MissingVariable(layout.name(v)))?;
            t = t * value.clone();
        }
        total = total + t;
    }
    Ok(total)
}

/// Exact truth value of the conjunction.
pub fn evaluate_at<S: Scalar>(f: &Formula, layout: &VariableLayout, x: &Assignment<S>) -> Result<bool, EsrError> {
    if let Some(v) = (0..layout.total).map(Var).find(|&v| x.get(v).is_none()) {
        return Err(EsrError::MissingVariable(layout.name(v)));
    }
    for a in &f.atoms {
        if !a.rel.holds(eval_poly(&a.poly, x, layout)?.sign()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Householder reflection swapping `e_1` and the unit all-ones direction.
/// Its entries lie in `Q(√n)`.
pub fn householder_all_ones(n: usize) -> Matrix<QuadSurd> {
    if n == 1 {
        return Matrix::identity(1);
    }
    let root = if is_perfect_square(n as u64) {
        QuadSurd::rational(Rational::from_i64((n as u64).sqrt() as i64))
    } else {
        QuadSurd::sqrt(n as u64).expect("not a perfect square")
    };
    let inv = QuadSurd::integer(1) / root;
    let v: Vec<QuadSurd> = (0..n)
        .map(|i| if i == 0 { QuadSurd::integer(1) - inv.clone() } else { -inv.clone() })
        .collect();
    let vv = v.iter().fold(QuadSurd::integer(0), |acc, x| acc + x.clone() * x.clone());
    let two_over = QuadSurd::integer(2) / vv;
    Matrix::from_fn(n, n, |i, j| {
        let id = if i == j { QuadSurd::integer(1) } else { QuadSurd::integer(0) };
        id - two_over.clone() * v[i].clone() * v[j].clone()
    })
}

/// Witness for `φ_{K_n, n-1}` built from `-J_n = -n u uᵀ` with `u` the unit
/// all-ones vector.
pub fn complete_graph_witness(layout: &VariableLayout) -> Result<Assignment<QuadSurd>, EsrError> {
    let n = layout.n;
    let mut d = vec![QuadSurd::integer(0); n];
    d[0] = QuadSurd::integer(-(n as i64));
    let p = layout.p;
    Assignment::from_blocks(
        layout,
        &householder_all_ones(n),
        &d,
        &Matrix::identity(p),
        &vec![QuadSurd::integer(1); p],
        &Matrix::identity(n * n),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    #[test]
    fn triangle_layout() {
        let g = NamedGraph::Complete(3).build().unwrap();
        let (layout, f) = build_phi(&g, 2).unwrap();
        assert_eq!(layout.p, 0);
        assert_eq!(layout.var_count(), 91);
        let stats = formula_stats(&f, &layout);
        assert!(!stats.atoms_per_family.contains_key(&Family::Decomposition));
        assert!(!stats.atoms_per_family.contains_key(&Family::SingularValues));
        assert_eq!(stats.atoms_per_family[&Family::EigenbasisOrthogonal], 6);
        assert_eq!(stats.atoms_per_family[&Family::RightOrthogonal], 45);
        assert_eq!(stats.atoms_per_family[&Family::Pattern], 3);
        assert_eq!(stats.atoms_per_family[&Family::Spectrum], 1);
    }

    #[test]
    fn layout_edge_cases() {
        let path = NamedGraph::Path(3).build().unwrap();
        let (layout, f) = build_phi(&path, 2).unwrap();
        assert_eq!(layout.p, 1);
        let s: Vec<&Atom> = f.atoms.iter().filter(|a| a.family == Family::SingularValues).collect();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].rel, Relation::Gt);
        let empty = Graph::empty(2);
        assert_eq!(VariableLayout::new(&empty, 0).unwrap().p, 1);
        assert_eq!(
            VariableLayout::new(&path, 3).unwrap_err(),
            EsrError::KOutOfRange { k: 3, max: 2 }
        );
    }

    #[test]
    fn names_follow_blocks() {
        let g = NamedGraph::Path(3).build().unwrap();
        let layout = VariableLayout::new(&g, 1).unwrap();
        assert_eq!(layout.name(layout.l(2, 1)), "L_2_1");
        assert_eq!(layout.name(layout.d(2).unwrap()), "D_2");
        assert!(layout.d(1).is_none());
        assert_eq!(layout.name(layout.a(0, 0)), "A_0_0");
        assert_eq!(layout.name(layout.b(8, 7)), "B_8_7");
        assert_eq!(layout.name(layout.s(0)), "S_0");
    }

    #[test]
    fn empty_conjunction() {
        let g = NamedGraph::Complete(2).build().unwrap();
        let layout = VariableLayout::new(&g, 1).unwrap();
        let text = serialize_smtlib(&Formula::default(), &layout);
        assert!(text.contains("(assert true)"));
    }

    #[test]
    fn householder_is_orthogonal() {
        for n in 1..6 {
            let h = householder_all_ones(n);
            assert_eq!(h.matmul(&h.transpose()), Matrix::identity(n));
            let first: Vec<QuadSurd> = (0..n).map(|i| h[(i, 0)].clone()).collect();
            assert!(first.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
