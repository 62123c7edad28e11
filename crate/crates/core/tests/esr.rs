use cdv_core::esr::{
    build_phi, complete_graph_witness, evaluate_at, formula_stats, serialize_smtlib, Assignment, EsrError, Var,
};
use cdv_core::graph::NamedGraph;
use cdv_core::schrodinger::SchrodingerMatrix;
use cdv_core::{QuadSurd, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn complete_graph_witnesses_satisfy_phi() {
    for n in 2..=5 {
        let g = NamedGraph::Complete(n).build().unwrap();
        let (layout, f) = build_phi(&g, n - 1).unwrap();
        let w = complete_graph_witness(&layout).unwrap();
        assert!(evaluate_at(&f, &layout, &w).unwrap(), "K_{n}");
        // The decoded matrix is a certificate for μ ≥ n - 1.
        let m = w.m_matrix(&layout).unwrap();
        let s = SchrodingerMatrix::validate(&g, m).unwrap();
        assert!(s.corank() >= n - 1);
        assert!(s.sah_check().sah_holds);
    }
}

#[test]
fn zero_assignment_fails() {
    let g = NamedGraph::Complete(3).build().unwrap();
    let (layout, f) = build_phi(&g, 2).unwrap();
    let zero = Assignment(vec![Some(QuadSurd::integer(0)); layout.var_count()]);
    assert!(!evaluate_at(&f, &layout, &zero).unwrap());
    let mut partial = zero.clone();
    partial.0[5] = None;
    assert!(matches!(evaluate_at(&f, &layout, &partial), Err(EsrError::MissingVariable(_))));
}

#[test]
fn single_entry_mutations_fail() {
    let g = NamedGraph::Complete(3).build().unwrap();
    let (layout, f) = build_phi(&g, 2).unwrap();
    let w = complete_graph_witness(&layout).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let v = Var(rng.gen_range(0..layout.var_count() as u32));
        let delta = QuadSurd::integer(rng.gen_range(3..=10));
        let mut m = w.clone();
        let old = m.get(v).unwrap().clone();
        m.set(v, old + delta);
        assert!(!evaluate_at(&f, &layout, &m).unwrap(), "mutating {}", layout.name(v));
    }
    // Perturbing an eigenvector entry breaks orthonormality.
    let mut m = w.clone();
    let v = layout.l(0, 1);
    let old = m.get(v).unwrap().clone();
    m.set(v, old + QuadSurd::rational(cdv_core::Rational::new(1.into(), 7.into())));
    assert!(!evaluate_at(&f, &layout, &m).unwrap());
}

#[test]
fn smtlib_reparses() {
    for (g, k) in [
        (NamedGraph::Complete(3), 2),
        (NamedGraph::Path(3), 1),
        (NamedGraph::Star(3), 2),
    ] {
        let g = g.build().unwrap();
        let (layout, f) = build_phi(&g, k).unwrap();
        let text = serialize_smtlib(&f, &layout);
        assert_eq!(text, serialize_smtlib(&build_phi(&g, k).unwrap().1, &layout));
        let stream = smt2parser::CommandStream::new(text.as_bytes(), smt2parser::concrete::SyntaxBuilder, None);
        let commands = stream.collect::<Result<Vec<_>, _>>().unwrap();
        let declared = commands
            .iter()
            .filter(|c| matches!(c, smt2parser::concrete::Command::DeclareConst { .. }))
            .count();
        assert_eq!(declared, layout.var_count());
        assert!(matches!(commands.last(), Some(smt2parser::concrete::Command::CheckSat)));
    }
}

#[test]
fn size_grows_like_n_to_the_sixth() {
    let mut ratios = Vec::new();
    for n in 3..=8 {
        let g = NamedGraph::Complete(n).build().unwrap();
        let (layout, f) = build_phi(&g, n - 1).unwrap();
        let stats = formula_stats(&f, &layout);
        assert_eq!(stats.vars, n * n + 1 + n.pow(4));
        ratios.push(stats.total_term_size as f64 / (n as f64).powi(6));
    }
    for (a, k) in [(4usize, 2usize), (5, 3)] {
        let g = NamedGraph::Cycle(a).build().unwrap();
        let (layout, _) = build_phi(&g, k).unwrap();
        let p = a * (a - 1) / 2 - a;
        assert_eq!(layout.var_count(), a * a + (a - k) + p * p + a.pow(4) + p);
    }
    assert!(ratios.iter().all(|&r| r > 0.5 && r < 3.0), "{ratios:?}");
}

#[test]
fn witness_values_are_exact() {
    let g = NamedGraph::Complete(3).build().unwrap();
    let (layout, _) = build_phi(&g, 2).unwrap();
    let w = complete_graph_witness(&layout).unwrap();
    assert_eq!(w.get(layout.d(0).unwrap()).unwrap().to_f64(), -3.0);
}
