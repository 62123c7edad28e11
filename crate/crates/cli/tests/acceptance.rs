//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use cdv_core::esr::{build_phi, complete_graph_witness, evaluate_at, formula_stats, serialize_smtlib, Var};
use cdv_core::graph::NamedGraph;
use cdv_core::oracle::cells_brute_force;
use cdv_core::polytopal::{build_cellular_map, build_polytopal_representation, verify_disjointness};
use cdv_core::projplane::{build_plane, incidence_graph};
use cdv_core::schrodinger::{mu_edge_upper_bound, EdgeBound};
use cdv_core::sigma5::{
    decide_sigma_le_5, default_params, evaluate_i, random_params, sym_cycle_basis, two_closure,
    verify_certificate, Sigma5Verdict,
};
use cdv_core::signcells::{
    enumerate_cells, fan_sanity, is_broken, verify_representation, RepresentationKind, SignPattern,
};
use cdv_core::{Graph, Matrix, ObstructionCertificate, QuadSurd, Rational, Scalar, SchrodingerMatrix, Subspace};
use cdvlab::{run, Command, RunConfig, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn graph(n: NamedGraph) -> Graph {
    n.build().unwrap()
}

fn neg_adjacency(g: &Graph) -> Matrix<QuadSurd> {
    g.adjacency::<QuadSurd>().map(|x| QuadSurd::integer(0) - x.clone())
}

fn minus_j(n: usize) -> Matrix<QuadSurd> {
    Matrix::from_fn(n, n, |_, _| QuadSurd::integer(-1))
}

fn kernel_of(g: &Graph, m: Matrix<QuadSurd>) -> Subspace<QuadSurd> {
    SchrodingerMatrix::validate(g, m).unwrap().kernel()
}

fn plane_exactness() -> Outcome {
    let mut seen = Vec::new();
    for (q, corank) in [(2u64, 6usize), (3, 12), (5, 30)] {
        let plane = build_plane(q).map_err(|e| e.to_string())?;
        let n = plane.points.len();
        let gram = plane.incidence.matmul(&plane.incidence.transpose());
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { q + 1 } else { 1 };
                ensure(gram[(i, j)] == Rational::from_i64(want as i64), format!("q={q}: N N^T at ({i},{j})"))?;
            }
        }
        let rep = incidence_graph(&plane).map_err(|e| e.to_string())?;
        ensure(rep.corank == corank, format!("q={q}: corank {} != {corank}", rep.corank))?;
        ensure(corank as u64 == q * q + q, "corank formula")?;
        seen.push(format!("q={q}: corank {}", rep.corank));
    }
    Ok(seen.join(", "))
}

fn mu_sigma_report() -> Outcome {
    let mut c = RunConfig::new(Command::Projplane);
    c.q = Some(3);
    c.mode = Some("mu-sigma".into());
    let out = run(&c);
    ensure(out.status == Status::Ok, format!("exit status {:?}", out.status))?;
    let j = &out.json;
    ensure(j["edges"] == 52, "edges")?;
    ensure(j["muUpper"] == 9, format!("muUpper {}", j["muUpper"]))?;
    ensure(j["etaLower"] == 11, format!("etaLower {}", j["etaLower"]))?;
    let one_edge = j["chain"].as_array().unwrap().iter().any(|s| {
        let s = s.as_str().unwrap();
        s.contains("dimension 11") && s.matches(" = 0}").count() == 1
    });
    ensure(one_edge, "chain does not record a one-edge F")?;
    Ok("|E(H_3)| = 52, muUpper = 9, etaLower = 11 with |F| = 1".into())
}

fn gap_pipeline() -> Outcome {
    let mut c = RunConfig::new(Command::Projplane);
    c.q = Some(3);
    c.mode = Some("gap".into());
    let out = run(&c);
    ensure(out.status == Status::Ok, format!("exit status {:?}", out.status))?;
    let j = &out.json;
    ensure(j["gap"]["edges"] == 35, format!("contracted edges {}", j["gap"]["edges"]))?;
    ensure(j["muUpper"] == 7, format!("muUpper {}", j["muUpper"]))?;
    ensure(j["sigmaLower"] == 8, format!("sigmaLower {}", j["sigmaLower"]))?;
    ensure(j["chain"].as_array().map_or(0, |c| c.len()) >= 3, "deduction chain missing")?;
    Ok("35 edges after contraction, muUpper = 7, sigmaLower = 8".into())
}

fn sigma5_decisions() -> Outcome {
    let k6 = decide_sigma_le_5(&graph(NamedGraph::Complete(6)), 100_000, 0).map_err(|e| e.to_string())?;
    ensure(k6.verdict == Sigma5Verdict::AtMostFive, "K6 verdict")?;
    ensure(k6.generators == 10, format!("K6 has {} generators", k6.generators))?;
    ensure(k6.i_values.iter().all(|&x| !x), "K6 has a nonzero I-value")?;

    let g7 = graph(NamedGraph::Complete(7));
    let k7 = decide_sigma_le_5(&g7, 100_000, 0).map_err(|e| e.to_string())?;
    ensure(k7.verdict == Sigma5Verdict::AboveFive, "K7 verdict")?;
    let cert = k7.certificate.ok_or("K7 has no certificate")?;
    let back = ObstructionCertificate::from_json(&cert.to_json()).map_err(|e| e.to_string())?;
    ensure(back == cert, "JSON round trip changed the certificate")?;
    ensure(verify_certificate(&back, &g7).valid, "round-tripped certificate rejected")?;

    let mut mutations = 0;
    let mut reject = |m: ObstructionCertificate, what: &str| -> Result<(), String> {
        mutations += 1;
        ensure(!verify_certificate(&m, &g7).valid, format!("mutation accepted: {what}"))
    };
    for i in 0..cert.pushforward.len().min(25) {
        let mut m = cert.clone();
        m.pushforward.remove(i);
        reject(m, &format!("drop pushforward term {i}"))?;
    }
    for i in 0..cert.pairs.len().min(10) {
        let mut m = cert.clone();
        m.pairs.remove(i);
        reject(m, &format!("drop cycle pair {i}"))?;
    }
    let mut m = cert.clone();
    m.i_value ^= 1;
    reject(m, "flip iValue")?;
    ensure(!verify_certificate(&cert, &graph(NamedGraph::Complete(6))).valid, "accepted against K6")?;

    for name in [NamedGraph::CompleteBipartite(3, 3), NamedGraph::Petersen] {
        let d = decide_sigma_le_5(&graph(name.clone()), 100_000, 0).map_err(|e| e.to_string())?;
        ensure(d.verdict == Sigma5Verdict::AtMostFive, format!("{name:?} verdict"))?;
    }
    Ok(format!(
        "K6 <= 5 (10 generators), K7 > 5 with a verified certificate, {mutations} single mutations rejected, K3,3 and Petersen <= 5"
    ))
}

fn parameter_independence() -> Outcome {
    let mut detail = Vec::new();
    for n in [6usize, 7] {
        let t = two_closure(&graph(NamedGraph::Complete(n)), 100_000).map_err(|e| e.to_string())?;
        let (basis, kernel) = sym_cycle_basis(&t);
        let mut sets = vec![default_params(n)];
        let mut seed = 1;
        let mut values: Vec<Vec<bool>> = Vec::new();
        while values.len() < 5 {
            let params = sets.pop().unwrap_or_else(|| random_params(n, seed));
            seed += 1;
            let v: Result<Vec<bool>, _> = kernel.iter().map(|z| evaluate_i(z, &t, &basis, &params)).collect();
            if let Ok(v) = v {
                values.push(v);
            }
            ensure(seed < 100, "no generic parameters found")?;
        }
        ensure(values.windows(2).all(|w| w[0] == w[1]), format!("K{n}: I-values depend on parameters"))?;
        detail.push(format!("K{n}: {} kernel vectors", kernel.len()));
    }
    Ok(format!("identical over 5 parameter sets ({})", detail.join(", ")))
}

fn random_subspace(rng: &mut ChaCha8Rng) -> Subspace<Rational> {
    let n = rng.gen_range(2..=8);
    let d = rng.gen_range(1..=3.min(n));
    let vecs = (0..d)
        .map(|_| (0..n).map(|_| Rational::from_i64(rng.gen_range(-2..=2))).collect())
        .collect();
    Subspace::span(n, vecs)
}

fn cell_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let l = random_subspace(&mut rng);
        let fan = enumerate_cells(&l, 6).map_err(|e| e.to_string())?;
        let fast: BTreeSet<SignPattern> = fan.cells().iter().map(|c| c.pattern).collect();
        ensure(fast == cells_brute_force(&l), format!("subspace {i} disagrees with the 3^n oracle"))?;
    }
    Ok("100 random subspaces agree with the brute-force oracle".into())
}

fn semivalid_star() -> Outcome {
    let g = graph(NamedGraph::Star(3));
    let l = kernel_of(&g, neg_adjacency(&g));
    let v = verify_representation(&l, &g, RepresentationKind::Semivalid, 6).map_err(|e| e.to_string())?;
    ensure(v.holds, format!("{} violations", v.violations.len()))?;
    let fan = enumerate_cells(&l, 6).and_then(|f| f.classify(&g)).map_err(|e| e.to_string())?;
    let sanity = fan_sanity(&fan, &g);
    ensure(sanity.passed(), sanity.failures.join("; "))?;
    // Independent count of broken cones straight from the 3^n oracle.
    let oracle_broken = cells_brute_force(&l).iter().filter(|p| !p.is_zero() && is_broken(&g, p)).count();
    ensure(oracle_broken == sanity.broken_checked, "broken cone count disagrees with the oracle")?;
    Ok(format!(
        "semivalid; {} broken cones, each a 2-cone with two 1-cone faces, no shared 1-cone",
        sanity.broken_checked
    ))
}

fn polytopal_pipeline() -> Outcome {
    let k4 = graph(NamedGraph::Complete(4));
    let star = graph(NamedGraph::Star(3));
    let mut detail = Vec::new();
    for (name, g, m) in [("K4", &k4, minus_j(4)), ("K1,3", &star, neg_adjacency(&star))] {
        let l = kernel_of(g, m);
        let p = build_polytopal_representation(&l, g, 4).map_err(|e| format!("{name}: {e}"))?;
        let map = build_cellular_map(&p, g).map_err(|e| format!("{name}: {e}"))?;
        let rep = verify_disjointness(&p, &map);
        ensure(rep.passed(), format!("{name}: {} antipodal pairs meet", rep.failures.len()))?;
        detail.push(format!("{name}: {} pairs", rep.pairs_checked));
    }
    Ok(format!("clauses (i)-(v), cellular map and disjointness hold ({})", detail.join(", ")))
}

fn rational(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// Shifts `t` tried in `tI - A`; the best one sits at the second eigenvalue.
fn shifts() -> Vec<QuadSurd> {
    let mut out: Vec<QuadSurd> = (-3..=3).map(QuadSurd::integer).collect();
    for q in [2u64, 3] {
        out.push(QuadSurd::sqrt(q).unwrap());
        out.push(-QuadSurd::sqrt(q).unwrap());
    }
    for (a, b) in [(-1, 1), (1, 1), (-1, -1), (1, -1)] {
        out.push(QuadSurd::new(rational(a, 2), rational(b, 2), 5).unwrap());
    }
    out
}

fn mu_sweep() -> Outcome {
    let mut corpus: Vec<NamedGraph> = (2..=7).map(NamedGraph::Complete).collect();
    for a in 1..=3 {
        for b in a..=3 {
            corpus.push(NamedGraph::CompleteBipartite(a, b));
        }
    }
    corpus.extend((2..=7).map(NamedGraph::Path));
    corpus.extend((3..=8).map(NamedGraph::Cycle));
    corpus.extend([NamedGraph::Petersen, NamedGraph::Heawood]);
    let mut compared = 0;
    for name in &corpus {
        let g = graph(name.clone());
        let n = g.n();
        let a = g.adjacency::<QuadSurd>();
        let mut best: Option<usize> = None;
        for t in shifts() {
            let m = Matrix::identity(n).scale(&t).add(&a.scale(&QuadSurd::integer(-1)));
            if let Ok(s) = SchrodingerMatrix::validate(&g, m) {
                best = best.max(s.mu_lower_certificate());
            }
        }
        if let NamedGraph::Complete(k) = name {
            let s = SchrodingerMatrix::validate(&g, minus_j(*k)).map_err(|e| e.to_string())?;
            ensure(s.mu_lower_certificate() == Some(k - 1), format!("-J_{k} does not certify {}", k - 1))?;
            best = best.max(Some(k - 1));
        }
        match mu_edge_upper_bound(&g) {
            Ok(EdgeBound::Bound(up)) => {
                if let Some(lo) = best {
                    ensure(lo <= up, format!("{name:?}: lower {lo} > upper {up}"))?;
                    compared += 1;
                }
            }
            Ok(EdgeBound::K33Exception) => {}
            Err(e) => return Err(format!("{name:?}: {e}")),
        }
    }
    Ok(format!("{} graphs, {compared} lower/upper comparisons consistent; -J_n certifies n-1", corpus.len()))
}

fn esr_generator() -> Outcome {
    let g = graph(NamedGraph::Complete(3));
    let (layout, f) = build_phi(&g, 2).map_err(|e| e.to_string())?;
    ensure(layout.var_count() == 91, format!("{} variables", layout.var_count()))?;
    let w = complete_graph_witness(&layout).map_err(|e| e.to_string())?;
    ensure(evaluate_at(&f, &layout, &w).map_err(|e| e.to_string())?, "witness does not satisfy the formula")?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let v = Var(rng.gen_range(0..layout.var_count() as u32));
        let mut m = w.clone();
        let old = m.get(v).unwrap().clone();
        m.set(v, old + QuadSurd::integer(rng.gen_range(3..=10)));
        ensure(!evaluate_at(&f, &layout, &m).unwrap(), format!("mutating {} keeps it true", layout.name(v)))?;
    }
    let text = serialize_smtlib(&f, &layout);
    let commands = smt2parser::CommandStream::new(text.as_bytes(), smt2parser::concrete::SyntaxBuilder, None)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("reparse: {e:?}"))?;
    ensure(!commands.is_empty(), "empty script")?;
    let mut ratios = Vec::new();
    for n in 3..=8 {
        let g = graph(NamedGraph::Complete(n));
        let (layout, f) = build_phi(&g, n - 1).map_err(|e| e.to_string())?;
        ratios.push(formula_stats(&f, &layout).total_term_size as f64 / (n as f64).powi(6));
    }
    ensure(ratios.iter().all(|&r| r < 3.0), format!("ratios {ratios:?}"))?;
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    Ok(format!("91 variables, witness true, 20 mutations false, reparsed, size/n^6 <= {max:.3}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("projective planes: N N^T = qI + J and corank q^2 + q", plane_exactness),
        ("projplane q=3 mu-sigma report", mu_sigma_report),
        ("gap graph pipeline", gap_pipeline),
        ("sigma <= 5 decisions and certificates", sigma5_decisions),
        ("I-values independent of moment parameters", parameter_independence),
        ("sign-cell enumeration equals brute force", cell_oracle),
        ("semivalid star and fan sanity", semivalid_star),
        ("polytopal pipeline on K4 and K1,3", polytopal_pipeline),
        ("mu bounds sweep", mu_sweep),
        ("existential sentence generator", esr_generator),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
