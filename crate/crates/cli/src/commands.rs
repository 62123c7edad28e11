use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use cdv_core::esr::{build_phi, complete_graph_witness, evaluate_at, formula_stats, serialize_smtlib};
use cdv_core::graph::GraphError;
use cdv_core::polytopal::{
    build_cellular_map, build_polytopal_representation, verify_disjointness, PolytopalError,
    DEFAULT_POLYTOPAL_DIM_GUARD,
};
use cdv_core::projplane::{build_plane, incidence_graph, separation_report, Mode, ProjPlaneError};
use cdv_core::schrodinger::mu_report;
use cdv_core::sigma5::{decide_sigma_le_5, verify_certificate, Sigma5Error, Sigma5Verdict};
use cdv_core::signcells::{
    enumerate_cells, eta_lower_bound, fan_sanity, greedy_edge_cover, lambda_lower_bound,
    verify_representation, verify_representation_sampled, RepresentationKind, SignCellError,
    DEFAULT_DIM_GUARD,
};
use cdv_core::{FieldScalar, Graph, ObstructionCertificate, SchrodingerMatrix};
use serde_json::json;

use crate::input::{load_graph, load_matrix, parse_edges};
use crate::{CliError, Command, Outcome, RunConfig, Status};

pub(crate) fn dispatch(c: &RunConfig) -> Result<Outcome, CliError> {
    match c.command {
        Command::MuBounds => mu_bounds(c),
        Command::EtaCertify => eta_certify(c),
        Command::Sigma5 => sigma5(c),
        Command::VerifyCert => verify_cert(c),
        Command::Projplane => projplane(c),
        Command::Fan => fan(c),
        Command::Polytopal => polytopal(c),
        Command::EsrEmit => esr_emit(c),
    }
}

fn outcome(status: Status, json: serde_json::Value, text: String) -> Outcome {
    Outcome {
        status,
        json,
        text,
        artifacts: Vec::new(),
        default_stem: None,
    }
}

fn graph_arg(c: &RunConfig) -> Result<(Graph, String), CliError> {
    let arg = c
        .graph
        .as_deref()
        .ok_or_else(|| CliError::Input("--graph is required".into()))?;
    let stem = match Path::new(arg).file_stem() {
        Some(s) if Path::new(arg).is_file() => s.to_string_lossy().into_owned(),
        _ => arg.to_ascii_lowercase().replace([',', '{', '}', '_'], ""),
    };
    Ok((load_graph(arg)?, stem))
}

fn schrodinger_arg(c: &RunConfig, g: &Graph) -> Result<SchrodingerMatrix<FieldScalar>, CliError> {
    let arg = c
        .matrix
        .as_deref()
        .ok_or_else(|| CliError::Input("--matrix is required".into()))?;
    SchrodingerMatrix::validate(g, load_matrix(arg, g)?).map_err(|e| CliError::Input(format!("{arg}: {e}")))
}

fn cells_error(e: SignCellError) -> CliError {
    match e {
        SignCellError::DimGuardExceeded { .. } | SignCellError::TooManyCoordinates(_) => CliError::Cap(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn graph_error(e: GraphError) -> CliError {
    match e {
        GraphError::CapExceeded { .. } => CliError::Cap(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn mu_bounds(c: &RunConfig) -> Result<Outcome, CliError> {
    let (g, _) = graph_arg(c)?;
    let m = c.matrix.as_ref().map(|_| schrodinger_arg(c, &g)).transpose()?;
    let rep = mu_report(&g, m.as_ref());
    let mut text = format!("graph: {} vertices, {} edges\n", g.n(), g.edge_count());
    if let Some(s) = &rep.sah {
        writeln!(text, "corank: {}\nstrong arnold: {} (rank {} of {})", opt(rep.corank), s.holds, s.rank, s.p).unwrap();
    }
    writeln!(text, "mu lower: {}\nmu upper: {}", opt(rep.mu_lower), opt(rep.mu_upper)).unwrap();
    for e in &rep.exceptions {
        writeln!(text, "note: {e}").unwrap();
    }
    Ok(outcome(Status::Ok, serde_json::to_value(&rep).unwrap(), text))
}

fn eta_certify(c: &RunConfig) -> Result<Outcome, CliError> {
    let (g, _) = graph_arg(c)?;
    let m = schrodinger_arg(c, &g)?;
    let guard = c.dim_guard.unwrap_or(DEFAULT_DIM_GUARD);
    let (f, chosen) = match &c.edges_f {
        Some(s) => (parse_edges(s)?, "given"),
        None if m.corank() <= guard => {
            let fan = enumerate_cells(&m.kernel(), guard)
                .and_then(|f| f.classify(&g))
                .map_err(cells_error)?;
            (greedy_edge_cover(&g, &fan), "greedy")
        }
        None => (Vec::new(), "empty"),
    };
    let lambda = lambda_lower_bound(&g, &m).map_err(cells_error)?;
    match eta_lower_bound(&g, &m, &f, guard) {
        Ok(cert) => {
            let json = json!({
                "corank": m.corank(),
                "edgesF": f,
                "edgesFChoice": chosen,
                "etaLower": cert.bound,
                "hypothesis": cert.hypothesis,
                "gMinusFConnected": cert.g_minus_f_connected,
                "lambdaLower": lambda,
            });
            let text = format!(
                "corank: {}\nF ({chosen}): {:?}\neta lower: {} (hypothesis: {:?})\nG - F connected: {}\nlambda lower: {lambda}\n",
                m.corank(),
                f,
                cert.bound,
                cert.hypothesis,
                cert.g_minus_f_connected
            );
            Ok(outcome(Status::Ok, json, text))
        }
        Err(SignCellError::HypothesisFails(p)) => {
            let json = json!({ "edgesF": f, "counterexample": p.to_string() });
            let text = format!("broken kernel cell {p} avoids every edge of F {f:?}\n");
            Ok(outcome(Status::Obstruction, json, text))
        }
        Err(SignCellError::HypothesisUnverified) => Err(CliError::Cap(SignCellError::HypothesisUnverified.to_string())),
        Err(e) => Err(cells_error(e)),
    }
}

fn sigma5(c: &RunConfig) -> Result<Outcome, CliError> {
    let (g, stem) = graph_arg(c)?;
    let d = decide_sigma_le_5(&g, c.cap_cycles, c.seed).map_err(|e| match e {
        Sigma5Error::Graph(e) => graph_error(e),
        Sigma5Error::DegeneratePosition(_) | Sigma5Error::TooManyVertices(_) => CliError::Cap(e.to_string()),
        _ => CliError::Input(e.to_string()),
    })?;
    let above = d.verdict == Sigma5Verdict::AboveFive;
    let ones = d.i_values.iter().filter(|&&x| x).count();
    let text = format!(
        "cycles: {}\nsymmetric generators: {}\nkernel dimension: {}\nI values equal to 1: {ones}\nverdict: {}\n",
        d.cycles,
        d.generators,
        d.kernel_dim,
        if above { "sigma > 5" } else { "sigma <= 5" }
    );
    let mut out = outcome(
        if above { Status::Obstruction } else { Status::Ok },
        serde_json::to_value(&d).unwrap(),
        text,
    );
    if let Some(cert) = &d.certificate {
        out.artifacts.push((".cert.json".into(), cert.to_json() + "\n"));
        out.default_stem = Some(stem);
    }
    Ok(out)
}

fn verify_cert(c: &RunConfig) -> Result<Outcome, CliError> {
    let (g, _) = graph_arg(c)?;
    let path = c.cert.as_ref().ok_or_else(|| CliError::Input("--cert is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    let cert = ObstructionCertificate::from_json(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let check = verify_certificate(&cert, &g);
    let text = match &check.reason {
        None => "certificate valid: sigma > 5\n".to_string(),
        Some(r) => format!("certificate rejected: {r}\n"),
    };
    let status = if check.valid { Status::Ok } else { Status::InputError };
    Ok(outcome(status, serde_json::to_value(&check).unwrap(), text))
}

fn projplane_error(e: ProjPlaneError) -> CliError {
    match e {
        ProjPlaneError::Cells(e) => cells_error(e),
        ProjPlaneError::Graph(e) => graph_error(e),
        e => CliError::Input(e.to_string()),
    }
}

fn projplane(c: &RunConfig) -> Result<Outcome, CliError> {
    let q = c.q.ok_or_else(|| CliError::Input("--q is required".into()))?;
    let Some(mode) = &c.mode else {
        let plane = build_plane(q).map_err(projplane_error)?;
        plane.check_axioms().map_err(projplane_error)?;
        let rep = incidence_graph(&plane).map_err(projplane_error)?;
        let json = json!({
            "q": q,
            "points": plane.points.len(),
            "lines": plane.lines.len(),
            "edges": rep.hq.edge_count(),
            "corank": rep.corank,
            "spectrumCertificate": rep.spectrum_certificate,
        });
        let text = format!(
            "PG(2,{q}): {} points, {} lines\nH_q: {} edges\ncorank of sqrt(q) I - A: {}\nN N^T = qI + J: {}\n",
            plane.points.len(),
            plane.lines.len(),
            rep.hq.edge_count(),
            rep.corank,
            rep.spectrum_certificate
        );
        return Ok(outcome(Status::Ok, json, text));
    };
    let mode: Mode = mode.parse().map_err(CliError::Input)?;
    let rep = separation_report(q, mode).map_err(projplane_error)?;
    let mut text = format!("q = {q}, mode {mode}\nedges: {}\ncorank: {}\nmu upper: {}\n", rep.edges, rep.corank, rep.mu_upper);
    if let Some(gap) = &rep.gap {
        writeln!(text, "gap graph: {} vertices, {} edges after contraction", gap.vertices, gap.edges).unwrap();
    }
    for (label, v) in [("eta lower", rep.eta_lower), ("sigma lower", rep.sigma_lower), ("lambda lower", rep.lambda_lower)] {
        if let Some(v) = v {
            writeln!(text, "{label}: {v}").unwrap();
        }
    }
    for step in &rep.chain {
        writeln!(text, "  {step}").unwrap();
    }
    Ok(outcome(Status::Ok, serde_json::to_value(&rep).unwrap(), text))
}

fn representation_kind(c: &RunConfig) -> Result<RepresentationKind, CliError> {
    match c.mode.as_deref() {
        None | Some("semivalid") => Ok(RepresentationKind::Semivalid),
        Some("valid") => Ok(RepresentationKind::Valid),
        Some(m) => Err(CliError::Input(format!("unknown mode {m:?} (expected valid or semivalid)"))),
    }
}

fn fan(c: &RunConfig) -> Result<Outcome, CliError> {
    let (g, _) = graph_arg(c)?;
    let m = schrodinger_arg(c, &g)?;
    let kind = representation_kind(c)?;
    let guard = c.dim_guard.unwrap_or(DEFAULT_DIM_GUARD);
    let l = m.kernel();
    if l.dim() > guard {
        let samples = c.samples.ok_or_else(|| {
            cells_error(SignCellError::DimGuardExceeded { dim: l.dim(), guard })
        })?;
        let verdict = verify_representation_sampled(&l, &g, kind, samples, c.seed).map_err(cells_error)?;
        let text = format!(
            "kernel dimension {} above guard {guard}; sampled {} patterns\n{kind:?} representation: {} ({} violations, not exhaustive)\n",
            l.dim(),
            verdict.patterns_checked,
            verdict.holds,
            verdict.violations.len()
        );
        let status = if verdict.holds { Status::Ok } else { Status::Obstruction };
        return Ok(outcome(status, json!({ "verdict": verdict }), text));
    }
    let cells = enumerate_cells(&l, guard)
        .and_then(|f| f.classify(&g))
        .map_err(cells_error)?;
    let verdict = verify_representation(&l, &g, kind, guard).map_err(cells_error)?;
    let sanity = fan_sanity(&cells, &g);
    let mut text = format!(
        "kernel dimension: {}\ncones: {} ({} one-cones, {} broken)\n{kind:?} representation: {} ({} violations)\nfan sanity: {} ({} broken cones checked)\n",
        l.dim(),
        cells.len(),
        cells.one_cones().count(),
        cells.broken_cells().count(),
        verdict.holds,
        verdict.violations.len(),
        sanity.passed(),
        sanity.broken_checked
    );
    for f in &sanity.failures {
        writeln!(text, "  {f}").unwrap();
    }
    let json = json!({ "fan": cells.to_json(), "verdict": verdict, "sanity": sanity });
    let status = if verdict.holds && sanity.passed() { Status::Ok } else { Status::Obstruction };
    Ok(outcome(status, json, text))
}

fn polytopal(c: &RunConfig) -> Result<Outcome, CliError> {
    let (g, _) = graph_arg(c)?;
    let m = schrodinger_arg(c, &g)?;
    let guard = c.dim_guard.unwrap_or(DEFAULT_POLYTOPAL_DIM_GUARD);
    let p = match build_polytopal_representation(&m.kernel(), &g, guard) {
        Ok(p) => p,
        Err(e @ (PolytopalError::NotSemivalid(_) | PolytopalError::ClauseFailed { .. })) => {
            let msg = e.to_string();
            return Ok(outcome(Status::Obstruction, json!({ "error": msg }), format!("{msg}\n")));
        }
        Err(PolytopalError::DimGuardExceeded { dim, guard }) => {
            return Err(CliError::Cap(PolytopalError::DimGuardExceeded { dim, guard }.to_string()))
        }
        Err(PolytopalError::Cells(e)) => return Err(cells_error(e)),
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let map = build_cellular_map(&p, &g).map_err(|e| CliError::Input(e.to_string()))?;
    let report = verify_disjointness(&p, &map);
    let s = p.stats();
    let text = format!(
        "dimension: {}\nboundary f-vector: {:?}\nstellar steps: {}\nsubdivision f-vector: {:?}\nbroken cones: {}\ncellular map: {} edge walks\ndisjointness: {} ({} antipodal pairs)\n",
        p.dim(),
        s.q_f_vector,
        s.stellar_steps,
        s.f_vector,
        p.broken_cones().len(),
        map.edge_walks.len(),
        report.passed(),
        report.pairs_checked
    );
    let json = json!({ "complex": p.to_json(), "map": map.to_json(&p), "disjointness": report });
    let status = if report.passed() { Status::Ok } else { Status::Obstruction };
    Ok(outcome(status, json, text))
}

fn esr_emit(c: &RunConfig) -> Result<Outcome, CliError> {
    let (g, stem) = graph_arg(c)?;
    let k = c.k.ok_or_else(|| CliError::Input("--k is required".into()))?;
    let (layout, f) = build_phi(&g, k).map_err(|e| CliError::Input(e.to_string()))?;
    let stats = formula_stats(&f, &layout);
    let n = g.n();
    let witness = if g.edge_count() == n * (n - 1) / 2 && k + 1 == n {
        let x = complete_graph_witness(&layout).map_err(|e| CliError::Input(e.to_string()))?;
        Some(evaluate_at(&f, &layout, &x).map_err(|e| CliError::Input(e.to_string()))?)
    } else {
        None
    };
    let mut text = format!(
        "variables: {}\natoms: {}\ntotal term size: {}\n",
        stats.vars, stats.atoms, stats.total_term_size
    );
    if let Some(w) = witness {
        writeln!(text, "all-ones witness satisfies the formula: {w}").unwrap();
    }
    let ast = json!({ "layout": layout, "formula": f });
    let mut out = outcome(Status::Ok, json!({ "stats": stats, "witnessHolds": witness }), text);
    out.artifacts.push((".smt2".into(), serialize_smtlib(&f, &layout)));
    out.artifacts.push((".ast.json".into(), serde_json::to_string(&ast).unwrap() + "\n"));
    out.default_stem = Some(stem);
    Ok(out)
}
