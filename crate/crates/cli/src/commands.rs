use std::time::{Duration, Instant};

use rotor_core::algebra::{k_join, k_join_bilinear, kjoin_lemma_check};
use rotor_core::brauer::{all_matchings, build_groups, vee_union_check_with, verify, BrauerError, BrauerMode};
use rotor_core::positivity::{
    build_gram, circle_integrality_probe, gradient_gram_crosscheck, psd_check, theta_difference, PsdOutcome,
};
use rotor_core::rational::{frac, int, parse_rational, to_f64, to_pq};
use rotor_core::ribbon::{enumerate_cubic_cyclic, CanonicalCode};
use rotor_core::vmodel::{evaluate, gradient, triples, Evaluator};
use rotor_core::weights::certify_lie_weight_system;
use rotor_core::{FormalSum, Rational, RibbonGraph, VertexModel};
use serde_json::{json, Value};

use crate::input;
use crate::report::Run;
use crate::CliError;

/// Caps for the umbrella run.
const VERIFY_ALL_MAX_VERTICES: usize = 4;
const VERIFY_ALL_MAX_K: usize = 3;

fn corpus(max_vertices: usize) -> Result<Vec<RibbonGraph>, CliError> {
    Ok(enumerate_cubic_cyclic(max_vertices)?.iter().map(CanonicalCode::to_graph).collect())
}

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s.trim()).map_err(|e| CliError::Input(format!("bad rational '{s}': {e:?}")))
}

fn sum_json(s: &FormalSum) -> Value {
    serde_json::from_str(&s.to_json()).expect("formal sums serialize to JSON")
}

fn pq_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_pq).collect()
}

pub fn eval(graphs: &str, tensor: &str, float: bool) -> Result<Run, CliError> {
    let mut run = Run::new("eval");
    let (gs, dg) = input::graphs(graphs)?;
    let (c, dt) = input::tensor(tensor)?;
    run.input(dg);
    run.input(dt);
    let eval = Evaluator::new(&c);
    for ng in &gs {
        let v = eval.graph(&ng.graph);
        let mut detail = json!({ "graph": ng.name, "code": ng.graph.canonical_code().to_string(), "value": to_pq(&v) });
        if float {
            detail["float"] = json!(to_f64(&v));
            run.line(format!("{}\t{}\t{:.12}", ng.name, v, to_f64(&v)));
        } else {
            run.line(format!("{}\t{}", ng.name, v));
        }
        run.value("f_c", detail);
    }
    Ok(run)
}

pub fn join(left: &str, right: &str, k: usize, tensor: Option<&str>) -> Result<Run, CliError> {
    let mut run = Run::new("join");
    let (g, dl) = input::graph(left)?;
    let (h, dr) = input::graph(right)?;
    run.input(dl);
    run.input(dr);
    let s = k_join(&g.graph, &h.graph, k);
    for (code, q) in s.terms() {
        run.line(format!("{q}\t{code}"));
    }
    if s.is_empty() {
        run.line("0");
    }
    let mut detail = json!({ "left": g.name, "right": h.name, "k": k, "sum": sum_json(&s) });
    if let Some(t) = tensor {
        let (c, dt) = input::tensor(t)?;
        run.input(dt);
        let v = Evaluator::new(&c).sum(&s);
        run.line(format!("f_c = {v}"));
        detail["value"] = json!(to_pq(&v));
    }
    run.value("join", detail);
    Ok(run)
}

fn lemma_checks(run: &mut Run, graphs: &[RibbonGraph], k_max: usize) {
    let mut failures = Vec::new();
    let mut instances = 0;
    for g in graphs {
        for k in 0..=k_max {
            instances += 1;
            let (lhs, rhs) = kjoin_lemma_check(g, k);
            if lhs != rhs {
                failures.push(json!({
                    "graph": g.canonical_code().to_string(), "k": k,
                    "lhs": sum_json(&lhs), "rhs": sum_json(&rhs),
                }));
            }
        }
    }
    let ok = failures.is_empty();
    let summary = format!("{instances} (graph, k) instances, {} failures", failures.len());
    run.check("kjoin-lemma", ok, summary, json!({ "instances": instances, "failures": failures }));
}

pub fn lemma_kjoin(max_vertices: usize, k_max: usize, extra: Option<&str>) -> Result<Run, CliError> {
    let mut run = Run::new("lemma-kjoin");
    let mut graphs = corpus(max_vertices)?;
    if let Some(spec) = extra {
        let (gs, d) = input::graphs(spec)?;
        run.input(d);
        graphs.extend(gs.into_iter().map(|g| g.graph));
    }
    lemma_checks(&mut run, &graphs, k_max);
    Ok(run)
}

/// `(2/3)(○³ − 3○² + 2○)`.
fn theta_target() -> FormalSum {
    FormalSum::circle_polynomial(&[int(0), frac(4, 3), int(-2), frac(2, 3)])
}

fn theta_check(run: &mut Run) {
    let gamma = theta_difference();
    let got = k_join_bilinear(&gamma, &gamma, 2);
    let expected = theta_target();
    let ok = got == expected;
    let poly = |s: &FormalSum| s.as_circle_polynomial().map(|p| pq_vec(&p));
    let summary = match poly(&got) {
        Some(p) => format!("○-coefficients [{}], expected [{}]", p.join(", "), poly(&expected).unwrap().join(", ")),
        None => "join is not a ○-polynomial".into(),
    };
    run.check("theta-identity", ok, summary, json!({ "computed": sum_json(&got), "expected": sum_json(&expected) }));
}

fn psd_json(out: &PsdOutcome) -> Value {
    match out {
        PsdOutcome::Certificate { pivots } => json!({
            "type": "certificate",
            "rank": pivots.len(),
            "pivots": pivots.iter().map(|p| json!({
                "index": p.index, "d": to_pq(&p.d), "column": pq_vec(&p.column),
            })).collect::<Vec<_>>(),
        }),
        PsdOutcome::Refutation { w, value } => json!({ "type": "refutation", "w": pq_vec(w), "value": to_pq(value) }),
    }
}

pub fn theta_identity(circle: Option<&str>) -> Result<Run, CliError> {
    let mut run = Run::new("theta-identity");
    theta_check(&mut run);
    if let Some(x) = circle {
        let x = rational(x)?;
        let p = circle_integrality_probe(&x)?;
        let mu = match &p.mu {
            Some(m) => json!(m),
            None => json!({ "note": "k = ⌈f(○)⌉ + 1 exceeds the cap of 2; not evaluated" }),
        };
        run.line(format!("f(○) = {x}: f(γ∨₂γ) = {}", p.obstruction));
        match &p.psd {
            PsdOutcome::Refutation { w, value } => run.line(format!(
                "refuted: w = ({}) on {{θ, θ′}} at k = 2, wᵀMw = {value}",
                w.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            )),
            PsdOutcome::Certificate { .. } => run.line("no refutation on {θ, θ′} at k = 2"),
        }
        if let Some(m) = &p.mu {
            run.line(format!("μ(f(○)) at k = {}: {}", m.k, m.value));
        }
        run.value(
            "circle-probe",
            json!({
                "f_circle": to_pq(&x),
                "join_polynomial": pq_vec(&p.join_polynomial),
                "obstruction": to_pq(&p.obstruction),
                "graphs": p.gram.graphs.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "matrix": p.gram.entries.iter().map(|r| pq_vec(r)).collect::<Vec<_>>(),
                "decision": psd_json(&p.psd),
                "verified": p.psd.verify(&p.gram.entries),
                "mu": mu,
            }),
        );
    }
    Ok(run)
}

pub fn enumerate(max_vertices: usize, connected: bool) -> Result<Run, CliError> {
    let mut run = Run::new("enumerate");
    let codes: Vec<CanonicalCode> =
        enumerate_cubic_cyclic(max_vertices)?.into_iter().filter(|c| !connected || c.components().len() == 1).collect();
    for c in &codes {
        run.line(format!("{}\t{c}", c.vertex_count()));
    }
    run.value(
        "classes",
        json!({
            "max_vertices": max_vertices,
            "connected_only": connected,
            "count": codes.len(),
            "codes": codes.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
    );
    Ok(run)
}

fn gram_check(run: &mut Run, c: &VertexModel, graphs: &[RibbonGraph], k: usize) -> Result<(), CliError> {
    let t0 = Instant::now();
    let gram = build_gram(c, graphs, k);
    let build_secs = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let out = psd_check(&gram.entries)?;
    let decide_secs = t1.elapsed().as_secs_f64();
    let verified = out.verify(&gram.entries);
    let summary = match &out {
        PsdOutcome::Certificate { pivots } => format!("{0}×{0} matrix PSD, rank {1}", gram.entries.len(), pivots.len()),
        PsdOutcome::Refutation { value, .. } => format!("{0}×{0} matrix refuted, wᵀMw = {value}", gram.entries.len()),
    };
    run.check(
        &format!("gram-psd k={k}"),
        out.is_psd() && verified,
        summary,
        json!({
            "k": k,
            "graphs": gram.graphs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "matrix": gram.entries.iter().map(|r| pq_vec(r)).collect::<Vec<_>>(),
            "decision": psd_json(&out),
            "verified": verified,
            "timing": { "build_secs": build_secs, "decide_secs": decide_secs },
        }),
    );
    Ok(())
}

pub fn gram(tensor: &str, max_vertices: usize, k: usize, extra: Option<&str>) -> Result<Run, CliError> {
    let mut run = Run::new("gram");
    let (c, d) = input::tensor(tensor)?;
    run.input(d);
    let mut graphs = corpus(max_vertices)?;
    if let Some(spec) = extra {
        let (gs, d) = input::graphs(spec)?;
        run.input(d);
        graphs.extend(gs.into_iter().map(|g| g.graph));
    }
    gram_check(&mut run, &c, &graphs, k)?;
    Ok(run)
}

pub fn brauer_verify(k: usize, deep: bool, xs: &[String], budget_secs: u64) -> Result<Run, CliError> {
    let mut run = Run::new("brauer verify");
    let xs: Vec<Rational> = xs.iter().map(|s| rational(s)).collect::<Result<_, _>>()?;
    let mode = if deep { BrauerMode::Deep { budget: Duration::from_secs(budget_secs) } } else { BrauerMode::Default };
    let report = match verify(k, &xs, mode) {
        Ok(r) => r,
        Err(BrauerError::BudgetExceeded(secs)) => {
            run.check("brauer", false, format!("deep mode exceeded its {secs} s budget"), json!({ "budget_secs": secs }));
            return Ok(run);
        }
        Err(e) => return Err(e.into()),
    };
    run.line(format!(
        "k = {k} ({}): |ℳ| = {}, |Q| = {}, tableau shape {:?}, u_F = {}",
        report.mode, report.matchings, report.group.order, report.tableau_shape, report.u_f
    ));
    let labelled = report.eigen.iter().map(|e| ("A", e)).chain(report.averaged.iter().map(|e| ("A^Q", e)));
    for (op, e) in labelled {
        match &e.residual {
            None => run.line(format!(
                "  {op}, x = {}: eigenvalue {}, {} coordinates, residual 0",
                e.x, e.eigenvalue, e.coordinates
            )),
            Some(r) => run.line(format!("  {op}, x = {}: residual at {}: {} ≠ {}", e.x, r.matching, r.lhs, r.rhs)),
        }
    }
    if report.averaged.is_empty() {
        run.line("  A^Q check skipped (sampled mode; use --deep)");
    }
    let summary = format!("{:.2} s", report.elapsed_secs);
    run.check("brauer", report.passed, summary, serde_json::to_value(&report).expect("report serializes"));
    Ok(run)
}

fn weights_into(run: &mut Run, c: &VertexModel, graphs: &[RibbonGraph]) {
    let (ok, report) = certify_lie_weight_system(c, graphs);
    let summary = match report.witnesses.first() {
        None => format!("theta_sos = {}, jacobi_sos = {}", report.theta_sos, report.jacobi_sos),
        Some(w) => format!(
            "{} fails at {} {:?}: {} ≠ {}",
            w.check,
            w.graph.as_deref().unwrap_or("tensor"),
            w.index.as_deref().unwrap_or(&[]),
            w.lhs,
            w.rhs
        ),
    };
    run.check("weights", ok, summary, serde_json::to_value(&report).expect("report serializes"));
}

pub fn weights_check(tensor: &str, max_vertices: usize) -> Result<Run, CliError> {
    let mut run = Run::new("weights check");
    let (c, d) = input::tensor(tensor)?;
    run.input(d);
    weights_into(&mut run, &c, &corpus(max_vertices)?);
    Ok(run)
}

fn crosscheck_into(run: &mut Run, c: &VertexModel, graphs: &[RibbonGraph]) {
    let r = gradient_gram_crosscheck(c, graphs);
    let summary = format!("{} pairs, {} mismatches, rank {} ≤ dim W = {}", r.pairs, r.mismatches.len(), r.rank, r.w_dimension);
    run.check("gradient-gram", r.ok, summary, serde_json::to_value(&r).expect("report serializes"));
}

fn vee_union_into(run: &mut Run) -> Result<(), CliError> {
    let q = build_groups(1)?;
    let ms = all_matchings(1)?;
    let mut failures = Vec::new();
    for m in &ms {
        for n in &ms {
            let (lhs, rhs) = vee_union_check_with(&q, m, n)?;
            if lhs != rhs {
                failures.push(json!({ "m": m.to_string(), "n": n.to_string(), "lhs": sum_json(&lhs), "rhs": sum_json(&rhs) }));
            }
        }
    }
    let summary = format!("{} matching pairs, {} failures", ms.len() * ms.len(), failures.len());
    run.check("vee-union k=1", failures.is_empty(), summary, json!({ "pairs": ms.len() * ms.len(), "failures": failures }));
    Ok(())
}

pub fn verify_all(tensor: &str, max_vertices: usize, k_max: usize) -> Result<Run, CliError> {
    if max_vertices > VERIFY_ALL_MAX_VERTICES || k_max > VERIFY_ALL_MAX_K {
        return Err(CliError::Input(format!(
            "verify-all is capped at --max-vertices {VERIFY_ALL_MAX_VERTICES} and --k-max {VERIFY_ALL_MAX_K}"
        )));
    }
    let mut run = Run::new("verify-all");
    let (c, d) = input::tensor(tensor)?;
    run.input(d);
    let graphs = corpus(max_vertices)?;
    lemma_checks(&mut run, &graphs, k_max);
    theta_check(&mut run);
    vee_union_into(&mut run)?;
    crosscheck_into(&mut run, &c, &corpus(max_vertices.min(3))?);
    weights_into(&mut run, &c, &graphs);
    for k in 0..=k_max {
        gram_check(&mut run, &c, &graphs, k)?;
    }
    Ok(run)
}

pub fn grad_check(tensor: &str, max_vertices: usize, step: f64) -> Result<Run, CliError> {
    let mut run = Run::new("grad-check");
    let (c, d) = input::tensor(tensor)?;
    run.input(d);
    let graphs = corpus(max_vertices)?;
    crosscheck_into(&mut run, &c, &graphs);
    // central differences along each cyclic orbit direction
    let n = c.n();
    let cf = c.to_f64();
    let mut worst: f64 = 0.0;
    let mut witness = Value::Null;
    for g in &graphs {
        let grad = gradient(g, &cf);
        for (i, j, k) in triples(n).filter(|&(i, j, k)| (i, j, k) <= (j, k, i) && (i, j, k) <= (k, i, j)) {
            let orbit = [(i, j, k), (j, k, i), (k, i, j)];
            let dir: Vec<f64> = triples(n).map(|t| if orbit.contains(&t) { 1.0 } else { 0.0 }).collect();
            let dir = VertexModel::new(n, dir).expect("orbit indicators are invariant");
            let analytic: f64 = triples(n).map(|(a, b, e)| grad.get(a, b, e) * dir.get(a, b, e)).sum();
            let f = |t: f64| evaluate(g, &cf.axpy(&t, &dir).expect("same dimension"));
            let numeric = (f(step) - f(-step)) / (2.0 * step);
            let rel = (analytic - numeric).abs() / analytic.abs().max(1.0);
            if rel > worst {
                worst = rel;
                witness = json!({ "graph": g.canonical_code().to_string(), "index": [i, j, k], "analytic": analytic, "numeric": numeric });
            }
        }
    }
    run.check(
        "finite-differences",
        worst <= 1e-6,
        format!("max relative deviation {worst:.2e} (tolerance 1e-6)"),
        json!({ "step": step, "max_relative_deviation": worst, "worst": witness }),
    );
    Ok(run)
}
