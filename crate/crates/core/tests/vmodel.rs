mod common;

use rand::Rng;
use rotor_core::algebra::k_join;
use rotor_core::fixtures;
use rotor_core::rational::int;
use rotor_core::vmodel::{
    apply_orthogonal, apply_orthogonal_f64, evaluate, evaluate_naive, gradient, inner_product_w, structure_tensor_so3,
    triples, Evaluator,
};
use rotor_core::weights::{check_h4_k4, check_theta_condition, jacobi_sos, theta_sos};
use rotor_core::{FormalSum, Rational, RibbonGraph, VertexModel};

use common::{
    corpus, random_alternating, random_float_model, random_model, random_rotation, relabel, rng, signed_permutation,
};

#[test]
fn contraction_agrees_with_colouring_enumeration() {
    let mut r = rng(3);
    let graphs: Vec<RibbonGraph> = corpus(4).into_iter().map(|g| g.with_loops(1)).collect();
    for n in 1..=4 {
        let c = random_model(&mut r, n);
        for g in &graphs {
            assert_eq!(evaluate(g, &c), evaluate_naive(g, &c), "n={n} {}", g.canonical_code());
        }
    }
}

#[test]
fn values_depend_only_on_the_isomorphism_class() {
    let mut r = rng(4);
    let c = random_model(&mut r, 3);
    for g in corpus(4) {
        assert_eq!(evaluate(&relabel(&g, &mut r), &c), evaluate(&g, &c));
    }
}

#[test]
fn multiplicative_over_components() {
    let mut r = rng(5);
    let graphs = corpus(4);
    let c = structure_tensor_so3();
    let eval = Evaluator::new(&c);
    for _ in 0..50 {
        let g = &graphs[r.gen_range(0..graphs.len())];
        let h = &graphs[r.gen_range(0..graphs.len())];
        assert_eq!(eval.graph(&g.disjoint_union(h)), eval.graph(g) * eval.graph(h));
    }
    assert_eq!(eval.graph(&RibbonGraph::circle_power(2)), int(9));
}

#[test]
fn theta_constant_pins_on_random_models() {
    let mut r = rng(6);
    for n in [1, 2, 3, 5] {
        for _ in 0..5 {
            let c = random_model(&mut r, n);
            let (lhs, rhs) = check_theta_condition(&c);
            assert_eq!(lhs, rhs, "n={n}");
            let eval = Evaluator::new(&c);
            let direct = eval.graph(&RibbonGraph::theta()) + eval.graph(&RibbonGraph::theta_rev());
            assert_eq!(direct, fixtures::theta_constant() * theta_sos(&c));
        }
    }
}

#[test]
fn jacobi_constant_pins_on_random_alternating_models() {
    let mut r = rng(8);
    let mut saw_nonzero = false;
    for n in [1, 2, 3, 5] {
        for _ in 0..5 {
            let c = random_alternating(&mut r, n);
            let (h, k2) = check_h4_k4(&c).unwrap();
            let sos = jacobi_sos(&c);
            saw_nonzero |= !num::Zero::is_zero(&sos);
            assert_eq!(k2 - h, fixtures::jacobi_constant() * sos, "n={n}");
        }
    }
    assert!(saw_nonzero, "the n = 5 samples should violate Jacobi");
}

fn perturbed(c: &VertexModel<f64>, d: &VertexModel<f64>, t: f64) -> VertexModel<f64> {
    c.axpy(&t, d).unwrap()
}

#[test]
fn gradient_matches_central_differences() {
    let mut r = rng(9);
    let h = 1e-4;
    for n in [2, 3] {
        let c = random_float_model(&mut r, n);
        for g in corpus(4) {
            let d = random_float_model(&mut r, n);
            let grad = gradient(&g, &c);
            let analytic: f64 = triples(n).map(|(i, j, k)| grad.get(i, j, k) * d.get(i, j, k)).sum();
            let numeric = (evaluate(&g, &perturbed(&c, &d, h)) - evaluate(&g, &perturbed(&c, &d, -h))) / (2.0 * h);
            let scale = analytic.abs().max(1.0);
            assert!((analytic - numeric).abs() <= 1e-6 * scale, "{analytic} vs {numeric}");
        }
    }
}

#[test]
fn first_derivative_inner_products_are_one_joins() {
    let mut r = rng(10);
    let c = random_model(&mut r, 2);
    let graphs = corpus(4);
    let eval = Evaluator::new(&c);
    for g in &graphs {
        for h in &graphs {
            let lhs = inner_product_w(&gradient(g, &c), &gradient(h, &c)).unwrap();
            assert_eq!(lhs, eval.sum(&k_join(g, h, 1)));
        }
    }
}

/// Orthonormal basis of the cyclically invariant tensors.
fn w_basis(n: usize) -> Vec<VertexModel<f64>> {
    triples(n)
        .filter(|&(i, j, k)| (i, j, k) <= (j, k, i) && (i, j, k) <= (k, i, j))
        .map(|(i, j, k)| {
            let mut orbit = vec![(i, j, k), (j, k, i), (k, i, j)];
            orbit.sort();
            orbit.dedup();
            let w = 1.0 / (orbit.len() as f64).sqrt();
            let entries = triples(n).map(|t| if orbit.contains(&t) { w } else { 0.0 }).collect();
            VertexModel::new(n, entries).unwrap()
        })
        .collect()
}

fn hessian(g: &RibbonGraph, c: &VertexModel<f64>, basis: &[VertexModel<f64>], h: f64) -> Vec<Vec<f64>> {
    let f = |a: &VertexModel<f64>, sa: f64, b: &VertexModel<f64>, sb: f64| evaluate(g, &perturbed(&perturbed(c, a, sa), b, sb));
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| (f(a, h, b, h) - f(a, h, b, -h) - f(a, -h, b, h) + f(a, -h, b, -h)) / (4.0 * h * h))
                .collect()
        })
        .collect()
}

fn float_sum(s: &FormalSum, c: &VertexModel<f64>) -> f64 {
    s.terms().map(|(code, q)| rotor_core::rational::to_f64(q) * evaluate(&code.to_graph(), c)).sum()
}

#[test]
fn second_derivative_inner_products_are_two_joins() {
    let mut r = rng(12);
    let n = 2;
    let c = random_float_model(&mut r, n);
    let basis = w_basis(n);
    let graphs: Vec<RibbonGraph> = corpus(2).into_iter().chain(corpus(4).into_iter().filter(|g| g.vertex_count() == 4).take(3)).collect();
    let hs: Vec<_> = graphs.iter().map(|g| hessian(g, &c, &basis, 1e-3)).collect();
    for (g, hg) in graphs.iter().zip(&hs) {
        for (h, hh) in graphs.iter().zip(&hs) {
            let lhs: f64 = hg.iter().flatten().zip(hh.iter().flatten()).map(|(a, b)| a * b).sum();
            let rhs = float_sum(&k_join(g, h, 2), &c);
            assert!((lhs - rhs).abs() <= 1e-4 * rhs.abs().max(1.0), "{lhs} vs {rhs}");
        }
    }
}

#[test]
fn orthogonal_invariance() {
    let mut r = rng(13);
    let c = structure_tensor_so3();
    let graphs: Vec<RibbonGraph> = fixtures::graphs().into_iter().map(|ng| ng.graph).collect();
    let eval = Evaluator::new(&c);
    for _ in 0..10 {
        let u = signed_permutation(&mut r, 3);
        let cu = apply_orthogonal(&c, &u).unwrap();
        for g in &graphs {
            assert_eq!(evaluate(g, &cu), eval.graph(g));
        }
    }
    let cf = c.to_f64();
    for _ in 0..10 {
        let u = random_rotation(&mut r, 3);
        let cu = apply_orthogonal_f64(&cf, &u).unwrap();
        for g in &graphs {
            let (a, b) = (evaluate(g, &cu), evaluate(g, &cf));
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "{a} vs {b}");
        }
    }
}
