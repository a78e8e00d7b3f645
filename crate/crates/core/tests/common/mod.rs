//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rotor_core::rational::{frac, int};
use rotor_core::ribbon::enumerate_cubic_cyclic;
use rotor_core::vmodel::triples;
use rotor_core::{Rational, RibbonGraph, VertexModel};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn corpus(max_vertices: usize) -> Vec<RibbonGraph> {
    enumerate_cubic_cyclic(max_vertices).unwrap().iter().map(|c| c.to_graph()).collect()
}

fn flat(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

/// Cyclically invariant tensor with small half-integer entries.
pub fn random_model(rng: &mut StdRng, n: usize) -> VertexModel {
    let raw: Vec<Rational> = (0..n * n * n).map(|_| frac(rng.gen_range(-4..=4), rng.gen_range(1..=2))).collect();
    VertexModel::project_c3(n, &raw).unwrap()
}

/// Cyclically invariant tensor with integer entries, for the integer oracles.
pub fn random_int_model(rng: &mut StdRng, n: usize) -> (VertexModel, Vec<i64>) {
    let mut e = vec![0i64; n * n * n];
    for (i, j, k) in triples(n) {
        if (i, j, k) <= (j, k, i) && (i, j, k) <= (k, i, j) {
            let x = rng.gen_range(-3..=3);
            e[flat(n, i, j, k)] = x;
            e[flat(n, j, k, i)] = x;
            e[flat(n, k, i, j)] = x;
        }
    }
    (VertexModel::new(n, e.iter().map(|&x| int(x)).collect()).unwrap(), e)
}

/// Alternating tensor: the signed sum of a random tensor over `S_3`.
pub fn random_alternating(rng: &mut StdRng, n: usize) -> VertexModel {
    let raw: Vec<i64> = (0..n * n * n).map(|_| rng.gen_range(-3..=3)).collect();
    let mut e = vec![int(0); n * n * n];
    for (i, j, k) in triples(n) {
        let r = |a, b, c| raw[flat(n, a, b, c)];
        e[flat(n, i, j, k)] = int(r(i, j, k) + r(j, k, i) + r(k, i, j) - r(i, k, j) - r(k, j, i) - r(j, i, k));
    }
    VertexModel::new(n, e).unwrap()
}

/// An isomorphic copy: vertices permuted and each rotation turned.
pub fn relabel(g: &RibbonGraph, rng: &mut StdRng) -> RibbonGraph {
    let v = g.vertex_count();
    let mut sigma: Vec<usize> = (0..v).collect();
    for i in (1..v).rev() {
        sigma.swap(i, rng.gen_range(0..=i));
    }
    let turn: Vec<usize> = (0..v).map(|_| rng.gen_range(0..3)).collect();
    let map = |h: usize| 3 * sigma[h / 3] + (h % 3 + turn[h / 3]) % 3;
    let mut partner = vec![0u32; 3 * v];
    for h in 0..3 * v {
        partner[map(h)] = map(g.partner(h)) as u32;
    }
    RibbonGraph::new(partner, g.loops()).unwrap()
}

/// All ordered `k`-tuples of distinct elements of `0..n`.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in out {
            for x in (0..n).filter(|x| !t.contains(x)) {
                let mut e = t.clone();
                e.push(x);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

/// Edge colourings of `g` as colour-per-half-edge vectors.
fn colourings(g: &RibbonGraph, n: usize) -> Vec<Vec<usize>> {
    let idx = g.edge_index();
    let edges = g.edge_count();
    let total = n.pow(edges as u32);
    (0..total)
        .map(|mut code| {
            let col: Vec<usize> = (0..edges)
                .map(|_| {
                    let c = code % n;
                    code /= n;
                    c
                })
                .collect();
            idx.iter().map(|&e| col[e]).collect()
        })
        .collect()
}

/// `f_c(G ∨_k H)` straight from colourings of `G` and `H`: each deleted pair
/// `(u_i, v_i)` with shift `t_i` forces the colour at slot `s` of `u_i` to
/// equal the colour at slot `s + t_i` of `v_i`. Vertexless loops count `n`.
pub fn kjoin_value_by_colourings(g: &RibbonGraph, h: &RibbonGraph, k: usize, c: &[i64], n: usize) -> Rational {
    let weight = |col: &[usize], v: usize| c[flat(n, col[3 * v], col[3 * v + 1], col[3 * v + 2])];
    let cg = colourings(g, n);
    let ch = colourings(h, n);
    let mut total: i128 = 0;
    for us in tuples(g.vertex_count(), k) {
        for vs in tuples(h.vertex_count(), k) {
            for shift_code in 0..3usize.pow(k as u32) {
                let shifts: Vec<usize> = (0..k).map(|i| shift_code / 3usize.pow(i as u32) % 3).collect();
                for a in &cg {
                    let pa: i128 =
                        (0..g.vertex_count()).filter(|v| !us.contains(v)).map(|v| weight(a, v) as i128).product();
                    if pa == 0 {
                        continue;
                    }
                    for b in &ch {
                        let matched = (0..k).all(|i| (0..3).all(|s| a[3 * us[i] + s] == b[3 * vs[i] + (s + shifts[i]) % 3]));
                        if matched {
                            let pb: i128 = (0..h.vertex_count())
                                .filter(|v| !vs.contains(v))
                                .map(|v| weight(b, v) as i128)
                                .product();
                            total += pa * pb;
                        }
                    }
                }
            }
        }
    }
    let loops = (n as i128).pow(g.loops() + h.loops());
    Rational::new((total * loops).into(), 3i128.pow(k as u32).into())
}

pub fn random_float_model(r: &mut StdRng, n: usize) -> VertexModel<f64> {
    let raw: Vec<f64> = (0..n * n * n).map(|_| r.gen_range(-1.0..1.0)).collect();
    VertexModel::project_c3(n, &raw).unwrap()
}

pub fn signed_permutation(r: &mut StdRng, n: usize) -> Vec<Vec<Rational>> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, r.gen_range(0..=i));
    }
    (0..n)
        .map(|i| (0..n).map(|j| if p[i] == j { int(if r.gen_bool(0.5) { 1 } else { -1 }) } else { int(0) }).collect())
        .collect()
}

pub fn random_rotation(r: &mut StdRng, n: usize) -> Vec<Vec<f64>> {
    let mut u: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for _ in 0..3 * n {
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        if a == b {
            continue;
        }
        let t: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        let (s, co) = t.sin_cos();
        for row in u.iter_mut() {
            let (x, y) = (row[a], row[b]);
            row[a] = co * x - s * y;
            row[b] = s * x + co * y;
        }
    }
    u
}
