use std::collections::HashMap;
use std::sync::Mutex;

use num::Zero;

use super::{Scalar, VertexModel};
use crate::algebra::FormalSum;
use crate::rational::Rational;
use crate::ribbon::{CanonicalCode, RibbonGraph};

/// Largest intermediate factor rank before the contraction gives up and the
/// naive enumerator takes over.
pub const MAX_CONTRACTION_RANK: usize = 6;

/// Sum over all `n^|E|` edge colourings of the product of vertex weights.
pub fn evaluate_naive<T: Scalar>(g: &RibbonGraph, c: &VertexModel<T>) -> T {
    let n = c.n();
    let circles = pow_n::<T>(n, g.loops());
    let edge_of = g.edge_index();
    let ne = g.edge_count();
    if g.vertex_count() == 0 {
        return circles;
    }
    if n == 0 {
        return T::zero();
    }
    let mut colour = vec![0usize; ne];
    let mut total = T::zero();
    loop {
        let mut prod = T::one();
        for v in 0..g.vertex_count() {
            let w = c.get(colour[edge_of[3 * v]], colour[edge_of[3 * v + 1]], colour[edge_of[3 * v + 2]]);
            if w.is_zero() {
                prod = T::zero();
                break;
            }
            prod = prod * w.clone();
        }
        total = total + prod;
        if !odometer(&mut colour, n) {
            break;
        }
    }
    total * circles
}

fn pow_n<T: Scalar>(n: usize, m: u32) -> T {
    let base = T::from_usize(n).unwrap();
    (0..m).fold(T::one(), |acc, _| acc * base.clone())
}

/// Advances a base-`n` counter; false once it wraps around.
fn odometer(digits: &mut [usize], n: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return true;
        }
        *d = 0;
    }
    false
}

/// Dense factor over a list of edge variables, row-major.
struct Factor<T> {
    vars: Vec<usize>,
    data: Vec<T>,
}

fn vertex_factor<T: Scalar>(v: usize, edge_of: &[usize], c: &VertexModel<T>) -> Factor<T> {
    let n = c.n();
    let slots = [edge_of[3 * v], edge_of[3 * v + 1], edge_of[3 * v + 2]];
    let mut vars: Vec<usize> = Vec::new();
    for e in slots {
        if !vars.contains(&e) {
            vars.push(e);
        }
    }
    let pos: Vec<usize> = slots.iter().map(|e| vars.iter().position(|x| x == e).unwrap()).collect();
    let mut digits = vec![0usize; vars.len()];
    let mut data = Vec::with_capacity(n.pow(vars.len() as u32));
    loop {
        data.push(c.get(digits[pos[0]], digits[pos[1]], digits[pos[2]]).clone());
        if !odometer(&mut digits, n) {
            break;
        }
    }
    Factor { vars, data }
}

/// Variable elimination over edges with a greedy smallest-result order.
/// Returns `None` when some intermediate factor would exceed
/// [`MAX_CONTRACTION_RANK`].
fn contract_connected<T: Scalar>(g: &RibbonGraph, c: &VertexModel<T>) -> Option<T> {
    let n = c.n();
    let edge_of = g.edge_index();
    let mut factors: Vec<Factor<T>> =
        (0..g.vertex_count()).map(|v| vertex_factor(v, &edge_of, c)).collect();
    let mut remaining: Vec<usize> = (0..g.edge_count()).collect();
    while !remaining.is_empty() {
        let (pick, rank) = remaining
            .iter()
            .map(|&e| {
                let mut union: Vec<usize> = Vec::new();
                for f in factors.iter().filter(|f| f.vars.contains(&e)) {
                    for &x in &f.vars {
                        if x != e && !union.contains(&x) {
                            union.push(x);
                        }
                    }
                }
                (e, union.len())
            })
            .min_by_key(|&(e, r)| (r, e))
            .unwrap();
        if rank > MAX_CONTRACTION_RANK {
            return None;
        }
        remaining.retain(|&e| e != pick);
        let (involved, rest): (Vec<Factor<T>>, Vec<Factor<T>>) =
            factors.into_iter().partition(|f| f.vars.contains(&pick));
        factors = rest;
        factors.push(sum_out(&involved, pick, n));
    }
    Some(factors.into_iter().fold(T::one(), |acc, f| acc * f.data[0].clone()))
}

fn sum_out<T: Scalar>(involved: &[Factor<T>], pick: usize, n: usize) -> Factor<T> {
    let mut out_vars: Vec<usize> = Vec::new();
    for f in involved {
        for &x in &f.vars {
            if x != pick && !out_vars.contains(&x) {
                out_vars.push(x);
            }
        }
    }
    // eliminated variable last
    let mut all = out_vars.clone();
    all.push(pick);
    let maps: Vec<Vec<usize>> = involved
        .iter()
        .map(|f| f.vars.iter().map(|x| all.iter().position(|y| y == x).unwrap()).collect())
        .collect();
    let mut data = vec![T::zero(); n.pow(out_vars.len() as u32)];
    let mut digits = vec![0usize; all.len()];
    let mut out_index = 0usize;
    loop {
        let mut prod = T::one();
        for (f, map) in involved.iter().zip(&maps) {
            let idx = map.iter().fold(0usize, |acc, &p| acc * n + digits[p]);
            let w = &f.data[idx];
            if w.is_zero() {
                prod = T::zero();
                break;
            }
            prod = prod * w.clone();
        }
        if !prod.is_zero() {
            data[out_index] = data[out_index].clone() + prod;
        }
        if !odometer(&mut digits, n) {
            break;
        }
        if digits[all.len() - 1] == 0 {
            out_index += 1;
        }
    }
    Factor { vars: out_vars, data }
}

/// `f_c(G)`, contracting each component separately; falls back to the naive
/// sum when contraction would build oversized intermediates.
pub fn evaluate<T: Scalar>(g: &RibbonGraph, c: &VertexModel<T>) -> T {
    let mut total = pow_n::<T>(c.n(), g.loops());
    if c.n() == 0 && g.vertex_count() > 0 {
        return T::zero();
    }
    for comp in g.components().into_iter().filter(|h| h.vertex_count() > 0) {
        let value = contract_connected(&comp, c).unwrap_or_else(|| evaluate_naive(&comp, c));
        total = total * value;
    }
    total
}

/// Evaluates formal sums over one model, memoising connected components.
pub struct Evaluator<'a> {
    model: &'a VertexModel<Rational>,
    cache: Mutex<HashMap<Vec<u32>, Rational>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(model: &'a VertexModel<Rational>) -> Self {
        Evaluator { model, cache: Mutex::new(HashMap::new()) }
    }

    pub fn model(&self) -> &VertexModel<Rational> {
        self.model
    }

    pub fn code(&self, code: &CanonicalCode) -> Rational {
        let mut total = pow_n::<Rational>(self.model.n(), code.loops());
        for comp in code.components() {
            if let Some(v) = self.cache.lock().unwrap().get(comp) {
                total *= v;
                continue;
            }
            let g = RibbonGraph::from_partner_unchecked(comp.clone(), 0);
            let v = evaluate(&g, self.model);
            total *= &v;
            self.cache.lock().unwrap().insert(comp.clone(), v);
        }
        total
    }

    pub fn graph(&self, g: &RibbonGraph) -> Rational {
        self.code(&g.canonical_code())
    }

    pub fn sum(&self, a: &FormalSum) -> Rational {
        a.terms().fold(Rational::zero(), |acc, (code, q)| acc + q * self.code(code))
    }
}

/// The algebra homomorphism extending `f_c` to formal sums.
pub fn evaluate_sum(a: &FormalSum, c: &VertexModel<Rational>) -> Rational {
    Evaluator::new(c).sum(a)
}
