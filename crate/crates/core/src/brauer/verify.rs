use std::time::{Duration, Instant};

use num::Signed;
use serde::Serialize;

use super::{
    all_matchings, averaged_vector, build_groups, check_k, count_cycles, hanlon_wales_vector, mu, BrauerError,
    ComponentProfile, GroupChecks, GroupQ, Matching, MatchingVector, Tableau,
};
use crate::algebra::{k_join, FormalSum};
use crate::rational::{factorial, to_pq, Rational};

/// Both sides of `G_M ∨_{2k} G_N = (2k)! 3^{−2k} Σ_{q∈Q} ○^{c(M, q·N)}`.
pub fn vee_union_check(m: &Matching, n: &Matching) -> Result<(FormalSum, FormalSum), BrauerError> {
    let q = build_groups(m.k())?;
    vee_union_check_with(&q, m, n)
}

pub fn vee_union_check_with(q: &GroupQ, m: &Matching, n: &Matching) -> Result<(FormalSum, FormalSum), BrauerError> {
    if m.points() != n.points() || m.k() != q.k {
        return Err(BrauerError::SizeMismatch(m.points(), n.points()));
    }
    let k = q.k;
    let lhs = k_join(&m.collapse(), &n.collapse(), 2 * k);
    let mut counts = vec![0i64; 3 * k + 1];
    for p in &q.elements {
        counts[count_cycles(m, &n.act(p))] += 1;
    }
    let norm = Rational::new(factorial(2 * k), num::BigInt::from(9).pow(k as u32));
    let coeffs: Vec<Rational> = counts.iter().map(|&c| &norm * Rational::from_integer(c.into())).collect();
    Ok((lhs, FormalSum::circle_polynomial(&coeffs)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrauerMode {
    /// Every coordinate of `A(x)v`; `A^Q(x)u` in full at `k = 1` only.
    Default,
    /// Additionally the full `A^Q(x)u` check at `k = 2`, within a time budget.
    Deep { budget: Duration },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub matching: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenCheck {
    pub x: String,
    pub eigenvalue: String,
    pub coordinates: usize,
    /// First coordinate where the identity fails, if any.
    pub residual: Option<Residual>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BrauerReport {
    pub k: usize,
    pub mode: &'static str,
    pub matchings: usize,
    pub group: GroupChecks,
    pub tableau_shape: Vec<usize>,
    pub v_support: usize,
    pub v_f: String,
    pub u_support: usize,
    pub u_f: String,
    /// `A(x)v = μ(x)v`.
    pub eigen: Vec<EigenCheck>,
    /// `A^Q(x)u = |Q|μ(x)u`; empty at `k = 2` outside deep mode.
    pub averaged: Vec<EigenCheck>,
    pub elapsed_secs: f64,
    pub passed: bool,
}

/// Minimum number of sampled coordinates for `A(x)v` at `k = 2`.
pub const SAMPLED_COORDINATES: usize = 128;

/// Deterministic sample: the first half from the support of `v`, the rest
/// spread evenly over all matchings.
fn sample_rows(all: &[Matching], v: &MatchingVector) -> Vec<Matching> {
    let mut rows: Vec<Matching> = v.iter().map(|(m, _)| *m).take(SAMPLED_COORDINATES / 2).collect();
    let stride = all.len() / (SAMPLED_COORDINATES / 2);
    rows.extend(all.iter().step_by(stride.max(1)).copied());
    rows.sort();
    rows.dedup();
    rows
}

fn eigen_checks(
    profile: &ComponentProfile,
    target: &MatchingVector,
    xs: &[Rational],
    factor: &Rational,
    k: usize,
) -> Vec<EigenCheck> {
    xs.iter()
        .map(|x| {
            let lambda = factor * mu(x, k);
            let residual = profile.rows.iter().zip(profile.at(x)).find_map(|(m, lhs)| {
                let rhs = &lambda * target.get(m);
                (lhs != rhs).then(|| Residual { matching: m.to_string(), lhs: to_pq(&lhs), rhs: to_pq(&rhs) })
            });
            EigenCheck { x: to_pq(x), eigenvalue: to_pq(&lambda), coordinates: profile.rows.len(), residual }
        })
        .collect()
}

/// Runs the eigenvector battery at order `k` for the sample points `xs`.
pub fn verify(k: usize, xs: &[Rational], mode: BrauerMode) -> Result<BrauerReport, BrauerError> {
    check_k(k)?;
    let start = Instant::now();
    let over_budget = || match mode {
        BrauerMode::Deep { budget } if start.elapsed() > budget => Err(BrauerError::BudgetExceeded(budget.as_secs())),
        _ => Ok(()),
    };
    let all = all_matchings(k)?;
    let q = build_groups(k)?;
    let group = q.checks();
    let tableau = Tableau::new(k)?;
    let v = hanlon_wales_vector(k)?;
    let (u, u_f) = averaged_vector(k)?;
    over_budget()?;
    let one = Rational::from_integer(1.into());
    let rows = if k == 1 || matches!(mode, BrauerMode::Deep { .. }) { all.clone() } else { sample_rows(&all, &v) };
    let eigen = eigen_checks(&ComponentProfile::compute(&v, rows)?, &v, xs, &one, k);
    over_budget()?;
    let averaged = if k == 1 || matches!(mode, BrauerMode::Deep { .. }) {
        let qu = u.sum_over(&q.elements)?;
        over_budget()?;
        let order = Rational::from_integer(q.order().into());
        let checks = eigen_checks(&ComponentProfile::compute(&qu, all.clone())?, &u, xs, &order, k);
        over_budget()?;
        checks
    } else {
        Vec::new()
    };
    let group_ok = group.has_identity && group.closed && group.commutes_with_zeta && group.trivial_intersection;
    let passed = group_ok
        && !v.is_zero()
        && u_f.is_positive()
        && eigen.iter().chain(&averaged).all(|c| c.residual.is_none());
    Ok(BrauerReport {
        k,
        mode: match mode {
            BrauerMode::Default => "default",
            BrauerMode::Deep { .. } => "deep",
        },
        matchings: all.len(),
        group,
        tableau_shape: tableau.shape(),
        v_support: v.support(),
        v_f: to_pq(&v.get(&Matching::f(k))),
        u_support: u.support(),
        u_f: to_pq(&u_f),
        eigen,
        averaged,
        elapsed_secs: start.elapsed().as_secs_f64(),
        passed,
    })
}
