//! Closed-form feasibility, capacity and backlog bounds for collocated
//! networks with service frequency constraints.
//!
//! Backlogs are in slot units (`Q_i` of the queue recursion). Variances are
//! always `Var(A_i)` in packets; scaling by `1 / (r_i c_i)^2` happens here.

use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::model::LinkSpec;

/// Slack used at the `sum(1/delta) = 1` boundary and for strict inequalities.
pub const TOLERANCE: f64 = 1e-12;

/// `sum_i 1/delta_i`.
pub fn frequency_load(links: &[LinkSpec]) -> f64 {
    links.iter().map(LinkSpec::frequency_share).sum()
}

/// `1 - sum_i 1/delta_i`, the fraction of slots not reserved by the
/// frequency constraints.
pub fn slack(links: &[LinkSpec]) -> f64 {
    1.0 - frequency_load(links)
}

pub fn check_frequency_feasibility(links: &[LinkSpec]) -> bool {
    frequency_load(links) <= 1.0 + TOLERANCE
}

/// Positive parts `max(lambda_i / (r_i c_i) - 1/delta_i, 0)`.
fn excess(link: &LinkSpec) -> f64 {
    (link.work_rate() - link.frequency_share()).max(0.0)
}

/// Necessary condition for a supportable rate vector:
/// `sum_i max(lambda_i/(r_i c_i) - 1/delta_i, 0) < 1 - sum_i 1/delta_i`.
pub fn check_supportability(links: &[LinkSpec]) -> bool {
    let lhs: f64 = links.iter().map(excess).sum();
    lhs < slack(links) - TOLERANCE
}

/// Volume of `{k in R^n : k >= 0, sum k <= beta}`, i.e. `beta^n / n!`.
pub fn simplex_volume(n: u32, beta: f64) -> f64 {
    (f64::from(n) * beta.ln() - ln_factorial(u64::from(n))).exp()
}

fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// `x ln y` with the `0^0 = 1` convention.
fn pow_ln(y: f64, x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

fn feasible_slack(links: &[LinkSpec]) -> Result<f64> {
    if !check_frequency_feasibility(links) {
        return Err(Error::InfeasibleFrequency {
            sum: frequency_load(links),
        });
    }
    // snap the boundary so the zero-slack branch is exact
    let eps = slack(links);
    Ok(if eps < TOLERANCE { 0.0 } else { eps })
}

/// Upper bound on the constrained capacity region relative to the
/// unconstrained one:
/// `N! * sum_{t=0}^{N} C(N,t) * eps^t / t! * (1/delta_min)^(N-t)`.
///
/// Terms are accumulated in the log domain. The value is not clamped and can
/// exceed 1 for strongly heterogeneous constraints; see
/// [`BoundReport::capacity_ratio_bound`] for the clamped figure.
pub fn capacity_ratio_bound(links: &[LinkSpec]) -> Result<f64> {
    let eps = feasible_slack(links)?;
    let n = links.len() as u64;
    let delta_min = links
        .iter()
        .map(|l| l.delta)
        .min()
        .ok_or(Error::EmptyInput)? as f64;
    let ln_nf = ln_factorial(n);
    let terms: Vec<f64> = (0..=n)
        .map(|t| {
            ln_nf + ln_binomial(n, t) + pow_ln(eps, t as f64) - ln_factorial(t)
                + pow_ln(1.0 / delta_min, (n - t) as f64)
        })
        .collect();
    Ok(log_sum_exp(&terms).exp())
}

/// The same region ratio before every `1/delta_j` is relaxed to
/// `1/delta_min`: `N! * sum_t eps^t / t! * e_{N-t}(1/delta_1, ..., 1/delta_N)`,
/// with `e_k` the elementary symmetric polynomial. At zero slack this is
/// `N! * prod_i 1/delta_i`.
pub fn capacity_ratio_product_form(links: &[LinkSpec]) -> Result<f64> {
    let eps = feasible_slack(links)?;
    let n = links.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    // e[k] = e_k of the shares seen so far
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for link in links {
        let x = link.frequency_share();
        for k in (1..=n).rev() {
            e[k] += x * e[k - 1];
        }
    }
    let ln_nf = ln_factorial(n as u64);
    let terms: Vec<f64> = (0..=n)
        .filter(|&t| e[n - t] > 0.0)
        .map(|t| ln_nf + pow_ln(eps, t as f64) - ln_factorial(t as u64) + e[n - t].ln())
        .collect();
    Ok(log_sum_exp(&terms).exp())
}

/// Max-weight backlog bound `sum_i (lambda_i + Var(A_i) - lambda_i^2) / 2`.
pub fn mw_queue_bound(links: &[LinkSpec], variances: &[f64]) -> Result<f64> {
    check_len("variances", variances.len(), links.len())?;
    Ok(links
        .iter()
        .zip(variances)
        .map(|(l, v)| (l.lambda + v - l.lambda * l.lambda) / 2.0)
        .sum())
}

/// Backlog bound of the max-weight component when round-robin slots are
/// set aside:
/// `1/(2 eps^2) * sum_{d_i > 0} [eps d_i + Var(A_i)/(r_i c_i)^2 - d_i^2]`,
/// with `d_i = lambda_i/(r_i c_i) - 1/delta_i`.
pub fn bound_b1(links: &[LinkSpec], variances: &[f64]) -> Result<f64> {
    check_len("variances", variances.len(), links.len())?;
    let eps = slack(links);
    if eps <= TOLERANCE {
        return Err(Error::ZeroSlack { epsilon: eps });
    }
    let sum: f64 = links
        .iter()
        .zip(variances)
        .filter(|(l, _)| l.work_rate() - l.frequency_share() > 0.0)
        .map(|(l, v)| {
            let d = l.work_rate() - l.frequency_share();
            let scaled_var = v * l.work_per_packet().powi(2);
            eps * d + scaled_var - d * d
        })
        .sum();
    Ok(sum / (2.0 * eps * eps))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least common multiple of all frame lengths.
pub fn frame_lcm(links: &[LinkSpec]) -> Result<u64> {
    links.iter().try_fold(1u64, |acc, l| {
        (acc / gcd(acc, l.delta))
            .checked_mul(l.delta)
            .ok_or(Error::LcmOverflow)
    })
}

/// Total backlog bound at slots where a nonzero-stage link is served:
/// `N + h * B1 + sum_i (sum_j 1/delta_j) * lambda_i/(r_i c_i) * T0`,
/// `T0 = lcm(delta)`. `h` is a free positive constant.
pub fn bound_b(links: &[LinkSpec], h: f64, variances: &[f64]) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Config(format!(
            "h must be a positive constant, got {h}"
        )));
    }
    let b1 = bound_b1(links, variances)?;
    let t0 = frame_lcm(links)? as f64;
    let load = frequency_load(links);
    let tail: f64 = links.iter().map(|l| load * l.work_rate() * t0).sum();
    Ok(links.len() as f64 + h * b1 + tail)
}

/// Long-run time-averaged total backlog bound under MSMW.
///
/// With slack `eps > 0`:
/// `(N+1)/2 + N'/8 + 1/(2 eps^2) * sum_{i in L'} Var(A_i)/(r_i c_i)^2`,
/// where `L'` are the links with `lambda_i/(r_i c_i) > 1/delta_i` and
/// `N' = |L'|`. At zero slack:
/// `sum_i min(lambda_i/(r_i c_i), 1/delta_i) * (1 + delta_i) / 2`.
pub fn bound_b3(links: &[LinkSpec], variances: &[f64]) -> Result<f64> {
    check_len("variances", variances.len(), links.len())?;
    let eps = feasible_slack(links)?;
    if eps == 0.0 {
        return Ok(links
            .iter()
            .map(|l| l.work_rate().min(l.frequency_share()) * (1.0 + l.delta as f64) / 2.0)
            .sum());
    }
    let n = links.len() as f64;
    let (over, var_sum) = links
        .iter()
        .zip(variances)
        .filter(|(l, _)| l.work_rate() > l.frequency_share())
        .fold((0usize, 0.0), |(c, s), (l, v)| {
            (c + 1, s + v * l.work_per_packet().powi(2))
        });
    Ok((n + 1.0) / 2.0 + over as f64 / 8.0 + var_sum / (2.0 * eps * eps))
}

/// Every bound for one link set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub num_links: usize,
    pub freq_feasible: bool,
    pub supportable: bool,
    pub epsilon: f64,
    /// `min(capacity_ratio_bound(), 1)`: the constrained region never
    /// exceeds the unconstrained one. `None` when infeasible.
    pub capacity_ratio_bound: Option<f64>,
    pub b1: Option<f64>,
    pub h: f64,
    pub b: Option<f64>,
    pub b3: Option<f64>,
    pub mw_queue_bound: f64,
    pub t0: Option<u64>,
    /// Links whose offered load exceeds their frequency share, `N'`.
    pub over_share_links: usize,
}

/// Collects every bound, leaving out those whose preconditions fail.
pub fn bound_report(links: &[LinkSpec], variances: &[f64], h: f64) -> Result<BoundReport> {
    check_len("variances", variances.len(), links.len())?;
    Ok(BoundReport {
        num_links: links.len(),
        freq_feasible: check_frequency_feasibility(links),
        supportable: check_supportability(links),
        epsilon: slack(links),
        capacity_ratio_bound: capacity_ratio_bound(links).ok().map(|r| r.min(1.0)),
        b1: bound_b1(links, variances).ok(),
        h,
        b: bound_b(links, h, variances).ok(),
        b3: bound_b3(links, variances).ok(),
        mw_queue_bound: mw_queue_bound(links, variances)?,
        t0: frame_lcm(links).ok(),
        over_share_links: links
            .iter()
            .filter(|l| l.work_rate() > l.frequency_share())
            .count(),
    })
}
