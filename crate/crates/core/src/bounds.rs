//! Distance and rate bounds for LRC codes and the optimality verdict.

use serde::Serialize;

use crate::construction::CodeParams;
use crate::error::{Error, Result};

/// `n - k - ceil(k/r) + 2`, the locality-aware Singleton bound.
pub fn singleton_like_bound(n: usize, k: usize, r: usize) -> i64 {
    n as i64 - k as i64 - k.div_ceil(r) as i64 + 2
}

/// `k <= n - ceil(n/(r+1))`.
pub fn rate_bound_holds(n: usize, k: usize, r: usize) -> bool {
    k + n.div_ceil(r + 1) <= n
}

/// `n - k - ceil(k/r) + 1` for codes whose last repair group has size
/// `s = n mod (r+1) >= 2`, provided `r | k` or `k mod r >= s`.
pub fn improved_bound(n: usize, k: usize, r: usize) -> Option<i64> {
    let s = n % (r + 1);
    if s < 2 {
        return None;
    }
    (k.is_multiple_of(r) || k % r >= s).then(|| singleton_like_bound(n, k, r) - 1)
}

/// `n - k - ceil((k+t)/r) + 2`, the distance of the constructed code.
pub fn predicted_distance(params: &CodeParams) -> i64 {
    params.n as i64 - params.k as i64 - params.k_prime.div_ceil(params.r) as i64 + 2
}

/// `ceil((k+t)/r) - ceil(k/r)`.
pub fn delta(k: usize, t: usize, r: usize) -> usize {
    (k + t).div_ceil(r) - k.div_ceil(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimalityReason {
    /// Delta = 0: the distance meets the Singleton-like bound.
    SingletonTight,
    /// Delta = 1: the distance meets the improved bound.
    ImprovedTight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub d_singleton: i64,
    pub d_improved: Option<i64>,
    pub delta: usize,
    pub d_predicted: i64,
    pub optimal: bool,
    pub applicable_reason: OptimalityReason,
}

pub fn optimality_report(params: &CodeParams) -> Result<BoundsReport> {
    let (n, k, r, s, t) = (params.n, params.k, params.r, params.s, params.t);
    let d_singleton = singleton_like_bound(n, k, r);
    let d_predicted = predicted_distance(params);
    let delta = delta(k, t, r);
    let inconsistent = |msg: String| Err(Error::InternalInconsistency(msg));

    if delta > 1 {
        return inconsistent(format!("delta = {delta} for t = {t} < r = {r}"));
    }
    if d_singleton - delta as i64 != d_predicted {
        return inconsistent("predicted distance differs from bound minus delta".into());
    }
    let d_improved = improved_bound(n, k, r);
    if !params.is_divisible() {
        let condition = k % r == 0 || k % r >= s;
        if (delta == 1) != condition {
            return inconsistent(format!("delta = {delta} but dichotomy condition is {condition}"));
        }
        if delta == 1 && d_improved != Some(d_predicted) {
            return inconsistent("improved bound does not match predicted distance".into());
        }
    }
    let applicable_reason = if delta == 0 {
        OptimalityReason::SingletonTight
    } else {
        OptimalityReason::ImprovedTight
    };
    Ok(BoundsReport {
        d_singleton,
        d_improved,
        delta,
        d_predicted,
        optimal: true,
        applicable_reason,
    })
}
