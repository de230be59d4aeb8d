//! Quantities that follow from a visibility: critical detection efficiency,
//! a bound for arbitrary measurements in the XY plane, and activation in
//! star networks.

use crate::error::{Error, Result};

/// Default `v_low`: visibility below which the two-qubit Werner-like state
/// admits a local model for all projective measurements.
pub const DEFAULT_V_LOW: f64 = 0.6875;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EfficiencyResult {
    pub eta_crit: f64,
    /// `η^N / v + (1 − η)^N − 1` at `eta_crit`.
    pub residual: f64,
}

fn h(eta: f64, v: f64, n: i32) -> f64 {
    eta.powi(n) / v + (1.0 - eta).powi(n) - 1.0
}

/// Detector efficiency below which the inequality of visibility `v` can no
/// longer be violated, when no-clicks are mapped to outcome `+1`.
///
/// Solves `η^N / v + (1 − η)^N = 1` on `(0, 1)`. The left side is convex with
/// its minimum at `η₀ = t / (1 + t)`, `t = v^{1/(N−1)}`, where it is below 1,
/// so the root is bracketed by `[η₀, 1]`.
pub fn critical_efficiency(v: f64, n: usize) -> Result<EfficiencyResult> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::InvalidParams(format!(
            "visibility must lie in (0, 1), got {v}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParams(format!("need N >= 2, got {n}")));
    }
    let ni = n as i32;
    let t = v.powf(1.0 / (n as f64 - 1.0));
    let (mut lo, mut hi) = (t / (1.0 + t), 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid, v, ni) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 {
            break;
        }
    }
    let mut eta = 0.5 * (lo + hi);
    for _ in 0..3 {
        let dh = n as f64 * (eta.powi(ni - 1) / v - (1.0 - eta).powi(ni - 1));
        if dh > 0.0 {
            let next = eta - h(eta, v, ni) / dh;
            if (lo..=hi).contains(&next) {
                eta = next;
            }
        }
    }
    Ok(EfficiencyResult {
        eta_crit: eta,
        residual: h(eta, v, ni),
    })
}

/// Lower bound on the robustness for all measurements in the XY plane from
/// a local model with `m` measurements: `cos(π / 2m)^N · v_m`.
pub fn xy_lower_bound(v_m: f64, m: usize, n: usize) -> f64 {
    (std::f64::consts::PI / (2.0 * m as f64))
        .cos()
        .powi(n as i32)
        * v_m
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActivationReport {
    pub v_m: f64,
    pub parties: usize,
    pub v_low: f64,
    /// `v_low^N`.
    pub threshold: f64,
    /// Whether `v_m < v_low^N`.
    pub activated: bool,
    /// `v_low^N − v_m`.
    pub margin: f64,
    /// Whether `(2/π) 2^{1/N} < v_low`, the large-`m` version of the criterion.
    pub asymptotic_check: bool,
}

/// Whether entanglement swapping in a star network with `N` local
/// two-qubit links yields a state whose correlations are nonlocal.
pub fn activation_check(v_m: f64, n: usize, v_low: f64) -> ActivationReport {
    let threshold = v_low.powi(n as i32);
    ActivationReport {
        v_m,
        parties: n,
        v_low,
        threshold,
        activated: v_m < threshold,
        margin: threshold - v_m,
        asymptotic_check: 2.0 / std::f64::consts::PI * 2f64.powf(1.0 / n as f64) < v_low,
    }
}
