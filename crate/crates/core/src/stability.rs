//! Von Neumann analysis of the two-step update.
//!
//! Substituting a plane wave `uᵏ = ξᵏ e^{i(q1θ1 + q2θ2)}` into
//! `u^{k+1} = Σ_s two_step[s] uᵏ[s] − u^{k−1}` gives `ξ² − 2aξ + 1 = 0` with
//! `a(θ) = ½ Σ_s two_step[s] cos(q·θ)` for symmetric tables. Both roots have
//! modulus one iff `|a| ≤ 1`; the bound is inclusive.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scheme::{Role, SchemeSpec};

/// Grid resolution per axis of the phase scan.
pub const PHASE_GRID: usize = 512;
/// Slack on `|a| ≤ 1` for floating-point evaluation.
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolSample {
    pub theta1: f64,
    pub theta2: f64,
    pub value: f64,
}

/// Two-step coefficients evaluated at one Courant number, halved.
#[derive(Debug, Clone)]
pub struct Symbol {
    terms: Vec<(i32, i32, f64)>,
    radius: i32,
}

impl Symbol {
    pub fn new(spec: &SchemeSpec, lambda: f64) -> Self {
        let terms = spec
            .evaluate(Role::TwoStep, lambda)
            .into_iter()
            .map(|(o, c)| (o.q1, o.q2, 0.5 * c))
            .collect();
        Self {
            terms,
            radius: spec.radius as i32,
        }
    }

    pub fn value(&self, theta1: f64, theta2: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(q1, q2, c)| c * (q1 as f64 * theta1 + q2 as f64 * theta2).cos())
            .sum()
    }

    /// Imaginary part of the half-symbol; zero for centrally symmetric tables.
    pub fn imag(&self, theta1: f64, theta2: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(q1, q2, c)| c * (q1 as f64 * theta1 + q2 as f64 * theta2).sin())
            .sum()
    }

    /// Minimum and maximum over a uniform `n × n` grid on `[0, 2π)²`, each
    /// refined by coordinate descent around the best grid point.
    pub fn extremes(&self, n: usize) -> Extremes {
        let step = 2.0 * PI / n as f64;
        let r = self.radius;
        // cos(qθ_k), sin(qθ_k) for q in -r..=r
        let width = (2 * r + 1) as usize;
        let mut cos_t = vec![0.0; width * n];
        let mut sin_t = vec![0.0; width * n];
        for k in 0..n {
            let theta = k as f64 * step;
            for q in -r..=r {
                let idx = (q + r) as usize * n + k;
                cos_t[idx] = (q as f64 * theta).cos();
                sin_t[idx] = (q as f64 * theta).sin();
            }
        }
        let mut min = (f64::INFINITY, 0, 0);
        let mut max = (f64::NEG_INFINITY, 0, 0);
        for k1 in 0..n {
            for k2 in 0..n {
                let mut v = 0.0;
                for &(q1, q2, c) in &self.terms {
                    let i1 = (q1 + r) as usize * n + k1;
                    let i2 = (q2 + r) as usize * n + k2;
                    v += c * (cos_t[i1] * cos_t[i2] - sin_t[i1] * sin_t[i2]);
                }
                if v < min.0 {
                    min = (v, k1, k2);
                }
                if v > max.0 {
                    max = (v, k1, k2);
                }
            }
        }
        let at = |k: usize| k as f64 * step;
        let (min_value, min_at) = self.descend(at(min.1), at(min.2), step, 1.0);
        let (max_value, max_at) = self.descend(at(max.1), at(max.2), step, -1.0);
        Extremes {
            min: min_value.min(min.0),
            max: max_value.max(max.0),
            argmin: min_at,
            argmax: max_at,
        }
    }

    /// Coordinate descent on `sign · value` with a halving step.
    fn descend(&self, mut t1: f64, mut t2: f64, mut step: f64, sign: f64) -> (f64, (f64, f64)) {
        let mut best = sign * self.value(t1, t2);
        while step > 1e-10 {
            let mut moved = false;
            for (d1, d2) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                let v = sign * self.value(t1 + d1, t2 + d2);
                if v < best {
                    best = v;
                    t1 += d1;
                    t2 += d2;
                    moved = true;
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        (sign * best, (t1, t2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremes {
    pub min: f64,
    pub max: f64,
    pub argmin: (f64, f64),
    pub argmax: (f64, f64),
}

/// `a(θ) = ½ Σ_s two_step[s](λ) cos(q1θ1 + q2θ2)`.
pub fn symbol(spec: &SchemeSpec, lambda: f64, theta1: f64, theta2: f64) -> f64 {
    Symbol::new(spec, lambda).value(theta1, theta2)
}

/// Samples the symbol on an `n × n` grid over `[0, 2π)²`, row-major in `θ1`.
pub fn sample_symbol(spec: &SchemeSpec, lambda: f64, n: usize) -> Vec<SymbolSample> {
    let sym = Symbol::new(spec, lambda);
    let step = 2.0 * PI / n as f64;
    let mut out = Vec::with_capacity(n * n);
    for k1 in 0..n {
        for k2 in 0..n {
            let (theta1, theta2) = (k1 as f64 * step, k2 as f64 * step);
            out.push(SymbolSample {
                theta1,
                theta2,
                value: sym.value(theta1, theta2),
            });
        }
    }
    out
}

pub fn is_stable(spec: &SchemeSpec, lambda: f64) -> bool {
    let e = Symbol::new(spec, lambda).extremes(PHASE_GRID);
    e.min >= -1.0 - BOUND_SLACK && e.max <= 1.0 + BOUND_SLACK
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityLimit {
    pub lambda: f64,
    /// `|a| = 1` is attained at a nonzero phase at the limit, so the scheme
    /// has a double root there (linear-in-k growth of that mode).
    pub marginal: bool,
}

/// Largest stable Courant number in `(0, 2]`, found by bisection to within `tol`.
pub fn lambda_max(spec: &SchemeSpec, tol: f64) -> Result<StabilityLimit> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let upper = 2.0;
    if !is_stable(spec, tol) {
        return Err(Error::NeverStable(spec.name.clone()));
    }
    let mut lo = tol;
    let mut hi = upper;
    if is_stable(spec, hi) {
        lo = hi;
    } else {
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if is_stable(spec, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let e = Symbol::new(spec, lo).extremes(PHASE_GRID);
    let marginal = (e.min + 1.0).abs() < 1e-6;
    Ok(StabilityLimit { lambda: lo, marginal })
}
