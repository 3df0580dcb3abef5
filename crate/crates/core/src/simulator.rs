//! Time-marching on the unit square and the space-time relative L² error.
//!
//! Grids have `(n+1) × (n+1)` nodes at `(i h, j h)` with `h = 1/n`. Dirichlet
//! mode updates the interior `0 < i, j < n` and pins the boundary to zero;
//! periodic mode updates the `n` distinct nodes per axis and keeps node `n` as
//! a copy of node `0`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scheme::{Role, SchemeSpec};
use crate::stability;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Dirichlet,
    Periodic,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Dirichlet => "dirichlet",
            Boundary::Periodic => "periodic",
        })
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" => Ok(Boundary::Dirichlet),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(Error::InvalidArgument(format!("unknown boundary `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    n: usize,
    values: Vec<f64>,
}

impl Grid2D {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            values: vec![0.0; (n + 1) * (n + 1)],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(f64, f64) -> f64) -> Self {
        let h = 1.0 / n as f64;
        let mut g = Self::zeros(n);
        for i in 0..=n {
            for j in 0..=n {
                g.values[i * (n + 1) + j] = f(i as f64 * h, j as f64 * h);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Row-major values, `i` (the `x1` index) varying slowest.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.n + 1) + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * (self.n + 1) + j] = v;
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Makes node `n` a copy of node `0` along both axes.
    fn alias_periodic_edges(&mut self) {
        let n = self.n;
        for i in 0..=n {
            let v = self.get(i % n, 0);
            self.set(i, n, v);
        }
        for j in 0..=n {
            let v = self.get(0, j % n);
            self.set(n, j, v);
        }
    }

    fn zero_boundary(&mut self) {
        let n = self.n;
        for k in 0..=n {
            self.set(0, k, 0.0);
            self.set(n, k, 0.0);
            self.set(k, 0, 0.0);
            self.set(k, n, 0.0);
        }
    }

    /// CSV with one grid row per line, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..=self.n {
            let row: Vec<String> = (0..=self.n).map(|j| format!("{:.16e}", self.get(i, j))).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// A table evaluated at a concrete Courant number.
type Weights = Vec<(i32, i32, f64)>;

fn weights(spec: &SchemeSpec, role: Role, lambda: f64) -> Weights {
    spec.evaluate(role, lambda)
        .into_iter()
        .map(|(o, c)| (o.q1, o.q2, c))
        .collect()
}

fn check_compatible(spec: &SchemeSpec, bc: Boundary, grids: &[&Grid2D]) -> Result<usize> {
    let n = grids[0].n;
    for g in grids {
        if g.n != n {
            return Err(Error::ShapeMismatch(n, g.n));
        }
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    match bc {
        Boundary::Dirichlet if spec.radius > 1 => Err(Error::RadiusUnsupported {
            name: spec.name.clone(),
            radius: spec.radius,
        }),
        Boundary::Periodic if spec.radius as usize > n => Err(Error::InvalidArgument(format!(
            "periodic grid with n = {n} is smaller than stencil radius {}",
            spec.radius
        ))),
        _ => Ok(n),
    }
}

/// Applies `out[i,j] += scale · Σ w · src[i+q1, j+q2]` on the updated nodes.
fn accumulate(out: &mut Grid2D, src: &Grid2D, w: &Weights, scale: f64, bc: Boundary) {
    let n = src.n;
    let stride = n + 1;
    match bc {
        Boundary::Dirichlet => {
            for i in 1..n {
                for j in 1..n {
                    let mut acc = 0.0;
                    for &(q1, q2, c) in w {
                        let ii = (i as i64 + q1 as i64) as usize;
                        let jj = (j as i64 + q2 as i64) as usize;
                        acc += c * src.values[ii * stride + jj];
                    }
                    out.values[i * stride + j] += scale * acc;
                }
            }
        }
        Boundary::Periodic => {
            let wrap = |k: usize, q: i32| (k as i64 + q as i64).rem_euclid(n as i64) as usize;
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0.0;
                    for &(q1, q2, c) in w {
                        acc += c * src.values[wrap(i, q1) * stride + wrap(j, q2)];
                    }
                    out.values[i * stride + j] += scale * acc;
                }
            }
        }
    }
}

fn finish(grid: &mut Grid2D, bc: Boundary) {
    match bc {
        Boundary::Dirichlet => grid.zero_boundary(),
        Boundary::Periodic => grid.alias_periodic_edges(),
    }
}

/// `u¹ = Σ first_u · u⁰ + τ Σ first_v · v⁰`.
pub fn first_step(u0: &Grid2D, v0: &Grid2D, spec: &SchemeSpec, lambda: f64, tau: f64, bc: Boundary) -> Result<Grid2D> {
    let n = check_compatible(spec, bc, &[u0, v0])?;
    let mut u1 = Grid2D::zeros(n);
    accumulate(&mut u1, u0, &weights(spec, Role::FirstU, lambda), 1.0, bc);
    accumulate(&mut u1, v0, &weights(spec, Role::FirstV, lambda), tau, bc);
    finish(&mut u1, bc);
    Ok(u1)
}

/// `u^{k+1} = Σ two_step · uᵏ − u^{k−1}`.
pub fn two_step(u_k: &Grid2D, u_km1: &Grid2D, spec: &SchemeSpec, lambda: f64, bc: Boundary) -> Result<Grid2D> {
    check_compatible(spec, bc, &[u_k, u_km1])?;
    let mut next = u_km1.clone();
    advance_in_place(&mut next, u_k, &weights(spec, Role::TwoStep, lambda), bc);
    Ok(next)
}

/// Overwrites `u^{k−1}` in `buf` with `u^{k+1}`.
fn advance_in_place(buf: &mut Grid2D, u_k: &Grid2D, w: &Weights, bc: Boundary) {
    for v in buf.values.iter_mut() {
        *v = -*v;
    }
    accumulate(buf, u_k, w, 1.0, bc);
    finish(buf, bc);
}

pub fn exact_standing_wave(x1: f64, x2: f64, t: f64) -> f64 {
    let c = 1.0;
    (2.0 * PI * x1).sin() * (2.0 * PI * x2).sin() * (2.0 * 2f64.sqrt() * PI * c * t).sin()
}

/// Running sums of the space-time relative L² error.
#[derive(Debug, Clone, Default)]
pub struct ErrorAccumulator {
    diff_sq: f64,
    exact_sq: f64,
}

impl ErrorAccumulator {
    /// Adds one time level; returns that level's own `(Σ(u−u_e)², Σu_e²)`.
    pub fn add_level(&mut self, u: &Grid2D, t: f64, exact: &dyn Fn(f64, f64, f64) -> f64) -> (f64, f64) {
        let h = u.h();
        let mut d = 0.0;
        let mut e = 0.0;
        for i in 0..=u.n {
            for j in 0..=u.n {
                let ue = exact(i as f64 * h, j as f64 * h, t);
                let diff = u.get(i, j) - ue;
                d += diff * diff;
                e += ue * ue;
            }
        }
        self.diff_sq += d;
        self.exact_sq += e;
        (d, e)
    }

    pub fn relative_error(&self) -> Result<f64> {
        if self.exact_sq == 0.0 {
            return Err(Error::DegenerateNorm);
        }
        Ok((self.diff_sq / self.exact_sq).sqrt())
    }
}

/// Relative L² error over levels `k = 1..=computed.len()` at times `k τ`.
pub fn relative_l2_error(computed: &[Grid2D], exact: impl Fn(f64, f64, f64) -> f64, tau: f64) -> Result<f64> {
    if computed.is_empty() {
        return Err(Error::InvalidArgument("need at least one time level".into()));
    }
    let mut acc = ErrorAccumulator::default();
    for (idx, u) in computed.iter().enumerate() {
        acc.add_level(u, (idx + 1) as f64 * tau, &exact);
    }
    acc.relative_error()
}

pub type SpaceField = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type SpaceTimeField = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct SimConfig {
    pub scheme: SchemeSpec,
    pub n: usize,
    pub n_t: usize,
    pub lambda: f64,
    pub c: f64,
    pub bc: Boundary,
    pub initial_u: SpaceField,
    pub initial_v: SpaceField,
    /// Reference solution for the error sums.
    pub exact: SpaceTimeField,
}

impl fmt::Debug for SimConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimConfig")
            .field("scheme", &self.scheme.name)
            .field("n", &self.n)
            .field("n_t", &self.n_t)
            .field("lambda", &self.lambda)
            .field("c", &self.c)
            .field("bc", &self.bc)
            .finish_non_exhaustive()
    }
}

impl SimConfig {
    /// The standing-wave benchmark `sin(2πx1) sin(2πx2) sin(2√2πt)` with `c = 1`.
    pub fn standing_wave(scheme: SchemeSpec, n: usize, n_t: usize, lambda: f64, bc: Boundary) -> Self {
        let omega = 2.0 * 2f64.sqrt() * PI;
        Self {
            scheme,
            n,
            n_t,
            lambda,
            c: 1.0,
            bc,
            initial_u: Arc::new(|_, _| 0.0),
            initial_v: Arc::new(move |x1, x2| omega * (2.0 * PI * x1).sin() * (2.0 * PI * x2).sin()),
            exact: Arc::new(exact_standing_wave),
        }
    }

    /// Replaces the initial data and reference solution by zero.
    pub fn with_zero_data(mut self) -> Self {
        self.initial_u = Arc::new(|_, _| 0.0);
        self.initial_v = Arc::new(|_, _| 0.0);
        self.exact = Arc::new(|_, _, _| 0.0);
        self
    }

    /// Multiplies initial data and reference solution by `alpha`.
    pub fn scaled(mut self, alpha: f64) -> Self {
        let (u, v, e) = (self.initial_u.clone(), self.initial_v.clone(), self.exact.clone());
        self.initial_u = Arc::new(move |x1, x2| alpha * u(x1, x2));
        self.initial_v = Arc::new(move |x1, x2| alpha * v(x1, x2));
        self.exact = Arc::new(move |x1, x2, t| alpha * e(x1, x2, t));
        self
    }

    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn tau(&self) -> f64 {
        self.lambda * self.h() / self.c
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!("need n >= 2, got {}", self.n)));
        }
        if self.n_t < 1 {
            return Err(Error::InvalidArgument("need at least one time step".into()));
        }
        if self.lambda.is_nan() || self.c.is_nan() || self.lambda <= 0.0 || self.c <= 0.0 {
            return Err(Error::InvalidArgument("lambda and c must be positive".into()));
        }
        check_compatible(&self.scheme, self.bc, &[&Grid2D::zeros(self.n)]).map(|_| ())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub scheme: String,
    pub n: usize,
    pub n_t: usize,
    pub lambda: f64,
    pub tau: f64,
    pub bc: Boundary,
    /// Relative L² error over all levels `1..=n_t`.
    pub error: f64,
    /// Relative L² error of each level on its own; `NaN` where the exact
    /// solution vanishes on the whole level.
    pub per_step: Vec<f64>,
    pub wall_time_s: f64,
    /// `λ` exceeded the stability limit of the two-step table.
    pub unstable: bool,
}

pub fn run(config: &SimConfig) -> Result<SimReport> {
    run_with_observer(config, |_, _| {})
}

/// Like [`run`], calling `observer(k, uᵏ)` for every level `k = 0..=n_t`.
pub fn run_with_observer(config: &SimConfig, mut observer: impl FnMut(usize, &Grid2D)) -> Result<SimReport> {
    config.validate()?;
    let start = clock::now();
    let (spec, n, bc, lambda) = (&config.scheme, config.n, config.bc, config.lambda);
    let tau = config.tau();

    let unstable = !stability::is_stable(spec, lambda);
    if unstable {
        log::warn!("scheme {} is unstable at lambda = {lambda}", spec.name);
    }

    let mut u0 = Grid2D::from_fn(n, |x1, x2| (config.initial_u)(x1, x2));
    let mut v0 = Grid2D::from_fn(n, |x1, x2| (config.initial_v)(x1, x2));
    if bc == Boundary::Periodic {
        u0.alias_periodic_edges();
        v0.alias_periodic_edges();
    }
    observer(0, &u0);

    let exact = config.exact.as_ref();
    let mut acc = ErrorAccumulator::default();
    let mut per_step = Vec::with_capacity(config.n_t);
    let mut record = |acc: &mut ErrorAccumulator, u: &Grid2D, k: usize| {
        let (d, e) = acc.add_level(u, k as f64 * tau, exact);
        per_step.push(if e > 0.0 { (d / e).sqrt() } else { f64::NAN });
    };

    let mut prev = u0;
    let mut curr = first_step(&prev, &v0, spec, lambda, tau, bc)?;
    record(&mut acc, &curr, 1);
    observer(1, &curr);

    let w = weights(spec, Role::TwoStep, lambda);
    for k in 2..=config.n_t {
        advance_in_place(&mut prev, &curr, &w, bc);
        std::mem::swap(&mut prev, &mut curr);
        record(&mut acc, &curr, k);
        observer(k, &curr);
    }

    let error = acc.relative_error()?;
    Ok(SimReport {
        scheme: spec.name.clone(),
        n,
        n_t: config.n_t,
        lambda,
        tau,
        bc,
        error,
        per_step,
        wall_time_s: clock::elapsed(start),
        unstable,
    })
}

#[cfg(not(target_arch = "wasm32"))]
mod clock {
    use std::time::Instant;

    pub fn now() -> Instant {
        Instant::now()
    }

    pub fn elapsed(start: Instant) -> f64 {
        start.elapsed().as_secs_f64()
    }
}

// std::time::Instant panics on wasm32-unknown-unknown.
#[cfg(target_arch = "wasm32")]
mod clock {
    pub fn now() {}

    pub fn elapsed(_: ()) -> f64 {
        0.0
    }
}
