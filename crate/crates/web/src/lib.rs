//! Browser bindings for the static demo page in `www/`.
//!
//! Each export has a plain Rust counterpart returning `Result<_, String>`,
//! so the logic is testable on the host without a JavaScript runtime.

use poisson_stencil::scheme::scheme_by_name;
use poisson_stencil::simulator::{run_with_observer, Boundary, SimConfig};
use poisson_stencil::stability::{lambda_max, sample_symbol};
use wasm_bindgen::prelude::*;

/// Coefficient tables in the plain-text format, exact rationals.
pub fn table_text(scheme: &str) -> Result<String, String> {
    scheme_by_name(scheme).map(|s| s.to_text()).map_err(|e| e.to_string())
}

/// Half-symbol `a(θ)` on an `n × n` phase grid over `[0, 2π)²`, row-major
/// in `θ1`.
pub fn symbol_values(scheme: &str, lambda: f64, n: usize) -> Result<Vec<f64>, String> {
    if n == 0 {
        return Err("grid size must be positive".into());
    }
    let spec = scheme_by_name(scheme).map_err(|e| e.to_string())?;
    Ok(sample_symbol(&spec, lambda, n).into_iter().map(|s| s.value).collect())
}

pub fn stability_limit(scheme: &str) -> Result<f64, String> {
    let spec = scheme_by_name(scheme).map_err(|e| e.to_string())?;
    lambda_max(&spec, 1e-6).map(|l| l.lambda).map_err(|e| e.to_string())
}

/// Final level and error of a standing-wave run.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Simulation {
    field: Vec<f64>,
    n: usize,
    error: f64,
    unstable: bool,
}

#[wasm_bindgen]
impl Simulation {
    /// `(n+1)²` values of `u^{n_t}`, row-major.
    #[wasm_bindgen(getter)]
    pub fn field(&self) -> Vec<f64> {
        self.field.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Relative L² error over all levels.
    #[wasm_bindgen(getter)]
    pub fn error(&self) -> f64 {
        self.error
    }

    #[wasm_bindgen(getter)]
    pub fn unstable(&self) -> bool {
        self.unstable
    }
}

pub fn run_simulation(scheme: &str, n: usize, n_t: usize, lambda: f64, periodic: bool) -> Result<Simulation, String> {
    let spec = scheme_by_name(scheme).map_err(|e| e.to_string())?;
    let bc = if periodic {
        Boundary::Periodic
    } else {
        Boundary::Dirichlet
    };
    let config = SimConfig::standing_wave(spec, n, n_t, lambda, bc);
    let mut field = Vec::new();
    let report = run_with_observer(&config, |k, grid| {
        if k == n_t {
            field = grid.values().to_vec();
        }
    })
    .map_err(|e| e.to_string())?;
    Ok(Simulation {
        field,
        n,
        error: report.error,
        unstable: report.unstable,
    })
}

#[wasm_bindgen(js_name = schemeTable)]
pub fn scheme_table_js(scheme: &str) -> Result<String, JsError> {
    table_text(scheme).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = symbolGrid)]
pub fn symbol_grid_js(scheme: &str, lambda: f64, n: usize) -> Result<Vec<f64>, JsError> {
    symbol_values(scheme, lambda, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = stabilityLimit)]
pub fn stability_limit_js(scheme: &str) -> Result<f64, JsError> {
    stability_limit(scheme).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = simulate)]
pub fn simulate_js(scheme: &str, n: usize, n_t: usize, lambda: f64, periodic: bool) -> Result<Simulation, JsError> {
    run_simulation(scheme, n, n_t, lambda, periodic).map_err(|e| JsError::new(&e))
}
