//! Reference errors for the standing-wave benchmark and the row
//! definitions used to reproduce them.
//!
//! Each table compares a Poisson-derived scheme with its conventional
//! counterpart over a list of `(n, n_t, λ)` rows.

use crate::error::Result;
use crate::scheme::{named_scheme, SchemeName};
use crate::simulator::{run, Boundary, SimConfig, SimReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub n: usize,
    pub n_t: usize,
    pub lambda: f64,
    /// Error of the Poisson-derived scheme.
    pub poisson: f64,
    /// Error of the conventional scheme.
    pub conventional: f64,
}

const fn row(n: usize, n_t: usize, lambda: f64, poisson: f64, conventional: f64) -> ReferenceRow {
    ReferenceRow {
        n,
        n_t,
        lambda,
        poisson,
        conventional,
    }
}

/// Five-point stencil, Dirichlet boundary (`bench 1`).
pub const TABLE_1: [ReferenceRow; 12] = [
    row(10, 1, 0.707, 9.0843e-4, 6.8938e-2),
    row(10, 10, 0.707, 9.1540e-4, 6.8945e-2),
    row(10, 20, 0.707, 9.1604e-4, 6.8945e-2),
    row(20, 1, 0.707, 5.4767e-5, 1.6636e-2),
    row(20, 20, 0.707, 5.6800e-5, 1.6638e-2),
    row(20, 40, 0.707, 5.7372e-5, 1.6638e-2),
    row(40, 1, 0.707, 3.3924e-6, 4.1230e-3),
    row(40, 40, 0.707, 4.0331e-6, 4.1234e-3),
    row(40, 80, 0.707, 4.4928e-6, 4.1234e-3),
    row(80, 1, 0.707, 2.1158e-7, 1.0285e-3),
    row(80, 80, 0.707, 4.3820e-7, 1.0286e-3),
    row(80, 160, 0.707, 6.5824e-7, 1.0286e-3),
];

/// Nine-point square stencils, Dirichlet boundary (`bench 2`).
pub const TABLE_2: [ReferenceRow; 8] = [
    row(10, 10, 0.707, 3.7058e-2, 1.1741e-1),
    row(10, 10, 0.796, 2.9587e-2, 1.1241e-1),
    row(20, 20, 0.707, 8.9333e-3, 2.8002e-2),
    row(20, 20, 0.796, 8.0697e-3, 2.7523e-2),
    row(40, 40, 0.707, 2.3723e-3, 6.8821e-3),
    row(40, 40, 0.796, 2.5737e-3, 6.8668e-3),
    row(80, 80, 0.707, 7.5573e-4, 1.7084e-3),
    row(80, 80, 0.796, 1.0274e-3, 1.7187e-3),
];

/// Thirteen-point stencil, periodic boundary (`bench 3`).
pub const TABLE_3: [ReferenceRow; 4] = [
    row(10, 10, 0.707, 4.2146e-5, 6.8938e-2),
    row(20, 20, 0.707, 6.6004e-7, 1.6636e-2),
    row(40, 40, 0.707, 1.1471e-8, 4.1230e-3),
    row(80, 80, 0.707, 2.8884e-10, 1.0285e-3),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchTable {
    FivePoint,
    NinePoint,
    ThirteenPoint,
}

impl BenchTable {
    pub fn from_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(BenchTable::FivePoint),
            2 => Some(BenchTable::NinePoint),
            3 => Some(BenchTable::ThirteenPoint),
            _ => None,
        }
    }

    pub fn number(&self) -> u8 {
        match self {
            BenchTable::FivePoint => 1,
            BenchTable::NinePoint => 2,
            BenchTable::ThirteenPoint => 3,
        }
    }

    pub fn rows(&self) -> &'static [ReferenceRow] {
        match self {
            BenchTable::FivePoint => &TABLE_1,
            BenchTable::NinePoint => &TABLE_2,
            BenchTable::ThirteenPoint => &TABLE_3,
        }
    }

    /// `(poisson, conventional)` scheme pair.
    pub fn schemes(&self) -> (SchemeName, SchemeName) {
        match self {
            BenchTable::FivePoint => (SchemeName::P5, SchemeName::C5),
            BenchTable::NinePoint => (SchemeName::P9, SchemeName::C9),
            BenchTable::ThirteenPoint => (SchemeName::P13, SchemeName::C13),
        }
    }

    pub fn boundary(&self) -> Boundary {
        match self {
            BenchTable::ThirteenPoint => Boundary::Periodic,
            _ => Boundary::Dirichlet,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub reference: ReferenceRow,
    pub poisson: SimReport,
    pub conventional: SimReport,
}

impl BenchRow {
    pub fn poisson_deviation(&self) -> f64 {
        relative_deviation(self.poisson.error, self.reference.poisson)
    }

    pub fn conventional_deviation(&self) -> f64 {
        relative_deviation(self.conventional.error, self.reference.conventional)
    }
}

pub fn relative_deviation(computed: f64, reference: f64) -> f64 {
    (computed - reference).abs() / reference.abs()
}

/// Runs every row of a table for both schemes of the pair.
pub fn run_table(table: BenchTable) -> Result<Vec<BenchRow>> {
    let (p, c) = table.schemes();
    let (p, c) = (named_scheme(p)?, named_scheme(c)?);
    let bc = table.boundary();
    table
        .rows()
        .iter()
        .map(|r| {
            let poisson = run(&SimConfig::standing_wave(p.clone(), r.n, r.n_t, r.lambda, bc))?;
            let conventional = run(&SimConfig::standing_wave(c.clone(), r.n, r.n_t, r.lambda, bc))?;
            Ok(BenchRow {
                reference: *r,
                poisson,
                conventional,
            })
        })
        .collect()
}
