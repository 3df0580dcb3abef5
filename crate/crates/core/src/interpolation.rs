//! Stencil interpolation: monomial ordering, node sets and the Lagrange basis.
//!
//! Each stencil offset `q` is paired with a monomial exponent `α(q)`, where
//! negative offsets map to odd exponents and non-negative offsets to even ones.
//! Monomials are ordered by total degree, then by the difference of the
//! individual degrees (see [`ordinal_g`]). Taking the first `m` monomials in
//! that order fixes both the polynomial space and the node set.
//!
//! All coordinates are grid-scaled (`x / h`), so the evaluation matrix and its
//! inverse contain only rationals independent of `h`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

/// Exponents of `x1^a1 · x2^a2` in scaled coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialExponents {
    pub a1: u32,
    pub a2: u32,
}

impl MonomialExponents {
    pub const fn new(a1: u32, a2: u32) -> Self {
        Self { a1, a2 }
    }

    pub fn degree(&self) -> u32 {
        self.a1 + self.a2
    }

    pub fn eval_at(&self, x1: i64, x2: i64) -> BigInt {
        BigInt::from(x1).pow(self.a1) * BigInt::from(x2).pow(self.a2)
    }

    /// The stencil offset paired with this monomial.
    pub fn offset(&self) -> StencilOffset {
        StencilOffset::new(q_of_alpha(self.a1), q_of_alpha(self.a2))
    }
}

impl fmt::Display for MonomialExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x1^{} x2^{}", self.a1, self.a2)
    }
}

/// Grid offset of a stencil node relative to the evaluation point, in units of `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StencilOffset {
    pub q1: i32,
    pub q2: i32,
}

impl StencilOffset {
    pub const CENTER: StencilOffset = StencilOffset::new(0, 0);

    pub const fn new(q1: i32, q2: i32) -> Self {
        Self { q1, q2 }
    }

    pub fn monomial(&self) -> MonomialExponents {
        MonomialExponents::new(alpha_of_q(self.q1), alpha_of_q(self.q2))
    }

    /// Chebyshev distance from the center.
    pub fn radius(&self) -> u32 {
        self.q1.unsigned_abs().max(self.q2.unsigned_abs())
    }

    /// Rotation by 90° counter-clockwise.
    pub fn rotated(&self) -> Self {
        Self::new(-self.q2, self.q1)
    }

    pub fn transposed(&self) -> Self {
        Self::new(self.q2, self.q1)
    }
}

impl fmt::Display for StencilOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q1, self.q2)
    }
}

pub fn alpha_of_q(q: i32) -> u32 {
    if q < 0 {
        2 * q.unsigned_abs() - 1
    } else {
        2 * q as u32
    }
}

pub fn q_of_alpha(alpha: u32) -> i32 {
    let mag = alpha.div_ceil(2) as i32;
    if alpha.is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

/// Ordinal of `x1^a1 x2^a2` in the degree-then-difference order, starting at 1.
pub fn ordinal_g(a1: u32, a2: u32) -> u64 {
    let (a1, a2) = (a1 as u64, a2 as u64);
    let d = a1 + a2;
    let base = d * (d + 1) / 2;
    if a2 < a1 {
        base + (a1 - a2)
    } else {
        base + (a2 - a1 + 1)
    }
}

/// The first `m` monomials in [`ordinal_g`] order.
pub fn monomial_segment(m: usize) -> Vec<MonomialExponents> {
    assert!(m >= 1, "segment size must be positive");
    let mut out = Vec::with_capacity(m);
    // Ordinals of degree d occupy d(d+1)/2 + 1 ..= (d+1)(d+2)/2, so enumerating
    // whole degrees until m members are collected covers the segment.
    let mut degree = 0u32;
    while out.len() < m {
        let mut level: Vec<MonomialExponents> =
            (0..=degree).map(|a1| MonomialExponents::new(a1, degree - a1)).collect();
        level.sort_by_key(|mu| ordinal_g(mu.a1, mu.a2));
        out.extend(level);
        degree += 1;
    }
    out.truncate(m);
    out
}

pub fn stencil_nodes(m: usize) -> Vec<StencilOffset> {
    monomial_segment(m).iter().map(MonomialExponents::offset).collect()
}

/// Lagrange basis over the node set of a monomial segment.
///
/// Row `s` of `coeffs` expands `L_s` over `monomials`; `L_s` is attached to
/// `nodes[s]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeBasis {
    pub m: usize,
    pub monomials: Vec<MonomialExponents>,
    pub nodes: Vec<StencilOffset>,
    pub coeffs: Vec<Vec<Rational>>,
    /// Determinant of the evaluation matrix `D[s][r] = μ_s(node_r)`.
    pub det: Rational,
}

impl LagrangeBasis {
    /// Basis function `L_s` as a polynomial.
    pub fn function(&self, s: usize) -> Polynomial {
        self.monomials
            .iter()
            .zip(&self.coeffs[s])
            .map(|(mu, c)| (*mu, c.clone()))
            .collect()
    }

    /// Basis function attached to a given node, if the node belongs to the stencil.
    pub fn function_at(&self, node: StencilOffset) -> Option<Polynomial> {
        self.nodes.iter().position(|n| *n == node).map(|s| self.function(s))
    }

    pub fn functions(&self) -> impl Iterator<Item = (StencilOffset, Polynomial)> + '_ {
        (0..self.m).map(|s| (self.nodes[s], self.function(s)))
    }
}

/// Evaluation matrix with rows indexed by monomial and columns by node.
pub fn evaluation_matrix(monomials: &[MonomialExponents], nodes: &[StencilOffset]) -> Vec<Vec<Rational>> {
    monomials
        .iter()
        .map(|mu| {
            nodes
                .iter()
                .map(|n| Rational::from_integer(mu.eval_at(n.q1 as i64, n.q2 as i64)))
                .collect()
        })
        .collect()
}

pub fn lagrange_basis(m: usize) -> Result<LagrangeBasis> {
    if m == 0 {
        return Err(Error::InvalidArgument("interpolation size must be positive".into()));
    }
    let monomials = monomial_segment(m);
    let nodes: Vec<StencilOffset> = monomials.iter().map(MonomialExponents::offset).collect();
    let d = evaluation_matrix(&monomials, &nodes);
    let (coeffs, det) = invert_exact(&d).ok_or(Error::SingularMatrix { m })?;
    Ok(LagrangeBasis {
        m,
        monomials,
        nodes,
        coeffs,
        det,
    })
}

/// Gauss-Jordan inversion over the rationals. Returns `None` for a singular
/// matrix, otherwise the inverse and the determinant.
pub fn invert_exact(matrix: &[Vec<Rational>]) -> Option<(Vec<Vec<Rational>>, Rational)> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let mut det = Rational::one();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        let p_inv = p.recip();
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x *= &p_inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let da = &factor * &a[col][c];
                a[r][c] -= da;
                let di = &factor * &inv[col][c];
                inv[r][c] -= di;
            }
        }
    }
    Some((inv, det))
}
