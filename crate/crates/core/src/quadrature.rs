//! Disc integrals of polynomials under the spherical-means operators.
//!
//! With the evaluation point at the origin and `f` a scaled monomial
//! `(y1/h)^a1 (y2/h)^a2`, the operators
//!
//! ```text
//! A f = 1/(2π) ∫_{|z|<1} [f(cτz) + cτ ∇f(cτz)·z] / √(1-|z|²) dz
//! B f = τ/(2π) ∫_{|z|<1}  f(cτz)                 / √(1-|z|²) dz
//! ```
//!
//! vanish whenever an exponent is odd, and otherwise equal
//! `(a1-1)!!(a2-1)!!/(a1+a2-1)!! · λ^(a1+a2)` and that value times
//! `τ/(a1+a2+1)` respectively. `B` is always handled divided by `τ`.
//!
//! [`quad_oracle_a`] and [`quad_oracle_b`] evaluate the same integrals with
//! Gauss-Legendre quadrature and serve as an independent check.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::interpolation::MonomialExponents;
use crate::poly::{LambdaPoly, Polynomial, Rational};

/// `k!!` for `k ≥ -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> Result<BigInt> {
    if k < -1 {
        return Err(Error::Domain(k));
    }
    let mut acc = BigInt::one();
    let mut i = k;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(acc)
}

fn df(k: u32) -> BigInt {
    double_factorial(k as i64 - 1).expect("argument is at least -1")
}

pub fn a_on_monomial(mu: MonomialExponents) -> LambdaPoly {
    if mu.a1 % 2 == 1 || mu.a2 % 2 == 1 {
        return LambdaPoly::zero();
    }
    // df(k) = (k-1)!!
    let c = Rational::new(df(mu.a1) * df(mu.a2), df(mu.a1 + mu.a2));
    LambdaPoly::term(mu.degree(), c)
}

/// Value of `B` divided by `τ`.
pub fn b_on_monomial(mu: MonomialExponents) -> LambdaPoly {
    let scale = Rational::new(BigInt::one(), BigInt::from(mu.degree() + 1));
    a_on_monomial(mu).scale(&scale)
}

pub fn a_on_polynomial(poly: &Polynomial) -> LambdaPoly {
    poly.terms().map(|(mu, c)| a_on_monomial(mu).scale(c)).sum()
}

/// Value of `B` divided by `τ`.
pub fn b_on_polynomial(poly: &Polynomial) -> LambdaPoly {
    poly.terms().map(|(mu, c)| b_on_monomial(mu).scale(c)).sum()
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrates `g(z)` against `1/(2π√(1-|z|²))` over the unit disc using
/// `z = sin φ (cos θ, sin θ)`, which turns the measure into `sin φ dφ dθ / 2π`.
fn disc_integral(order: usize, g: &dyn Fn(f64, f64) -> f64) -> f64 {
    let (x, w) = gauss_legendre(order);
    let half_phi = PI / 4.0;
    let half_theta = PI;
    let mut total = 0.0;
    for (xp, wp) in x.iter().zip(&w) {
        let phi = half_phi * (xp + 1.0);
        let r = phi.sin();
        let mut inner = 0.0;
        for (xt, wt) in x.iter().zip(&w) {
            let theta = half_theta * (xt + 1.0);
            inner += wt * g(r * theta.cos(), r * theta.sin());
        }
        total += wp * r * inner * half_theta;
    }
    total * half_phi / (2.0 * PI)
}

fn refine(g: &dyn Fn(f64, f64) -> f64) -> f64 {
    let mut order = 64;
    let mut prev = disc_integral(order, g);
    while order < 1024 {
        order *= 2;
        let next = disc_integral(order, g);
        if (next - prev).abs() <= 1e-13 {
            return next;
        }
        prev = next;
    }
    prev
}

fn powi(x: f64, k: u32) -> f64 {
    x.powi(k as i32)
}

/// Numerical value of `A` on a scaled monomial at Courant number `lambda`.
///
/// The gradient term is formed from the analytic partial derivatives of the
/// monomial.
pub fn quad_oracle_a(mu: MonomialExponents, lambda: f64) -> f64 {
    let (a1, a2) = (mu.a1, mu.a2);
    let g = move |z1: f64, z2: f64| {
        let (s1, s2) = (lambda * z1, lambda * z2);
        let f = powi(s1, a1) * powi(s2, a2);
        let d1 = if a1 == 0 {
            0.0
        } else {
            a1 as f64 * powi(s1, a1 - 1) * powi(s2, a2)
        };
        let d2 = if a2 == 0 {
            0.0
        } else {
            a2 as f64 * powi(s1, a1) * powi(s2, a2 - 1)
        };
        f + lambda * (d1 * z1 + d2 * z2)
    };
    refine(&g)
}

/// Numerical value of `B/τ` on a scaled monomial.
pub fn quad_oracle_b(mu: MonomialExponents, lambda: f64) -> f64 {
    let (a1, a2) = (mu.a1, mu.a2);
    let g = move |z1: f64, z2: f64| powi(lambda * z1, a1) * powi(lambda * z2, a2);
    refine(&g)
}
