//! Exact-rational polynomial containers.
//!
//! [`LambdaPoly`] is a univariate polynomial in the Courant number; every scheme
//! coefficient has this form. [`Polynomial`] is a sparse bivariate polynomial in
//! grid-scaled coordinates `x1/h`, `x2/h`, used for Lagrange basis functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interpolation::MonomialExponents;

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Polynomial in `λ` with exact rational coefficients. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LambdaPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(0, c)
    }

    pub fn term(power: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(power, c);
        p
    }

    /// Builds a polynomial from `(power, numerator, denominator)` triples.
    pub fn from_ratios(terms: &[(u32, i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(power, n, d) in terms {
            p.add_term(power, rational(n, d));
        }
        p
    }

    pub fn add_term(&mut self, power: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(power).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, power: u32) -> Rational {
        self.coeffs.get(&power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(&p, c)| (p, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn has_only_even_powers(&self) -> bool {
        self.coeffs.keys().all(|p| p % 2 == 0)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        for (&p, c) in &self.coeffs {
            out.add_term(p, c * factor);
        }
        out
    }

    /// Evaluates at a floating-point `λ` (Horner over the dense coefficient range).
    pub fn eval(&self, lambda: f64) -> f64 {
        let Some(deg) = self.degree() else {
            return 0.0;
        };
        let mut acc = 0.0;
        for p in (0..=deg).rev() {
            let c = self.coeffs.get(&p).map(rational_to_f64).unwrap_or(0.0);
            acc = acc * lambda + c;
        }
        acc
    }

    /// Wire form: space-separated `power:numerator/denominator` pairs, e.g.
    /// `2:-1/12 4:1/12`. Integer coefficients omit the denominator.
    pub fn to_wire(&self) -> String {
        self.coeffs
            .iter()
            .map(|(p, c)| format!("{p}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses the output of [`LambdaPoly::to_wire`]. `line` is used for error reporting.
    pub fn from_wire_terms<'a>(terms: impl IntoIterator<Item = &'a str>, line: usize) -> Result<Self> {
        let mut p = Self::zero();
        for term in terms {
            let bad = |reason: &str| Error::Parse {
                line,
                reason: format!("{reason} in term `{term}`"),
            };
            let (power, coeff) = term.split_once(':').ok_or_else(|| bad("missing `:`"))?;
            let power: u32 = power.parse().map_err(|_| bad("bad power"))?;
            let coeff: Rational = coeff.parse().map_err(|_| bad("bad rational"))?;
            if p.coeffs.contains_key(&power) {
                return Err(bad("repeated power"));
            }
            p.add_term(power, coeff);
        }
        Ok(p)
    }

    /// Human-readable form such as `1 - 2λ² + 1/3λ⁴`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&p, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = match p {
                0 => String::new(),
                1 => "λ".to_string(),
                _ => format!("λ{}", superscript(p)),
            };
            if mag.is_one() && p != 0 {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{mag}{var}"));
            }
        }
        out
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LambdaPoly {
    type Output = LambdaPoly;
    fn add(mut self, rhs: LambdaPoly) -> LambdaPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LambdaPoly> for LambdaPoly {
    fn add_assign(&mut self, rhs: &LambdaPoly) {
        for (&p, c) in &rhs.coeffs {
            self.add_term(p, c.clone());
        }
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        self + &(-rhs)
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&pa, ca) in &self.coeffs {
            for (&pb, cb) in &rhs.coeffs {
                out.add_term(pa + pb, ca * cb);
            }
        }
        out
    }
}

impl std::iter::Sum for LambdaPoly {
    fn sum<I: Iterator<Item = LambdaPoly>>(iter: I) -> Self {
        iter.fold(LambdaPoly::zero(), |acc, p| acc + p)
    }
}

/// Sparse bivariate polynomial in grid-scaled coordinates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<MonomialExponents, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(mu: MonomialExponents) -> Self {
        let mut p = Self::zero();
        p.add_term(mu, Rational::one());
        p
    }

    pub fn add_term(&mut self, mu: MonomialExponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mu).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mu);
        }
    }

    pub fn coeff(&self, mu: MonomialExponents) -> Rational {
        self.terms.get(&mu).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (MonomialExponents, &Rational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The part made of monomials with even exponents in both coordinates.
    pub fn even_part(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.a1 % 2 == 0 && m.a2 % 2 == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at an integer point of the scaled grid.
    pub fn eval_at(&self, x1: i64, x2: i64) -> Rational {
        let mut acc = Rational::zero();
        for (mu, c) in &self.terms {
            acc += c * Rational::from_integer(mu.eval_at(x1, x2));
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (mu, c) in &rhs.terms {
            out.add_term(*mu, c.clone());
        }
        out
    }
}

impl FromIterator<(MonomialExponents, Rational)> for Polynomial {
    fn from_iter<I: IntoIterator<Item = (MonomialExponents, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (mu, c) in iter {
            p.add_term(mu, c);
        }
        p
    }
}
