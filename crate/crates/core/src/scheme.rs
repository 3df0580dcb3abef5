//! Explicit time-marching schemes as per-offset coefficient tables.
//!
//! A scheme has two procedures:
//!
//! ```text
//! u¹      = Σ_s first_u[s] u⁰[s] + τ Σ_s first_v[s] v⁰[s]
//! u^{k+1} = Σ_s two_step[s] uᵏ[s] − u^{k−1}
//! ```
//!
//! Poisson-derived schemes take `first_u[s] = A(L_s)`, `first_v[s] = B(L_s)/τ`
//! and `two_step[s] = 2 A(L_s)` for the Lagrange basis function `L_s` attached
//! to offset `s`. Conventional variants keep the two-step table and replace the
//! velocity part of the first step by `τ v⁰` at the center node.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::interpolation::{lagrange_basis, StencilOffset};
use crate::poly::{rational, LambdaPoly};
use crate::quadrature::{a_on_polynomial, b_on_polynomial};

pub type CoefficientTable = BTreeMap<StencilOffset, LambdaPoly>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeName {
    P5,
    C5,
    P9,
    C9,
    P13,
    C13,
}

impl SchemeName {
    pub const ALL: [SchemeName; 6] = [
        SchemeName::P5,
        SchemeName::C5,
        SchemeName::P9,
        SchemeName::C9,
        SchemeName::P13,
        SchemeName::C13,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeName::P5 => "P5",
            SchemeName::C5 => "C5",
            SchemeName::P9 => "P9",
            SchemeName::C9 => "C9",
            SchemeName::P13 => "P13",
            SchemeName::C13 => "C13",
        }
    }

    pub fn is_poisson(&self) -> bool {
        matches!(self, SchemeName::P5 | SchemeName::P9 | SchemeName::P13)
    }
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownScheme(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    FirstU,
    FirstV,
    TwoStep,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::FirstU, Role::FirstV, Role::TwoStep];

    pub fn as_str(&self) -> &'static str {
        match self {
            Role::FirstU => "first_u",
            Role::FirstV => "first_v",
            Role::TwoStep => "two_step",
        }
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Role::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown role `{s}`"))
    }
}

/// Coefficient tables of one scheme. Absent offsets have zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeSpec {
    pub name: String,
    /// Interpolation size the scheme was generated from; `None` for schemes
    /// that are not interpolation-derived (the isotropic nine-point table).
    pub m: Option<usize>,
    pub first_u: CoefficientTable,
    pub first_v: CoefficientTable,
    pub two_step: CoefficientTable,
    pub radius: u32,
}

impl SchemeSpec {
    fn from_tables(
        name: impl Into<String>,
        m: Option<usize>,
        first_u: CoefficientTable,
        first_v: CoefficientTable,
        two_step: CoefficientTable,
    ) -> Self {
        let mut spec = Self {
            name: name.into(),
            m,
            first_u,
            first_v,
            two_step,
            radius: 0,
        };
        spec.radius = spec.offsets().iter().map(StencilOffset::radius).max().unwrap_or(0);
        spec
    }

    pub fn table(&self, role: Role) -> &CoefficientTable {
        match role {
            Role::FirstU => &self.first_u,
            Role::FirstV => &self.first_v,
            Role::TwoStep => &self.two_step,
        }
    }

    /// Union of offsets carrying a nonzero coefficient in any table.
    pub fn offsets(&self) -> BTreeSet<StencilOffset> {
        self.first_u
            .keys()
            .chain(self.first_v.keys())
            .chain(self.two_step.keys())
            .copied()
            .collect()
    }

    pub fn coeff(&self, role: Role, offset: StencilOffset) -> LambdaPoly {
        self.table(role).get(&offset).cloned().unwrap_or_default()
    }

    /// Sum of a table's coefficients as a polynomial identity in `λ`.
    pub fn table_sum(&self, role: Role) -> LambdaPoly {
        self.table(role).values().cloned().sum()
    }

    /// A table evaluated at a concrete Courant number.
    pub fn evaluate(&self, role: Role, lambda: f64) -> Vec<(StencilOffset, f64)> {
        self.table(role).iter().map(|(o, p)| (*o, p.eval(lambda))).collect()
    }

    /// Plain-text table: one line per (offset, role) with a nonzero
    /// coefficient, formatted as `q1 q2 role power:num/den ...`.
    pub fn to_text(&self) -> String {
        let mut out = format!("# scheme {}\n", self.name);
        for offset in self.offsets() {
            for role in Role::ALL {
                if let Some(p) = self.table(role).get(&offset) {
                    out.push_str(&format!(
                        "{} {} {} {}\n",
                        offset.q1,
                        offset.q2,
                        role.as_str(),
                        p.to_wire()
                    ));
                }
            }
        }
        out
    }

    /// Parses [`SchemeSpec::to_text`] output. Lines starting with `#` are
    /// comments; a `# scheme NAME` comment sets the name.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut name = String::from("unnamed");
        let mut tables: [CoefficientTable; 3] = Default::default();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("scheme ") {
                    name = n.trim().to_string();
                }
                continue;
            }
            let mut fields = line.split_whitespace();
            let mut next = |what: &str| {
                fields.next().ok_or_else(|| Error::Parse {
                    line: line_no,
                    reason: format!("missing {what}"),
                })
            };
            let parse_q = |s: &str| {
                s.parse::<i32>().map_err(|_| Error::Parse {
                    line: line_no,
                    reason: format!("bad offset `{s}`"),
                })
            };
            let q1 = parse_q(next("q1")?)?;
            let q2 = parse_q(next("q2")?)?;
            let role: Role = next("role")?
                .parse()
                .map_err(|reason| Error::Parse { line: line_no, reason })?;
            let poly = LambdaPoly::from_wire_terms(fields, line_no)?;
            if poly.is_zero() {
                return Err(Error::Parse {
                    line: line_no,
                    reason: "zero coefficient".into(),
                });
            }
            let slot = &mut tables[role as usize];
            if slot.insert(StencilOffset::new(q1, q2), poly).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    reason: "duplicate entry".into(),
                });
            }
        }
        let [first_u, first_v, two_step] = tables;
        Ok(Self::from_tables(name, None, first_u, first_v, two_step))
    }
}

/// Assembles the scheme generated by the Lagrange basis of size `m`.
pub fn generate_scheme(m: usize) -> Result<SchemeSpec> {
    let basis = lagrange_basis(m)?;
    let two = rational(2, 1);
    let mut first_u = CoefficientTable::new();
    let mut first_v = CoefficientTable::new();
    let mut two_step = CoefficientTable::new();
    for (offset, function) in basis.functions() {
        let a = a_on_polynomial(&function);
        let b = b_on_polynomial(&function);
        if !a.is_zero() {
            two_step.insert(offset, a.scale(&two));
            first_u.insert(offset, a);
        }
        if !b.is_zero() {
            first_v.insert(offset, b);
        }
    }
    Ok(SchemeSpec::from_tables(
        format!("poisson-m{m}"),
        Some(m),
        first_u,
        first_v,
        two_step,
    ))
}

/// Replaces the velocity part of the first step by `τ v⁰` at the center.
pub fn conventional_first_step(spec: &SchemeSpec) -> SchemeSpec {
    let first_v = CoefficientTable::from([(StencilOffset::CENTER, LambdaPoly::one())]);
    SchemeSpec::from_tables(
        spec.name.clone(),
        spec.m,
        spec.first_u.clone(),
        first_v,
        spec.two_step.clone(),
    )
}

/// Nine-point scheme built on the isotropic finite-difference Laplacian,
/// with weights 2/3 on axis neighbors and 1/6 on diagonal neighbors.
pub fn isotropic_nine_point() -> SchemeSpec {
    let axis = LambdaPoly::term(2, rational(2, 3));
    let corner = LambdaPoly::term(2, rational(1, 6));
    let center = LambdaPoly::from_ratios(&[(0, 2, 1), (2, -10, 3)]);

    let mut two_step = CoefficientTable::new();
    two_step.insert(StencilOffset::CENTER, center);
    for (q1, q2) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
        two_step.insert(StencilOffset::new(q1, q2), axis.clone());
    }
    for (q1, q2) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        two_step.insert(StencilOffset::new(q1, q2), corner.clone());
    }
    let half = rational(1, 2);
    let first_u = two_step.iter().map(|(o, p)| (*o, p.scale(&half))).collect();
    let first_v = CoefficientTable::from([(StencilOffset::CENTER, LambdaPoly::one())]);
    SchemeSpec::from_tables("isotropic-9", None, first_u, first_v, two_step)
}

pub fn named_scheme(name: SchemeName) -> Result<SchemeSpec> {
    let mut spec = match name {
        SchemeName::P5 => generate_scheme(6)?,
        SchemeName::C5 => conventional_first_step(&generate_scheme(6)?),
        SchemeName::P9 => generate_scheme(11)?,
        SchemeName::C9 => conventional_first_step(&isotropic_nine_point()),
        SchemeName::P13 => generate_scheme(15)?,
        SchemeName::C13 => conventional_first_step(&generate_scheme(15)?),
    };
    spec.name = name.as_str().to_string();
    Ok(spec)
}

/// Looks up a scheme by its textual name.
pub fn scheme_by_name(name: &str) -> Result<SchemeSpec> {
    named_scheme(name.parse()?)
}

/// Checks whether every table is invariant under 90° rotations of the offsets.
pub fn is_fourfold_symmetric(spec: &SchemeSpec) -> bool {
    Role::ALL.into_iter().all(|role| {
        let table = spec.table(role);
        table
            .iter()
            .all(|(o, p)| table.get(&o.rotated()).is_some_and(|r| r == p))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn off(q1: i32, q2: i32) -> StencilOffset {
        StencilOffset::new(q1, q2)
    }

    #[test]
    fn five_point_generation() {
        let p5 = generate_scheme(6).unwrap();
        assert_eq!(p5.offsets().len(), 5);
        assert!(!p5.offsets().contains(&off(-1, -1)));
        assert_eq!(
            p5.coeff(Role::FirstU, off(0, 0)),
            LambdaPoly::from_ratios(&[(0, 1, 1), (2, -2, 1)])
        );
        for o in [off(1, 0), off(-1, 0), off(0, 1), off(0, -1)] {
            assert_eq!(p5.coeff(Role::FirstU, o), LambdaPoly::from_ratios(&[(2, 1, 2)]));
            assert_eq!(p5.coeff(Role::FirstV, o), LambdaPoly::from_ratios(&[(2, 1, 6)]));
            assert_eq!(p5.coeff(Role::TwoStep, o), LambdaPoly::from_ratios(&[(2, 1, 1)]));
        }
        assert_eq!(p5.radius, 1);
    }

    #[test]
    fn nine_point_generation() {
        let p9 = generate_scheme(11).unwrap();
        assert_eq!(p9.offsets().len(), 9);
        assert!(!p9.offsets().contains(&off(-2, 0)));
        assert!(!p9.offsets().contains(&off(0, -2)));
        assert_eq!(
            p9.coeff(Role::FirstV, off(1, 1)),
            LambdaPoly::from_ratios(&[(4, 1, 60)])
        );
        assert_eq!(
            p9.coeff(Role::FirstU, off(-1, 1)),
            LambdaPoly::from_ratios(&[(4, 1, 12)])
        );
    }

    #[test]
    fn thirteen_point_generation() {
        let p13 = generate_scheme(15).unwrap();
        assert_eq!(p13.offsets().len(), 13);
        assert_eq!(p13.radius, 2);
        // λ²(4 − 2λ²)/3 and λ²(λ² − 1)/12
        assert_eq!(
            p13.coeff(Role::TwoStep, off(1, 0)),
            LambdaPoly::from_ratios(&[(2, 4, 3), (4, -2, 3)])
        );
        assert_eq!(
            p13.coeff(Role::TwoStep, off(2, 0)),
            LambdaPoly::from_ratios(&[(2, -1, 12), (4, 1, 12)])
        );
    }

    #[test]
    fn conventional_variants() {
        let p5 = named_scheme(SchemeName::P5).unwrap();
        let c5 = named_scheme(SchemeName::C5).unwrap();
        assert_eq!(c5.first_u, p5.first_u);
        assert_eq!(c5.two_step, p5.two_step);
        assert_eq!(c5.first_v, CoefficientTable::from([(off(0, 0), LambdaPoly::one())]));
        let c13 = named_scheme(SchemeName::C13).unwrap();
        assert_eq!(c13.first_v.len(), 1);
        assert_eq!(c13.radius, 2);
    }

    #[test]
    fn isotropic_table() {
        let iso = isotropic_nine_point();
        assert_eq!(
            iso.coeff(Role::TwoStep, off(1, 1)),
            LambdaPoly::from_ratios(&[(2, 1, 6)])
        );
        assert_eq!(iso.table_sum(Role::TwoStep), LambdaPoly::constant(rational(2, 1)));
        assert_eq!(iso.table_sum(Role::FirstU), LambdaPoly::one());
        // Displayed conventional first step: u⁰ + τv⁰ + λ²/2 [2/3 δ(1,0) + 1/6 δ(1,1)]
        assert_eq!(
            iso.coeff(Role::FirstU, off(0, 0)),
            LambdaPoly::from_ratios(&[(0, 1, 1), (2, -5, 3)])
        );
        assert_eq!(
            iso.coeff(Role::FirstU, off(0, -1)),
            LambdaPoly::from_ratios(&[(2, 1, 3)])
        );
        assert_eq!(
            iso.coeff(Role::FirstU, off(1, -1)),
            LambdaPoly::from_ratios(&[(2, 1, 12)])
        );
    }

    #[test]
    fn names_parse() {
        assert_eq!("p13".parse::<SchemeName>().unwrap(), SchemeName::P13);
        assert!(matches!("P7".parse::<SchemeName>(), Err(Error::UnknownScheme(_))));
        assert!(scheme_by_name("X").is_err());
    }

    #[test]
    fn text_format() {
        let p5 = named_scheme(SchemeName::P5).unwrap();
        let text = p5.to_text();
        assert!(text.lines().any(|l| l == "1 0 first_v 2:1/6"));
        let c5 = named_scheme(SchemeName::C5).unwrap();
        assert!(c5.to_text().lines().any(|l| l == "0 0 first_v 0:1"));
        let p13 = named_scheme(SchemeName::P13).unwrap();
        assert!(p13.to_text().lines().any(|l| l == "2 0 two_step 2:-1/12 4:1/12"));
    }

    #[test]
    fn text_round_trip() {
        for name in SchemeName::ALL {
            let spec = named_scheme(name).unwrap();
            let back = SchemeSpec::from_text(&spec.to_text()).unwrap();
            assert_eq!(back.name, spec.name);
            assert_eq!(back.first_u, spec.first_u);
            assert_eq!(back.first_v, spec.first_v);
            assert_eq!(back.two_step, spec.two_step);
            assert_eq!(back.radius, spec.radius);
        }
    }

    #[test]
    fn text_parse_errors() {
        assert!(SchemeSpec::from_text("0 0 first_x 0:1").is_err());
        assert!(SchemeSpec::from_text("0 first_u 0:1").is_err());
        assert!(SchemeSpec::from_text("0 0 first_u 0:1\n0 0 first_u 2:1").is_err());
        assert!(SchemeSpec::from_text("0 0 first_u").is_err());
    }
}
