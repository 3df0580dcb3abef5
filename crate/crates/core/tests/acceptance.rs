//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use poisson_stencil::benchmark::{run_table, BenchTable};
use poisson_stencil::interpolation::{lagrange_basis, MonomialExponents, StencilOffset};
use poisson_stencil::poly::{rational, LambdaPoly, Rational};
use poisson_stencil::quadrature::{a_on_monomial, b_on_monomial, quad_oracle_a, quad_oracle_b};
use poisson_stencil::scheme::{generate_scheme, named_scheme, Role, SchemeName, SchemeSpec};
use poisson_stencil::simulator::{run, run_with_observer, Boundary, Grid2D, SimConfig};
use poisson_stencil::stability::lambda_max;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: ok_detail,
        }
    } else {
        Outcome {
            pass: false,
            detail: failures.join("; "),
        }
    }
}

fn off(q1: i32, q2: i32) -> StencilOffset {
    StencilOffset::new(q1, q2)
}

fn lp(terms: &[(u32, i64, i64)]) -> LambdaPoly {
    LambdaPoly::from_ratios(terms)
}

/// Expands the displayed compact form `base·u_ij + scale·Σ_k w_k δ(q_k)` into a
/// per-offset table, where δ(q) sums the four 90° rotations of `q` minus four
/// times the center.
fn expand_rotation_form(
    base: LambdaPoly,
    scale: LambdaPoly,
    groups: &[((i32, i32), LambdaPoly)],
) -> BTreeMap<StencilOffset, LambdaPoly> {
    let mut table: BTreeMap<StencilOffset, LambdaPoly> = BTreeMap::new();
    let mut add = |o: StencilOffset, p: LambdaPoly| {
        *table.entry(o).or_default() += &p;
    };
    add(StencilOffset::CENTER, base);
    for ((q1, q2), w) in groups {
        let c = &scale * w;
        let mut o = off(*q1, *q2);
        for _ in 0..4 {
            add(o, c.clone());
            o = o.rotated();
        }
        add(StencilOffset::CENTER, c.scale(&rational(-4, 1)));
    }
    table.retain(|_, p| !p.is_zero());
    table
}

fn compare_table(
    failures: &mut Vec<String>,
    label: &str,
    got: &BTreeMap<StencilOffset, LambdaPoly>,
    want: &BTreeMap<StencilOffset, LambdaPoly>,
) {
    if got != want {
        for o in got.keys().chain(want.keys()) {
            let (g, w) = (got.get(o), want.get(o));
            if g != w {
                failures.push(format!(
                    "{label} {o}: got {} want {}",
                    g.map(|p| p.pretty()).unwrap_or("-".into()),
                    w.map(|p| p.pretty()).unwrap_or("-".into())
                ));
                break;
            }
        }
    }
}

fn criterion_coefficients() -> Outcome {
    let mut failures = Vec::new();
    let p5 = named_scheme(SchemeName::P5).unwrap();
    let p9 = named_scheme(SchemeName::P9).unwrap();
    let p13 = named_scheme(SchemeName::P13).unwrap();

    // Per-function A and B/τ value lists of the five- and nine-point bases.
    let checks: Vec<(&SchemeSpec, Role, (i32, i32), LambdaPoly)> = vec![
        (&p5, Role::FirstU, (0, 0), lp(&[(0, 1, 1), (2, -2, 1)])),
        (&p5, Role::FirstU, (-1, -1), LambdaPoly::zero()),
        (&p5, Role::FirstU, (1, 0), lp(&[(2, 1, 2)])),
        (&p5, Role::FirstU, (-1, 0), lp(&[(2, 1, 2)])),
        (&p5, Role::FirstU, (0, 1), lp(&[(2, 1, 2)])),
        (&p5, Role::FirstU, (0, -1), lp(&[(2, 1, 2)])),
        (&p5, Role::FirstV, (0, 0), lp(&[(0, 1, 1), (2, -2, 3)])),
        (&p5, Role::FirstV, (-1, -1), LambdaPoly::zero()),
        (&p5, Role::FirstV, (1, 0), lp(&[(2, 1, 6)])),
        (&p5, Role::FirstV, (0, -1), lp(&[(2, 1, 6)])),
        (&p9, Role::FirstU, (0, 0), lp(&[(0, 1, 1), (2, -2, 1), (4, 1, 3)])),
        (&p9, Role::FirstU, (1, 1), lp(&[(4, 1, 12)])),
        (&p9, Role::FirstU, (-1, 1), lp(&[(4, 1, 12)])),
        (&p9, Role::FirstU, (1, 0), lp(&[(2, 1, 2), (4, -1, 6)])),
        (&p9, Role::FirstU, (0, -1), lp(&[(2, 1, 2), (4, -1, 6)])),
        (&p9, Role::FirstV, (0, 0), lp(&[(0, 1, 1), (2, -2, 3), (4, 1, 15)])),
        (&p9, Role::FirstV, (-1, -1), lp(&[(4, 1, 60)])),
        (&p9, Role::FirstV, (-1, 0), lp(&[(2, 1, 6), (4, -1, 30)])),
        (&p9, Role::FirstV, (0, 1), lp(&[(2, 1, 6), (4, -1, 30)])),
    ];
    for (spec, role, (q1, q2), want) in &checks {
        let got = spec.coeff(*role, off(*q1, *q2));
        if &got != want {
            failures.push(format!(
                "{} {} ({q1},{q2}): got {} want {}",
                spec.name,
                role.as_str(),
                got.pretty(),
                want.pretty()
            ));
        }
    }

    let l2 = lp(&[(2, 1, 1)]);
    let half_l2 = lp(&[(2, 1, 2)]);
    let sixth_l2 = lp(&[(2, 1, 6)]);
    let one = LambdaPoly::one();
    let two = lp(&[(0, 2, 1)]);

    // Five-point: u¹ = u⁰ + τv⁰ + λ²/2 δ⁰(1,0) + τλ²/6 ε⁰(1,0); u^{k+1} = 2uᵏ − u^{k−1} + λ² δᵏ(1,0).
    compare_table(
        &mut failures,
        "P5 first_u",
        &p5.first_u,
        &expand_rotation_form(one.clone(), half_l2.clone(), &[((1, 0), one.clone())]),
    );
    compare_table(
        &mut failures,
        "P5 first_v",
        &p5.first_v,
        &expand_rotation_form(one.clone(), sixth_l2.clone(), &[((1, 0), one.clone())]),
    );
    compare_table(
        &mut failures,
        "P5 two_step",
        &p5.two_step,
        &expand_rotation_form(two.clone(), l2.clone(), &[((1, 0), one.clone())]),
    );

    // Nine-point bracket forms.
    let u9 = [((1, 0), lp(&[(0, 1, 1), (2, -1, 3)])), ((1, 1), lp(&[(2, 1, 6)]))];
    let v9 = [((1, 0), lp(&[(0, 1, 1), (2, -1, 5)])), ((1, 1), lp(&[(2, 1, 10)]))];
    compare_table(
        &mut failures,
        "P9 first_u",
        &p9.first_u,
        &expand_rotation_form(one.clone(), half_l2.clone(), &u9),
    );
    compare_table(
        &mut failures,
        "P9 first_v",
        &p9.first_v,
        &expand_rotation_form(one.clone(), sixth_l2.clone(), &v9),
    );
    compare_table(
        &mut failures,
        "P9 two_step",
        &p9.two_step,
        &expand_rotation_form(two.clone(), l2.clone(), &u9),
    );

    // Thirteen-point bracket forms.
    let u13 = [
        ((1, 0), lp(&[(0, 4, 3), (2, -2, 3)])),
        ((1, 1), lp(&[(2, 1, 6)])),
        ((2, 0), lp(&[(0, -1, 12), (2, 1, 12)])),
    ];
    let v13 = [
        ((1, 0), lp(&[(0, 4, 3), (2, -2, 5)])),
        ((1, 1), lp(&[(2, 1, 10)])),
        ((2, 0), lp(&[(0, -1, 12), (2, 1, 20)])),
    ];
    compare_table(
        &mut failures,
        "P13 first_u",
        &p13.first_u,
        &expand_rotation_form(one.clone(), half_l2, &u13),
    );
    compare_table(
        &mut failures,
        "P13 first_v",
        &p13.first_v,
        &expand_rotation_form(one, sixth_l2, &v13),
    );
    compare_table(
        &mut failures,
        "P13 two_step",
        &p13.two_step,
        &expand_rotation_form(two, l2, &u13),
    );

    outcome(
        failures,
        format!("{} per-function values and 9 full tables exact", checks.len()),
    )
}

fn criterion_pruning() -> Outcome {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for (m, want) in [(6, 5), (11, 9), (15, 13)] {
        let got = generate_scheme(m).unwrap().offsets().len();
        counts.push(format!("m={m}:{got}"));
        if got != want {
            failures.push(format!("m={m} retained {got}, want {want}"));
        }
    }
    outcome(failures, counts.join(" "))
}

fn check_table(table: BenchTable, poisson_tol: f64, conventional_tol: f64, budget: Duration) -> Outcome {
    let start = Instant::now();
    let rows = run_table(table).unwrap();
    let elapsed = start.elapsed();
    let (p, c) = table.schemes();
    let mut failures = Vec::new();
    let mut worst = (0.0f64, 0.0f64);
    for r in &rows {
        let (dp, dc) = (r.poisson_deviation(), r.conventional_deviation());
        worst = (worst.0.max(dp), worst.1.max(dc));
        let tag = format!("n={} n_t={} λ={}", r.reference.n, r.reference.n_t, r.reference.lambda);
        if dp.is_nan() || dp > poisson_tol {
            failures.push(format!(
                "E_{p} {tag}: {:.4e} vs {:.4e} ({:.2}%)",
                r.poisson.error,
                r.reference.poisson,
                100.0 * dp
            ));
        }
        if dc.is_nan() || dc > conventional_tol {
            failures.push(format!(
                "E_{c} {tag}: {:.4e} vs {:.4e} ({:.2}%)",
                r.conventional.error,
                r.reference.conventional,
                100.0 * dc
            ));
        }
    }
    if elapsed > budget {
        failures.push(format!("runtime {elapsed:?} exceeds {budget:?}"));
    }
    outcome(
        failures,
        format!(
            "{} rows, worst E_{p} dev {:.3}%, worst E_{c} dev {:.4}%, {:.2}s",
            rows.len(),
            100.0 * worst.0,
            100.0 * worst.1,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_stability() -> Outcome {
    let start = Instant::now();
    let p9_closed = ((3.0 - 3f64.sqrt()) / 2.0).sqrt();
    let cases = [
        (SchemeName::P5, 0.5f64.sqrt(), 1e-4),
        (SchemeName::C9, 0.75f64.sqrt(), 1e-4),
        (SchemeName::P13, 0.5f64.sqrt(), 1e-4),
        (SchemeName::P9, 0.79623, 1e-3),
    ];
    let mut failures = Vec::new();
    let mut found = Vec::new();
    for (name, want, tol) in cases {
        let spec = named_scheme(name).unwrap();
        let got = lambda_max(&spec, 1e-7).unwrap().lambda;
        found.push(format!("{name}={got:.6}"));
        if (got - want).abs() > tol {
            failures.push(format!("{name}: {got:.6} vs {want:.6}"));
        }
        if name == SchemeName::P9 && (got - p9_closed).abs() > 1e-4 {
            failures.push(format!("P9 {got:.6} vs closed form {p9_closed:.6}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        failures.push(format!("runtime {elapsed:?}"));
    }
    outcome(
        failures,
        format!("{} in {:.2}s", found.join(" "), elapsed.as_secs_f64()),
    )
}

fn criterion_oracle() -> Outcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut count = 0;
    for degree in (0..=8).step_by(2) {
        for a1 in (0..=degree).step_by(2) {
            let mu = MonomialExponents::new(a1, degree - a1);
            for lambda in [0.25, 0.5, 0.707, 0.796] {
                let a = a_on_monomial(mu).eval(lambda);
                let b = b_on_monomial(mu).eval(lambda);
                let da = (a - quad_oracle_a(mu, lambda)).abs();
                let db = (b - quad_oracle_b(mu, lambda)).abs();
                worst = worst.max(da).max(db);
                count += 2;
                if da > 1e-9 || db > 1e-9 {
                    failures.push(format!("{mu} λ={lambda}: |ΔA|={da:.1e} |ΔB|={db:.1e}"));
                }
            }
        }
    }
    outcome(failures, format!("{count} comparisons, worst {worst:.1e}"))
}

fn symmetric_config(spec: SchemeSpec, bc: Boundary) -> SimConfig {
    let mut cfg = SimConfig::standing_wave(spec, 16, 12, 0.6, bc);
    cfg.initial_u = std::sync::Arc::new(|x, y| (PI * x).sin() * (PI * y).sin() * (1.0 + x * y));
    cfg.initial_v = std::sync::Arc::new(|x, y| (2.0 * PI * x).sin() * (2.0 * PI * y).sin() * (x + y));
    cfg
}

fn criterion_properties() -> Outcome {
    let mut failures = Vec::new();

    for m in [6, 11, 15] {
        let basis = lagrange_basis(m).unwrap();
        let mut unity = poisson_stencil::Polynomial::zero();
        for (s, (_, f)) in basis.functions().enumerate() {
            for (r, node) in basis.nodes.iter().enumerate() {
                let v = f.eval_at(node.q1 as i64, node.q2 as i64);
                let want = if r == s { rational(1, 1) } else { rational(0, 1) };
                if v != want {
                    failures.push(format!("Kronecker m={m} s={s} r={r}"));
                }
            }
            unity = &unity + &f;
        }
        if unity != poisson_stencil::Polynomial::monomial(MonomialExponents::new(0, 0)) {
            failures.push(format!("partition of unity m={m}"));
        }
    }

    for name in SchemeName::ALL {
        let spec = named_scheme(name).unwrap();
        for (role, want) in [(Role::FirstU, 1), (Role::FirstV, 1), (Role::TwoStep, 2)] {
            if spec.table_sum(role) != LambdaPoly::constant(Rational::from_integer(want.into())) {
                failures.push(format!("{name} Σ{} ≠ {want}", role.as_str()));
            }
        }
    }

    for name in SchemeName::ALL {
        let spec = named_scheme(name).unwrap();
        let bc = if spec.radius > 1 {
            Boundary::Periodic
        } else {
            Boundary::Dirichlet
        };

        let mut zero = SimConfig::standing_wave(spec.clone(), 12, 8, 0.7, bc).with_zero_data();
        zero.exact = std::sync::Arc::new(|_, _, _| 1.0);
        let mut max_zero = 0.0f64;
        run_with_observer(&zero, |_, g| max_zero = max_zero.max(g.max_abs())).unwrap();
        if max_zero != 0.0 {
            failures.push(format!("{name} zero preservation: {max_zero:e}"));
        }

        let mut constant = SimConfig::standing_wave(spec.clone(), 12, 8, 0.7, Boundary::Periodic);
        constant.initial_u = std::sync::Arc::new(|_, _| 1.0);
        constant.initial_v = std::sync::Arc::new(|_, _| 0.0);
        constant.exact = std::sync::Arc::new(|_, _, _| 1.0);
        let report = run(&constant).unwrap();
        if report.error > 1e-13 {
            failures.push(format!("{name} constant preservation: {:e}", report.error));
        }

        let mut asym = 0.0f64;
        run_with_observer(&symmetric_config(spec, bc), |_, g: &Grid2D| {
            for i in 0..=g.n() {
                for j in 0..=g.n() {
                    asym = asym.max((g.get(i, j) - g.get(j, i)).abs());
                }
            }
        })
        .unwrap();
        if asym > 1e-12 {
            failures.push(format!("{name} x1↔x2 symmetry: {asym:e}"));
        }
    }

    let p5 = named_scheme(SchemeName::P5).unwrap();
    let errors: Vec<f64> = [10, 20, 40]
        .iter()
        .map(|&n| {
            run(&SimConfig::standing_wave(p5.clone(), n, n, 0.707, Boundary::Dirichlet))
                .unwrap()
                .error
        })
        .collect();
    let factors: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    for f in &factors {
        if f.is_nan() || *f < 8.0 {
            failures.push(format!("P5 convergence factor {f:.2} < 8"));
        }
    }
    outcome(
        failures,
        format!(
            "bases, sums, preservation, symmetry ok; P5 factors {:.1}, {:.1}",
            factors[0], factors[1]
        ),
    )
}

type Check = Box<dyn Fn() -> Outcome>;

fn main() {
    let criteria: Vec<(&str, Check)> = vec![
        (
            "1 coefficient exactness",
            Box::new(|| {
                let start = Instant::now();
                let mut o = criterion_coefficients();
                let t = start.elapsed();
                if t > Duration::from_secs(1) {
                    o.pass = false;
                    o.detail.push_str(&format!("; runtime {t:?}"));
                }
                o
            }),
        ),
        ("2 pruning", Box::new(criterion_pruning)),
        (
            "3 table 1 reproduction",
            Box::new(|| check_table(BenchTable::FivePoint, 0.01, 0.01, Duration::from_secs(5))),
        ),
        (
            "4 table 2 reproduction",
            Box::new(|| check_table(BenchTable::NinePoint, 0.01, 0.01, Duration::from_secs(5))),
        ),
        (
            "5 table 3 reproduction",
            Box::new(|| check_table(BenchTable::ThirteenPoint, 0.05, 0.01, Duration::from_secs(5))),
        ),
        ("6 stability limits", Box::new(criterion_stability)),
        ("7 oracle equivalence", Box::new(criterion_oracle)),
        ("8 property suite", Box::new(criterion_properties)),
    ];

    let mut failed = 0;
    for (name, check) in &criteria {
        let o = check();
        println!(
            "[{}] criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
