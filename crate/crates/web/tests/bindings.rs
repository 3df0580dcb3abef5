use poisson_stencil_web::{run_simulation, stability_limit, symbol_values, table_text};

#[test]
fn table_text_lists_exact_coefficients() {
    let text = table_text("P5").unwrap();
    assert!(text.starts_with("# scheme P5\n"));
    assert!(text.contains("1 0 first_v 2:1/6\n"));
    assert!(table_text("nope").unwrap_err().contains("unknown scheme"));
}

#[test]
fn symbol_grid_layout() {
    let n = 8;
    let values = symbol_values("P5", 0.5f64.sqrt(), n).unwrap();
    assert_eq!(values.len(), n * n);
    assert!((values[0] - 1.0).abs() < 1e-14);
    // θ = (π, π) sits at row n/2, column n/2.
    assert!((values[n / 2 * n + n / 2] + 1.0).abs() < 1e-12);
    assert!(symbol_values("P5", 0.5, 0).is_err());
}

#[test]
fn stability_limits() {
    assert!((stability_limit("P5").unwrap() - 0.5f64.sqrt()).abs() < 1e-5);
    assert!((stability_limit("C9").unwrap() - 0.75f64.sqrt()).abs() < 1e-5);
}

#[test]
fn simulation_returns_last_level() {
    let sim = run_simulation("C13", 10, 10, 0.707, true).unwrap();
    assert_eq!(sim.field().len(), 121);
    assert_eq!(sim.n(), 10);
    assert!((sim.error() - 6.8938e-2).abs() / 6.8938e-2 < 0.01);
    assert!(!sim.unstable());
    assert!(run_simulation("P13", 10, 10, 0.707, false)
        .unwrap_err()
        .contains("radius"));
}
