//! Verifier soundness: every map emitted by the builder passes at the
//! default profile on a 10^4 grid, and report measurements stay finite and
//! nonnegative.

use automorph::{build_automorphism, verify, ToleranceProfile};
use std::f64::consts::{FRAC_PI_4, PI};

#[test]
fn built_maps_pass_at_grid_ten_thousand() {
    let profile = ToleranceProfile::default();
    let targets = [
        -100.0,
        -7.0,
        -1.0,
        -0.25,
        0.0,
        0.25,
        4.0 / PI,
        1.0,
        FRAC_PI_4 + 0.5,
        4.0,
        100.0,
        0.3,
        13.1,
    ];
    for &a in &targets {
        let e = build_automorphism(a, 1e-12).unwrap();
        let report = verify(&e, a, 10_000, &profile).unwrap();
        assert!(report.pass, "a = {a}:\n{}", report.to_json());
        for check in &report.checks {
            assert!(
                check.measured.is_finite() && check.measured >= 0.0,
                "a = {a}, {}: measured {}",
                check.name,
                check.measured
            );
        }
    }
}
