//! Series engine properties: agreement of truncated expansions with the
//! closed forms inside 0.8 x radius, the termwise b-scaling of coefficients,
//! and the radius guarantee for solver-produced tan families.

use automorph::{
    default_order, eval_series, radius, solve_b_arctan, solve_b_tan, tan_series_coefficients,
    taylor, MapExpr,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::{FRAC_PI_4, PI};

/// 100 sample points inside 0.8 x radius, capped to the unit interval.
fn agreement_points(rng: &mut StdRng, r: f64) -> Vec<f64> {
    let reach = (0.8 * r).min(1.0);
    (0..100).map(|_| rng.random_range(-reach..reach)).collect()
}

fn assert_agreement(family: &MapExpr, rng: &mut StdRng) {
    let order = default_order(family).unwrap();
    let expansion = taylor(family, order).unwrap();
    assert!(expansion.coeffs.iter().all(|c| c.is_finite()), "{family}");
    for x in agreement_points(rng, expansion.radius) {
        let truncated = eval_series(&expansion, x);
        let closed = family.eval(x).unwrap();
        assert!(
            (truncated - closed).abs() <= 1e-10,
            "{family} at x = {x}: series {truncated}, closed {closed}"
        );
    }
}

#[test]
fn truncated_series_agree_with_closed_forms() {
    let mut rng = StdRng::seed_from_u64(505);
    let families = [
        MapExpr::arctan_fam(4.0 / PI, 1.0).unwrap(),
        MapExpr::arctan_fam(2.0, solve_b_arctan(2.0, 1e-12).unwrap().b_star).unwrap(),
        MapExpr::arctan_fam(4.0, solve_b_arctan(4.0, 1e-12).unwrap().b_star).unwrap(),
        MapExpr::tan_fam(0.25, solve_b_tan(0.25, 1e-12).unwrap().b_star).unwrap(),
        MapExpr::tan_fam(FRAC_PI_4, FRAC_PI_4).unwrap(),
        MapExpr::tan_fam(0.9, solve_b_tan(0.9, 1e-12).unwrap().b_star).unwrap(),
        // standalone tan member with b near pi/2, radius barely above 1
        MapExpr::tan_fam(0.5, 1.5).unwrap(),
        MapExpr::SinHalfPi,
        MapExpr::erf_fam(0.5).unwrap(),
        MapExpr::erf_fam(1.0).unwrap(),
        MapExpr::erf_fam(3.0).unwrap(),
        MapExpr::Identity,
        MapExpr::Cubic,
    ];
    for family in &families {
        assert_agreement(family, &mut rng);
    }
}

#[test]
fn arctan_series_deep_inside_its_small_radius() {
    // for a = 4 the radius at 0 is 1/b* < 1; at half the radius the
    // truncation at order 400 is far below the closed form's last digit
    let b = solve_b_arctan(4.0, 1e-12).unwrap().b_star;
    let family = MapExpr::arctan_fam(4.0, b).unwrap();
    let s = taylor(&family, 400).unwrap();
    assert!(s.radius < 1.0);
    let x = 0.5 / b;
    let gap = (eval_series(&s, x) - family.eval(x).unwrap()).abs();
    assert!(gap <= 1e-10, "gap = {gap}");
}

#[test]
fn tan_coefficients_through_x7_match_hand_rationals() {
    // hand-derived: tan(u) = u + u^3/3 + 2 u^5/15 + 17 u^7/315 + ...
    let hand: [f64; 8] = [0.0, 1.0, 0.0, 1.0 / 3.0, 0.0, 2.0 / 15.0, 0.0, 17.0 / 315.0];
    let t = tan_series_coefficients(7);
    for j in 0..=7 {
        let ulps = 2.0 * f64::EPSILON * hand[j].abs();
        assert!(
            (t[j] - hand[j]).abs() <= ulps,
            "t[{j}] = {} vs {}",
            t[j],
            hand[j]
        );
    }

    // scaled family: c_{2k+1} = a * t_{2k+1} * b^{2k}, as rationals times powers
    let (a, b) = (0.25, 1.3932490753255886);
    let s = taylor(&MapExpr::tan_fam(a, b).unwrap(), 7).unwrap();
    let b2 = b * b;
    let mut scale = a;
    for k in 0..=3usize {
        let j = 2 * k + 1;
        let expected = scale * hand[j];
        assert!(
            (s.coeffs[j] - expected).abs() <= 2.0 * f64::EPSILON * expected.abs(),
            "c[{j}] = {} vs {expected}",
            s.coeffs[j]
        );
        assert_eq!(s.coeffs[j - 1], 0.0);
        scale *= b2;
    }
}

#[test]
fn termwise_scaling_against_an_unscaled_expansion() {
    // coefficient j of (a/b) tan(b x) is the base tan coefficient times b^j,
    // times the a/b prefactor
    let (a, b) = (0.37, 0.8);
    let scaled = taylor(&MapExpr::tan_fam(a, b).unwrap(), 21).unwrap();
    let base = tan_series_coefficients(21);
    let prefactor = a / b;
    let mut bj = 1.0;
    for (j, (&base_j, &got)) in base.iter().zip(&scaled.coeffs).enumerate() {
        let expected = prefactor * base_j * bj;
        assert!(
            (got - expected).abs() <= 4e-15 * expected.abs().max(1e-300),
            "j = {j}: {got} vs {expected}"
        );
        bj *= b;
    }
}

#[test]
fn solver_produced_tan_families_have_radius_above_one() {
    let mut rng = StdRng::seed_from_u64(606);
    for _ in 0..100 {
        let a = rng.random_range(1e-4..1.0 - 1e-4);
        let b = solve_b_tan(a, 1e-12).unwrap().b_star;
        let family = MapExpr::tan_fam(a, b).unwrap();
        let r = radius(&family).unwrap();
        assert!(r > 1.0, "a = {a}: radius {r}");
        assert_eq!(r, PI / (2.0 * b));
    }
}
