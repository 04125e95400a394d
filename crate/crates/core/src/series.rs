//! Truncated Maclaurin expansions of the primitive families.
//!
//! Coefficients are produced for the scaled family directly: the base series
//! in u is scaled termwise by b^j under the substitution u = b x, and the
//! family prefactor multiplies every term. Expansions are about 0 only; the
//! arctan family with b > 1 is analytic on all of (-1, 1) even though its
//! radius at 0 is 1/b < 1, and re-expansion at other centres is out of scope.
//! The agreement contract with the closed forms holds inside 0.8 x radius.

use std::f64::consts::{FRAC_2_SQRT_PI, FRAC_PI_2, PI};

use serde::Serialize;
use thiserror::Error;

use crate::expr::{erf, MapExpr};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("series expansion needs a primitive family node, got {0}")]
    CompositeNode(String),
    #[error("truncation order must be at least 1")]
    ZeroOrder,
}

/// Maclaurin coefficients c_0..c_N of a primitive family about 0.
///
/// Odd families carry exact zeros in every even slot.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesExpansion {
    /// Rendering of the expanded family node.
    pub family: String,
    /// Truncation order N; `coeffs` has N + 1 entries.
    pub order: usize,
    /// Radius of convergence of the full series about 0;
    /// `f64::INFINITY` for entire families.
    pub radius: f64,
    pub coeffs: Vec<f64>,
}

/// Coefficients t_0..t_order of tan(u) about 0, generated from t' = 1 + t^2:
/// `(m+1) t_{m+1} = [m = 0] + sum_{i+j=m} t_i t_j`.
///
/// All nonzero terms are positive, so the convolution accumulates without
/// cancellation and stays accurate to the last few ulps at any practical
/// order. Through x^7 the values are the rationals 1, 1/3, 2/15, 17/315.
pub fn tan_series_coefficients(order: usize) -> Vec<f64> {
    let mut t = vec![0.0; order + 1];
    for m in 0..order {
        let mut acc = if m == 0 { 1.0 } else { 0.0 };
        for i in 0..=m {
            acc += t[i] * t[m - i];
        }
        t[m + 1] = acc / (m + 1) as f64;
    }
    t
}

/// Maclaurin coefficients of a primitive family node, truncated at `order`.
pub fn taylor(family: &MapExpr, order: usize) -> Result<SeriesExpansion, SeriesError> {
    if order == 0 {
        return Err(SeriesError::ZeroOrder);
    }
    let mut coeffs = vec![0.0; order + 1];
    match family {
        MapExpr::Identity => {
            coeffs[1] = 1.0;
        }
        MapExpr::Cubic => {
            if order >= 3 {
                coeffs[3] = 1.0;
            }
        }
        MapExpr::SinHalfPi => {
            // sin(s x) with s = pi/2: c_{2k+1} = (-1)^k s^(2k+1) / (2k+1)!
            let s2 = FRAC_PI_2 * FRAC_PI_2;
            let mut c = FRAC_PI_2;
            let mut j = 1;
            while j <= order {
                coeffs[j] = c;
                c *= -s2 / (((j + 1) * (j + 2)) as f64);
                j += 2;
            }
        }
        MapExpr::ArctanFam { a, b } => {
            // c_{2k+1} = a (-1)^k b^(2k) / (2k+1)
            let b2 = b * b;
            let mut scale = *a;
            let mut j = 1;
            while j <= order {
                coeffs[j] = scale / j as f64;
                scale *= -b2;
                j += 2;
            }
        }
        MapExpr::TanFam { a, b } => {
            // c_{2k+1} = a t_{2k+1} b^(2k)
            let t = tan_series_coefficients(order);
            let b2 = b * b;
            let mut scale = *a;
            let mut j = 1;
            while j <= order {
                coeffs[j] = scale * t[j];
                scale *= b2;
                j += 2;
            }
        }
        MapExpr::ErfFam { k } => {
            // c_{2m+1} = (2/sqrt(pi)) (-1)^m k^(2m+1) / (m! (2m+1) erf(k))
            let prefactor = FRAC_2_SQRT_PI / erf(*k);
            let k2 = k * k;
            let mut power = *k; // (-1)^m k^(2m+1) / m!
            let mut m = 0.0;
            let mut j = 1;
            while j <= order {
                coeffs[j] = prefactor * power / j as f64;
                m += 1.0;
                power *= -k2 / m;
                j += 2;
            }
        }
        composite => return Err(SeriesError::CompositeNode(composite.to_string())),
    }
    Ok(SeriesExpansion {
        family: family.to_string(),
        order,
        radius: radius(family)?,
        coeffs,
    })
}

/// Horner evaluation of the truncated polynomial. Always evaluates; the
/// accuracy contract against the closed form only holds inside 0.8 x radius.
pub fn eval_series(s: &SeriesExpansion, x: f64) -> f64 {
    s.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Radius of convergence of the family's full Maclaurin series about 0.
///
/// sin, erf, the identity and the cubic are entire; the arctan family has
/// poles at ±i/b giving radius 1/b; the tan family inherits pi/(2b) from the
/// tangent poles. For tan parameters produced by the endpoint solver, b <
/// pi/2 makes the radius exceed 1.
pub fn radius(family: &MapExpr) -> Result<f64, SeriesError> {
    match family {
        MapExpr::Identity | MapExpr::Cubic | MapExpr::SinHalfPi | MapExpr::ErfFam { .. } => {
            Ok(f64::INFINITY)
        }
        MapExpr::ArctanFam { b, .. } => Ok(1.0 / b),
        MapExpr::TanFam { b, .. } => Ok(PI / (2.0 * b)),
        composite => Err(SeriesError::CompositeNode(composite.to_string())),
    }
}

/// Documented per-family truncation order: large enough that the truncated
/// series meets the 1e-10 agreement contract with the closed form everywhere
/// inside 0.8 x radius (intersected with the unit interval).
pub fn default_order(family: &MapExpr) -> Result<usize, SeriesError> {
    match family {
        MapExpr::Identity => Ok(1),
        MapExpr::Cubic => Ok(3),
        MapExpr::SinHalfPi => Ok(40),
        MapExpr::ArctanFam { .. } => Ok(400),
        MapExpr::TanFam { .. } => Ok(130),
        MapExpr::ErfFam { .. } => Ok(80),
        composite => Err(SeriesError::CompositeNode(composite.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn rejects_composites_and_zero_order() {
        let composite = MapExpr::compose(MapExpr::SinHalfPi, MapExpr::Cubic);
        assert!(matches!(
            taylor(&composite, 5),
            Err(SeriesError::CompositeNode(_))
        ));
        assert!(matches!(
            radius(&MapExpr::negate(MapExpr::Identity)),
            Err(SeriesError::CompositeNode(_))
        ));
        assert!(matches!(
            taylor(&MapExpr::SinHalfPi, 0),
            Err(SeriesError::ZeroOrder)
        ));
    }

    #[test]
    fn arctan_coefficients_match_the_scaled_series() {
        let a = 4.0 / PI;
        let s = taylor(&MapExpr::arctan_fam(a, 1.0).unwrap(), 5).unwrap();
        assert_eq!(s.coeffs[0], 0.0);
        assert_eq!(s.coeffs[1], a);
        assert_eq!(s.coeffs[2], 0.0);
        assert_eq!(s.coeffs[3], -a / 3.0);
        assert_eq!(s.coeffs[4], 0.0);
        assert_eq!(s.coeffs[5], a / 5.0);
        assert_eq!(s.radius, 1.0);
    }

    #[test]
    fn sin_coefficients_match_the_sine_series() {
        let s = taylor(&MapExpr::SinHalfPi, 3).unwrap();
        assert_eq!(s.coeffs[1], FRAC_PI_2);
        let c3 = -(FRAC_PI_2 * FRAC_PI_2 * FRAC_PI_2) / 6.0;
        assert!((s.coeffs[3] - c3).abs() <= 1e-16 * c3.abs());
        assert_eq!(s.radius, f64::INFINITY);
    }

    #[test]
    fn tan_recurrence_reproduces_hand_rationals() {
        let t = tan_series_coefficients(9);
        assert_eq!(t[1], 1.0);
        assert_eq!(t[3], 1.0 / 3.0);
        assert_eq!(t[5], 2.0 / 15.0);
        // the convolution for t_7 rounds once more than the literal quotient
        assert!((t[7] - 17.0 / 315.0).abs() <= 2.0 * f64::EPSILON * t[7]);
        assert_eq!(t[9], 62.0 / 2835.0);
        for even in [0, 2, 4, 6, 8] {
            assert_eq!(t[even], 0.0);
        }
    }

    #[test]
    fn tan_family_coefficients_scale_termwise() {
        let (a, b) = (0.25, 1.2);
        let s = taylor(&MapExpr::tan_fam(a, b).unwrap(), 7).unwrap();
        let t = tan_series_coefficients(7);
        let b2 = b * b;
        let mut scale = a;
        for j in (1..=7).step_by(2) {
            assert_eq!(s.coeffs[j], scale * t[j], "j = {j}");
            scale *= b2;
        }
    }

    #[test]
    fn odd_families_have_exactly_zero_even_coefficients() {
        let families = [
            MapExpr::SinHalfPi,
            MapExpr::arctan_fam(4.0, 5.573).unwrap(),
            MapExpr::tan_fam(0.25, 1.3932).unwrap(),
            MapExpr::erf_fam(2.0).unwrap(),
        ];
        for f in &families {
            let s = taylor(f, 21).unwrap();
            for j in (0..=21).step_by(2) {
                assert_eq!(s.coeffs[j], 0.0, "{f}, j = {j}");
            }
        }
    }

    #[test]
    fn radius_values_per_family() {
        let tan = MapExpr::tan_fam(FRAC_PI_4, FRAC_PI_4).unwrap();
        assert_eq!(radius(&tan).unwrap(), 2.0);

        let arctan = MapExpr::arctan_fam(4.0, 5.573).unwrap();
        assert!((radius(&arctan).unwrap() - 1.0 / 5.573).abs() < 1e-16);
        assert!(radius(&arctan).unwrap() < 1.0);

        assert_eq!(radius(&MapExpr::SinHalfPi).unwrap(), f64::INFINITY);
        assert_eq!(
            radius(&MapExpr::erf_fam(1.0).unwrap()).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn horner_at_zero_returns_c0() {
        let s = taylor(&MapExpr::SinHalfPi, 11).unwrap();
        assert_eq!(eval_series(&s, 0.0), 0.0);
    }

    #[test]
    fn sin_series_hits_the_closed_form() {
        let s = taylor(&MapExpr::SinHalfPi, 41).unwrap();
        let got = eval_series(&s, 1.0 / 3.0);
        assert!((got - 0.5).abs() < 1e-14, "got {got}");
    }

    #[test]
    fn default_orders_cover_each_family() {
        assert_eq!(default_order(&MapExpr::SinHalfPi).unwrap(), 40);
        assert_eq!(
            default_order(&MapExpr::arctan_fam(4.0, 5.573).unwrap()).unwrap(),
            400
        );
        assert_eq!(
            default_order(&MapExpr::tan_fam(0.25, 1.3932).unwrap()).unwrap(),
            130
        );
        assert_eq!(default_order(&MapExpr::erf_fam(1.0).unwrap()).unwrap(), 80);
        assert!(default_order(&MapExpr::negate(MapExpr::Identity)).is_err());
    }
}
