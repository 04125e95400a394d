//! Parameter solvers for the endpoint constraint f(1) = 1 and the assembly
//! of a map with any prescribed derivative at the origin.
//!
//! For a > 1 the arctan family satisfies the constraint when
//! `b / arctan(b) = a`; the ratio increases from 1 (as b -> 0+) to infinity,
//! so a doubling bracket followed by safeguarded Newton always lands on the
//! unique root. For 0 < a < 1 the tan family needs `b / tan(b) = a`, whose
//! ratio decreases from 1 to 0 on (0, pi/2).

use std::f64::consts::FRAC_PI_2;

use thiserror::Error;

use crate::expr::{ExprError, MapExpr, MAX_NEWTON_ITER};
use crate::roots::{self, RootFindError};

/// Shape parameter below which the constraint ratios are evaluated by their
/// small-b series; b/arctan(b) and b/tan(b) are 0/0 forms at b = 0 and the
/// series keeps Newton well-conditioned for targets near 1.
const SERIES_CUTOFF: f64 = 1e-4;

/// Bracket inset for the tan solve, keeping evaluation away from the pole at
/// pi/2. The ratio is continuous and spans (0, 1) strictly inside.
const TAN_BRACKET_INSET: f64 = 1e-12;

/// A solved family parameter with solve diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveResult {
    /// The shape parameter satisfying the endpoint constraint.
    pub b_star: f64,
    /// |constraint(b_star) - a| at the returned parameter.
    pub residual: f64,
    /// Newton/bisection iterations consumed.
    pub iterations: u32,
    /// Final bracketing interval around the root.
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("target derivative must be finite, got {0}")]
    NonFiniteTarget(f64),
    #[error("target derivative {got} outside the family range {range}")]
    TargetOutOfRange { got: f64, range: &'static str },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("no sign change over the solve bracket")]
    NoBracket,
    #[error("solve did not converge within {0} iterations")]
    NoConvergence(u32),
    #[error(transparent)]
    Construction(#[from] ExprError),
}

/// b / arctan(b), extended continuously by 1 at b = 0.
pub fn arctan_ratio(b: f64) -> f64 {
    if b.abs() < SERIES_CUTOFF {
        let b2 = b * b;
        1.0 + b2 / 3.0 - 4.0 * b2 * b2 / 45.0
    } else {
        b / b.atan()
    }
}

fn arctan_ratio_deriv(b: f64) -> f64 {
    if b.abs() < SERIES_CUTOFF {
        2.0 * b / 3.0 - 16.0 * b * b * b / 45.0
    } else {
        let t = b.atan();
        (t - b / (1.0 + b * b)) / (t * t)
    }
}

/// b / tan(b), extended continuously by 1 at b = 0.
pub fn tan_ratio(b: f64) -> f64 {
    if b.abs() < SERIES_CUTOFF {
        let b2 = b * b;
        1.0 - b2 / 3.0 - b2 * b2 / 45.0
    } else {
        b / b.tan()
    }
}

fn tan_ratio_deriv(b: f64) -> f64 {
    if b.abs() < SERIES_CUTOFF {
        -2.0 * b / 3.0 - 4.0 * b * b * b / 45.0
    } else {
        let t = b.tan();
        (t - b * (1.0 + t * t)) / (t * t)
    }
}

/// Solves `b / arctan(b) = a` for a > 1, to `|ratio - a| <= tol * max(1, a)`.
pub fn solve_b_arctan(a: f64, tol: f64) -> Result<SolveResult, SolveError> {
    if !a.is_finite() {
        return Err(SolveError::NonFiniteTarget(a));
    }
    if a <= 1.0 {
        return Err(SolveError::TargetOutOfRange {
            got: a,
            range: "a > 1",
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(SolveError::InvalidTolerance(tol));
    }

    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut doublings = 0;
    while arctan_ratio(hi) < a {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 2000 {
            return Err(SolveError::NoBracket);
        }
    }

    let scaled_tol = tol * a.max(1.0);
    let f = |b: f64| arctan_ratio(b) - a;
    run_solver(&f, &arctan_ratio_deriv, lo, hi, scaled_tol)
}

/// Solves `b / tan(b) = a` for 0 < a < 1, to `|ratio - a| <= tol`, with the
/// root confined to (0, pi/2).
pub fn solve_b_tan(a: f64, tol: f64) -> Result<SolveResult, SolveError> {
    if !a.is_finite() {
        return Err(SolveError::NonFiniteTarget(a));
    }
    if !(0.0 < a && a < 1.0) {
        return Err(SolveError::TargetOutOfRange {
            got: a,
            range: "0 < a < 1",
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(SolveError::InvalidTolerance(tol));
    }

    let lo = TAN_BRACKET_INSET;
    let hi = FRAC_PI_2 - TAN_BRACKET_INSET;
    let f = |b: f64| tan_ratio(b) - a;
    run_solver(&f, &tan_ratio_deriv, lo, hi, tol)
}

fn run_solver(
    f: &dyn Fn(f64) -> f64,
    df: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<SolveResult, SolveError> {
    match roots::bracketed_newton(f, df, lo, hi, tol, MAX_NEWTON_ITER) {
        Ok(found) => Ok(SolveResult {
            b_star: found.root,
            residual: found.residual,
            iterations: found.iterations,
            bracket: found.bracket,
        }),
        Err(RootFindError::NoBracket) => Err(SolveError::NoBracket),
        Err(RootFindError::NoConvergence { iterations }) => {
            Err(SolveError::NoConvergence(iterations))
        }
    }
}

/// Builds a strictly monotone real analytic map of [-1, 1] onto itself with
/// derivative exactly `a` at the origin.
///
/// Case split: negative targets negate the map built for -a; a = 0 uses the
/// cubic, a = 1 the identity (the solved families degenerate as b -> 0 at
/// those targets, so the exact special cases avoid ill-conditioning); a > 1
/// uses the arctan family and 0 < a < 1 the tan family, each with the shape
/// parameter solved so that f(1) = 1 within `tol`.
pub fn build_automorphism(a: f64, tol: f64) -> Result<MapExpr, SolveError> {
    if !a.is_finite() {
        return Err(SolveError::NonFiniteTarget(a));
    }
    if a < 0.0 {
        return Ok(MapExpr::negate(build_automorphism(-a, tol)?));
    }
    if a == 0.0 {
        return Ok(MapExpr::Cubic);
    }
    if a == 1.0 {
        return Ok(MapExpr::Identity);
    }
    if a > 1.0 {
        let solved = solve_b_arctan(a, tol)?;
        Ok(MapExpr::arctan_fam(a, solved.b_star)?)
    } else {
        let solved = solve_b_tan(a, tol)?;
        Ok(MapExpr::tan_fam(a, solved.b_star)?)
    }
}
