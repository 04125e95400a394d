//! Expression trees for odd real analytic maps of the closed interval [-1, 1].
//!
//! A [`MapExpr`] denotes an odd function built from primitive families (all of
//! which fix the origin and have positive derivative there) plus negation,
//! composition and iterated self-composition. Evaluation and differentiation
//! are structural: primitives use closed forms, composites use the chain rule.
//! Values are immutable after construction and every operation is a pure
//! function, so expressions can be shared freely across threads.
//!
//! The mathematical domain of interest is the open interval, but every family
//! here extends continuously to the closure and the endpoint values f(±1) are
//! the anchors of the automorphism checks, so evaluation accepts all of
//! [-1, 1].

use std::f64::consts::{FRAC_2_SQRT_PI, FRAC_PI_2};
use std::fmt;

use thiserror::Error;

use crate::roots::{self, RootFindError};

/// Largest admissible shape parameter for the erf family.
///
/// erf is evaluated by its alternating Maclaurin series; at `k = 3` the
/// largest term is already ~1.7e2 against a result of order one, and past
/// that cancellation pushes the absolute error above 1e-12.
pub const ERF_K_MAX: f64 = 3.0;

/// Iteration cap shared by [`MapExpr::invert`] and the parameter solvers.
pub(crate) const MAX_NEWTON_ITER: u32 = 200;

/// Parameter violations raised at construction time.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("arctan family requires a > 1 and b > 0, got a = {a}, b = {b}")]
    InvalidArctanParams { a: f64, b: f64 },
    #[error("tan family requires 0 < a < 1 and 0 < b < pi/2, got a = {a}, b = {b}")]
    InvalidTanParams { a: f64, b: f64 },
    #[error("erf family requires 0 < k <= {max}, got k = {k}", max = ERF_K_MAX)]
    InvalidErfShape { k: f64 },
    #[error("iteration count must be at least 1")]
    ZeroIterations,
}

/// Evaluation was requested outside the closed interval [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("argument {x} outside the evaluation domain [-1, 1]")]
pub struct DomainError {
    pub x: f64,
}

/// Failure modes of the numerical inverse.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum InvertError {
    /// The target value has the same sign deficit at both endpoints, so no
    /// root is bracketed; for monotone maps this means `y` lies outside the
    /// range over [-1, 1].
    #[error("target {y} is not bracketed by the endpoint values")]
    NoBracket { y: f64 },
    #[error("inverse iteration did not converge within {iterations} steps")]
    NoConvergence { iterations: u32 },
}

/// An odd map of [-1, 1] built from primitive families, negation, composition
/// and iterated self-composition.
///
/// Invariants (enforced by the constructors, preserved by the combinators):
/// every primitive's parameters satisfy its range constraint; every
/// expression is odd and fixes the origin exactly; expressions whose
/// primitives all have positive derivative are strictly monotone, with
/// direction set by the parity of `Negate` nodes.
#[derive(Debug, Clone, PartialEq)]
pub enum MapExpr {
    /// x
    Identity,
    /// x^3
    Cubic,
    /// sin(pi x / 2)
    SinHalfPi,
    /// (a/b) arctan(b x) with a > 1, b > 0; derivative a at the origin.
    ArctanFam { a: f64, b: f64 },
    /// (a/b) tan(b x) with 0 < a < 1, 0 < b < pi/2; derivative a at the origin.
    TanFam { a: f64, b: f64 },
    /// erf(k x) / erf(k) with 0 < k <= [`ERF_K_MAX`].
    ErfFam { k: f64 },
    /// -inner(x)
    Negate(Box<MapExpr>),
    /// outer(inner(x))
    Compose {
        outer: Box<MapExpr>,
        inner: Box<MapExpr>,
    },
    /// n-fold self-composition of `base`, kept symbolic so that nested
    /// iterates do not unroll into exponentially large trees; evaluation
    /// unrolls lazily.
    Iterate { base: Box<MapExpr>, n: u32 },
}

impl MapExpr {
    pub fn arctan_fam(a: f64, b: f64) -> Result<Self, ExprError> {
        if a.is_finite() && b.is_finite() && a > 1.0 && b > 0.0 {
            Ok(MapExpr::ArctanFam { a, b })
        } else {
            Err(ExprError::InvalidArctanParams { a, b })
        }
    }

    pub fn tan_fam(a: f64, b: f64) -> Result<Self, ExprError> {
        if a.is_finite() && b.is_finite() && 0.0 < a && a < 1.0 && 0.0 < b && b < FRAC_PI_2 {
            Ok(MapExpr::TanFam { a, b })
        } else {
            Err(ExprError::InvalidTanParams { a, b })
        }
    }

    pub fn erf_fam(k: f64) -> Result<Self, ExprError> {
        if k.is_finite() && 0.0 < k && k <= ERF_K_MAX {
            Ok(MapExpr::ErfFam { k })
        } else {
            Err(ExprError::InvalidErfShape { k })
        }
    }

    pub fn negate(inner: MapExpr) -> Self {
        MapExpr::Negate(Box::new(inner))
    }

    pub fn compose(outer: MapExpr, inner: MapExpr) -> Self {
        MapExpr::Compose {
            outer: Box::new(outer),
            inner: Box::new(inner),
        }
    }

    /// n-fold self-composition; `iterate(e, 1)` behaves exactly as `e`.
    pub fn iterate(base: MapExpr, n: u32) -> Result<Self, ExprError> {
        if n == 0 {
            return Err(ExprError::ZeroIterations);
        }
        Ok(MapExpr::Iterate {
            base: Box::new(base),
            n,
        })
    }

    /// Evaluates the denoted function at `x` in [-1, 1].
    pub fn eval(&self, x: f64) -> Result<f64, DomainError> {
        check_domain(x)?;
        Ok(self.eval_raw(x))
    }

    /// Exact analytic derivative at `x` in [-1, 1], computed structurally.
    pub fn deriv(&self, x: f64) -> Result<f64, DomainError> {
        check_domain(x)?;
        Ok(self.deriv_raw(x))
    }

    pub(crate) fn eval_raw(&self, x: f64) -> f64 {
        match self {
            MapExpr::Identity => x,
            MapExpr::Cubic => x * x * x,
            MapExpr::SinHalfPi => (FRAC_PI_2 * x).sin(),
            MapExpr::ArctanFam { a, b } => (a / b) * (b * x).atan(),
            MapExpr::TanFam { a, b } => (a / b) * (b * x).tan(),
            MapExpr::ErfFam { k } => erf(k * x) / erf(*k),
            MapExpr::Negate(inner) => -inner.eval_raw(x),
            MapExpr::Compose { outer, inner } => outer.eval_raw(inner.eval_raw(x)),
            MapExpr::Iterate { base, n } => {
                let mut v = x;
                for _ in 0..*n {
                    v = base.eval_raw(v);
                }
                v
            }
        }
    }

    pub(crate) fn deriv_raw(&self, x: f64) -> f64 {
        match self {
            MapExpr::Identity => 1.0,
            MapExpr::Cubic => 3.0 * x * x,
            MapExpr::SinHalfPi => FRAC_PI_2 * (FRAC_PI_2 * x).cos(),
            MapExpr::ArctanFam { a, b } => {
                let u = b * x;
                a / (1.0 + u * u)
            }
            MapExpr::TanFam { a, b } => {
                let c = (b * x).cos();
                a / (c * c)
            }
            MapExpr::ErfFam { k } => {
                let u = k * x;
                k * FRAC_2_SQRT_PI * (-u * u).exp() / erf(*k)
            }
            MapExpr::Negate(inner) => -inner.deriv_raw(x),
            MapExpr::Compose { outer, inner } => {
                outer.deriv_raw(inner.eval_raw(x)) * inner.deriv_raw(x)
            }
            MapExpr::Iterate { base, n } => {
                // chain rule along the forward orbit; at the fixed point 0
                // the orbit is constant and this reduces to the n-th power
                // of the base derivative
                let mut v = x;
                let mut d = 1.0;
                for _ in 0..*n {
                    d *= base.deriv_raw(v);
                    v = base.eval_raw(v);
                }
                d
            }
        }
    }

    /// Solves `eval(x) = y` for strictly monotone maps by bracketing
    /// bisection on [-1, 1] refined with safeguarded Newton steps, stopping
    /// at `|eval(x) - y| <= tol`.
    pub fn invert(&self, y: f64, tol: f64) -> Result<f64, InvertError> {
        let f = |x: f64| self.eval_raw(x) - y;
        let df = |x: f64| self.deriv_raw(x);
        match roots::bracketed_newton(&f, &df, -1.0, 1.0, tol, MAX_NEWTON_ITER) {
            Ok(found) => Ok(found.root),
            Err(RootFindError::NoBracket) => Err(InvertError::NoBracket { y }),
            Err(RootFindError::NoConvergence { iterations }) => {
                Err(InvertError::NoConvergence { iterations })
            }
        }
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapExpr::Identity => write!(f, "identity"),
            MapExpr::Cubic => write!(f, "cubic"),
            MapExpr::SinHalfPi => write!(f, "sin_half_pi"),
            MapExpr::ArctanFam { a, b } => write!(f, "arctan_fam(a={a}, b={b})"),
            MapExpr::TanFam { a, b } => write!(f, "tan_fam(a={a}, b={b})"),
            MapExpr::ErfFam { k } => write!(f, "erf_fam(k={k})"),
            MapExpr::Negate(inner) => write!(f, "negate({inner})"),
            MapExpr::Compose { outer, inner } => write!(f, "compose({outer}, {inner})"),
            MapExpr::Iterate { base, n } => write!(f, "iterate({base}, {n})"),
        }
    }
}

fn check_domain(x: f64) -> Result<(), DomainError> {
    if x.is_finite() && (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(DomainError { x })
    }
}

/// erf by its odd Maclaurin series,
/// `2/sqrt(pi) * sum_m (-1)^m u^(2m+1) / (m! (2m+1))`,
/// summed until a term falls below 1e-17 relative to the partial sum.
///
/// Intended for |u| <= [`ERF_K_MAX`], where the absolute error stays below
/// ~1e-12 despite the alternating cancellation.
pub(crate) fn erf(u: f64) -> f64 {
    let u2 = u * u;
    let mut power = u; // (-1)^m u^(2m+1) / m!
    let mut sum = u;
    for m in 1..=200u32 {
        power *= -u2 / f64::from(m);
        let term = power / f64::from(2 * m + 1);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}
