//! Grid-based certification that a map behaves as a strictly monotone
//! automorphism of the unit interval with a claimed derivative at the origin.
//!
//! Surjectivity is not sampled directly: strict monotonicity plus the
//! endpoint identities imply it through the intermediate value theorem, and
//! the report notes this. Grid-based monotonicity cannot certify strictness
//! between grid points; all in-scope families have sign-definite derivatives,
//! and the default grid of 10^4 points is documented as the supported
//! resolution.

use serde::Serialize;
use thiserror::Error;

use crate::expr::{DomainError, MapExpr};
use crate::grid::symmetric_grid;

/// Number of points used for the finite-difference cross-check (capped by the
/// verification grid size).
const FD_POINTS: usize = 101;

/// Named thresholds applied by [`verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct ToleranceProfile {
    /// |f(±1) ∓ 1|.
    pub endpoint: f64,
    /// |f'(0) - a_claimed|.
    pub derivative: f64,
    /// Max over sample points of |fd - f'| / max(1, |f'|).
    pub fd_relative: f64,
    /// Max over mirror pairs of |f(-x) + f(x)| / (1 + |f(x)|).
    pub oddness: f64,
    /// |f(0)|; every in-scope map fixes the origin exactly in binary64.
    pub origin: f64,
    /// Step for the Richardson-extrapolated central difference.
    pub fd_step: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        ToleranceProfile {
            endpoint: 1e-9,
            derivative: 1e-10,
            fd_relative: 1e-6,
            oddness: 1e-13,
            origin: 0.0,
            fd_step: 1e-5,
        }
    }
}

/// One named measurement; passes when `measured <= threshold`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub threshold: f64,
}

impl Check {
    fn new(name: &str, measured: f64, threshold: f64) -> Self {
        Check {
            name: name.to_string(),
            pass: measured <= threshold,
            measured,
            threshold,
        }
    }
}

/// Structured verification outcome; `pass` holds iff every check passes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub expr: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub grid_n: usize,
    pub epsilon_margin: f64,
    /// Methodological caveats recorded alongside the measurements.
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// JSON form of the report; identical inputs serialize byte-identically.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("verification grid needs at least 3 points, got {0}")]
    GridTooSmall(usize),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Richardson-extrapolated central difference `(4 D(step/2) - D(step)) / 3`
/// with `D(s) = (f(x+s) - f(x-s)) / (2s)`; an independent cross-check for
/// [`MapExpr::deriv`].
pub fn fd_derivative(e: &MapExpr, x: f64, step: f64) -> Result<f64, DomainError> {
    if step.is_nan() || step <= 0.0 || x + 2.0 * step > 1.0 || x - 2.0 * step < -1.0 {
        return Err(DomainError { x });
    }
    let half = central(e, x, 0.5 * step);
    let full = central(e, x, step);
    Ok((4.0 * half - full) / 3.0)
}

fn central(e: &MapExpr, x: f64, s: f64) -> f64 {
    (e.eval_raw(x + s) - e.eval_raw(x - s)) / (2.0 * s)
}

/// Evaluates `e` on a uniform grid over [-1, 1] and measures the
/// automorphism properties against the profile thresholds.
///
/// The monotonicity direction is inferred from the sign of `a_claimed`; for
/// `a_claimed = 0` it falls back to the sign of f(1) - f(-1).
pub fn verify(
    e: &MapExpr,
    a_claimed: f64,
    grid_n: usize,
    profile: &ToleranceProfile,
) -> Result<VerificationReport, VerifyError> {
    if grid_n < 3 {
        return Err(VerifyError::GridTooSmall(grid_n));
    }

    let xs = symmetric_grid(1.0, grid_n);
    let ys: Vec<f64> = xs.iter().map(|&x| e.eval(x)).collect::<Result<_, _>>()?;

    let f_neg = ys[0];
    let f_pos = ys[grid_n - 1];
    let dir = if a_claimed > 0.0 {
        1.0
    } else if a_claimed < 0.0 {
        -1.0
    } else if f_pos >= f_neg {
        1.0
    } else {
        -1.0
    };

    // count of consecutive pairs that fail to move strictly in `dir`
    let violations = ys.windows(2).filter(|w| (w[1] - w[0]) * dir <= 0.0).count();

    let origin = e.eval(0.0)?.abs();
    let deriv_gap = (e.deriv(0.0)? - a_claimed).abs();

    let mut fd_gap = 0.0f64;
    let fd_n = grid_n.min(FD_POINTS);
    for &x in &symmetric_grid(1.0 - 2.0 * profile.fd_step, fd_n) {
        let d = e.deriv(x)?;
        let fd = fd_derivative(e, x, profile.fd_step)?;
        fd_gap = fd_gap.max((fd - d).abs() / d.abs().max(1.0));
    }

    let mut odd_gap = 0.0f64;
    for i in 0..grid_n / 2 {
        let j = grid_n - 1 - i;
        odd_gap = odd_gap.max((ys[i] + ys[j]).abs() / (1.0 + ys[j].abs()));
    }

    let checks = vec![
        Check::new("monotonicity", violations as f64, 0.0),
        Check::new("endpoint_plus", (f_pos - dir).abs(), profile.endpoint),
        Check::new("endpoint_minus", (f_neg + dir).abs(), profile.endpoint),
        Check::new("origin_fixed", origin, profile.origin),
        Check::new("derivative_at_zero", deriv_gap, profile.derivative),
        Check::new("fd_consistency", fd_gap, profile.fd_relative),
        Check::new("oddness", odd_gap, profile.oddness),
    ];
    let pass = checks.iter().all(|c| c.pass);

    Ok(VerificationReport {
        expr: e.to_string(),
        pass,
        checks,
        grid_n,
        epsilon_margin: 0.0,
        notes: vec![
            "surjectivity is implied by the endpoint and monotonicity checks \
             via the intermediate value theorem; it is not sampled directly"
                .to_string(),
            "endpoint residuals are measured on the closed interval; the \
             open-interval reading of the map omits only the two endpoint \
             values"
                .to_string(),
        ],
    })
}
