//! Bracketed scalar root finding: bisection safeguarding a Newton iteration.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RootFind {
    pub root: f64,
    pub residual: f64,
    pub iterations: u32,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum RootFindError {
    NoBracket,
    NoConvergence { iterations: u32 },
}

/// Finds `x` in `[lo, hi]` with `|f(x)| <= tol`.
///
/// Requires a sign change over the bracket; an endpoint already within
/// tolerance is returned as-is. A Newton step from the current iterate is
/// taken when it stays strictly inside the bracket and the residual is
/// shrinking, otherwise the step falls back to bisection, so convergence is
/// guaranteed for continuous `f` with quadratic tail speed near simple roots.
pub(crate) fn bracketed_newton(
    f: &dyn Fn(f64) -> f64,
    df: &dyn Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: u32,
) -> Result<RootFind, RootFindError> {
    let f_lo = f(lo);
    if f_lo.abs() <= tol {
        return Ok(RootFind {
            root: lo,
            residual: f_lo.abs(),
            iterations: 0,
            bracket: (lo, hi),
        });
    }
    let f_hi = f(hi);
    if f_hi.abs() <= tol {
        return Ok(RootFind {
            root: hi,
            residual: f_hi.abs(),
            iterations: 0,
            bracket: (lo, hi),
        });
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(RootFindError::NoBracket);
    }
    let increasing = f_hi > 0.0;

    let mut x = 0.5 * (lo + hi);
    let mut prev_residual = f64::INFINITY;
    for it in 1..=max_iter {
        let fx = f(x);
        let residual = fx.abs();
        if residual <= tol {
            return Ok(RootFind {
                root: x,
                residual,
                iterations: it,
                bracket: (lo, hi),
            });
        }
        if (fx > 0.0) == increasing {
            hi = x;
        } else {
            lo = x;
        }
        let newton = x - fx / df(x);
        x = if newton.is_finite() && lo < newton && newton < hi && residual < 0.5 * prev_residual {
            newton
        } else {
            0.5 * (lo + hi)
        };
        prev_residual = residual;
    }
    Err(RootFindError::NoConvergence {
        iterations: max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_root() {
        let f = |x: f64| x * x * x - 2.0;
        let df = |x: f64| 3.0 * x * x;
        let found = bracketed_newton(&f, &df, 0.0, 2.0, 1e-14, 100).unwrap();
        assert!((found.root - 2.0f64.cbrt()).abs() < 1e-12);
        assert!(found.residual <= 1e-14);
        assert!(found.bracket.0 <= found.root && found.root <= found.bracket.1);
    }

    #[test]
    fn reports_missing_bracket() {
        let f = |x: f64| x * x + 1.0;
        let df = |x: f64| 2.0 * x;
        assert_eq!(
            bracketed_newton(&f, &df, -1.0, 1.0, 1e-12, 100),
            Err(RootFindError::NoBracket)
        );
    }

    #[test]
    fn accepts_endpoint_within_tolerance() {
        // f(1) sits a hair under 0; with the same sign at both endpoints the
        // only acceptable answer is the endpoint itself
        let f = |x: f64| x - 1.0 - 1e-16;
        let df = |_: f64| 1.0;
        let found = bracketed_newton(&f, &df, -1.0, 1.0, 1e-12, 100).unwrap();
        assert_eq!(found.root, 1.0);
        assert_eq!(found.iterations, 0);
    }

    #[test]
    fn survives_flat_derivative_via_bisection() {
        // df = 0 at the initial midpoint makes the Newton step non-finite
        let f = |x: f64| x * x * x;
        let df = |x: f64| 3.0 * x * x;
        let found = bracketed_newton(&f, &df, -1.0, 2.0, 1e-30, 200).unwrap();
        assert!(found.root.abs() < 1e-9);
    }
}
