//! Sequences of injective functions whose uniform limit loses injectivity.
//!
//! Two families on the open interval (-1, 1): a smooth flat bump
//! exp(-1/x^2) (extended by 0 for x <= 0) shifted by x/n, and a piecewise
//! cubic/quadratic pair joined differentiably at 0. Every finite member is
//! strictly increasing, while both limit functions are constant on (-1, 0]
//! and therefore neither injective nor constant overall.
//!
//! The limit members are deliberately represented here rather than as
//! [`crate::MapExpr`] values: they are not analytic and must not enter the
//! analytic expression algebra. The flat bump is also only real-variable
//! material; the split definition does not extend continuously to complex
//! arguments.

use thiserror::Error;

use crate::grid::uniform_grid;

/// Inset from ±1 used by the witness scan; the families are defined only on
/// the open interval.
const WITNESS_MARGIN: f64 = 1e-6;

/// Which counterexample family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqKind {
    /// exp(-1/x^2) for x > 0, 0 for x <= 0, plus x/n.
    FlatBump,
    /// -x^3/(3n) - x^2/(2n) on (-1, 0], x^2/2 on [0, 1).
    PiecewiseCubic,
}

/// Position in the sequence: a finite index n >= 1, or the limit member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqIndex {
    Finite(u32),
    Limit,
}

/// One member of a counterexample sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeqFamily {
    kind: SeqKind,
    n: SeqIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SeqError {
    #[error("sequence index must be at least 1")]
    ZeroIndex,
    #[error("argument {x} outside the open interval (-1, 1)")]
    OutsideOpenInterval { x: f64 },
    #[error("interval [{lo}, {hi}] is not contained in (-1, 1)")]
    BadInterval { lo: f64, hi: f64 },
    #[error("grid needs at least {need} points, got {got}")]
    GridTooSmall { need: usize, got: usize },
}

impl SeqFamily {
    pub fn new(kind: SeqKind, n: SeqIndex) -> Result<Self, SeqError> {
        if n == SeqIndex::Finite(0) {
            return Err(SeqError::ZeroIndex);
        }
        Ok(SeqFamily { kind, n })
    }

    pub fn kind(&self) -> SeqKind {
        self.kind
    }

    pub fn index(&self) -> SeqIndex {
        self.n
    }

    /// Value at `x` in the open interval (-1, 1).
    pub fn eval(&self, x: f64) -> Result<f64, SeqError> {
        check_open(x)?;
        Ok(self.eval_raw(x))
    }

    /// One-sided-consistent closed-form derivative at `x` in (-1, 1); both
    /// branch derivatives agree at the joint x = 0.
    pub fn deriv(&self, x: f64) -> Result<f64, SeqError> {
        check_open(x)?;
        Ok(self.deriv_raw(x))
    }

    pub(crate) fn eval_raw(&self, x: f64) -> f64 {
        match self.kind {
            SeqKind::FlatBump => {
                // exp(-1/x^2) underflows to exact 0 below x ~ 0.0367, which
                // keeps the finite members monotone: the x/n term dominates
                let bump = if x > 0.0 { (-1.0 / (x * x)).exp() } else { 0.0 };
                match self.n {
                    SeqIndex::Finite(n) => bump + x / f64::from(n),
                    SeqIndex::Limit => bump,
                }
            }
            SeqKind::PiecewiseCubic => match self.n {
                SeqIndex::Finite(n) => {
                    if x <= 0.0 {
                        let nf = f64::from(n);
                        -x * x * x / (3.0 * nf) - x * x / (2.0 * nf)
                    } else {
                        0.5 * x * x
                    }
                }
                SeqIndex::Limit => {
                    if x <= 0.0 {
                        0.0
                    } else {
                        0.5 * x * x
                    }
                }
            },
        }
    }

    pub(crate) fn deriv_raw(&self, x: f64) -> f64 {
        match self.kind {
            SeqKind::FlatBump => {
                let bump_deriv = if x > 0.0 {
                    let e = (-1.0 / (x * x)).exp();
                    // once e underflows, x^3 may underflow too; the product
                    // is an exact 0 rather than 0 * inf
                    if e == 0.0 {
                        0.0
                    } else {
                        e * 2.0 / (x * x * x)
                    }
                } else {
                    0.0
                };
                match self.n {
                    SeqIndex::Finite(n) => bump_deriv + 1.0 / f64::from(n),
                    SeqIndex::Limit => bump_deriv,
                }
            }
            SeqKind::PiecewiseCubic => match self.n {
                SeqIndex::Finite(n) => {
                    if x <= 0.0 {
                        -x * (x + 1.0) / f64::from(n)
                    } else {
                        x
                    }
                }
                SeqIndex::Limit => {
                    if x <= 0.0 {
                        0.0
                    } else {
                        x
                    }
                }
            },
        }
    }
}

fn check_open(x: f64) -> Result<(), SeqError> {
    if x.is_finite() && -1.0 < x && x < 1.0 {
        Ok(())
    } else {
        Err(SeqError::OutsideOpenInterval { x })
    }
}

/// Max over [lo, hi] of |member - limit|: a grid scan refined by a
/// golden-section polish around the grid argmax. The limit member compared
/// against itself gives exactly 0.
pub fn sup_norm_gap(family: &SeqFamily, lo: f64, hi: f64, grid_m: usize) -> Result<f64, SeqError> {
    if lo.is_nan() || hi.is_nan() || lo >= hi || lo <= -1.0 || hi >= 1.0 {
        return Err(SeqError::BadInterval { lo, hi });
    }
    if grid_m < 2 {
        return Err(SeqError::GridTooSmall {
            need: 2,
            got: grid_m,
        });
    }
    if family.index() == SeqIndex::Limit {
        return Ok(0.0);
    }
    let limit = SeqFamily {
        kind: family.kind(),
        n: SeqIndex::Limit,
    };
    let gap = |x: f64| (family.eval_raw(x) - limit.eval_raw(x)).abs();

    let xs = uniform_grid(lo, hi, grid_m);
    let mut best = f64::NEG_INFINITY;
    let mut best_i = 0;
    for (i, &x) in xs.iter().enumerate() {
        let g = gap(x);
        if g > best {
            best = g;
            best_i = i;
        }
    }
    let window_lo = xs[best_i.saturating_sub(1)];
    let window_hi = xs[(best_i + 1).min(grid_m - 1)];
    Ok(best.max(golden_max(&gap, window_lo, window_hi)))
}

/// Golden-section maximization over [lo, hi]; returns the best value seen,
/// endpoints included.
fn golden_max(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut best = f(lo).max(f(hi));
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        best = best.max(f1.max(f2));
        if hi - lo < 1e-14 {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = f(x2);
        }
    }
    best
}

/// Scans a uniform grid over the open interval (inset by 1e-6) for a failure
/// of strict increase. Returns `None` when all consecutive values strictly
/// increase, otherwise the offending pair (x1 < x2); for these families a
/// failure is always a tie of values.
pub fn injectivity_witness(family: &SeqFamily, grid_m: usize) -> Option<(f64, f64)> {
    let xs = uniform_grid(-1.0 + WITNESS_MARGIN, 1.0 - WITNESS_MARGIN, grid_m.max(3));
    let mut prev_x = xs[0];
    let mut prev_v = family.eval_raw(prev_x);
    for &x in &xs[1..] {
        let v = family.eval_raw(x);
        if v <= prev_v {
            return Some((prev_x, x));
        }
        prev_x = x;
        prev_v = v;
    }
    None
}
