//! Sampled curves and their CSV form.

use std::io::{self, Write};

use thiserror::Error;

use crate::counterexamples::{SeqError, SeqFamily};
use crate::expr::{DomainError, MapExpr};
use crate::grid::symmetric_grid;

/// Descriptive metadata carried alongside a sampled curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMeta {
    pub description: String,
    pub grid_n: usize,
    pub epsilon_margin: f64,
}

/// A sampled grid of (x, f(x), f'(x)) triples over [-1 + eps, 1 - eps].
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub dys: Vec<f64>,
    pub meta: SampleMeta,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("epsilon margin must lie in [0, 0.1], got {0}")]
    InvalidMargin(f64),
    #[error("sampling grid needs at least 3 points, got {0}")]
    GridTooSmall(usize),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

impl CurveSample {
    /// Samples an expression on a symmetric grid over [-1 + eps, 1 - eps].
    pub fn from_expr(e: &MapExpr, grid_n: usize, eps: f64) -> Result<Self, SampleError> {
        check_args(grid_n, eps)?;
        let xs = symmetric_grid(1.0 - eps, grid_n);
        let mut ys = Vec::with_capacity(grid_n);
        let mut dys = Vec::with_capacity(grid_n);
        for &x in &xs {
            ys.push(e.eval(x)?);
            dys.push(e.deriv(x)?);
        }
        Ok(CurveSample {
            xs,
            ys,
            dys,
            meta: SampleMeta {
                description: e.to_string(),
                grid_n,
                epsilon_margin: eps,
            },
        })
    }

    /// Samples a counterexample member; these live on the open interval, so
    /// the margin must be strictly positive.
    pub fn from_seq(s: &SeqFamily, grid_n: usize, eps: f64) -> Result<Self, SampleError> {
        check_args(grid_n, eps)?;
        if eps == 0.0 {
            return Err(SampleError::InvalidMargin(eps));
        }
        let xs = symmetric_grid(1.0 - eps, grid_n);
        let mut ys = Vec::with_capacity(grid_n);
        let mut dys = Vec::with_capacity(grid_n);
        for &x in &xs {
            ys.push(s.eval(x)?);
            dys.push(s.deriv(x)?);
        }
        let description = match s.index() {
            crate::counterexamples::SeqIndex::Finite(n) => {
                format!("{:?}(n={n})", s.kind())
            }
            crate::counterexamples::SeqIndex::Limit => format!("{:?}(n=inf)", s.kind()),
        };
        Ok(CurveSample {
            xs,
            ys,
            dys,
            meta: SampleMeta {
                description,
                grid_n,
                epsilon_margin: eps,
            },
        })
    }

    /// Writes `x,f,f_prime` rows; floats use shortest round-trip formatting,
    /// so files reproduce the binary64 samples exactly.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "x,f,f_prime")?;
        for i in 0..self.xs.len() {
            writeln!(w, "{},{},{}", self.xs[i], self.ys[i], self.dys[i])?;
        }
        Ok(())
    }
}

fn check_args(grid_n: usize, eps: f64) -> Result<(), SampleError> {
    if grid_n < 3 {
        return Err(SampleError::GridTooSmall(grid_n));
    }
    if !(0.0..=0.1).contains(&eps) {
        return Err(SampleError::InvalidMargin(eps));
    }
    Ok(())
}
