//! Uniform sampling grids.
//!
//! Symmetric grids mirror the negative half exactly, so x and -x are bitwise
//! negations of each other and odd n places 0.0 exactly at the centre.

/// n points spanning [lo, hi], endpoints included.
pub(crate) fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    debug_assert!(n >= 2);
    let span = hi - lo;
    let last = (n - 1) as f64;
    (0..n).map(|i| lo + span * (i as f64 / last)).collect()
}

/// n points spanning [-hw, hw] with exact mirror symmetry about 0.
pub(crate) fn symmetric_grid(hw: f64, n: usize) -> Vec<f64> {
    debug_assert!(n >= 2);
    let mut xs = vec![0.0; n];
    let last = (n - 1) as f64;
    for i in 0..n / 2 {
        let x = -hw + 2.0 * hw * (i as f64 / last);
        xs[i] = x;
        xs[n - 1 - i] = -x;
    }
    // odd n leaves the middle entry at exactly 0.0
    xs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_grid_is_exactly_odd() {
        for n in [4, 5, 101, 2001] {
            let xs = symmetric_grid(0.999999, n);
            assert_eq!(xs.len(), n);
            assert_eq!(xs[0], -0.999999);
            assert_eq!(xs[n - 1], 0.999999);
            for i in 0..n {
                assert_eq!(xs[i], -xs[n - 1 - i]);
            }
            if n % 2 == 1 {
                assert_eq!(xs[n / 2], 0.0);
            }
            for w in xs.windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn uniform_grid_is_strictly_increasing() {
        let xs = uniform_grid(-0.3, 0.9, 1000);
        assert_eq!(xs[0], -0.3);
        for w in xs.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!((xs[999] - 0.9).abs() < 1e-15);
    }
}
