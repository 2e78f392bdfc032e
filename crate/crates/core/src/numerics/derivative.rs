//! Second-order finite differences on (possibly non-uniform) sample grids.

use crate::error::{Error, Result};

/// Derivative of the quadratic through three nodes, evaluated at `xe`.
fn three_point_derivative(xs: [f64; 3], fs: [f64; 3], xe: f64) -> f64 {
    let [x0, x1, x2] = xs;
    let [f0, f1, f2] = fs;
    f0 * (2.0 * xe - x1 - x2) / ((x0 - x1) * (x0 - x2))
        + f1 * (2.0 * xe - x0 - x2) / ((x1 - x0) * (x1 - x2))
        + f2 * (2.0 * xe - x0 - x1) / ((x2 - x0) * (x2 - x1))
}

/// Samples of d(values)/d(times): central differences at interior nodes,
/// one-sided three-point stencils at the ends. Exact for quadratic (hence
/// affine) data.
pub fn sampled_derivative(times: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    let n = times.len();
    if n < 3 {
        return Err(Error::GridTooShort { len: n, min: 3 });
    }
    if values.len() != n {
        return Err(Error::SampleCountMismatch {
            times: n,
            values: values.len(),
        });
    }
    for i in 1..n {
        if !(times[i] > times[i - 1]) {
            return Err(Error::GridNotIncreasing { index: i });
        }
    }

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let j = i.clamp(1, n - 2);
        let xs = [times[j - 1], times[j], times[j + 1]];
        let fs = [values[j - 1], values[j], values[j + 1]];
        out.push(three_point_derivative(xs, fs, times[i]));
    }
    Ok(out)
}
