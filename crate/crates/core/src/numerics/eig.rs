//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! The matrices here are at most 8x8, where Jacobi is simple, deterministic
//! and accurate: each rotation folds the pivot's phase into a real 2x2
//! problem and annihilates it exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::matrix::ComplexMatrix;

/// Hermiticity gate for inputs to the eigensolver.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Convergence threshold on the off-diagonal Frobenius norm.
const OFF_DIAGONAL_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct HermitianEigenResult {
    /// Eigenvalues in nondecreasing order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as matrix columns, ordered like `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigenResult {
    /// V diag(f(e)) V^dagger.
    pub fn reassemble(&self, mut f: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let fk = f(self.eigenvalues[k]);
            if fk == 0.0 {
                continue;
            }
            for r in 0..n {
                for c in 0..n {
                    out[(r, c)] += v[(r, k)] * v[(c, k)].conj() * fk;
                }
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Full orthonormal eigensystem of a Hermitian matrix.
///
/// Rejects non-square input and input whose max-norm deviation from its own
/// adjoint exceeds `HERMITICITY_TOL`. Output is deterministic for identical
/// input: pivots are swept in a fixed order and eigenpairs are sorted by
/// nondecreasing eigenvalue (stable sort, so degenerate clusters keep the
/// rotation order).
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigenResult> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation });
    }

    let n = m.rows();
    // Work on the exactly-Hermitian average of M and M^dagger.
    let mut a = m.add(&m.dagger()).scale_re(0.5);
    let mut v = ComplexMatrix::identity(n);

    // One extra sweep after crossing the threshold: convergence is
    // quadratic, so this lands at working precision for free.
    let mut converged = n < 2;
    let mut polish = !converged;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAGONAL_TOL {
            converged = true;
            if !polish {
                break;
            }
            polish = false;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                let phase = apq / b; // e^{i phi}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * b);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // 2x2 block of the unitary U: fold the pivot phase into
                // column p, then rotate by the real Jacobi angle.
                let upp = phase * c;
                let upq = phase * s;
                let uqp = Complex64::new(-s, 0.0);
                let uqq = Complex64::new(c, 0.0);

                // A <- A U
                for r in 0..n {
                    let x = a[(r, p)];
                    let y = a[(r, q)];
                    a[(r, p)] = x * upp + y * uqp;
                    a[(r, q)] = x * upq + y * uqq;
                }
                // A <- U^dagger A
                for r in 0..n {
                    let x = a[(p, r)];
                    let y = a[(q, r)];
                    a[(p, r)] = upp.conj() * x + uqp.conj() * y;
                    a[(q, r)] = upq.conj() * x + uqq.conj() * y;
                }
                // The pivot is annihilated exactly; keep the diagonal real.
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                // V <- V U
                for r in 0..n {
                    let x = v[(r, p)];
                    let y = v[(r, q)];
                    v[(r, p)] = x * upp + y * uqp;
                    v[(r, q)] = x * upq + y * uqq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) >= OFF_DIAGONAL_TOL {
        return Err(Error::EigenNoConvergence {
            off_diagonal: off_diagonal_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());

    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigenResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Trace norm (sum of singular values) of a square matrix.
///
/// For Hermitian input this is the sum of eigenvalue magnitudes, taken
/// directly; the square root of the Gram spectrum would turn exact zero
/// singular values into sqrt-of-rounding noise of order 1e-8. General
/// matrices go through M^dagger M.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.hermiticity_deviation() <= HERMITICITY_TOL {
        let eig = hermitian_eig(m)?;
        return Ok(eig.eigenvalues.iter().map(|e| e.abs()).sum());
    }
    let gram = m.dagger().mul(m);
    let eig = hermitian_eig(&gram)?;
    Ok(eig
        .eigenvalues
        .iter()
        .map(|&e| e.max(0.0).sqrt())
        .sum())
}
