//! Density matrices and the correlation measures used for comparison:
//! von Neumann entropy, quantum mutual information, Wootters concurrence
//! and the trace distance.
//!
//! Basis convention for two qubits: |00>, |01>, |10>, |11> with the first
//! label the system `a` (the qubit exposed to noise) and the second the
//! ancilla `b`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, kron, partial_trace, pauli_y, trace_norm, ComplexMatrix};

/// Hermiticity / trace / positivity gate for state construction.
pub const STATE_TOL: f64 = 1e-10;

/// A validated density matrix together with its subsystem split.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (all within
    /// `STATE_TOL`) before accepting the matrix.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let dim: usize = dims.iter().product();
        if dims.is_empty() || !matrix.is_square() || matrix.rows() != dim {
            return Err(Error::WrongSubsystemDims {
                expected: vec![matrix.rows()],
                got: dims,
            });
        }
        let herm = matrix.hermiticity_deviation();
        if herm > STATE_TOL {
            return Err(Error::StateInvariant {
                check: "hermitian",
                deviation: herm,
            });
        }
        let tr = matrix.trace();
        let tr_dev = (tr - Complex64::ONE).norm();
        if tr_dev > STATE_TOL {
            return Err(Error::StateInvariant {
                check: "unit trace",
                deviation: tr_dev,
            });
        }
        let eig = hermitian_eig(&matrix)?;
        let min_eig = eig.eigenvalues[0];
        if min_eig < -STATE_TOL {
            return Err(Error::StateInvariant {
                check: "positive semidefinite",
                deviation: -min_eig,
            });
        }
        Ok(Self { matrix, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dims == [2, 2]
    }

    pub(crate) fn require_two_qubit(&self) -> Result<()> {
        if self.is_two_qubit() {
            Ok(())
        } else {
            Err(Error::WrongSubsystemDims {
                expected: vec![2, 2],
                got: self.dims.clone(),
            })
        }
    }

    /// Reduced state of the system qubit `a`.
    pub fn reduce_system(&self) -> Result<DensityMatrix> {
        self.require_two_qubit()?;
        DensityMatrix::new(partial_trace(&self.matrix, 0)?, vec![2])
    }

    /// Reduced state of the ancilla qubit `b`.
    pub fn reduce_ancilla(&self) -> Result<DensityMatrix> {
        self.require_two_qubit()?;
        DensityMatrix::new(partial_trace(&self.matrix, 1)?, vec![2])
    }

    pub fn purity(&self) -> f64 {
        self.matrix.mul(&self.matrix).trace().re
    }
}

/// Projector onto |Phi> = (|00> + |11>)/sqrt(2).
pub fn bell_phi() -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    let half = Complex64::new(0.5, 0.0);
    m[(0, 0)] = half;
    m[(0, 3)] = half;
    m[(3, 0)] = half;
    m[(3, 3)] = half;
    DensityMatrix::new(m, vec![2, 2]).expect("Bell projector is a valid state")
}

/// Werner state (I + r sx(x)sx - r sy(x)sy + r sz(x)sz)/4 for r in [0, 1].
///
/// Interpolates between the maximally mixed state (r = 0) and the Bell
/// projector (r = 1).
pub fn werner(r: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::ParameterOutOfRange {
            name: "werner r",
            value: r,
        });
    }
    let quarter = 0.25;
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = Complex64::new(quarter * (1.0 + r), 0.0);
    m[(1, 1)] = Complex64::new(quarter * (1.0 - r), 0.0);
    m[(2, 2)] = Complex64::new(quarter * (1.0 - r), 0.0);
    m[(3, 3)] = Complex64::new(quarter * (1.0 + r), 0.0);
    m[(0, 3)] = Complex64::new(quarter * 2.0 * r, 0.0);
    m[(3, 0)] = Complex64::new(quarter * 2.0 * r, 0.0);
    DensityMatrix::new(m, vec![2, 2])
}

/// Maximally mixed state of dimension `dim` with the given subsystem split.
pub fn maximally_mixed(dims: Vec<usize>) -> DensityMatrix {
    let dim: usize = dims.iter().product();
    let m = ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64);
    DensityMatrix::new(m, dims).expect("maximally mixed state is valid")
}

/// Base-2 von Neumann entropy, with 0 log 0 = 0.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let eig = hermitian_eig(rho.matrix()).expect("validated state is Hermitian");
    eig.eigenvalues
        .iter()
        .map(|&e| {
            let e = e.max(0.0);
            if e > 0.0 {
                -e * e.log2()
            } else {
                0.0
            }
        })
        .sum()
}

/// Quantum mutual information I = S(a) + S(b) - S(ab) of a two-qubit state.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    rho.require_two_qubit()?;
    let sa = von_neumann_entropy(&rho.reduce_system()?);
    let sb = von_neumann_entropy(&rho.reduce_ancilla()?);
    let sab = von_neumann_entropy(rho);
    Ok(sa + sb - sab)
}

/// Wootters concurrence of a two-qubit state.
///
/// The lambda_i are the decreasing square roots of the eigenvalues of
/// rho (sy(x)sy) rho* (sy(x)sy); computed here through the Hermitian form
/// sqrt(rho) rho~ sqrt(rho), which has the same spectrum.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    rho.require_two_qubit()?;
    let eig = hermitian_eig(rho.matrix())?;
    let sqrt_rho = eig.reassemble(|e| e.max(0.0).sqrt());
    let yy = kron(&pauli_y(), &pauli_y());
    let flipped = yy.mul(&rho.matrix().conj()).mul(&yy);
    let m = sqrt_rho.mul(&flipped).mul(&sqrt_rho);
    let lambdas = hermitian_eig(&m)?;
    let mut roots: Vec<f64> = lambdas
        .eigenvalues
        .iter()
        .map(|&e| e.max(0.0).sqrt())
        .collect();
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

impl DensityMatrix {
    /// Structured text form: `dims` then row-major `re` and `im` lines.
    pub fn to_state_text(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        let re: Vec<String> = self
            .matrix
            .entries()
            .iter()
            .map(|z| crate::textio::format_sci(z.re))
            .collect();
        let im: Vec<String> = self
            .matrix
            .entries()
            .iter()
            .map(|z| crate::textio::format_sci(z.im))
            .collect();
        format!(
            "dims = {}\nre = {}\nim = {}\n",
            dims.join(","),
            re.join(","),
            im.join(",")
        )
    }

    /// Parses the structured text form and validates the state invariants.
    pub fn from_state_text(text: &str) -> Result<DensityMatrix> {
        let mut dims: Option<Vec<usize>> = None;
        let mut re: Option<Vec<f64>> = None;
        let mut im: Option<Vec<f64>> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::CsvFormat {
                    line: idx + 1,
                    reason: "expected `key = value`".into(),
                });
            };
            let parse_floats = |v: &str| -> Result<Vec<f64>> {
                v.split(',')
                    .map(|p| {
                        p.trim().parse::<f64>().map_err(|_| Error::CsvFormat {
                            line: idx + 1,
                            reason: format!("invalid number `{p}`"),
                        })
                    })
                    .collect()
            };
            match key.trim() {
                "dims" => {
                    dims = Some(
                        value
                            .split(',')
                            .map(|p| {
                                p.trim().parse::<usize>().map_err(|_| Error::CsvFormat {
                                    line: idx + 1,
                                    reason: format!("invalid dimension `{p}`"),
                                })
                            })
                            .collect::<Result<_>>()?,
                    )
                }
                "re" => re = Some(parse_floats(value)?),
                "im" => im = Some(parse_floats(value)?),
                other => {
                    return Err(Error::CsvFormat {
                        line: idx + 1,
                        reason: format!("unknown field `{other}`"),
                    })
                }
            }
        }
        let (Some(dims), Some(re), Some(im)) = (dims, re, im) else {
            return Err(Error::CsvFormat {
                line: 0,
                reason: "state text needs `dims`, `re` and `im` fields".into(),
            });
        };
        if re.len() != im.len() {
            return Err(Error::CsvFormat {
                line: 0,
                reason: "re and im must have the same length".into(),
            });
        }
        let dim: usize = dims.iter().product();
        let data: Vec<Complex64> = re
            .iter()
            .zip(&im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        let matrix = ComplexMatrix::new(dim, dim, data)?;
        DensityMatrix::new(matrix, dims)
    }
}

/// Trace distance (1/2) || rho - sigma ||_1.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            context: "trace_distance requires states of equal dimension",
        });
    }
    let diff = rho.matrix().sub(sigma.matrix());
    Ok(0.5 * trace_norm(&diff)?)
}
