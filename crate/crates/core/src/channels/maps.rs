//! The two dynamical maps as channels on the system qubit and their
//! extension to the system+ancilla pair, plus Choi-matrix export.
//!
//! Both joint maps are Kraus-realized (CPTP by construction); the
//! element-wise population/coherence rules are kept in the test suite as
//! an independent cross-check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{kron, ComplexMatrix};
use crate::states::DensityMatrix;

/// Slack accepted on |J| <= 1 and Gamma <= 1 before rejecting.
const CHANNEL_PARAM_SLACK: f64 = 1e-9;

/// A single channel evaluated at a fixed parameter value: either the
/// cumulative map from time zero or an intermediate map between two times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapDescriptor {
    /// Coherence factor of the dephasing map (ratios may exceed 1 for
    /// non-CP intermediate maps).
    Dephasing { factor: f64 },
    /// Damping amplitude J (again, |J| may exceed 1 for intermediate maps).
    Damping { j: Complex64 },
}

impl MapDescriptor {
    pub fn identity_dephasing() -> Self {
        MapDescriptor::Dephasing { factor: 1.0 }
    }

    /// Magnitude of the map parameter (Gamma or |J|).
    pub fn magnitude(&self) -> f64 {
        match self {
            MapDescriptor::Dephasing { factor } => factor.abs(),
            MapDescriptor::Damping { j } => j.norm(),
        }
    }
}

fn check_dephasing_factor(factor: f64) -> Result<f64> {
    if !(factor > 0.0 && factor <= 1.0 + CHANNEL_PARAM_SLACK) {
        return Err(Error::ParameterOutOfRange {
            name: "Gamma",
            value: factor,
        });
    }
    Ok(factor.min(1.0))
}

fn check_damping_amplitude(j: Complex64) -> Result<Complex64> {
    let norm = j.norm();
    if !(norm.is_finite() && norm <= 1.0 + CHANNEL_PARAM_SLACK) {
        return Err(Error::ParameterOutOfRange {
            name: "|J|",
            value: norm,
        });
    }
    if norm > 1.0 {
        Ok(j / norm)
    } else {
        Ok(j)
    }
}

/// Kraus pair of the dephasing map with coherence factor `gamma_factor`:
/// K0 = sqrt((1 + Gamma)/2) I, K1 = sqrt((1 - Gamma)/2) sigma_z.
fn dephasing_kraus(factor: f64) -> [ComplexMatrix; 2] {
    let p0 = ((1.0 + factor) / 2.0).max(0.0).sqrt();
    let p1 = ((1.0 - factor) / 2.0).max(0.0).sqrt();
    [
        ComplexMatrix::from_real(2, 2, &[p0, 0.0, 0.0, p0]).unwrap(),
        ComplexMatrix::from_real(2, 2, &[p1, 0.0, 0.0, -p1]).unwrap(),
    ]
}

/// Kraus pair of the amplitude-damping map with amplitude J:
/// K0 = diag(1, J*), K1 = sqrt(1 - |J|^2) |0><1|. Populations then scale
/// with |J|^2 and coherences with J (conjugated as Hermiticity demands),
/// which is the unique Hermiticity-preserving reading for complex J.
fn damping_kraus(j: Complex64) -> [ComplexMatrix; 2] {
    let decay = (1.0 - j.norm_sqr()).max(0.0).sqrt();
    let mut k0 = ComplexMatrix::zeros(2, 2);
    k0[(0, 0)] = Complex64::ONE;
    k0[(1, 1)] = j.conj();
    let mut k1 = ComplexMatrix::zeros(2, 2);
    k1[(0, 1)] = Complex64::new(decay, 0.0);
    [k0, k1]
}

fn apply_kraus_system(rho: &DensityMatrix, kraus: &[ComplexMatrix; 2]) -> Result<DensityMatrix> {
    if rho.dims() != [2] {
        return Err(Error::WrongSubsystemDims {
            expected: vec![2],
            got: rho.dims().to_vec(),
        });
    }
    let mut out = ComplexMatrix::zeros(2, 2);
    for k in kraus {
        out = out.add(&k.mul(rho.matrix()).mul(&k.dagger()));
    }
    DensityMatrix::new(out, vec![2])
}

fn apply_kraus_joint(rho: &DensityMatrix, kraus: &[ComplexMatrix; 2]) -> Result<DensityMatrix> {
    rho.require_two_qubit()?;
    let i2 = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::zeros(4, 4);
    for k in kraus {
        let kj = kron(k, &i2);
        out = out.add(&kj.mul(rho.matrix()).mul(&kj.dagger()));
    }
    DensityMatrix::new(out, vec![2, 2])
}

/// Dephasing on a single qubit: diagonal preserved, coherences scaled by
/// Gamma in (0, 1].
pub fn apply_dephasing_system(rho: &DensityMatrix, factor: f64) -> Result<DensityMatrix> {
    let factor = check_dephasing_factor(factor)?;
    apply_kraus_system(rho, &dephasing_kraus(factor))
}

/// Dephasing on the system slot of a two-qubit state (identity on the
/// ancilla).
pub fn apply_dephasing_joint(rho: &DensityMatrix, factor: f64) -> Result<DensityMatrix> {
    let factor = check_dephasing_factor(factor)?;
    apply_kraus_joint(rho, &dephasing_kraus(factor))
}

/// Amplitude damping on a single qubit with amplitude J, |J| <= 1.
pub fn apply_amplitude_damping_system(rho: &DensityMatrix, j: Complex64) -> Result<DensityMatrix> {
    let j = check_damping_amplitude(j)?;
    apply_kraus_system(rho, &damping_kraus(j))
}

/// Amplitude damping on the system slot of a two-qubit state.
pub fn apply_amplitude_damping_joint(rho: &DensityMatrix, j: Complex64) -> Result<DensityMatrix> {
    let j = check_damping_amplitude(j)?;
    apply_kraus_joint(rho, &damping_kraus(j))
}

/// Applies the described map to a single-qubit state.
pub fn apply_system(rho: &DensityMatrix, descriptor: &MapDescriptor) -> Result<DensityMatrix> {
    match *descriptor {
        MapDescriptor::Dephasing { factor } => apply_dephasing_system(rho, factor),
        MapDescriptor::Damping { j } => apply_amplitude_damping_system(rho, j),
    }
}

/// Applies the described map to the system slot of a two-qubit state.
pub fn apply_joint(rho: &DensityMatrix, descriptor: &MapDescriptor) -> Result<DensityMatrix> {
    match *descriptor {
        MapDescriptor::Dephasing { factor } => apply_dephasing_joint(rho, factor),
        MapDescriptor::Damping { j } => apply_amplitude_damping_joint(rho, j),
    }
}

/// Choi matrix (Omega (x) I)|Phi><Phi| of the described map, normalized to
/// unit trace. Positive semidefinite exactly when the map is completely
/// positive; descriptors with Gamma > 1 or |J| > 1 (intermediate maps of
/// non-divisible dynamics) yield a negative eigenvalue.
///
/// The matrix is the element-wise linear action of the channel on the Bell
/// projector, which extends the Kraus action beyond the CP region.
pub fn choi_matrix(descriptor: &MapDescriptor) -> ComplexMatrix {
    let mut c = ComplexMatrix::zeros(4, 4);
    let half = 0.5;
    match *descriptor {
        MapDescriptor::Dephasing { factor } => {
            c[(0, 0)] = Complex64::new(half, 0.0);
            c[(3, 3)] = Complex64::new(half, 0.0);
            c[(0, 3)] = Complex64::new(half * factor, 0.0);
            c[(3, 0)] = Complex64::new(half * factor, 0.0);
        }
        MapDescriptor::Damping { j } => {
            let a = j.norm_sqr();
            c[(0, 0)] = Complex64::new(half, 0.0);
            c[(1, 1)] = Complex64::new(half * (1.0 - a), 0.0);
            c[(3, 3)] = Complex64::new(half * a, 0.0);
            c[(0, 3)] = half * j;
            c[(3, 0)] = half * j.conj();
        }
    }
    c
}
