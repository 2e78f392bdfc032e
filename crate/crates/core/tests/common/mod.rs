#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

//! Shared helpers for the integration suites: seeded random states,
//! unitaries and channels, plus independent oracles.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qipflow_core::numerics::{hermitian_eig, kron, ComplexMatrix};
use qipflow_core::states::DensityMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal via Box-Muller.
pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u.ln()).sqrt() * v.cos()
}

pub fn gaussian_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// Ginibre matrix with independent complex Gaussian entries.
pub fn ginibre(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

/// Full-rank random density matrix G G^dag / tr(G G^dag).
pub fn random_state(rng: &mut ChaCha8Rng, dims: Vec<usize>) -> DensityMatrix {
    let dim: usize = dims.iter().product();
    let g = ginibre(rng, dim, dim);
    let gg = g.mul(&g.dagger());
    let rho = gg.scale_re(1.0 / gg.trace().re);
    DensityMatrix::new(rho, dims).expect("Ginibre construction is a valid state")
}

/// Random Hermitian matrix (G + G^dag)/2.
pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim, dim);
    g.add(&g.dagger()).scale_re(0.5)
}

/// Haar-ish random unitary: modified Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim, dim);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|c| (0..dim).map(|r| g[(r, c)]).collect())
        .collect();
    for c in 0..dim {
        for p in 0..c {
            let proj: Complex64 = (0..dim).map(|r| cols[p][r].conj() * cols[c][r]).sum();
            for r in 0..dim {
                let correction = proj * cols[p][r];
                cols[c][r] -= correction;
            }
        }
        let norm: f64 = cols[c].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for r in 0..dim {
            cols[c][r] /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |r, c| cols[c][r])
}

/// Random CPTP qubit channel with two Kraus operators, from a 4x2 isometry.
pub fn random_qubit_kraus_pair(rng: &mut ChaCha8Rng) -> [ComplexMatrix; 2] {
    let g = ginibre(rng, 4, 2);
    // Gram-Schmidt on the two columns.
    let mut c0: Vec<Complex64> = (0..4).map(|r| g[(r, 0)]).collect();
    let n0: f64 = c0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    c0.iter_mut().for_each(|z| *z /= n0);
    let mut c1: Vec<Complex64> = (0..4).map(|r| g[(r, 1)]).collect();
    let proj: Complex64 = (0..4).map(|r| c0[r].conj() * c1[r]).sum();
    for r in 0..4 {
        let correction = proj * c0[r];
        c1[r] -= correction;
    }
    let n1: f64 = c1.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    c1.iter_mut().for_each(|z| *z /= n1);
    // Stack the isometry into two 2x2 blocks.
    let k0 = ComplexMatrix::new(2, 2, vec![c0[0], c1[0], c0[1], c1[1]]).unwrap();
    let k1 = ComplexMatrix::new(2, 2, vec![c0[2], c1[2], c0[3], c1[3]]).unwrap();
    [k0, k1]
}

/// Applies a Kraus-pair channel to the system slot of a two-qubit state.
pub fn apply_kraus_on_system(rho: &DensityMatrix, kraus: &[ComplexMatrix; 2]) -> DensityMatrix {
    let i2 = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::zeros(4, 4);
    for k in kraus {
        let kj = kron(k, &i2);
        out = out.add(&kj.mul(rho.matrix()).mul(&kj.dagger()));
    }
    DensityMatrix::new(out, vec![2, 2]).expect("CPTP image of a state is a state")
}

/// Independent trace-norm oracle: the positive eigenvalues of the Hermitian
/// embedding [[0, M], [M^dag, 0]] are the singular values of M.
pub fn trace_norm_via_embedding(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut h = ComplexMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            h[(r, n + c)] = m[(r, c)];
            h[(n + r, c)] = m[(c, r)].conj();
        }
    }
    let eig = hermitian_eig(&h).expect("embedding is Hermitian");
    eig.eigenvalues.iter().filter(|&&e| e > 0.0).sum()
}
