//! Property suites for the numerical kernels, driven by seeded random
//! matrices and checked against independent oracles.

mod common;

use common::*;
use qipflow_core::numerics::{
    hermitian_eig, kron, partial_trace, trace_norm, ComplexMatrix,
};

#[test]
fn eigen_reconstruction_on_random_hermitian_matrices() {
    let mut rng = rng(11);
    for _ in 0..1000 {
        let m = random_hermitian(&mut rng, 4);
        let eig = hermitian_eig(&m).unwrap();
        let rebuilt = eig.reassemble(|e| e);
        assert!(
            rebuilt.approx_eq(&m, 1e-9),
            "reconstruction residual too large"
        );
    }
}

#[test]
fn eigenvectors_are_orthonormal() {
    let mut rng = rng(12);
    for _ in 0..200 {
        let m = random_hermitian(&mut rng, 4);
        let eig = hermitian_eig(&m).unwrap();
        let v = &eig.eigenvectors;
        let gram = v.dagger().mul(v);
        assert!(gram.approx_eq(&ComplexMatrix::identity(4), 1e-10));
        for w in eig.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }
}

#[test]
fn eigensolver_is_deterministic() {
    let mut rng = rng(13);
    let m = random_hermitian(&mut rng, 4);
    let a = hermitian_eig(&m).unwrap();
    let b = hermitian_eig(&m).unwrap();
    assert_eq!(a.eigenvalues, b.eigenvalues);
    assert_eq!(a.eigenvectors, b.eigenvectors);
}

#[test]
fn trace_norm_matches_independent_embedding_oracle() {
    let mut rng = rng(14);
    for _ in 0..100 {
        let m = ginibre(&mut rng, 4, 4);
        let got = trace_norm(&m).unwrap();
        let want = trace_norm_via_embedding(&m);
        assert!((got - want).abs() < 1e-9, "got {got}, oracle {want}");
    }
}

#[test]
fn trace_norm_is_invariant_under_unitary_multiplication() {
    let mut rng = rng(15);
    for _ in 0..100 {
        let m = ginibre(&mut rng, 4, 4);
        let u = random_unitary(&mut rng, 4);
        let v = random_unitary(&mut rng, 4);
        let base = trace_norm(&m).unwrap();
        let rotated = trace_norm(&u.mul(&m).mul(&v)).unwrap();
        assert!((base - rotated).abs() < 1e-9 * base.max(1.0));
    }
}

#[test]
fn partial_trace_peels_off_kron_factors() {
    let mut rng = rng(16);
    for _ in 0..200 {
        let a = ginibre(&mut rng, 2, 2);
        let b = ginibre(&mut rng, 2, 2);
        let joint = kron(&a, &b);
        let first = partial_trace(&joint, 0).unwrap();
        let expect = a.scale(b.trace());
        assert!(first.approx_eq(&expect, 1e-10));
        let second = partial_trace(&joint, 1).unwrap();
        let expect = b.scale(a.trace());
        assert!(second.approx_eq(&expect, 1e-10));
    }
}

#[test]
fn partial_trace_preserves_trace() {
    let mut rng = rng(17);
    for _ in 0..100 {
        let rho = random_state(&mut rng, vec![2, 2]);
        for keep in [0, 1] {
            let reduced = partial_trace(rho.matrix(), keep).unwrap();
            assert!((reduced.trace().re - 1.0).abs() < 1e-12);
        }
    }
}
