#![allow(clippy::needless_range_loop)]

//! Property suites for the interferometric power: range, invariances,
//! monotonicity under local channels, and consistency of the closed form
//! with the direction-sweep oracle and with the trace identity.

mod common;

use common::*;
use num_complex::Complex64;
use rand::Rng;
use qipflow_core::numerics::{hermitian_eig, kron, ComplexMatrix};
use qipflow_core::qip::{
    fibonacci_sphere, fisher_information, qip, qip_bruteforce, qip_sqrt, w_matrix,
    LocalHamiltonian,
};
use qipflow_core::states::DensityMatrix;

#[test]
fn qip_stays_in_unit_interval() {
    let mut rng = rng(21);
    for _ in 0..300 {
        let rho = random_state(&mut rng, vec![2, 2]);
        let q = qip(&rho).unwrap();
        assert!((0.0..=1.0).contains(&q), "q = {q}");
    }
}

#[test]
fn qip_is_invariant_under_local_unitaries() {
    let mut rng = rng(22);
    for _ in 0..100 {
        let rho = random_state(&mut rng, vec![2, 2]);
        let ua = random_unitary(&mut rng, 2);
        let ub = random_unitary(&mut rng, 2);
        let u = kron(&ua, &ub);
        let rotated =
            DensityMatrix::new(u.mul(rho.matrix()).mul(&u.dagger()), vec![2, 2]).unwrap();
        let q0 = qip(&rho).unwrap();
        let q1 = qip(&rotated).unwrap();
        assert!((q0 - q1).abs() < 1e-8, "{q0} vs {q1}");
    }
}

#[test]
fn closed_form_agrees_with_direction_sweep() {
    // Smaller-scale version of the oracle-equivalence acceptance run.
    let mut rng = rng(23);
    for _ in 0..40 {
        let rho = random_state(&mut rng, vec![2, 2]);
        let closed = qip(&rho).unwrap();
        let swept = qip_bruteforce(&rho, 5000).unwrap();
        assert!(swept >= closed - 1e-9, "sweep must upper-bound the closed form");
        assert!((swept - closed).abs() < 4e-3, "closed {closed}, sweep {swept}");
    }
}

#[test]
fn qip_vanishes_on_ancilla_classical_states() {
    // sum_i p_i rho_a^(i) (x) |i><i|_b with the computational basis on b.
    let mut rng = rng(24);
    for _ in 0..50 {
        let p: f64 = rng.gen_range(0.05..0.95);
        let rho_a0 = random_state(&mut rng, vec![2]);
        let rho_a1 = random_state(&mut rng, vec![2]);
        let ket0 = ComplexMatrix::basis_column(2, 0);
        let ket1 = ComplexMatrix::basis_column(2, 1);
        let proj0 = ket0.mul(&ket0.dagger());
        let proj1 = ket1.mul(&ket1.dagger());
        let m = kron(rho_a0.matrix(), &proj0)
            .scale_re(p)
            .add(&kron(rho_a1.matrix(), &proj1).scale_re(1.0 - p));
        let rho = DensityMatrix::new(m, vec![2, 2]).unwrap();
        let q = qip(&rho).unwrap();
        assert!(q <= 1e-8, "classical state has q = {q}");
    }
}

#[test]
fn qip_grows_with_purity_weight_when_mixing_toward_identity() {
    // For rho(p) = p |psi><psi| + (1-p) I/4, the QIP is nondecreasing in p
    // (confirmed against the direction-sweep oracle; mixing in more
    // identity can only wash correlations out).
    let mut rng = rng(25);
    for _ in 0..25 {
        let psi = {
            let g = ginibre(&mut rng, 4, 1);
            let norm: f64 = g.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            g.scale_re(1.0 / norm)
        };
        let pure = psi.mul(&psi.dagger());
        let eye = ComplexMatrix::identity(4).scale_re(0.25);
        let mut prev_closed = -1.0;
        let mut prev_oracle = -1.0;
        for k in 0..=10 {
            let p = k as f64 / 10.0;
            let m = pure.scale_re(p).add(&eye.scale_re(1.0 - p));
            let rho = DensityMatrix::new(m, vec![2, 2]).unwrap();
            let closed = qip(&rho).unwrap();
            let oracle = qip_bruteforce(&rho, 2000).unwrap();
            assert!(closed >= prev_closed - 1e-9, "closed form dipped at p = {p}");
            assert!(oracle >= prev_oracle - 1e-9, "oracle dipped at p = {p}");
            prev_closed = closed;
            prev_oracle = oracle;
        }
    }
}

#[test]
fn qip_is_monotone_under_local_channels_on_the_system() {
    let mut rng = rng(26);
    for _ in 0..200 {
        let rho = random_state(&mut rng, vec![2, 2]);
        let kraus = random_qubit_kraus_pair(&mut rng);
        let mapped = apply_kraus_on_system(&rho, &kraus);
        let before = qip(&rho).unwrap();
        let after = qip(&mapped).unwrap();
        assert!(
            after <= before + 1e-8,
            "local channel increased qip: {before} -> {after}"
        );
    }
}

#[test]
fn fisher_matches_trace_form_identity() {
    // F must equal 4 tr(rho H^2) - sum 8 e_m e_n/(e_m+e_n) |<m|H|n>|^2.
    let mut rng = rng(27);
    for _ in 0..100 {
        let rho = random_state(&mut rng, vec![2, 2]);
        let r = {
            let v = [gaussian(&mut rng), gaussian(&mut rng), gaussian(&mut rng)];
            LocalHamiltonian::new(v).unwrap()
        };
        let f = fisher_information(&rho, &r).unwrap();

        let h = kron(&ComplexMatrix::identity(2), &r.matrix());
        let trace_term = 4.0 * rho.matrix().mul(&h).mul(&h).trace().re;
        let eig = hermitian_eig(rho.matrix()).unwrap();
        let hv = eig.eigenvectors.dagger().mul(&h).mul(&eig.eigenvectors);
        let mut correction = 0.0;
        for m in 0..4 {
            for n in 0..4 {
                let (em, en) = (eig.eigenvalues[m].max(0.0), eig.eigenvalues[n].max(0.0));
                if em + en > 1e-30 {
                    correction += 8.0 * em * en / (em + en) * hv[(m, n)].norm_sqr();
                }
            }
        }
        assert!(
            (f - (trace_term - correction)).abs() < 1e-9,
            "spectral {f} vs trace {}",
            trace_term - correction
        );
    }
}

#[test]
fn fisher_lower_bounds_against_w_quadratic_form() {
    // F/4 = 1 - r^T W r >= 1 - lambda_max for every unit direction.
    let mut rng = rng(28);
    for _ in 0..50 {
        let rho = random_state(&mut rng, vec![2, 2]);
        let q = qip(&rho).unwrap();
        for dir in fibonacci_sphere(100) {
            let f4 =
                fisher_information(&rho, &LocalHamiltonian::new(dir).unwrap()).unwrap() / 4.0;
            assert!(f4 >= q - 1e-9);
        }
    }
}

#[test]
fn w_matrix_invariants_on_random_states() {
    let mut rng = rng(29);
    for _ in 0..200 {
        let rho = random_state(&mut rng, vec![2, 2]);
        let w = w_matrix(&rho).unwrap();
        let e = w.entries();
        for i in 0..3 {
            for j in 0..3 {
                assert!((e[i][j] - e[j][i]).abs() < 1e-10);
            }
        }
        let eigs = w.eigenvalues().unwrap();
        assert!(eigs[0] >= -1e-10, "W must be PSD, min eig {}", eigs[0]);
        assert!(eigs[2] <= 1.0 + 1e-10, "W eigenvalues cap at 1");
    }
}

#[test]
fn sqrt_convention_is_pointwise_root_of_eq4() {
    let mut rng = rng(30);
    for _ in 0..50 {
        let rho = random_state(&mut rng, vec![2, 2]);
        let a = qip(&rho).unwrap();
        let b = qip_sqrt(&rho).unwrap();
        assert!((b * b - a).abs() < 1e-12);
    }
}

#[test]
fn damping_identity_spot_check() {
    // Werner r = 1 evolved by amplitude damping: qip_sqrt equals |J|.
    use qipflow_core::channels::apply_amplitude_damping_joint;
    use qipflow_core::states::werner;
    let bell = werner(1.0).unwrap();
    for j in [
        Complex64::new(0.9, 0.1),
        Complex64::new(0.3, -0.5),
        Complex64::new(0.05, 0.0),
        Complex64::new(0.0, 0.7),
    ] {
        let evolved = apply_amplitude_damping_joint(&bell, j).unwrap();
        let q = qip_sqrt(&evolved).unwrap();
        assert!((q - j.norm()).abs() < 1e-8, "q = {q}, |J| = {}", j.norm());
    }
}
