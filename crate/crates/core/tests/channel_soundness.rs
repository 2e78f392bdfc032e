//! Channel-level soundness: complete positivity and trace preservation of
//! the cumulative maps, divisibility breakdown exactly where the rates say,
//! and quadrature oracles for the Lorentzian memory kernel.

mod common;

use num_complex::Complex64;
use qipflow_core::channels::{
    apply_joint, choi_matrix, lorentzian_jt, memory_kernel, solve_volterra_jt, ChannelTrajectory,
    LorentzianSpectralDensity, OhmicSpectralDensity,
};
use qipflow_core::numerics::{adaptive_quad, hermitian_eig, partial_trace, ComplexMatrix};
use qipflow_core::states::bell_phi;

fn min_choi_eigenvalue(traj: &ChannelTrajectory, k: usize) -> f64 {
    let choi = choi_matrix(&traj.descriptor_at(k).unwrap());
    hermitian_eig(&choi).unwrap().eigenvalues[0]
}

#[test]
fn cumulative_maps_are_cptp_at_all_times() {
    let mut trajectories = Vec::new();
    for s in [0.5, 1.0, 2.0, 3.0, 6.0] {
        let sd = OhmicSpectralDensity::new(0.5, 1.0, s).unwrap();
        trajectories.push(ChannelTrajectory::dephasing(&sd, 50.0, 501, 1e-9).unwrap());
    }
    for lambda in [10.0, 0.5, 0.1] {
        let sd = LorentzianSpectralDensity::new(1.0, lambda, 0.01).unwrap();
        trajectories.push(ChannelTrajectory::damping(&sd, 60.0, 601).unwrap());
    }
    let half_identity = ComplexMatrix::identity(2).scale_re(0.5);
    for traj in &trajectories {
        for k in 0..traj.len() {
            let min_eig = min_choi_eigenvalue(traj, k);
            assert!(min_eig >= -1e-9, "Choi not PSD at index {k}: {min_eig}");
            let choi = choi_matrix(&traj.descriptor_at(k).unwrap());
            assert!((choi.trace().re - 1.0).abs() < 1e-10);
            // Trace preservation: tracing out the output slot leaves I/2.
            let reduced = partial_trace(&choi, 1).unwrap();
            assert!(reduced.approx_eq(&half_identity, 1e-10));
        }
    }
}

#[test]
fn joint_map_preserves_trace_on_states() {
    let sd = LorentzianSpectralDensity::new(1.0, 0.1, 0.01).unwrap();
    let traj = ChannelTrajectory::damping(&sd, 60.0, 301).unwrap();
    let bell = bell_phi();
    for k in (0..traj.len()).step_by(25) {
        let evolved = apply_joint(&bell, &traj.descriptor_at(k).unwrap()).unwrap();
        assert!((evolved.matrix().trace().re - 1.0).abs() < 1e-10);
    }
}

#[test]
fn intermediate_cp_violation_tracks_rate_sign_for_dephasing() {
    let sd = OhmicSpectralDensity::new(0.5, 1.0, 3.0).unwrap();
    let traj = ChannelTrajectory::dephasing(&sd, 20.0, 801, 1e-10).unwrap();
    let (times, gamma) = match &traj {
        ChannelTrajectory::Dephasing { times, gamma, .. } => (times, gamma),
        _ => unreachable!(),
    };
    for k in 0..traj.len() - 1 {
        let desc = traj.intermediate_map(k, k + 1).unwrap();
        let min_eig = hermitian_eig(&choi_matrix(&desc)).unwrap().eigenvalues[0];
        let violated = min_eig < -1e-12;
        // gamma < 0 strictly inside the step means the factor grew.
        let negative_rate = gamma[k] < 0.0 && gamma[k + 1] < 0.0;
        let positive_rate = gamma[k] > 0.0 && gamma[k + 1] > 0.0;
        if negative_rate {
            assert!(
                violated,
                "step {k} (t = {}) has negative rate but CP intermediate map",
                times[k]
            );
        }
        if positive_rate {
            assert!(
                !violated,
                "step {k} (t = {}) has positive rate but CP-violating map",
                times[k]
            );
        }
    }
}

#[test]
fn intermediate_cp_violation_tracks_amplitude_growth_for_damping() {
    let sd = LorentzianSpectralDensity::new(1.0, 0.5, 0.01).unwrap();
    let traj = ChannelTrajectory::damping(&sd, 30.0, 601).unwrap();
    let j = match &traj {
        ChannelTrajectory::Damping { j, .. } => j,
        _ => unreachable!(),
    };
    for k in 0..traj.len() - 1 {
        if j[k].norm() < 1e-9 {
            continue;
        }
        let desc = traj.intermediate_map(k, k + 1).unwrap();
        let min_eig = hermitian_eig(&choi_matrix(&desc)).unwrap().eigenvalues[0];
        let growing = j[k + 1].norm() > j[k].norm() * (1.0 + 1e-13);
        if growing {
            assert!(min_eig < -1e-12, "step {k}: |J| grew but map stayed CP");
        } else {
            assert!(min_eig >= -1e-9, "step {k}: |J| shrank but map non-CP");
        }
    }
}

/// Oscillatory Fourier integral of the Lorentzian profile:
/// I(s) = 2 int_0^inf cos(u s) / (u^2 + lambda^2) du, evaluated by summing
/// half-period pieces of the cosine (an alternating series with decreasing
/// terms, so truncation is controlled by the last term).
fn lorentzian_cosine_transform(lambda: f64, s: f64) -> f64 {
    if s == 0.0 {
        return std::f64::consts::PI / lambda;
    }
    let half_period = std::f64::consts::PI / s;
    let mut total = 0.0;
    let mut a = 0.0;
    // First piece up to the first zero of cos(us) at u = pi/(2s).
    let mut b = 0.5 * half_period;
    for _ in 0..200_000 {
        let piece = adaptive_quad(
            |u| (u * s).cos() / (u * u + lambda * lambda),
            a,
            b,
            1e-13,
        )
        .unwrap();
        total += piece;
        if piece.abs() < 1e-12 * total.abs().max(1e-6) && a > 10.0 * lambda {
            break;
        }
        a = b;
        b += half_period;
    }
    2.0 * total
}

#[test]
fn memory_kernel_matches_fourier_quadrature() {
    // f(s) = int J(w) e^{i (w0 - w) s} dw. With u = w - w_cav the integral
    // splits into the cosine transform above (the sine part is odd and
    // vanishes), giving f(s) = e^{i delta s} (g0 l^2 / 2 pi) I(s).
    let sd = LorentzianSpectralDensity::new(0.7, 1.3, 0.4).unwrap();
    let prefactor = 0.7 * 1.3 * 1.3 / (2.0 * std::f64::consts::PI);
    for k in 0..10 {
        let s = 0.3 * k as f64;
        let radial = prefactor * lorentzian_cosine_transform(1.3, s);
        let phase = Complex64::new(0.0, 0.4 * s).exp();
        let oracle = phase * radial;
        let closed = memory_kernel(&sd, s);
        assert!(
            (closed - oracle).norm() < 1e-6 * closed.norm().max(1e-12),
            "s = {s}: closed {closed}, quadrature {oracle}"
        );
    }
}

#[test]
fn volterra_solver_agrees_with_closed_form_across_regimes() {
    for (lambda, delta) in [(0.5, 0.0), (0.1, 0.01)] {
        let sd = LorentzianSpectralDensity::new(1.0, lambda, delta).unwrap();
        let times: Vec<f64> = (0..3001).map(|k| 30.0 * k as f64 / 3000.0).collect();
        let solved = solve_volterra_jt(&sd, &times).unwrap();
        let mut max_err: f64 = 0.0;
        for (t, jv) in times.iter().zip(&solved) {
            max_err = max_err.max((jv - lorentzian_jt(&sd, *t)).norm());
        }
        assert!(
            max_err < 1e-4,
            "lambda/gamma0 = {lambda}, delta = {delta}: max err {max_err:.2e}"
        );
    }
}

#[test]
fn volterra_trajectory_builder_round_trip() {
    let sd = LorentzianSpectralDensity::new(1.0, 0.5, 0.0).unwrap();
    let from_solver = ChannelTrajectory::damping_volterra(&sd, 20.0, 2001).unwrap();
    let from_closed = ChannelTrajectory::damping(&sd, 20.0, 2001).unwrap();
    match (&from_solver, &from_closed) {
        (
            ChannelTrajectory::Damping { j: js, .. },
            ChannelTrajectory::Damping { j: jc, .. },
        ) => {
            for (a, b) in js.iter().zip(jc) {
                assert!((a - b).norm() < 1e-4);
            }
        }
        _ => unreachable!(),
    }
}
