//! Non-Markovianity quantifiers: the QIP backflow measure, its analytic
//! dephasing form, the trace-distance (BLP) and mutual-information
//! measures, the divisibility (RHP) measure, and lower-bound searches over
//! initial-state families.

mod report;

pub use report::{MeasureKind, MeasureReport};

use crate::channels::{
    apply_joint, apply_system, choi_matrix, dephasing_factor, ohmic_rate, ChannelTrajectory,
    OhmicSpectralDensity,
};
use crate::error::{Error, Result};
use crate::numerics::{sampled_derivative, trace_norm, ComplexMatrix};
use crate::qip::{qip_with, Convention};
use crate::states::{bell_phi, mutual_information, trace_distance, werner, DensityMatrix};

/// Per-step RHP contributions below this rate are treated as exact zero.
const RHP_RATE_TOL: f64 = 1e-10;

/// Q(rho_ab(t)) at every grid time of the channel, for the given initial
/// joint state, under the chosen convention.
pub fn qip_flow(
    channel: &ChannelTrajectory,
    rho0: &DensityMatrix,
    convention: Convention,
) -> Result<Vec<f64>> {
    rho0.require_two_qubit()?;
    (0..channel.len())
        .map(|k| {
            let evolved = apply_joint(rho0, &channel.descriptor_at(k)?)?;
            qip_with(&evolved, convention)
        })
        .collect()
}

/// Locations where the sampled derivative is positive, with interval edges
/// linearly interpolated between grid points, and the summed endpoint
/// differences of the monitored quantity over those intervals.
fn detect_backflow(times: &[f64], samples: &[f64]) -> Result<(Vec<(f64, f64)>, f64)> {
    let d = sampled_derivative(times, samples)?;
    let n = times.len();
    let interp = |t: f64| -> f64 {
        let k = times.partition_point(|&x| x <= t).clamp(1, n - 1);
        let (ta, tb) = (times[k - 1], times[k]);
        let (fa, fb) = (samples[k - 1], samples[k]);
        fa + (fb - fa) * (t - ta) / (tb - ta)
    };

    let mut intervals = Vec::new();
    let mut inside = d[0] > 0.0;
    let mut start = times[0];
    for k in 0..n - 1 {
        if inside && d[k + 1] <= 0.0 {
            // d[k] > 0 >= d[k+1]: the crossing lies inside the step.
            let frac = d[k] / (d[k] - d[k + 1]);
            intervals.push((start, times[k] + frac * (times[k + 1] - times[k])));
            inside = false;
        } else if !inside && d[k + 1] > 0.0 {
            let frac = if d[k] < 0.0 {
                -d[k] / (d[k + 1] - d[k])
            } else {
                0.0
            };
            start = times[k] + frac * (times[k + 1] - times[k]);
            inside = true;
        }
    }
    if inside {
        intervals.push((start, times[n - 1]));
    }

    let value = intervals
        .iter()
        .map(|&(a, b)| (interp(b) - interp(a)).max(0.0))
        .sum();
    Ok((intervals, value))
}

/// Backflow measure of a monitored sample sequence: the summed increase of
/// the samples over the windows where their derivative is positive.
pub fn backflow_measure(times: &[f64], q_samples: &[f64]) -> Result<MeasureReport> {
    let (intervals, value) = detect_backflow(times, q_samples)?;
    Ok(MeasureReport {
        measure: MeasureKind::Qip,
        value,
        intervals,
        times: times.to_vec(),
        samples: q_samples.to_vec(),
        convention: None,
        initial_state_label: "samples".into(),
        skipped_steps: Vec::new(),
    })
}

/// QIP-based non-Markovianity for a fixed initial state.
pub fn n_qip(
    channel: &ChannelTrajectory,
    rho0: &DensityMatrix,
    convention: Convention,
    label: &str,
) -> Result<MeasureReport> {
    let samples = qip_flow(channel, rho0, convention)?;
    let (intervals, value) = detect_backflow(channel.times(), &samples)?;
    Ok(MeasureReport {
        measure: MeasureKind::Qip,
        value,
        intervals,
        times: channel.times().to_vec(),
        samples,
        convention: Some(convention),
        initial_state_label: label.into(),
        skipped_steps: Vec::new(),
    })
}

/// Analytic dephasing value: the quadrature of -2 Gamma(t) gamma(t) over
/// the windows where gamma < 0, with window edges located by bisection on
/// the rate's sign changes.
///
/// Since dGamma/dt = -2 gamma Gamma, each window integrates exactly to
/// Gamma(t_end) - Gamma(t_start); the quadrature lives inside the
/// evaluation of Gamma.
pub fn n_q_dephasing_analytic(sd: &OhmicSpectralDensity, t_max: f64, tol: f64) -> Result<f64> {
    if !(t_max > 0.0) {
        return Err(Error::ParameterOutOfRange {
            name: "t_max",
            value: t_max,
        });
    }
    let windows = negative_rate_windows(sd, t_max);
    let mut value = 0.0;
    for (a, b) in windows {
        let ga = dephasing_factor(sd, a, tol)?;
        let gb = dephasing_factor(sd, b, tol)?;
        value += gb - ga;
    }
    Ok(value.max(0.0))
}

/// Sign-change windows of the Ohmic rate on [0, t_max], refined by bisection.
fn negative_rate_windows(sd: &OhmicSpectralDensity, t_max: f64) -> Vec<(f64, f64)> {
    const SCAN_POINTS: usize = 4096;
    const BISECTIONS: usize = 80;
    let grid: Vec<f64> = (0..=SCAN_POINTS)
        .map(|k| t_max * k as f64 / SCAN_POINTS as f64)
        .collect();
    let mut crossings = Vec::new();
    for w in grid.windows(2) {
        let (fa, fb) = (ohmic_rate(sd, w[0]), ohmic_rate(sd, w[1]));
        if (fa < 0.0) != (fb < 0.0) {
            let (mut lo, mut hi) = (w[0], w[1]);
            let mut flo = fa;
            for _ in 0..BISECTIONS {
                let mid = 0.5 * (lo + hi);
                let fmid = ohmic_rate(sd, mid);
                if (flo < 0.0) == (fmid < 0.0) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            crossings.push(0.5 * (lo + hi));
        }
    }
    let mut windows = Vec::new();
    let mut open: Option<f64> = None;
    for c in crossings {
        if ohmic_rate(sd, (c + 1e-9 * t_max).min(t_max)) < 0.0 {
            open = Some(c);
        } else if let Some(a) = open.take() {
            windows.push((a, c));
        }
    }
    if let Some(a) = open {
        windows.push((a, t_max));
    }
    windows
}

/// Trace-distance (distinguishability) measure for an evolving state pair
/// on the system qubit.
pub fn n_blp(
    channel: &ChannelTrajectory,
    pair: (&DensityMatrix, &DensityMatrix),
    label: &str,
) -> Result<MeasureReport> {
    let samples: Vec<f64> = (0..channel.len())
        .map(|k| {
            let desc = channel.descriptor_at(k)?;
            let a = apply_system(pair.0, &desc)?;
            let b = apply_system(pair.1, &desc)?;
            trace_distance(&a, &b)
        })
        .collect::<Result<_>>()?;
    let (intervals, value) = detect_backflow(channel.times(), &samples)?;
    Ok(MeasureReport {
        measure: MeasureKind::Blp,
        value,
        intervals,
        times: channel.times().to_vec(),
        samples,
        convention: None,
        initial_state_label: label.into(),
        skipped_steps: Vec::new(),
    })
}

/// Mutual-information measure for an evolving joint state.
pub fn n_mutual(
    channel: &ChannelTrajectory,
    rho0: &DensityMatrix,
    label: &str,
) -> Result<MeasureReport> {
    rho0.require_two_qubit()?;
    let samples: Vec<f64> = (0..channel.len())
        .map(|k| {
            let evolved = apply_joint(rho0, &channel.descriptor_at(k)?)?;
            mutual_information(&evolved)
        })
        .collect::<Result<_>>()?;
    let (intervals, value) = detect_backflow(channel.times(), &samples)?;
    Ok(MeasureReport {
        measure: MeasureKind::MutualInformation,
        value,
        intervals,
        times: channel.times().to_vec(),
        samples,
        convention: None,
        initial_state_label: label.into(),
        skipped_steps: Vec::new(),
    })
}

/// Divisibility (RHP-style) measure: per grid step, the Choi trace-norm
/// excess of the intermediate map, g = (||Choi||_1 - 1) / dt, accumulated
/// over the steps where g exceeds 1e-10. Singular steps are skipped and
/// recorded. The monitored samples are the running total, so the report
/// intervals are exactly the CP-violating step runs.
pub fn n_rhp(channel: &ChannelTrajectory) -> Result<MeasureReport> {
    let times = channel.times();
    let n = times.len();
    let mut samples = Vec::with_capacity(n);
    samples.push(0.0);
    let mut skipped = Vec::new();
    let mut contributing = vec![false; n - 1];
    for k in 0..n - 1 {
        let dt = times[k + 1] - times[k];
        let contribution = match channel.intermediate_map(k, k + 1) {
            Ok(desc) => {
                let excess = trace_norm(&choi_matrix(&desc))? - 1.0;
                if excess / dt > RHP_RATE_TOL {
                    contributing[k] = true;
                    excess
                } else {
                    0.0
                }
            }
            Err(Error::SingularIntermediateMap { index, .. }) => {
                skipped.push(index);
                0.0
            }
            Err(e) => return Err(e),
        };
        samples.push(samples[k] + contribution);
    }
    let value = samples[n - 1];
    let mut intervals = Vec::new();
    let mut k = 0;
    while k < n - 1 {
        if contributing[k] {
            let start = times[k];
            while k < n - 1 && contributing[k] {
                k += 1;
            }
            intervals.push((start, times[k]));
        } else {
            k += 1;
        }
    }
    Ok(MeasureReport {
        measure: MeasureKind::Rhp,
        value,
        intervals,
        times: times.to_vec(),
        samples,
        convention: None,
        initial_state_label: "choi".into(),
        skipped_steps: skipped,
    })
}

/// Families of initial states over which the lower-bound search runs.
#[derive(Debug, Clone)]
pub enum InitialStateFamily {
    /// The single maximally entangled state |Phi>.
    Bell,
    /// Werner states at the given r values.
    WernerGrid(Vec<f64>),
    /// Pure states cos(theta)|00> + sin(theta)|11> at the given angles.
    PureSchmidtGrid(Vec<f64>),
}

impl InitialStateFamily {
    /// 21-point Werner grid on [0, 1].
    pub fn default_werner_grid() -> Self {
        InitialStateFamily::WernerGrid((0..=20).map(|k| k as f64 / 20.0).collect())
    }

    /// 64 Schmidt angles on [0, pi/2].
    pub fn default_pure_grid() -> Self {
        let n = 64;
        InitialStateFamily::PureSchmidtGrid(
            (0..n)
                .map(|k| std::f64::consts::FRAC_PI_2 * k as f64 / (n - 1) as f64)
                .collect(),
        )
    }

    pub fn members(&self) -> Result<Vec<(String, DensityMatrix)>> {
        match self {
            InitialStateFamily::Bell => Ok(vec![("bell".into(), bell_phi())]),
            InitialStateFamily::WernerGrid(rs) => rs
                .iter()
                .map(|&r| Ok((format!("werner(r={r:.4})"), werner(r)?)))
                .collect(),
            InitialStateFamily::PureSchmidtGrid(thetas) => thetas
                .iter()
                .map(|&theta| Ok((format!("schmidt(theta={theta:.6})"), schmidt_state(theta))))
                .collect(),
        }
    }
}

fn schmidt_state(theta: f64) -> DensityMatrix {
    let mut ket = ComplexMatrix::zeros(4, 1);
    ket[(0, 0)] = num_complex::Complex64::new(theta.cos(), 0.0);
    ket[(3, 0)] = num_complex::Complex64::new(theta.sin(), 0.0);
    DensityMatrix::new(ket.mul(&ket.dagger()), vec![2, 2])
        .expect("Schmidt-form pure state is valid")
}

/// Best (maximal) backflow measure over a family of initial states; a
/// lower bound on the maximization over all states. The winning report
/// carries the label of the achieving state. Members are evaluated in
/// input order and ties keep the earliest.
pub fn optimize_initial_state(
    channel: &ChannelTrajectory,
    family: &InitialStateFamily,
    convention: Convention,
) -> Result<MeasureReport> {
    let members = family.members()?;
    if members.is_empty() {
        return Err(Error::ParameterOutOfRange {
            name: "family size",
            value: 0.0,
        });
    }
    let mut best: Option<MeasureReport> = None;
    for (label, state) in &members {
        let report = n_qip(channel, state, convention, label)?;
        let replace = match &best {
            None => true,
            Some(b) => report.value > b.value,
        };
        if replace {
            best = Some(report);
        }
    }
    Ok(best.expect("family is nonempty"))
}
