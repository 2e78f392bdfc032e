//! Time-parametrized channel descriptions: a grid of times with the
//! per-time channel parameter (Gamma for dephasing, J for damping),
//! intermediate-map extraction and the CSV wire format.

use num_complex::Complex64;

use crate::channels::maps::MapDescriptor;
use crate::channels::spectral::{
    lorentzian_jt, ohmic_rate, LorentzianSpectralDensity, OhmicSpectralDensity,
};
use crate::channels::volterra::solve_volterra_jt;
use crate::error::{Error, Result};
use crate::numerics::adaptive_quad;
use crate::textio::format_sci;

/// Magnitudes below this make an intermediate map singular.
const SINGULAR_TOL: f64 = 1e-12;

/// Slack on the |J| <= 1 trajectory invariant.
const AMPLITUDE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Dephasing,
    Damping,
}

impl ChannelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChannelKind::Dephasing => "dephasing",
            ChannelKind::Damping => "damping",
        }
    }

    /// Natural time unit of the channel, as written in CSV headers.
    pub fn time_unit(self) -> &'static str {
        match self {
            ChannelKind::Dephasing => "1/omega_c",
            ChannelKind::Damping => "1/gamma0",
        }
    }
}

/// A sampled channel trajectory. Times are strictly increasing and start
/// at zero, where the map is the identity (Gamma = 1, J = 1).
#[derive(Debug, Clone)]
pub enum ChannelTrajectory {
    Dephasing {
        times: Vec<f64>,
        /// Decoherence rate gamma(t) at each grid time.
        gamma: Vec<f64>,
        /// Dephasing factor Gamma(t) in (0, 1] at each grid time.
        factor: Vec<f64>,
    },
    Damping {
        times: Vec<f64>,
        /// Damping amplitude J(t), |J| <= 1, at each grid time.
        j: Vec<Complex64>,
    },
}

fn uniform_grid(t_max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 3 {
        return Err(Error::GridTooShort {
            len: points,
            min: 3,
        });
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::ParameterOutOfRange {
            name: "t_max",
            value: t_max,
        });
    }
    Ok((0..points)
        .map(|k| t_max * k as f64 / (points - 1) as f64)
        .collect())
}

impl ChannelTrajectory {
    /// Dephasing trajectory on a uniform grid. The decay exponent is
    /// accumulated segment by segment with adaptive quadrature, with the
    /// overall tolerance split across segments.
    pub fn dephasing(
        sd: &OhmicSpectralDensity,
        t_max: f64,
        points: usize,
        tol: f64,
    ) -> Result<Self> {
        let times = uniform_grid(t_max, points)?;
        let seg_tol = (tol / points as f64).max(1e-15);
        let mut gamma = Vec::with_capacity(points);
        let mut factor = Vec::with_capacity(points);
        let mut exponent = 0.0;
        for (k, &t) in times.iter().enumerate() {
            gamma.push(ohmic_rate(sd, t));
            if k > 0 {
                exponent += adaptive_quad(|x| ohmic_rate(sd, x), times[k - 1], t, seg_tol)?;
            }
            factor.push((-2.0 * exponent).exp().min(1.0));
        }
        Self::dephasing_from_samples(times, gamma, factor)
    }

    /// Damping trajectory from the closed-form amplitude.
    pub fn damping(sd: &LorentzianSpectralDensity, t_max: f64, points: usize) -> Result<Self> {
        let times = uniform_grid(t_max, points)?;
        let j = times.iter().map(|&t| lorentzian_jt(sd, t)).collect();
        Self::damping_from_samples(times, j)
    }

    /// Damping trajectory from the memory-kernel equation instead of the
    /// closed form (uniform grid required by the solver).
    pub fn damping_volterra(
        sd: &LorentzianSpectralDensity,
        t_max: f64,
        points: usize,
    ) -> Result<Self> {
        let times = uniform_grid(t_max, points)?;
        let j = solve_volterra_jt(sd, &times)?;
        Self::damping_from_samples(times, j)
    }

    /// Builds a dephasing trajectory from raw samples, enforcing the
    /// trajectory invariants.
    pub fn dephasing_from_samples(
        times: Vec<f64>,
        gamma: Vec<f64>,
        factor: Vec<f64>,
    ) -> Result<Self> {
        validate_times(&times)?;
        if gamma.len() != times.len() || factor.len() != times.len() {
            return Err(Error::SampleCountMismatch {
                times: times.len(),
                values: gamma.len().min(factor.len()),
            });
        }
        if (factor[0] - 1.0).abs() > 1e-12 {
            return Err(Error::ParameterOutOfRange {
                name: "Gamma(0)",
                value: factor[0],
            });
        }
        for &g in &factor {
            if !(g > 0.0 && g <= 1.0) {
                return Err(Error::ParameterOutOfRange {
                    name: "Gamma",
                    value: g,
                });
            }
        }
        Ok(ChannelTrajectory::Dephasing {
            times,
            gamma,
            factor,
        })
    }

    /// Builds a damping trajectory from raw samples, enforcing the
    /// trajectory invariants.
    pub fn damping_from_samples(times: Vec<f64>, j: Vec<Complex64>) -> Result<Self> {
        validate_times(&times)?;
        if j.len() != times.len() {
            return Err(Error::SampleCountMismatch {
                times: times.len(),
                values: j.len(),
            });
        }
        if (j[0] - Complex64::ONE).norm() > 1e-12 {
            return Err(Error::ParameterOutOfRange {
                name: "J(0)",
                value: j[0].norm(),
            });
        }
        for v in &j {
            if !(v.norm() <= 1.0 + AMPLITUDE_SLACK) {
                return Err(Error::ParameterOutOfRange {
                    name: "|J|",
                    value: v.norm(),
                });
            }
        }
        Ok(ChannelTrajectory::Damping { times, j })
    }

    pub fn kind(&self) -> ChannelKind {
        match self {
            ChannelTrajectory::Dephasing { .. } => ChannelKind::Dephasing,
            ChannelTrajectory::Damping { .. } => ChannelKind::Damping,
        }
    }

    pub fn times(&self) -> &[f64] {
        match self {
            ChannelTrajectory::Dephasing { times, .. } => times,
            ChannelTrajectory::Damping { times, .. } => times,
        }
    }

    pub fn len(&self) -> usize {
        self.times().len()
    }

    pub fn is_empty(&self) -> bool {
        false // validated trajectories have at least 3 points
    }

    /// Cumulative map from time zero to grid point `i`.
    pub fn descriptor_at(&self, i: usize) -> Result<MapDescriptor> {
        self.check_index(i)?;
        Ok(match self {
            ChannelTrajectory::Dephasing { factor, .. } => MapDescriptor::Dephasing {
                factor: factor[i],
            },
            ChannelTrajectory::Damping { j, .. } => MapDescriptor::Damping { j: j[i] },
        })
    }

    /// Intermediate map between grid points `i <= k`, defined by the
    /// parameter ratio. A near-vanishing denominator is flagged (not fatal:
    /// callers skip the interval and record it).
    pub fn intermediate_map(&self, i: usize, k: usize) -> Result<MapDescriptor> {
        self.check_index(i)?;
        self.check_index(k)?;
        if k < i {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: i + 1,
            });
        }
        match self {
            ChannelTrajectory::Dephasing { factor, .. } => {
                if factor[i].abs() < SINGULAR_TOL {
                    return Err(Error::SingularIntermediateMap {
                        index: i,
                        magnitude: factor[i].abs(),
                    });
                }
                Ok(MapDescriptor::Dephasing {
                    factor: factor[k] / factor[i],
                })
            }
            ChannelTrajectory::Damping { j, .. } => {
                if j[i].norm() < SINGULAR_TOL {
                    return Err(Error::SingularIntermediateMap {
                        index: i,
                        magnitude: j[i].norm(),
                    });
                }
                Ok(MapDescriptor::Damping { j: j[k] / j[i] })
            }
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            })
        }
    }

    /// CSV serialization: `t,gamma,Gamma` (dephasing) or `t,ReJ,ImJ,absJ`
    /// (damping), preceded by a `# time_unit=...` comment line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# time_unit={}\n", self.kind().time_unit()));
        match self {
            ChannelTrajectory::Dephasing {
                times,
                gamma,
                factor,
            } => {
                out.push_str("t,gamma,Gamma\n");
                for i in 0..times.len() {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        format_sci(times[i]),
                        format_sci(gamma[i]),
                        format_sci(factor[i])
                    ));
                }
            }
            ChannelTrajectory::Damping { times, j } => {
                out.push_str("t,ReJ,ImJ,absJ\n");
                for i in 0..times.len() {
                    let re = format_sci(j[i].re);
                    let im = format_sci(j[i].im);
                    // Derive absJ from the printed 12-digit values so that
                    // parse -> emit reproduces the file byte for byte.
                    let abs = Complex64::new(
                        crate::textio::parse_sci(&re).unwrap(),
                        crate::textio::parse_sci(&im).unwrap(),
                    )
                    .norm();
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        format_sci(times[i]),
                        re,
                        im,
                        format_sci(abs)
                    ));
                }
            }
        }
        out
    }

    /// Parses a trajectory CSV written by `to_csv`.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut header: Option<(usize, Vec<String>)> = None;
        let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if header.is_none() {
                header = Some((
                    line_no,
                    trimmed.split(',').map(|s| s.trim().to_string()).collect(),
                ));
                continue;
            }
            let fields: Option<Vec<f64>> = trimmed
                .split(',')
                .map(crate::textio::parse_sci)
                .collect();
            match fields {
                Some(v) => rows.push((line_no, v)),
                None => {
                    return Err(Error::CsvFormat {
                        line: line_no,
                        reason: "non-numeric field".into(),
                    })
                }
            }
        }
        let (header_line, columns) = header.ok_or(Error::CsvFormat {
            line: 0,
            reason: "missing header row".into(),
        })?;
        let expect_width = columns.len();
        for (line_no, row) in &rows {
            if row.len() != expect_width {
                return Err(Error::CsvFormat {
                    line: *line_no,
                    reason: format!("expected {expect_width} fields, got {}", row.len()),
                });
            }
        }
        let times: Vec<f64> = rows.iter().map(|(_, r)| r[0]).collect();
        match columns.as_slice() {
            [t, g, f] if t == "t" && g == "gamma" && f == "Gamma" => {
                let gamma = rows.iter().map(|(_, r)| r[1]).collect();
                let factor = rows.iter().map(|(_, r)| r[2]).collect();
                Self::dephasing_from_samples(times, gamma, factor)
            }
            [t, re, im, abs] if t == "t" && re == "ReJ" && im == "ImJ" && abs == "absJ" => {
                let j = rows
                    .iter()
                    .map(|(_, r)| Complex64::new(r[1], r[2]))
                    .collect();
                Self::damping_from_samples(times, j)
            }
            _ => Err(Error::CsvFormat {
                line: header_line,
                reason: format!("unrecognized header `{}`", columns.join(",")),
            }),
        }
    }
}

fn validate_times(times: &[f64]) -> Result<()> {
    if times.len() < 3 {
        return Err(Error::GridTooShort {
            len: times.len(),
            min: 3,
        });
    }
    for i in 1..times.len() {
        if !(times[i] > times[i - 1]) {
            return Err(Error::GridNotIncreasing { index: i });
        }
    }
    Ok(())
}
