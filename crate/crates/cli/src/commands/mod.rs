//! Shared experiment resolution: channel setup, initial states, state
//! pairs, and output plumbing.

pub mod evolve;
pub mod measure;
pub mod plot_script;
pub mod qip_flow;
pub mod sweep;

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use qipflow_core::channels::{
    ChannelKind, ChannelTrajectory, LorentzianSpectralDensity, OhmicSpectralDensity,
};
use qipflow_core::numerics::ComplexMatrix;
use qipflow_core::qip::Convention;
use qipflow_core::states::{bell_phi, werner, DensityMatrix};

use crate::config::Config;
use crate::{ChannelArgs, Cli, CliError, PairArgs, StateArgs};

/// Defaults for the three reference studies.
const DEFAULT_ALPHA: f64 = 0.3;
const DEFAULT_S: f64 = 3.0;
const DEFAULT_LAMBDA: f64 = 0.5;
const DEFAULT_DELTA: f64 = 0.01;
const DEPHASING_GRID: (f64, usize) = (50.0, 4001);
const DAMPING_GRID: (f64, usize) = (60.0, 6001);

pub struct Globals {
    pub out: Option<PathBuf>,
    pub convention: Convention,
    pub tol: f64,
    pub grid_points: Option<usize>,
    pub t_max: Option<f64>,
}

impl Globals {
    pub fn resolve(cfg: &Config, cli: &Cli) -> Result<Self, CliError> {
        let convention: Convention = cfg
            .resolve_string("convention", cli.convention.as_deref(), "sqrt")
            .parse()
            .map_err(CliError::Config)?;
        let tol = cfg.resolve_f64("tol", cli.tol, 1e-8)?;
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(CliError::Config(format!(
                "--tol must be a positive number, got {tol}"
            )));
        }
        let grid_points = match cli.grid_points {
            Some(v) => Some(v),
            None => match cfg.resolve_usize("grid-points", None, usize::MAX)? {
                usize::MAX => None,
                v => Some(v),
            },
        };
        let t_max = match cli.t_max {
            Some(v) => Some(v),
            None => match cfg.resolve_f64("t-max", None, f64::NAN)? {
                v if v.is_nan() => None,
                v => Some(v),
            },
        };
        Ok(Self {
            out: cli.out.clone(),
            convention,
            tol,
            grid_points,
            t_max,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    ClosedForm,
    Volterra,
}

pub enum ChannelSetup {
    Dephasing {
        sd: OhmicSpectralDensity,
        alpha: f64,
        s: f64,
    },
    Damping {
        sd: LorentzianSpectralDensity,
        lambda: f64,
        delta: f64,
        solver: Solver,
    },
}

impl ChannelSetup {
    pub fn resolve(
        cfg: &Config,
        args: &ChannelArgs,
        solver_flag: Option<&str>,
    ) -> Result<Self, CliError> {
        let kind = cfg.resolve_string("channel", args.channel.as_deref(), "");
        match kind.as_str() {
            "dephasing" => {
                let alpha = cfg.resolve_f64("alpha", args.alpha, DEFAULT_ALPHA)?;
                let s = cfg.resolve_f64("S", args.s, DEFAULT_S)?;
                Ok(ChannelSetup::Dephasing {
                    sd: OhmicSpectralDensity::new(alpha, 1.0, s)?,
                    alpha,
                    s,
                })
            }
            "damping" => {
                let lambda =
                    cfg.resolve_f64("lambda-over-gamma0", args.lambda_over_gamma0, DEFAULT_LAMBDA)?;
                let delta = cfg.resolve_f64("delta", args.delta, DEFAULT_DELTA)?;
                let solver = match cfg.resolve_string("solver", solver_flag, "closed-form").as_str()
                {
                    "closed-form" => Solver::ClosedForm,
                    "volterra" => Solver::Volterra,
                    other => {
                        return Err(CliError::Config(format!(
                            "unknown --solver `{other}` (expected closed-form or volterra)"
                        )))
                    }
                };
                Ok(ChannelSetup::Damping {
                    sd: LorentzianSpectralDensity::new(1.0, lambda, delta)?,
                    lambda,
                    delta,
                    solver,
                })
            }
            "" => Err(CliError::Config(
                "missing required flag --channel (or config key `channel`); \
                 expected dephasing or damping"
                    .into(),
            )),
            other => Err(CliError::Config(format!(
                "unknown --channel `{other}` (expected dephasing or damping)"
            ))),
        }
    }

    pub fn kind(&self) -> ChannelKind {
        match self {
            ChannelSetup::Dephasing { .. } => ChannelKind::Dephasing,
            ChannelSetup::Damping { .. } => ChannelKind::Damping,
        }
    }

    pub fn grid(&self, globals: &Globals) -> (f64, usize) {
        let (t_default, n_default) = match self.kind() {
            ChannelKind::Dephasing => DEPHASING_GRID,
            ChannelKind::Damping => DAMPING_GRID,
        };
        (
            globals.t_max.unwrap_or(t_default),
            globals.grid_points.unwrap_or(n_default),
        )
    }

    pub fn build(&self, globals: &Globals) -> Result<ChannelTrajectory, CliError> {
        let (t_max, points) = self.grid(globals);
        Ok(match self {
            ChannelSetup::Dephasing { sd, .. } => {
                ChannelTrajectory::dephasing(sd, t_max, points, globals.tol)?
            }
            ChannelSetup::Damping { sd, solver, .. } => match solver {
                Solver::ClosedForm => ChannelTrajectory::damping(sd, t_max, points)?,
                Solver::Volterra => ChannelTrajectory::damping_volterra(sd, t_max, points)?,
            },
        })
    }

    /// `#`-prefixed metadata lines describing the channel parameters.
    pub fn metadata(&self) -> String {
        match self {
            ChannelSetup::Dephasing { alpha, s, .. } => format!(
                "# channel=dephasing\n# alpha={alpha}\n# S={s}\n# time_unit=1/omega_c\n"
            ),
            ChannelSetup::Damping { lambda, delta, .. } => format!(
                "# channel=damping\n# lambda_over_gamma0={lambda}\n# delta={delta}\n\
                 # time_unit=1/gamma0\n"
            ),
        }
    }
}

pub struct InitialState {
    pub label: String,
    pub state: DensityMatrix,
}

impl InitialState {
    pub fn resolve(cfg: &Config, args: &StateArgs) -> Result<Self, CliError> {
        let kind = cfg.resolve_string("state", args.state.as_deref(), "bell");
        match kind.as_str() {
            "bell" => Ok(Self {
                label: "bell".into(),
                state: bell_phi(),
            }),
            "werner" => {
                let r = cfg.resolve_f64("werner-r", args.werner_r, 1.0)?;
                Ok(Self {
                    label: format!("werner(r={r})"),
                    state: werner(r)?,
                })
            }
            "schmidt" => {
                let theta = cfg.resolve_f64(
                    "schmidt-theta",
                    args.schmidt_theta,
                    std::f64::consts::FRAC_PI_4,
                )?;
                let mut ket = ComplexMatrix::zeros(4, 1);
                ket[(0, 0)] = Complex64::new(theta.cos(), 0.0);
                ket[(3, 0)] = Complex64::new(theta.sin(), 0.0);
                let state = DensityMatrix::new(ket.mul(&ket.dagger()), vec![2, 2])?;
                Ok(Self {
                    label: format!("schmidt(theta={theta})"),
                    state,
                })
            }
            "file" => {
                let Some(path) = &args.state_file else {
                    return Err(CliError::Config(
                        "--state file requires --state-file <PATH>".into(),
                    ));
                };
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Config(format!("cannot read {}: {e}", path.display()))
                })?;
                let state = DensityMatrix::from_state_text(&text)?;
                if !state.is_two_qubit() {
                    return Err(CliError::Config(format!(
                        "state file {} must hold a (2,2) state",
                        path.display()
                    )));
                }
                Ok(Self {
                    label: format!("file({})", path.display()),
                    state,
                })
            }
            other => Err(CliError::Config(format!(
                "unknown --state `{other}` (expected bell, werner, schmidt or file)"
            ))),
        }
    }
}

fn qubit_from_bloch(v: [f64; 3]) -> Result<DensityMatrix, CliError> {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if norm > 1.0 + 1e-12 {
        return Err(CliError::Config(format!(
            "Bloch vector must satisfy |v| <= 1, got |v| = {norm}"
        )));
    }
    let m = ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(0.5 * (1.0 + v[2]), 0.0),
            Complex64::new(0.5 * v[0], -0.5 * v[1]),
            Complex64::new(0.5 * v[0], 0.5 * v[1]),
            Complex64::new(0.5 * (1.0 - v[2]), 0.0),
        ],
    )?;
    Ok(DensityMatrix::new(m, vec![2])?)
}

fn parse_bloch(text: &str, flag: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!(
            "{flag} expects three comma-separated components, got `{text}`"
        )));
    }
    let mut v = [0.0; 3];
    for (out, p) in v.iter_mut().zip(&parts) {
        *out = p.trim().parse::<f64>().map_err(|_| {
            CliError::Config(format!("{flag}: invalid component `{p}` in `{text}`"))
        })?;
    }
    Ok(v)
}

pub struct StatePair {
    pub label: String,
    pub a: DensityMatrix,
    pub b: DensityMatrix,
}

impl StatePair {
    pub fn resolve(cfg: &Config, args: &PairArgs, kind: ChannelKind) -> Result<Self, CliError> {
        let choice = cfg.resolve_string("pair", args.pair.as_deref(), "auto");
        let effective = match choice.as_str() {
            // The sensitivity-optimal pairs: equatorial for phase damping,
            // poles for amplitude damping.
            "auto" => match kind {
                ChannelKind::Dephasing => "plus-minus",
                ChannelKind::Damping => "zero-one",
            },
            other => other,
        };
        match effective {
            "plus-minus" => Ok(Self {
                label: "plus/minus".into(),
                a: qubit_from_bloch([1.0, 0.0, 0.0])?,
                b: qubit_from_bloch([-1.0, 0.0, 0.0])?,
            }),
            "zero-one" => Ok(Self {
                label: "0/1".into(),
                a: qubit_from_bloch([0.0, 0.0, 1.0])?,
                b: qubit_from_bloch([0.0, 0.0, -1.0])?,
            }),
            "bloch" => {
                let (Some(sa), Some(sb)) = (&args.pair_bloch_a, &args.pair_bloch_b) else {
                    return Err(CliError::Config(
                        "--pair bloch requires --pair-bloch-a and --pair-bloch-b".into(),
                    ));
                };
                let va = parse_bloch(sa, "--pair-bloch-a")?;
                let vb = parse_bloch(sb, "--pair-bloch-b")?;
                Ok(Self {
                    label: format!("bloch({sa};{sb})"),
                    a: qubit_from_bloch(va)?,
                    b: qubit_from_bloch(vb)?,
                })
            }
            other => Err(CliError::Config(format!(
                "unknown --pair `{other}` (expected auto, plus-minus, zero-one or bloch)"
            ))),
        }
    }
}

/// Writes to the output path, or stdout when none was given.
pub fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| {
            CliError::Config(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
