//! `sweep`: tabulate every measure across a channel-parameter grid,
//! one parameter value per row.

use qipflow_core::channels::{ChannelKind, ChannelTrajectory};
use qipflow_core::textio::format_sci;
use qipflow_core::witnesses::{n_blp, n_mutual, n_qip, n_rhp};

use crate::config::Config;
use crate::{ChannelArgs, CliError, PairArgs, StateArgs};

use super::{ChannelSetup, Globals, InitialState, StatePair, emit};

const DEFAULT_DEPHASING_VALUES: &str = "1,1.5,2,2.5,3,3.5,4,4.5,5,5.5,6";
const DEFAULT_DAMPING_VALUES: &str = "10,1,0.5,0.1";

fn parse_values(text: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let v = piece.trim().parse::<f64>().map_err(|_| {
            CliError::Config(format!("--values: invalid number `{piece}` in `{text}`"))
        })?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::Config("--values must list at least one value".into()));
    }
    Ok(out)
}

pub fn run(
    cfg: &Config,
    globals: &Globals,
    channel: &ChannelArgs,
    state: &StateArgs,
    values_flag: Option<&str>,
) -> Result<(), CliError> {
    let base = ChannelSetup::resolve(cfg, channel, None)?;
    let default_values = match base.kind() {
        ChannelKind::Dephasing => DEFAULT_DEPHASING_VALUES,
        ChannelKind::Damping => DEFAULT_DAMPING_VALUES,
    };
    let values = parse_values(&cfg.resolve_string("values", values_flag, default_values))?;

    let initial = InitialState::resolve(cfg, state)?;
    let no_pair_flags = PairArgs {
        pair: None,
        pair_bloch_a: None,
        pair_bloch_b: None,
    };
    let pair = StatePair::resolve(cfg, &no_pair_flags, base.kind())?;

    let mut out = String::new();
    out.push_str(&base.metadata());
    out.push_str(&format!("# initial_state={}\n", initial.label));
    out.push_str(&format!("# convention={}\n", globals.convention.as_str()));
    let param_name = match base.kind() {
        ChannelKind::Dephasing => "S",
        ChannelKind::Damping => "lambda_over_gamma0",
    };
    out.push_str(&format!("{param_name},N_qip,N_blp,N_mutual,N_rhp\n"));

    // Points run sequentially in input order so output bytes are stable.
    for &v in &values {
        let setup = reparametrize(&base, v)?;
        let traj: ChannelTrajectory = setup.build(globals)?;
        let q = n_qip(&traj, &initial.state, globals.convention, &initial.label)?;
        let b = n_blp(&traj, (&pair.a, &pair.b), &pair.label)?;
        let m = n_mutual(&traj, &initial.state, &initial.label)?;
        let r = n_rhp(&traj)?;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_sci(v),
            format_sci(q.value),
            format_sci(b.value),
            format_sci(m.value),
            format_sci(r.value)
        ));
    }
    emit(globals.out.as_deref(), &out)
}

fn reparametrize(base: &ChannelSetup, value: f64) -> Result<ChannelSetup, CliError> {
    Ok(match base {
        ChannelSetup::Dephasing { alpha, .. } => ChannelSetup::Dephasing {
            sd: qipflow_core::channels::OhmicSpectralDensity::new(*alpha, 1.0, value)?,
            alpha: *alpha,
            s: value,
        },
        ChannelSetup::Damping { delta, solver, .. } => ChannelSetup::Damping {
            sd: qipflow_core::channels::LorentzianSpectralDensity::new(1.0, value, *delta)?,
            lambda: value,
            delta: *delta,
            solver: *solver,
        },
    })
}
