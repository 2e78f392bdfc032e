//! `measure`: compute one non-Markovianity quantifier and write its report.

use std::path::Path;

use qipflow_core::witnesses::{
    n_blp, n_mutual, n_qip, n_rhp, optimize_initial_state, InitialStateFamily, MeasureReport,
};

use crate::config::Config;
use crate::{ChannelArgs, CliError, PairArgs, StateArgs};

use super::{emit, ChannelSetup, Globals, InitialState, StatePair};

#[allow(clippy::too_many_arguments)]
pub fn run(
    cfg: &Config,
    globals: &Globals,
    channel: &ChannelArgs,
    state: &StateArgs,
    pair: &PairArgs,
    measure: Option<&str>,
    family: Option<&str>,
    trajectory_csv: Option<&Path>,
) -> Result<(), CliError> {
    let setup = ChannelSetup::resolve(cfg, channel, None)?;
    let traj = setup.build(globals)?;
    let which = cfg.resolve_string("measure", measure, "qip");

    let report: MeasureReport = match which.as_str() {
        "qip" => {
            let family_choice = cfg.resolve_string("family", family, "");
            match family_choice.as_str() {
                "" => {
                    let initial = InitialState::resolve(cfg, state)?;
                    n_qip(&traj, &initial.state, globals.convention, &initial.label)?
                }
                "bell" => {
                    optimize_initial_state(&traj, &InitialStateFamily::Bell, globals.convention)?
                }
                "werner-grid" => optimize_initial_state(
                    &traj,
                    &InitialStateFamily::default_werner_grid(),
                    globals.convention,
                )?,
                "pure-grid" => optimize_initial_state(
                    &traj,
                    &InitialStateFamily::default_pure_grid(),
                    globals.convention,
                )?,
                other => {
                    return Err(CliError::Config(format!(
                        "unknown --family `{other}` (expected bell, werner-grid or pure-grid)"
                    )))
                }
            }
        }
        "blp" => {
            let pair = StatePair::resolve(cfg, pair, setup.kind())?;
            n_blp(&traj, (&pair.a, &pair.b), &pair.label)?
        }
        "mutual" => {
            let initial = InitialState::resolve(cfg, state)?;
            n_mutual(&traj, &initial.state, &initial.label)?
        }
        "rhp" => n_rhp(&traj)?,
        other => {
            return Err(CliError::Config(format!(
                "unknown --measure `{other}` (expected qip, blp, mutual or rhp)"
            )))
        }
    };
    report.validate()?;

    let mut text = setup.metadata().replace("# ", "").replace('=', " = ");
    text.push_str(&report.to_report_text());
    if let Some(path) = trajectory_csv {
        std::fs::write(path, report.monitored_csv())
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    emit(globals.out.as_deref(), &text)
}
