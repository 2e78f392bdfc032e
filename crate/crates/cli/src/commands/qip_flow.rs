//! `qip-flow`: sample Q(t) for an initial state, optionally alongside the
//! concurrence and mutual-information columns.

use qipflow_core::channels::{apply_joint, ChannelTrajectory};
use qipflow_core::states::{concurrence, mutual_information};
use qipflow_core::textio::format_sci;
use qipflow_core::witnesses::qip_flow;

use crate::config::Config;
use crate::{ChannelArgs, CliError, StateArgs};

use super::{emit, ChannelSetup, Globals, InitialState};

pub fn run(
    cfg: &Config,
    globals: &Globals,
    channel: &ChannelArgs,
    state: &StateArgs,
    compare_flag: bool,
) -> Result<(), CliError> {
    let setup = ChannelSetup::resolve(cfg, channel, None)?;
    let compare = cfg.resolve_bool("compare", compare_flag, false)?;
    let initial = InitialState::resolve(cfg, state)?;
    let traj = setup.build(globals)?;
    let q = qip_flow(&traj, &initial.state, globals.convention)?;

    let mut out = String::new();
    out.push_str(&setup.metadata());
    out.push_str(&format!("# initial_state={}\n", initial.label));
    out.push_str(&format!("# convention={}\n", globals.convention.as_str()));

    let damping = matches!(traj, ChannelTrajectory::Damping { .. });
    let header = match (damping, compare) {
        (false, false) => "t,Q",
        (false, true) => "t,Q,C,I",
        (true, false) => "t,Q,absJ",
        (true, true) => "t,Q,C,I,absJ_half",
    };
    out.push_str(header);
    out.push('\n');

    let times = traj.times().to_vec();
    for k in 0..traj.len() {
        out.push_str(&format_sci(times[k]));
        out.push(',');
        out.push_str(&format_sci(q[k]));
        if compare {
            let evolved = apply_joint(&initial.state, &traj.descriptor_at(k)?)?;
            out.push(',');
            out.push_str(&format_sci(concurrence(&evolved)?));
            out.push(',');
            out.push_str(&format_sci(mutual_information(&evolved)?));
        }
        if let ChannelTrajectory::Damping { j, .. } = &traj {
            out.push(',');
            let abs = j[k].norm();
            out.push_str(&format_sci(if compare { abs / 2.0 } else { abs }));
        }
        out.push('\n');
    }
    emit(globals.out.as_deref(), &out)
}
