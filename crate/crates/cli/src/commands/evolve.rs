//! `evolve`: build a channel trajectory and write its CSV.

use crate::config::Config;
use crate::{ChannelArgs, CliError};

use super::{emit, ChannelSetup, Globals};

pub fn run(
    cfg: &Config,
    globals: &Globals,
    channel: &ChannelArgs,
    solver: Option<&str>,
) -> Result<(), CliError> {
    let setup = ChannelSetup::resolve(cfg, channel, solver)?;
    let traj = setup.build(globals)?;
    emit(globals.out.as_deref(), &traj.to_csv())
}
