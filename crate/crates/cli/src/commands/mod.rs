pub mod bounds;
pub mod radial;
pub mod rescale;
pub mod theory;

use crate::args::{Command, RescaleCommand};

/// Subcommand name as typed on the command line.
pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Exponents { .. } => "exponents",
        Command::Analyze { .. } => "analyze",
        Command::Check(_) => "check",
        Command::Benchmark { .. } => "benchmark",
        Command::Theta { .. } => "theta",
        Command::Shoot { .. } => "shoot",
        Command::Verify { .. } => "verify",
        Command::Pohozaev { .. } => "pohozaev",
        Command::SolveBall { .. } => "solve-ball",
        Command::Bound { .. } => "bound",
        Command::Decay { .. } => "decay",
        Command::Counterexample { .. } => "counterexample",
        Command::Rescale(RescaleCommand::Convergence { .. }) => "rescale convergence",
        Command::Rescale(RescaleCommand::Doubling { .. }) => "rescale doubling",
        Command::Rescale(RescaleCommand::Critical { .. }) => "rescale critical",
    }
}
