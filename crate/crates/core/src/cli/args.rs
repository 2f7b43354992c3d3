use clap::{Args, Parser, Subcommand};

use super::{load_algebra, ClassInput, CliError, Command, JobSpec, OutputFormat, DEFAULT_MAX_GRID};

/// Adjunction lower bounds for the minimal genus function on 4-manifolds with b+ = 1.
#[derive(Debug, Parser)]
#[command(name = "genusbound", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Compute h(A), with the reduced class and c0
    Compute(JobArgs),
    /// Reduce A to its orbit representative
    Reduce(JobArgs),
    /// Check A against the sphere obstructions
    Sphere(JobArgs),
    /// Compare closed forms with the exhaustive oracle over a grid
    Verify(JobArgs),
    /// Tabulate every class of non-negative square in a grid
    Table(JobArgs),
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// Algebra descriptor: a JSON file, or inline JSON starting with '{'
    #[arg(long)]
    pub algebra: String,
    /// Coefficients in the basis printed by --basis, e.g. "3,-1"
    #[arg(long = "class", allow_hyphen_values = true)]
    pub class: Option<ClassInput>,
    /// Coefficient ceiling for table and verify
    #[arg(long, allow_negative_numbers = true)]
    pub grid: Option<i64>,
    /// Oracle box bound
    #[arg(long, allow_negative_numbers = true)]
    pub bound: Option<i64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Include the full move list (reduce)
    #[arg(long)]
    pub trace: bool,
    /// Print the basis convention for the algebra and exit
    #[arg(long)]
    pub basis: bool,
    #[arg(long, env = "GENUSBOUND_MAX_GRID", default_value_t = DEFAULT_MAX_GRID, hide = true)]
    pub max_grid: i64,
}

impl Cli {
    /// The job to run and whether only the basis was requested.
    pub fn into_job(self) -> Result<(JobSpec, bool), CliError> {
        let (command, args) = match self.command {
            CommandArgs::Compute(a) => (Command::Compute, a),
            CommandArgs::Reduce(a) => (Command::Reduce, a),
            CommandArgs::Sphere(a) => (Command::Sphere, a),
            CommandArgs::Verify(a) => (Command::Verify, a),
            CommandArgs::Table(a) => (Command::Table, a),
        };
        let algebra = load_algebra(&args.algebra)?;
        let mut spec = JobSpec::new(algebra, command)
            .with_format(args.format)
            .with_trace(args.trace);
        spec.class_input = args.class.map(|c| c.0.into());
        spec.grid = args.grid;
        spec.bound = args.bound;
        spec.max_grid = args.max_grid;
        Ok((spec, args.basis))
    }
}
