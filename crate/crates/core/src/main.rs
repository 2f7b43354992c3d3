use std::process::ExitCode;

use clap::Parser;
use genusbound::cli::{run, BasisReport, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let outcome = cli.into_job().and_then(|(spec, basis_only)| {
        if basis_only {
            let stdout = BasisReport::new(&spec.algebra).render(spec.output_format)?;
            Ok(genusbound::cli::Outcome {
                stdout,
                warnings: Vec::new(),
                code: 0,
            })
        } else {
            run(&spec)
        }
    });
    match outcome {
        Ok(o) => {
            for w in &o.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", o.stdout);
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
