use std::process::ExitCode;

use clap::Parser;

use hypercut_cli::alloc::CountingAlloc;
use hypercut_cli::{run_gen, run_lp, run_profile, run_solve, Cli, Command};

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => run_solve(args).and_then(|record| {
            println!("{}", serde_json::to_string(&record)?);
            Ok(record.status.exit_code())
        }),
        Command::Profile(args) => run_profile(args).map(|_| 0),
        Command::Gen(args) => run_gen(args).map(|path| {
            println!("{}", path.display());
            0
        }),
        Command::Lp(args) => run_lp(args).map(|_| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
