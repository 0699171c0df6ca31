use std::process::ExitCode;

use blockage_cli::{execute, parse_args, CliError};

fn main() -> ExitCode {
    let cfg = match parse_args(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(CliError::Clap(e)) => {
            // help and version land here too
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
        Err(e) => {
            eprintln!("blockage: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };

    if let Some(threads) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("blockage: cannot start {threads} worker threads: {e}");
            return ExitCode::from(1);
        }
    }

    match execute(&cfg, &mut std::io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("blockage: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
