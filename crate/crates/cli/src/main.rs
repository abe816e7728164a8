use std::io::Write;

use clap::Parser;
use cpos_cli::app::{run_command, Cli, Command, EXIT_MALFORMED};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if let Command::Serve { port, bind } = &cli.command {
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        if let Err(e) = rt.block_on(cpos_cli::server::serve(bind, *port)) {
            eprintln!("cpos serve: {e}");
            std::process::exit(EXIT_MALFORMED);
        }
        return;
    }
    let out = run_command(&cli.command);
    if !out.stdout.is_empty() {
        let _ = writeln!(std::io::stdout().lock(), "{}", out.stdout.trim_end());
    }
    std::process::exit(out.code);
}
