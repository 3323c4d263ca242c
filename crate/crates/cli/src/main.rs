use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use divext_cli::{render, report::EXIT_INPUT, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let report = run(&cli);
    let (stdout, stderr) = render(&report, cli.format);
    // one write per stream so partial reports never interleave
    let _ = std::io::stdout().lock().write_all(stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(stderr.as_bytes());
    ExitCode::from(report.exit_code() as u8)
}
