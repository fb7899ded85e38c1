use std::io::{self, BufWriter};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = parkgame_cli::run(
        std::env::args_os(),
        parkgame_cli::Io {
            stdin: &mut io::stdin().lock(),
            stdout: &mut out,
            stderr: &mut io::stderr(),
        },
    );
    ExitCode::from(code as u8)
}
