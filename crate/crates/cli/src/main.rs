use std::io::{stderr, stdout, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut out = stdout().lock();
    let status = beliefkit::cli::run(std::env::args_os(), &mut out, &mut stderr().lock());
    let _ = out.flush();
    ExitCode::from(status as u8)
}
