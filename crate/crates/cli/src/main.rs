use std::io::IsTerminal;

fn main() {
    let stdout = std::io::stdout();
    let color = stdout.is_terminal() && std::env::var("KD3_COLOR").map_or(true, |v| v != "0");
    let mut out = stdout.lock();
    let mut err = std::io::stderr().lock();
    let code = kd3_cli::run(
        std::env::args_os(),
        &mut kd3_cli::Io {
            out: &mut out,
            err: &mut err,
            color,
        },
    );
    std::process::exit(code);
}
