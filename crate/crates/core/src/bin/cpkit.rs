use std::io::Write;

fn main() {
    let (code, out) = cpkit::cli::run(std::env::args_os());
    let stream = if code == 2 { &mut std::io::stderr() as &mut dyn Write } else { &mut std::io::stdout() };
    let _ = stream.write_all(out.as_bytes());
    std::process::exit(code);
}
