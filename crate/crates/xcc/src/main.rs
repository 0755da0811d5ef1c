use std::io::Write;

fn main() {
    xcc::cli::configure_threads();
    let out = xcc::cli::dispatch(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
