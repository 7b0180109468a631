use std::io::Write;

fn main() {
    let out = gfo::cli::run(std::env::args_os(), gfo::cli::color_from_env());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
