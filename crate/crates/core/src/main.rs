use clap::Parser;
use hallpi::cli::{run, Cli};
use std::io::Write;

fn main() {
    let out = run(Cli::parse());
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
