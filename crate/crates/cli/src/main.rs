use clap::Parser;
use hurwitz_cli::{deliver, run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    std::process::exit(deliver(&cli, &outcome));
}
