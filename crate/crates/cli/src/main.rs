use clap::Parser;
use fermiphase_cli::commands::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
