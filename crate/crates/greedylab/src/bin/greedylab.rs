use clap::Parser;

fn main() {
    let cli = greedylab::cli::Cli::parse();
    std::process::exit(greedylab::cli::run_cli(cli));
}
