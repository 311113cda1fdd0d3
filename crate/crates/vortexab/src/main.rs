use clap::Parser;

fn main() {
    let cli = vortexab::cli::Cli::parse();
    std::process::exit(vortexab::cli::run(cli));
}
