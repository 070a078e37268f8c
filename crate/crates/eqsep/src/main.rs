use clap::Parser;

fn main() {
    let cli = eqsep::cli::Cli::parse();
    std::process::exit(eqsep::cli::run(&cli));
}
