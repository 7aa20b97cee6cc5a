use clap::Parser;

fn main() {
    let cli = riglab::cli::Cli::parse();
    std::process::exit(riglab::cli::run(cli));
}
