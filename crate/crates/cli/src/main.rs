use clap::Parser;

fn main() {
    let cli = geospanner_cli::Cli::parse();
    let mut out = std::io::stdout().lock();
    std::process::exit(geospanner_cli::run(cli, &mut out));
}
