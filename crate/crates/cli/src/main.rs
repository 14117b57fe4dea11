use clap::Parser;

fn main() {
    let cli = twohop_aoi_cli::Cli::parse();
    if let Err(err) = twohop_aoi_cli::run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(twohop_aoi_cli::exit_code(&err));
    }
}
