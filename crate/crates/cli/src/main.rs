use clap::Parser;

fn main() {
    let cli = otm::Cli::parse();
    if let Err(e) = otm::run(&cli) {
        eprintln!("otm: {e}");
        std::process::exit(e.exit_code());
    }
}
