use clap::Parser;

fn main() {
    let cli = tropfit::cli::Cli::parse();
    if let Err(e) = tropfit::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code);
    }
}
