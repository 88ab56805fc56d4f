use clap::Parser;

fn main() {
    let cli = negmom_cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = negmom_cli::run(cli, &mut stdout) {
        eprintln!("negmom: {e}");
        std::process::exit(e.exit_code());
    }
}
