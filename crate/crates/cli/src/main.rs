use clap::Parser;
use pipestab_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    let code = match pipestab_cli::run(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("pipestab: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
