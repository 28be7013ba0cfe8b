use clap::Parser;

fn main() {
    let cli = sqe::cli::Cli::parse();
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    let code = sqe::cli::run(cli, &mut out, &mut err);
    std::process::exit(code);
}
