use clap::Parser;
use ttile_cli::args::Cli;

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => ttile_cli::run(cli),
        Err(err) => {
            let code = if err.use_stderr() { ttile_cli::USAGE_EXIT } else { 0 };
            let _ = err.print();
            code
        }
    };
    std::process::exit(code);
}
