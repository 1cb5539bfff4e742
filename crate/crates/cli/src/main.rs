use std::io::Write;

use polystab_cli::cli_dispatch;

fn main() {
    let outcome = cli_dispatch(std::env::args());
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.exit_code);
}
