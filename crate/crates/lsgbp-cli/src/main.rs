use std::process::exit;

fn main() {
    exit(lsgbp_cli::cli_main(std::env::args()));
}
