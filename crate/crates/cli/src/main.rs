//! `uclifford`: exact umbral Clifford decompositions and identity
//! verification. The JSON payload goes to stdout, the human summary to
//! stderr, and exit codes follow the contract in
//! [`umbral_clifford_cli::commands`].

use umbral_clifford_cli::commands;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    match commands::run_command(&argv) {
        Ok(result) => {
            println!("{}", result.payload_json());
            eprintln!("{}", result.summary);
            std::process::exit(result.exit_code);
        }
        Err(failure) => {
            eprintln!("{}", failure.message);
            std::process::exit(failure.exit_code);
        }
    }
}
