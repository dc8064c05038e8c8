//! `chaoscrypt` command-line tool.

mod analyze;
mod attack;
mod common;
mod crypt;
mod metrics;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "chaoscrypt", version, about = "Chaos-based image encryption and analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encrypt an image, writing the ciphertext PNG and a metadata sidecar
    Encrypt(crypt::EncryptArgs),
    /// Decrypt a ciphertext PNG with its sidecar
    Decrypt(crypt::DecryptArgs),
    /// Chaotic-map diagnostics as CSV
    #[command(subcommand)]
    Analyze(analyze::AnalyzeCmd),
    /// Security metrics as a table or JSON
    #[command(subcommand)]
    Metrics(metrics::MetricsCmd),
    /// Crop, noise and chosen-plaintext experiments
    #[command(subcommand)]
    Attack(attack::AttackCmd),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Encrypt(a) => crypt::encrypt_cmd(a),
        Command::Decrypt(a) => crypt::decrypt_cmd(a),
        Command::Analyze(c) => analyze::run(c),
        Command::Metrics(c) => metrics::run(c),
        Command::Attack(c) => attack::run(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
