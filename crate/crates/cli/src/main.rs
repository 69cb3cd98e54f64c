use std::process::ExitCode;

use clap::Parser;
use milnor_cli::commands::{run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out.document).expect("serializable document")
                    )
                }
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
