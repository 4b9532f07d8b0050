use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use matlie_cli::{run, Cli, Output};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli, &mut std::io::stdin().lock()) {
        Ok(outcome) => {
            let text = match &outcome.output {
                Output::Json(v) => format!("{}\n", serde_json::to_string_pretty(v).expect("json")),
                Output::Text(t) => t.clone(),
            };
            (text, outcome.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            (
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&e.to_json()).expect("json")
                ),
                1,
            )
        }
    };
    let mut out = std::io::stdout().lock();
    if out
        .write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
