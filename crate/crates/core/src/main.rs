mod cli;

use clap::Parser;
use cli::args::Cli;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global.clone();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(g.threads)
        .build_global()
    {
        eprintln!("error: cannot start the worker pool: {e}");
        return ExitCode::from(3);
    }
    match cli::run(cli.command, &g) {
        Ok(out) => {
            if g.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            if let Some(p) = &g.report {
                let doc = serde_json::to_string_pretty(&out.json).expect("json") + "\n";
                if let Err(e) = std::fs::write(p, doc) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(3);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(5)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
