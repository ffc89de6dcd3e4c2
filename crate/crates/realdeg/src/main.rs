use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use realdeg::job::{fixture, run_job_text, RunOptions, FIXTURES};
use realdeg_core::TermOrder;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Local,
    Global,
}

/// Local degrees and Euler characteristics of real polynomial map germs.
#[derive(Parser, Debug)]
#[command(name = "realdeg", version)]
struct Cli {
    /// Job file (JSON).
    #[arg(required_unless_present_any = ["fixture", "list_fixtures"], conflicts_with = "fixture")]
    job: Option<PathBuf>,
    /// Run a shipped example instead of a job file.
    #[arg(long, value_name = "NAME")]
    fixture: Option<String>,
    /// List the shipped examples.
    #[arg(long)]
    list_fixtures: bool,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Cross-check degrees with the geometric oracle (2 and 3 variables).
    #[arg(long)]
    oracle: bool,
    /// Term order of the degree task (`global` is for debugging).
    #[arg(long, value_enum, default_value = "local")]
    order: Order,
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{}.{}.tmp", name, std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_fixtures {
        for (name, _) in FIXTURES {
            println!("{}", name);
        }
        return ExitCode::SUCCESS;
    }
    let text = match (&cli.fixture, &cli.job) {
        (Some(name), _) => match fixture(name) {
            Some(t) => t.to_string(),
            None => {
                eprintln!("realdeg: unknown fixture `{}` (try --list-fixtures)", name);
                return ExitCode::from(1);
            }
        },
        (None, Some(path)) => match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("realdeg: cannot read {}: {}", path.display(), e);
                return ExitCode::from(1);
            }
        },
        (None, None) => unreachable!("clap requires a job or a fixture"),
    };
    let order = match cli.order {
        Order::Local => TermOrder::LocalNegDegRevLex,
        Order::Global => TermOrder::GlobalDegRevLex,
    };
    let report = run_job_text(&text, RunOptions { oracle: cli.oracle, order });
    let json = report.to_json_string();
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomically(path, &json) {
                eprintln!("realdeg: cannot write {}: {}", path.display(), e);
                return ExitCode::from(1);
            }
        }
        None => print!("{}", json),
    }
    ExitCode::from(report.exit_code() as u8)
}
