use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;

use tropical_rr::polyhedral::json::from_json_str;
use tropical_rr::verify::{self, Options, VerificationReport};
use tropical_rr::{Error, Result};

/// Exact verification of tropical Riemann-Roch and Euler characteristic identities.
#[derive(Parser, Debug)]
#[command(name = "troprr", version)]
struct Cli {
    /// Seed for random heights; re-seeds step forward from here.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the report(s) as JSON to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
    /// Largest degree accepted (and swept by `tpn` without a degree).
    #[arg(long, global = true, default_value_t = 6)]
    max_degree: i64,
    /// Bounded re-seeding for non-smooth or non-moderate instances.
    #[arg(long, global = true, default_value_t = 32)]
    retries: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree-d hypersurfaces in projective n-space (all degrees if d is omitted).
    Tpn { n: usize, d: Option<i64> },
    /// A smooth curve on the surface of a Delzant polygon: {"vertices": [[x, y], ...]}.
    Surface { input: PathBuf },
    /// A pair of curves: {"d": polygon, "d_prime": polygon}.
    Bertini { input: PathBuf },
    /// A tropical curve with a divisor: {"vertices": n, "edges": [[u, v]], "divisor": {"e0.0": 1}}.
    Curve { input: PathBuf },
    /// A matroid by its bases: {"n": 4, "bases": [[0, 1], ...]}.
    Csm { input: PathBuf },
    /// A tropical polynomial: {"n": 2, "terms": [{"exp": [0, 0], "coeff": "0"}, ...]}.
    Hypersurface { input: PathBuf },
    /// Euler characteristic of the complement of the compactified hypersurface of a polynomial.
    Euler { input: PathBuf },
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json_str(&text)
}

fn run(cli: &Cli) -> Result<Vec<VerificationReport>> {
    let opts = Options { seed: cli.seed, retries: cli.retries, max_degree: cli.max_degree };
    Ok(match &cli.command {
        Command::Tpn { n, d: Some(d) } => vec![verify::cmd_tpn(*n, *d, &opts)?],
        Command::Tpn { n, d: None } => {
            (1..=cli.max_degree).map(|d| verify::cmd_tpn(*n, d, &opts)).collect::<Result<_>>()?
        }
        Command::Surface { input } => vec![verify::cmd_surface(&read(input)?, &opts)?],
        Command::Bertini { input } => vec![verify::cmd_bertini(&read(input)?, &opts)?],
        Command::Curve { input } => vec![verify::cmd_curve(&read(input)?)?],
        Command::Csm { input } => vec![verify::cmd_csm(&read(input)?)?],
        Command::Hypersurface { input } => vec![verify::cmd_hypersurface(&read(input)?, &opts)?],
        Command::Euler { input } => vec![verify::cmd_euler(&read(input)?)?],
    })
}

fn write_json(path: &Path, reports: &[VerificationReport]) -> Result<()> {
    let value = match reports {
        [one] => serde_json::to_value(one),
        many => serde_json::to_value(many),
    }
    .expect("reports serialize");
    let text = serde_json::to_string_pretty(&value).expect("reports serialize") + "\n";
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reports = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    for r in &reports {
        print!("{}", r.render());
    }
    if let Some(path) = &cli.json_out {
        if let Err(e) = write_json(path, &reports) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let codes: Vec<i32> = reports.iter().map(VerificationReport::exit_code).collect();
    // a failed equality outranks an unverified hypothesis
    ExitCode::from(if codes.contains(&1) {
        1
    } else if codes.contains(&2) {
        2
    } else {
        0
    })
}
