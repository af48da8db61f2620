use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use framescale_cli::report::render_text;
use framescale_cli::tolerance::ENV_VAR;
use framescale_cli::{
    analyze, analyze_batch, dual, generate, read_document, resolve_tolerances, scale,
    AnalyzeOptions, CliError, GenerateKind, GenerateParams, ScaleMethod, EXIT_INPUT, EXIT_OK,
};

#[derive(Parser)]
#[command(name = "framescale", version, about = "Scalability analysis of finite frames")]
struct Cli {
    /// Tolerance override, `name=value` or a bare number for `tight`. Repeatable.
    #[arg(long = "tol", global = true, value_name = "TOL")]
    tol: Vec<String>,

    /// Default tolerance overrides, applied before any --tol.
    #[arg(long, env = ENV_VAR, hide = true, global = true)]
    env_tol: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Block {
    Scalability,
    Split,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Lp,
    Cofactor,
    Codim2,
    Split,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Mb,
    HadamardDoubled,
    P1,
    RandomUnit,
    Angles,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: frame summary, scalability, W/V split, dual.
    Analyze {
        path: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Analyze every file in a directory, in parallel.
        #[arg(long, value_name = "DIR", conflicts_with = "path")]
        batch: Option<PathBuf>,
        /// Restrict the report to these blocks (comma-separated).
        #[arg(long, value_enum, value_delimiter = ',')]
        only: Vec<Block>,
    },
    /// Scaling weights, or a certificate that none exist.
    Scale {
        path: PathBuf,
        /// Require every weight to be positive.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Canonical dual as a frame document.
    Dual {
        path: PathBuf,
        /// Also decide whether the canonical dual is scalable.
        #[arg(long)]
        check_scalable: bool,
        #[arg(long)]
        json: bool,
    },
    /// Emit a named construction as a frame document.
    Generate {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Angles in degrees for `angles`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        degrees: Vec<f64>,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(String, i32), CliError> {
    let tol = resolve_tolerances(cli.env_tol.as_deref(), &cli.tol)?;
    match cli.command {
        Command::Analyze { path, json, batch, only } => {
            let opts = if only.is_empty() {
                AnalyzeOptions::default()
            } else {
                AnalyzeOptions {
                    scalability: only.iter().any(|b| matches!(b, Block::Scalability)),
                    split: only.iter().any(|b| matches!(b, Block::Split)),
                    dual: only.iter().any(|b| matches!(b, Block::Dual)),
                }
            };
            if let Some(dir) = batch {
                return analyze_batch(&dir, &opts, &tol, json);
            }
            let path = path.ok_or_else(|| CliError::BadParams("analyze needs a path or --batch".into()))?;
            let report = analyze(&read_document(&path)?, &opts, &tol)?;
            let out = if json { report.to_json() } else { render_text(&report) };
            Ok((out, EXIT_OK))
        }
        Command::Scale { path, strict, method, json } => {
            let method = match method {
                MethodArg::Auto => ScaleMethod::Auto,
                MethodArg::Lp => ScaleMethod::Lp,
                MethodArg::Cofactor => ScaleMethod::Cofactor,
                MethodArg::Codim2 => ScaleMethod::Codim2,
                MethodArg::Split => ScaleMethod::Split,
            };
            let outcome = scale(&read_document(&path)?, method, strict, &tol)?;
            let out = if json {
                let mut s = serde_json::to_string_pretty(&outcome).expect("outcome serializes");
                s.push('\n');
                s
            } else {
                outcome.render_text()
            };
            Ok((out, outcome.exit_code))
        }
        Command::Dual { path, check_scalable, json } => {
            Ok((dual(&read_document(&path)?, check_scalable, &tol, json)?, EXIT_OK))
        }
        Command::Generate { kind, n, m, seed, degrees, output } => {
            let kind = match kind {
                KindArg::Mb => GenerateKind::Mb,
                KindArg::HadamardDoubled => GenerateKind::HadamardDoubled,
                KindArg::P1 => GenerateKind::P1,
                KindArg::RandomUnit => GenerateKind::RandomUnit,
                KindArg::Angles => GenerateKind::Angles,
            };
            let doc = generate(kind, &GenerateParams { n, m, seed, degrees })?;
            let text = doc.to_text();
            match output {
                Some(p) => {
                    std::fs::write(&p, text).map_err(|source| CliError::Io {
                        path: p.display().to_string(),
                        source,
                    })?;
                    Ok((String::new(), EXIT_OK))
                }
                None => Ok((text, EXIT_OK)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("framescale: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
