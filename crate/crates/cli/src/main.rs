use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cwl_core::conway::{SkeinEngine, SkeinOptions, DEFAULT_CROSSING_BOUND};
use cwl_core::Slope;

use cwl_cli::cosmetic::{run_cosmetic, CosmeticArgs, Mode};
use cwl_cli::input::{Loaded, PresentationFile};
use cwl_cli::knot::{load_diagram, run_conway, DiagramSource};
use cwl_cli::lambda::{run_lambda, Formula};
use cwl_cli::verify::{render, run_checks, VerifyOptions};
use cwl_cli::CliError;

/// Casson-Walker-Lescop invariants of surgeries on links in S^3.
#[derive(Parser)]
#[command(name = "cwl", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// λ of the surgery described by a JSON presentation file ("-" for stdin)
    Lambda {
        file: String,
        /// also print Walker's normalization
        #[arg(long)]
        walker: bool,
        #[arg(long, value_enum, default_value_t = Formula::Auto)]
        formula: Formula,
        #[arg(long)]
        json: bool,
    },
    /// Conway polynomial of a built-in link or a PD code
    Conway {
        #[command(flatten)]
        src: LinkSource,
        #[arg(long)]
        json: bool,
    },
    /// Cosmetic-surgery verdicts, cross-checked against the general formula
    #[command(alias = "cosmetic-scan")]
    Cosmetic {
        #[arg(long, value_enum)]
        mode: Mode,
        /// presentation file; K_0 is component 0
        file: Option<String>,
        #[command(flatten)]
        src: LinkSource,
        /// slopes p/q for a built-in link (default: all 0)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        slopes: Vec<String>,
        #[arg(long, default_value_t = 1)]
        q0: i64,
        #[arg(long, default_value_t = 2)]
        q0p: i64,
        /// compare slopes of opposite sign
        #[arg(long)]
        opposite: bool,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        p1: i64,
        #[arg(long, default_value_t = 1)]
        q1: i64,
        /// scan parameters 1..=N
        #[arg(long)]
        grid: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Seeded randomized cross-checks of every evaluator
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args)]
struct LinkSource {
    /// built-in link: unknot, unlink, hopf, trefoil, whitehead, L_m, borromean
    #[arg(long)]
    name: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    param: Option<i64>,
    /// PD code text, e.g. "X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]"
    #[arg(long)]
    pd: Option<String>,
    #[arg(long)]
    pd_file: Option<String>,
    #[arg(long, default_value_t = DEFAULT_CROSSING_BOUND)]
    max_crossings: usize,
}

impl LinkSource {
    fn engine(&self) -> SkeinEngine {
        SkeinEngine::new(SkeinOptions { crossing_bound: self.max_crossings, parallel: true, ..Default::default() })
    }

    fn is_set(&self) -> bool {
        self.name.is_some() || self.pd.is_some() || self.pd_file.is_some()
    }

    fn diagram(&self) -> Result<cwl_core::conway::Diagram, CliError> {
        let text;
        let src = match (&self.name, &self.pd, &self.pd_file) {
            (Some(n), None, None) => DiagramSource::Builtin { name: n, param: self.param },
            (None, Some(p), None) => DiagramSource::Pd(p),
            (None, None, Some(f)) => {
                text = std::fs::read_to_string(f).map_err(|e| CliError::Validation(format!("{f}: {e}")))?;
                DiagramSource::Pd(&text)
            }
            _ => return Err(CliError::Validation("give exactly one of --name, --pd, --pd-file".into())),
        };
        load_diagram(&src)
    }
}

fn parse_slope(s: &str) -> Result<Slope, CliError> {
    let bad = || CliError::Validation(format!("slope {s:?}: expected p/q or p"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    Ok(Slope::new(p, q)?)
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        print!("{text}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Lambda { file, walker, formula, json } => {
            let l = PresentationFile::read(&file)?.load()?;
            let r = run_lambda(&l, formula, walker)?;
            emit(json, r.to_json(), r.render());
        }
        Cmd::Conway { src, json } => {
            let r = run_conway(&src.diagram()?, &src.engine())?;
            emit(json, r.to_json(), r.render());
        }
        Cmd::Cosmetic { mode, file, src, slopes, q0, q0p, opposite, p1, q1, grid, json } => {
            let l = match (file, src.is_set()) {
                (Some(f), false) => PresentationFile::read(&f)?.load()?,
                (None, true) => {
                    let d = src.diagram()?;
                    let slopes = if slopes.is_empty() {
                        vec![Slope::integral(0); d.mu()]
                    } else {
                        slopes.iter().map(|s| parse_slope(s)).collect::<Result<Vec<_>, _>>()?
                    };
                    if slopes.len() != d.mu() {
                        return Err(CliError::Validation(format!("{} slopes for a {}-component link", slopes.len(), d.mu())));
                    }
                    Loaded::from_diagram(&d, slopes, &src.engine())?
                }
                _ => return Err(CliError::Validation("give a presentation file or a link (--name/--pd/--pd-file)".into())),
            };
            let args = CosmeticArgs { mode, q0, q0p, same_sign: !opposite, p1, q1, grid };
            let r = run_cosmetic(&l, args)?;
            emit(json, r.to_json(), r.render());
        }
        Cmd::Verify { seed, cases, threads, inject_fault } => {
            let opts = VerifyOptions { seed, cases, threads, inject_fault };
            let results = run_checks(opts).map_err(CliError::Validation)?;
            let (text, ok) = render(&opts, &results);
            print!("{text}");
            if !ok {
                return Err(CliError::CrossCheck("verify found disagreements".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
