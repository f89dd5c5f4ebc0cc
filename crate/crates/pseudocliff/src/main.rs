use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pseudocliff::commands::{self, InputError, Report};
use pseudocliff::core::matdiff::MatrixFunction;

/// Exact Clifford algebras and glued vector pseudo-bundles.
///
/// Reports are JSON on standard output. Exit status: 0 when every check
/// passes, 1 when a check fails (the report carries a witness), 2 on bad
/// input (the report says where).
#[derive(Parser)]
#[command(name = "pseudocliff", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplication table of Cl(R^n, q) in the blade basis.
    CliffordTable {
        #[arg(long)]
        dim: usize,
        /// `I`, `0`, `diag:a,b,...` or rows `a,b;c,d`.
        #[arg(long, default_value = "I")]
        form: String,
        /// Scale in v*w + w*v = -2*lambda*q(v,w).
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    /// Validate a bundle description; check metrics, the induced
    /// pseudo-metric and Clifford fibres after gluing.
    GlueCheck {
        file: String,
        /// Chart points such as `V1(1); V0()`. Defaults to the locus points
        /// plus ten points per chart.
        #[arg(long)]
        sample_points: Option<String>,
        #[arg(long, default_value = "2")]
        lambda: String,
    },
    /// Compatibility of metrics and of the standard Clifford actions along
    /// each gluing.
    CompatCheck {
        file: String,
        #[arg(long)]
        sample_points: Option<String>,
        /// Replace a module lift: `gluing:locus:a,b;c,d`. Repeatable.
        #[arg(long = "module-lift")]
        module_lifts: Vec<String>,
    },
    /// Recompute the crossed-lines tables and compare them with the printed
    /// formulas.
    ReproduceSec7 {
        /// Sample values for x and y, e.g. `0,1,2,-3`.
        #[arg(long)]
        sample_points: Option<String>,
    },
    /// Entry patterns of matrix plots.
    Matdiff {
        #[command(subcommand)]
        query: MatdiffQuery,
    },
    /// Whether a dual-rank profile admits a pseudo-metric.
    RankProfile {
        #[arg(long)]
        default: usize,
        /// `point:rank`, e.g. `0:1` or `(0,1):2`. Repeatable.
        #[arg(long = "exception")]
        exceptions: Vec<String>,
        #[arg(long)]
        base_dim: Option<usize>,
    },
}

#[derive(Subcommand)]
enum MatdiffQuery {
    /// Algebra closure of generator patterns (grids of Z/P/A/B separated by
    /// blank lines).
    Closure {
        file: String,
        /// Pattern of the structurally allowed entries.
        #[arg(long)]
        ambient: Option<String>,
    },
    /// Largest pattern acting smoothly on a vector pattern.
    Action {
        /// Comma-separated entries, e.g. `P,B`.
        #[arg(long)]
        vector: String,
        /// `full`, `lower` or a pattern file.
        #[arg(long, default_value = "full")]
        constraint: String,
    },
    /// Smoothness of trace or determinant of a concrete plot.
    Smooth {
        file: String,
        #[arg(long, value_enum)]
        function: Function,
        #[arg(long, default_value_t = 1)]
        vars: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    Trace,
    Det,
}

fn read(path: &str) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError {
        input: path.to_string(),
        line: 0,
        column: 0,
        message: e.to_string(),
    })
}

fn run(cmd: Command) -> (&'static str, Result<Report, InputError>) {
    match cmd {
        Command::CliffordTable { dim, form, lambda } => {
            ("clifford-table", commands::clifford_table(dim, &form, &lambda))
        }
        Command::GlueCheck {
            file,
            sample_points,
            lambda,
        } => (
            "glue-check",
            read(&file).and_then(|src| commands::glue_check(&src, &file, sample_points.as_deref(), &lambda)),
        ),
        Command::CompatCheck {
            file,
            sample_points,
            module_lifts,
        } => (
            "compat-check",
            read(&file).and_then(|src| commands::compat_check(&src, &file, sample_points.as_deref(), &module_lifts)),
        ),
        Command::ReproduceSec7 { sample_points } => {
            ("reproduce-sec7", commands::reproduce_sec7(sample_points.as_deref()))
        }
        Command::Matdiff { query } => ("matdiff", run_matdiff(query)),
        Command::RankProfile {
            default,
            exceptions,
            base_dim,
        } => ("rank-profile", commands::rank_profile(default, &exceptions, base_dim)),
    }
}

fn run_matdiff(query: MatdiffQuery) -> Result<Report, InputError> {
    match query {
        MatdiffQuery::Closure { file, ambient } => {
            let src = read(&file)?;
            let amb = ambient.map(|a| read(&a).map(|t| (t, a))).transpose()?;
            commands::matdiff_closure(&src, &file, amb.as_ref().map(|(t, a)| (t.as_str(), a.as_str())))
        }
        MatdiffQuery::Action { vector, constraint } => match constraint.as_str() {
            "full" | "lower" => commands::matdiff_action(&vector, (&constraint, "--constraint")),
            path => commands::matdiff_action(&vector, (&read(path)?, path)),
        },
        MatdiffQuery::Smooth { file, function, vars } => {
            let f = match function {
                Function::Trace => MatrixFunction::Trace,
                Function::Det => MatrixFunction::Det,
            };
            commands::matdiff_smooth(&read(&file)?, &file, f, vars)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, outcome) = run(cli.command);
    match outcome {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            print!("{}", pseudocliff::json::render(&e.json(name)));
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
