//! Argument parsing and dispatch.

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::commands::{self, CohomologyArgs, Output, Style};
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "xcc", version, about = "Crossed complexes, free crossed resolutions and group extensions")]
pub struct Cli {
    /// Print deterministic JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cross-check the answer against the brute-force oracle.
    #[arg(long, global = true)]
    pub verify_oracle: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a complex or test a morphism for the fibration conditions.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Exact sequence of a fibration at a base object.
    Exactseq {
        /// Morphism spec (`xi-zeta:<group>`, `pi1:<complex>`, `quotient:<group>:<i>`, ...) or JSON file.
        morphism: String,
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Print a free crossed resolution.
    Resolution {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value = "standard")]
        style: Style,
    },
    /// Group cohomology computed from a free crossed resolution.
    Cohomology {
        #[arg(long)]
        group: String,
        #[arg(long)]
        coeff: String,
        /// `trivial`, `inversion` or a module JSON file.
        #[arg(long, default_value = "trivial")]
        action: String,
        /// `id` or a homomorphism JSON file from the group to the acting group.
        #[arg(long, default_value = "id")]
        theta: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        dim: u8,
        #[arg(long, value_enum, default_value = "standard")]
        resolution: Style,
    },
    /// Group extensions with a given abstract kernel.
    Extensions {
        #[command(subcommand)]
        what: ExtensionsCommand,
    },
    /// Obstruction class of an abstract kernel.
    Obstruction {
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        quotient: String,
        /// Index of the homomorphism G → Out(K).
        #[arg(long, default_value_t = 0)]
        outer: usize,
    },
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
    /// Lift a random morphism from the standard resolution through a trivial fibration.
    Lift {
        #[arg(long)]
        fibration: String,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Validate the crossed complex axioms and report π₁ and homology.
    Complex { spec: String },
    /// Test the fibration and trivial fibration conditions.
    Fibration {
        spec: String,
        /// Also test the lifting property against sphere inclusions.
        #[arg(long)]
        rlp: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExtensionsCommand {
    /// Classify extensions up to equivalence.
    Classify {
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        quotient: String,
        /// Index of the homomorphism G → Out(K), or `all`.
        #[arg(long, default_value = "all")]
        outer: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Enumerate factor sets and their equivalence classes.
    FactorSets {
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        quotient: String,
        #[arg(long, default_value_t = 0)]
        outer: usize,
    },
    /// Cohomology from bar cocycles.
    Cohomology {
        #[arg(long)]
        group: String,
        #[arg(long)]
        coeff: String,
        #[arg(long, default_value = "trivial")]
        action: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        dim: u8,
    },
    /// Exhaustive isomorphism test.
    Isomorphism {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
}

/// Result of one invocation: exit code, stdout and stderr.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let verify = cli.verify_oracle;
    match &cli.command {
        Command::Check { what: CheckCommand::Complex { spec } } => commands::check_complex(spec),
        Command::Check { what: CheckCommand::Fibration { spec, rlp } } => commands::check_fibration(spec, *rlp),
        Command::Exactseq { morphism, base } => commands::exactseq(morphism, *base),
        Command::Resolution { group, depth, style } => commands::resolution(group, *depth, *style),
        Command::Cohomology { group, coeff, action, theta, dim, resolution } => commands::cohomology(&CohomologyArgs {
            group,
            coeff,
            action,
            theta,
            dim: *dim as usize,
            style: *resolution,
            verify,
        }),
        Command::Extensions { what: ExtensionsCommand::Classify { kernel, quotient, outer } } => {
            let outer = match outer.as_str() {
                "all" => None,
                s => Some(s.parse().map_err(|_| CliError::Usage(format!("--outer: expected an index or `all`, got `{s}`")))?),
            };
            commands::extensions_classify(kernel, quotient, outer, verify)
        }
        Command::Obstruction { kernel, quotient, outer } => commands::obstruction(kernel, quotient, *outer, verify),
        Command::Oracle { what } => match what {
            OracleCommand::FactorSets { kernel, quotient, outer } => commands::oracle_factor_sets(kernel, quotient, *outer),
            OracleCommand::Cohomology { group, coeff, action, dim } => commands::oracle_cohomology(group, coeff, action, *dim as usize),
            OracleCommand::Isomorphism { left, right } => commands::oracle_isomorphism(left, right),
        },
        Command::Lift { fibration, group, depth, seed } => commands::lift(fibration, group, *depth, *seed),
    }
}

/// Sizes the global thread pool from `XCC_THREADS` when set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("XCC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    match run(&cli) {
        Ok(out) if cli.json => Outcome { code: 0, stdout: format!("{}\n", serde_json::to_string_pretty(&out.json).unwrap()), stderr: String::new() },
        Ok(out) => Outcome { code: 0, stdout: out.text, stderr: String::new() },
        Err(e) => {
            let stdout = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&json!({"error": {"kind": e.kind(), "message": e.to_string()}})).unwrap())
            } else {
                String::new()
            };
            Outcome { code: e.exit_code(), stdout, stderr: format!("error: {e}\n") }
        }
    }
}
