//! Command-line entry point: validates algebra spec files, prints derived
//! brackets, certifies transport isomorphisms and Maurer-Cartan coherence,
//! runs the catalog certificate suites, and exercises the block-matrix
//! layer. The only I/O surface of the workspace.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 parse or usage
//! error, 3 unknown selector, 4 precondition or geometric failure.

mod commands;
mod input;

use clap::{Parser, Subcommand};

use linfty::CoreError;

#[derive(Parser)]
#[command(name = "linfty", version, about = "Exact derived-bracket L-infinity engine")]
struct Cli {
    /// Emit the machine-readable JSON report instead of the human rendering.
    #[arg(long, global = true)]
    json: bool,

    /// Arity bound for L-infinity verifications.
    #[arg(long, global = true, default_value_t = 4)]
    arity: usize,

    /// Truncation order of the formal parameter t.
    #[arg(long, global = true, default_value_t = 8)]
    t_order: u32,

    /// Seed for randomized property sampling (recorded in the report).
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a spec file or builtin: algebra axioms, pairing, declared
    /// splittings and r-matrix classes.
    Validate {
        /// Path to a spec file, or a builtin name.
        spec: String,
    },
    /// Build the torsor of a splitting, print the derived brackets on the
    /// generator basis, and verify the generalized Jacobi equations.
    Brackets {
        spec: String,
        /// Name of the splitting to use.
        #[arg(long)]
        splitting: String,
        /// Exchange the roles of M and L.
        #[arg(long)]
        swap: bool,
    },
    /// Certify the canonical isomorphism between the structures of two
    /// transversals and the Maurer-Cartan equivalence along it.
    Transport {
        spec: String,
        #[arg(long)]
        splitting: String,
        /// Take L' from another named splitting.
        #[arg(long)]
        l_prime: Option<String>,
        /// Skew matrix of the graph map L -> M as JSON rows of rationals.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Maurer-Cartan evaluation and the three-route transport coherence.
    Mc {
        spec: String,
        #[arg(long)]
        splitting: String,
        /// First-order coefficient of the 2-form, JSON rows of rationals.
        #[arg(long)]
        omega: Option<String>,
        /// First-order coefficient of the bivector, JSON rows of rationals.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Run the certificate suite of a catalog entry.
    Example {
        /// Builtin name; omit with --list to enumerate.
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// The pointwise block-matrix layer of a deformation pair, the
    /// inverse-form Maurer-Cartan series, and the difference-bracket
    /// identity over the catalog pairs.
    Complex {
        /// Square matrix of rationals (JSON rows), scaled by t internally.
        #[arg(long)]
        phi: String,
        #[arg(long)]
        phibar: String,
        /// Optional Maurer-Cartan candidate for the inverse-form series.
        #[arg(long)]
        rho: Option<String>,
    },
}

fn exit_code(err: &CoreError) -> i32 {
    match err {
        CoreError::Parse(_) | CoreError::Argument(_) => 2,
        CoreError::UnknownCatalog(_) => 3,
        _ => 4,
    }
}

fn main() {
    let cli = Cli::parse();
    let opts = commands::Options {
        arity: cli.arity,
        t_order: cli.t_order,
        seed: cli.seed,
    };
    let started = std::time::Instant::now();
    let result = match &cli.command {
        Command::Validate { spec } => commands::cmd_validate(spec, &opts),
        Command::Brackets {
            spec,
            splitting,
            swap,
        } => commands::cmd_brackets(spec, splitting, *swap, &opts),
        Command::Transport {
            spec,
            splitting,
            l_prime,
            eps,
        } => commands::cmd_transport(spec, splitting, l_prime.as_deref(), eps.as_deref(), &opts),
        Command::Mc {
            spec,
            splitting,
            omega,
            eps,
        } => commands::cmd_mc(spec, splitting, omega.as_deref(), eps.as_deref(), &opts),
        Command::Example { name, list } => commands::cmd_example(name.as_deref(), *list, &opts),
        Command::Complex { phi, phibar, rho } => {
            commands::cmd_complex(phi, phibar, rho.as_deref(), &opts)
        }
    };
    match result {
        Ok(report) => {
            if cli.json {
                print!("{}", report.json());
            } else {
                print!("{}", report.render_human());
                eprintln!("elapsed: {:?} (not part of the report)", started.elapsed());
            }
            std::process::exit(if report.passed { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
