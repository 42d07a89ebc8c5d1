use std::io::{Read, Write};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use clap::{Parser, Subcommand};

use racks::cli::{self, ExitStatus, Outcome, TransformOp};
use racks::enumerate::SearchConfig;
use racks::free::DEFAULT_WINDOW;
use racks::StructureKind;

#[derive(Parser)]
#[command(name = "racks", version, about = "Finite racks, quandles and kei")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every block of a file is a rack (or permutation).
    Validate {
        /// Input file, or `-` for stdin.
        path: String,
        /// Only check the grammar and entry ranges.
        #[arg(long)]
        no_validate: bool,
    },
    /// Enumerate structures of one order up to isomorphism.
    Census {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "rack")]
        kind: StructureKind,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Print a table block per class.
        #[arg(long)]
        emit_tables: bool,
        /// Count and print labeled tables instead of classes.
        #[arg(long)]
        labeled: bool,
    },
    /// Apply a functor to every block of a file.
    Transform {
        path: String,
        #[arg(long)]
        op: TransformOp,
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: Option<i64>,
    },
    /// Evaluate a word such as `(x > (x <| x))` in the free rack on one generator.
    Eval {
        word: String,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: i64,
    },
    /// Compute the natural center over all census representatives up to an order.
    Center {
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value = "rack")]
        kind: StructureKind,
        /// Also print the composition table of the center.
        #[arg(long)]
        composition: bool,
    },
    /// Run the identity suite on every block of a file.
    Check { path: String },
}

fn read_input(path: &str) -> Result<String, Outcome> {
    let result = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    result.map_err(|e| Outcome {
        status: ExitStatus::InputError,
        stdout: String::new(),
        stderr: format!("error: cannot read {path}: {e}\n"),
    })
}

fn run(args: Args) -> Outcome {
    match args.command {
        Command::Validate { path, no_validate } => match read_input(&path) {
            Ok(text) => cli::cmd_validate(&text, no_validate),
            Err(o) => o,
        },
        Command::Census { order, kind, workers, emit_tables, labeled } => {
            let mut config = SearchConfig::new(order, kind).workers(workers);
            config.emit_tables = emit_tables;
            config.up_to_iso = !labeled;
            let cancel = Arc::new(AtomicBool::new(false));
            let flag = Arc::clone(&cancel);
            let _ = ctrlc::set_handler(move || flag.store(true, Ordering::Relaxed));
            cli::cmd_census(&config, &cancel)
        }
        Command::Transform { path, op, m } => match read_input(&path) {
            Ok(text) => cli::cmd_transform(&text, op, m),
            Err(o) => o,
        },
        Command::Eval { word, window } => cli::cmd_eval(&word, window),
        Command::Center { max_order, kind, composition } => cli::cmd_center(max_order, kind, composition),
        Command::Check { path } => match read_input(&path) {
            Ok(text) => cli::cmd_check(&text),
            Err(o) => o,
        },
    }
}

fn main() -> ExitCode {
    let outcome = run(Args::parse());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status as u8)
}
