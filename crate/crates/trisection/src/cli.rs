//! The `trisect` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trisection_core::trisection::{
    self, builtin, connected_sum, euler_characteristic, pairwise_pushout, search_common_kernel, stabilize,
    BUILTIN_NAMES,
};
use trisection_core::{Budget, Verdict};

use crate::dsl::{parse_document, serialize_document, serialize_trisection, TrisectionDocument};
use crate::report::{self, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_IO: i32 = 66;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Maximum Tietze passes per simplification
    #[arg(long, global = true)]
    budget_tietze_passes: Option<u64>,
    /// Cap on total relator length during Tietze simplification
    #[arg(long, global = true)]
    budget_relator_length: Option<usize>,
    /// Coset table size cap for Todd-Coxeter enumeration
    #[arg(long, global = true)]
    budget_cosets: Option<usize>,
    /// Search-node cap for homomorphism counting
    #[arg(long, global = true)]
    budget_hom_nodes: Option<u64>,
    /// Wall-clock cap in seconds per certificate
    #[arg(long, global = true)]
    budget_seconds: Option<u64>,
}

#[derive(Debug, Parser)]
#[command(name = "trisect", version, about = "Verify, combine and fingerprint group trisections")]
struct Cli {
    #[command(flatten)]
    budget: BudgetArgs,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Reserved; all computations are deterministic
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every cube condition; exit 0 Proved, 1 Refuted, 2 Inconclusive
    Verify { file: PathBuf },
    /// Connected sum of two trisections
    Sum {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Connected sum with the standard trivial (3,1)-trisection
    Stabilize {
        file: PathBuf,
        #[arg(short = 'n', long, default_value_t = 1)]
        times: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Invariants that can tell trisections apart
    Fingerprint { file: PathBuf },
    /// Presentation of the pushout of sectors i and j
    Pushout {
        file: PathBuf,
        #[arg(short, value_parser = clap::value_parser!(u8).range(1..=3))]
        i: u8,
        #[arg(short, value_parser = clap::value_parser!(u8).range(1..=3))]
        j: u8,
    },
    /// Euler characteristic 2 + g - 3k
    Euler { file: PathBuf },
    /// Nontrivial surface words killed by all three maps
    KernelSearch {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        max_length: u32,
    },
    /// Write a built-in trisection
    Example {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(BUILTIN_NAMES))]
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rewrite a file in canonical form
    Canon { file: PathBuf },
}

fn monotonic_ms() -> u64 {
    static START: OnceLock<Instant> = OnceLock::new();
    START.get_or_init(Instant::now).elapsed().as_millis() as u64
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_tietze_passes: self.budget_tietze_passes.unwrap_or(d.max_tietze_passes),
            max_relator_length: self.budget_relator_length.unwrap_or(d.max_relator_length),
            max_cosets: self.budget_cosets.unwrap_or(d.max_cosets),
            max_hom_nodes: self.budget_hom_nodes.unwrap_or(d.max_hom_nodes),
            wall_clock_secs: self.budget_seconds.unwrap_or(d.wall_clock_secs),
            clock: None,
        }
        .with_clock(monotonic_ms)
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn load(path: &Path) -> Result<TrisectionDocument, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) })?;
    parse_document(&text).map_err(|e| Failure { code: EXIT_PARSE, message: format!("{}: {e}", path.display()) })
}

fn store(path: &Path, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    if path == Path::new("-") {
        return out.write_all(text.as_bytes()).map_err(|e| Failure { code: EXIT_IO, message: e.to_string() });
    }
    fs::write(path, text).map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) })
}

fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Proved => EXIT_OK,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Human => r.to_text(),
        Format::Machine => r.to_json(),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let budget = cli.budget.budget();
    if !budget.is_valid() {
        return Err(Failure { code: EXIT_USAGE, message: "budget limits must be positive".into() });
    }
    let emit = |out: &mut dyn Write, r: Report| {
        out.write_all(render(&r, cli.format).as_bytes()).map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })
    };
    match &cli.command {
        Command::Verify { file } => {
            let doc = load(file)?;
            let v = trisection::verify(&doc.trisection, &budget);
            emit(out, report::verification(doc.name.as_deref(), &v))?;
            Ok(exit_code(v.verdict()))
        }
        Command::Sum { first, second, output } => {
            let (a, b) = (load(first)?, load(second)?);
            store(output, &serialize_trisection(&connected_sum(&a.trisection, &b.trisection)), out)?;
            Ok(EXIT_OK)
        }
        Command::Stabilize { file, times, output } => {
            let mut t = load(file)?.trisection;
            for _ in 0..*times {
                t = stabilize(&t);
            }
            store(output, &serialize_trisection(&t), out)?;
            Ok(EXIT_OK)
        }
        Command::Fingerprint { file } => {
            let doc = load(file)?;
            emit(out, report::fingerprint(doc.name.as_deref(), &trisection::fingerprint(&doc.trisection, &budget)))?;
            Ok(EXIT_OK)
        }
        Command::Pushout { file, i, j } => {
            let t = load(file)?.trisection;
            let p = pairwise_pushout(&t, *i as usize, *j as usize)
                .map_err(|e| Failure { code: EXIT_USAGE, message: e.to_string() })?;
            emit(out, report::pushout(&format!("pushout ({i},{j})"), &p))?;
            Ok(EXIT_OK)
        }
        Command::Euler { file } => {
            let t = load(file)?.trisection;
            let r = Report::new("euler")
                .field("genus", t.genus())
                .field("k", t.k())
                .field("euler_characteristic", euler_characteristic(&t));
            emit(out, r)?;
            Ok(EXIT_OK)
        }
        Command::KernelSearch { file, max_length } => {
            let t = load(file)?.trisection;
            let found = search_common_kernel(&t, *max_length as usize);
            let r = Report::new("kernel search")
                .field("max_length", *max_length)
                .field("found", found.len())
                .field("words", found.iter().map(|w| w.to_string()).collect::<Vec<_>>());
            emit(out, r)?;
            Ok(EXIT_OK)
        }
        Command::Example { name, output } => {
            let doc = TrisectionDocument { name: Some(name.clone()), trisection: builtin(name).expect("validated by clap") };
            store(output.as_deref().unwrap_or(Path::new("-")), &serialize_document(&doc), out)?;
            Ok(EXIT_OK)
        }
        Command::Canon { file } => {
            let doc = load(file)?;
            store(Path::new("-"), &serialize_document(&doc), out)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the tool on `args` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "trisect: {}", f.message);
            f.code
        }
    }
}
