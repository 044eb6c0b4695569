//! Command-line front end.
//!
//! Data goes to stdout and is byte-stable for fixed inputs; progress and
//! diagnostics go to stderr. Exit codes: 0 success, 1 verification or
//! input failure, 2 usage errors.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kriz::action::character_direct_cell;
use kriz::chars::{decompose, stable_label, type_character};
use kriz::exterior::{bigraded_dims, enumerate_types, type_dimension, TypeSignature};
use kriz::homology::betti_table;
use kriz::qnum::format_q;
use kriz::ring::{parse_ring, ring_from_descriptor, GradedRing};
use kriz::verify::{self, Check};
use kriz::{Character, KrizError};

#[derive(Parser)]
#[command(
    name = "kriz",
    about = "Exact computations with rational models of ordered configuration spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RingArg {
    /// Ring preset (`cp:m`, `curve:g`) or path to a ring-spec file.
    #[arg(long, default_value = "cp:1")]
    ring: String,
}

impl RingArg {
    fn load(&self) -> Result<GradedRing, KrizError> {
        if self.ring.contains(':') && !std::path::Path::new(&self.ring).exists() {
            return ring_from_descriptor(&self.ring);
        }
        let text = std::fs::read_to_string(&self.ring).map_err(|e| KrizError::Parse {
            line: 0,
            msg: format!("cannot read {}: {e}", self.ring),
        })?;
        parse_ring(&text)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a ring, printing a summary.
    RingCheck {
        #[command(flatten)]
        ring: RingArg,
    },
    /// Bigraded dimensions of the model as TSV rows `q  k  dim`.
    Dims {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        n: usize,
    },
    /// Betti numbers of the configuration space.
    Betti {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Two-variable Poincare polynomial of the configuration space.
    Poincare {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        n: usize,
    },
    /// Character table of a bigraded component or one type block.
    Char {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Type signature `L=3,1,1;H=w,1,1`.
        #[arg(long = "type")]
        type_sig: Option<String>,
    },
    /// Irreducible decomposition of a component or type-block character.
    Decompose {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "type")]
        type_sig: Option<String>,
    },
    /// Type signatures of a bigraded component with their dimensions.
    Types {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
    },
    /// Re-check structural facts; prints one PASS/FAIL line per check.
    Verify {
        /// Suite: diffs, injectivity, duality, characters, subcomplexes,
        /// cp1, or all.
        suite: String,
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, default_value = "4")]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, KrizError> {
    match cli.command {
        Command::RingCheck { ring } => {
            let ring = ring.load()?;
            println!("{}", ring.summary());
            println!("ok");
            Ok(ExitCode::SUCCESS)
        }
        Command::Dims { ring, n } => {
            let ring = ring.load()?;
            let dims = bigraded_dims(&ring, n);
            println!("{}", dims.to_tsv());
            Ok(ExitCode::SUCCESS)
        }
        Command::Betti { ring, n, format } => {
            let ring = ring.load()?;
            eprintln!("computing ranks for {} cells", bigraded_dims(&ring, n).cells().count());
            let betti = betti_table(&ring, n);
            match format {
                Format::Text => println!("{}", betti.poincare_polynomial()),
                Format::Tsv => println!("{}", betti.to_tsv()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Poincare { ring, n } => {
            let ring = ring.load()?;
            println!("{}", betti_table(&ring, n).poincare_polynomial());
            Ok(ExitCode::SUCCESS)
        }
        Command::Char {
            ring,
            n,
            q,
            k,
            type_sig,
        } => {
            let ring = ring.load()?;
            let (headers, columns) = characters_for(&ring, n, q, k, type_sig.as_deref())?;
            print_character_table(n, &headers, &columns);
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose {
            ring,
            n,
            q,
            k,
            type_sig,
        } => {
            let ring = ring.load()?;
            let (_, columns) = characters_for(&ring, n, q, k, type_sig.as_deref())?;
            let chi = columns.into_iter().next().expect("one character");
            let mut total = 0usize;
            for (lambda, mult) in decompose(&chi)? {
                let (_, stable) = stable_label(&lambda, n);
                match stable {
                    Some(s) => println!("{mult}*{} [{s}]", lambda.v_label()),
                    None => println!("{mult}*{}", lambda.v_label()),
                }
                total += mult * irreducible_dim(&lambda);
            }
            println!("dim\t{total}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Types { ring, n, q, k } => {
            let ring = ring.load()?;
            for sig in enumerate_types(&ring, n, q, k) {
                println!("{}\t{}", sig.format(&ring), type_dimension(&sig));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, ring, n } => {
            let known = [
                "diffs",
                "injectivity",
                "duality",
                "characters",
                "subcomplexes",
                "cp1",
                "all",
            ];
            if !known.contains(&suite.as_str()) {
                eprintln!("error: unknown suite {suite}; available: {}", known.join(" "));
                return Ok(ExitCode::from(2));
            }
            let ring = ring.load()?;
            let checks = run_suites(&suite, &ring, n)?;
            let mut out = std::io::stdout().lock();
            for c in &checks {
                writeln!(
                    out,
                    "{} {} ({})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )
                .expect("stdout");
            }
            if verify::all_pass(&checks) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn irreducible_dim(lambda: &kriz::Partition) -> usize {
    kriz::chars::dim_hook_length(lambda)
        .to_string()
        .parse()
        .expect("small dimension")
}

/// Resolve the requested characters: a type block gives the direct and the
/// induced character, a cell gives its direct character.
fn characters_for(
    ring: &GradedRing,
    n: usize,
    q: Option<usize>,
    k: Option<usize>,
    type_sig: Option<&str>,
) -> Result<(Vec<String>, Vec<Character>), KrizError> {
    if let Some(text) = type_sig {
        let sig = TypeSignature::parse(text, ring)?;
        if sig.n() != n {
            return Err(KrizError::SizeMismatch(format!(
                "type signature covers {} points, n = {n}",
                sig.n()
            )));
        }
        let direct = kriz::action::character_direct_type(ring, &sig)?;
        let induced = type_character(ring, &sig)?;
        return Ok((vec!["direct".into(), "induced".into()], vec![direct, induced]));
    }
    match (q, k) {
        (Some(q), Some(k)) => {
            let chi = character_direct_cell(ring, n, q, k)?;
            Ok((vec![format!("E_{q}^{k}")], vec![chi]))
        }
        _ => Err(KrizError::Parse {
            line: 0,
            msg: "char/decompose need --q and --k, or --type".into(),
        }),
    }
}

fn print_character_table(n: usize, headers: &[String], columns: &[Character]) {
    let cycle_types = kriz::chars::partitions(n);
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header_row = vec!["class".to_string(), "size".to_string()];
    header_row.extend(headers.iter().cloned());
    rows.push(header_row);
    for ct in &cycle_types {
        let mut row = vec![ct.to_string(), kriz::chars::class_size(ct).to_string()];
        for chi in columns {
            row.push(format_q(chi.value(ct)));
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:>width$}", width = widths[c]))
            .collect();
        println!("{}", line.join("  "));
    }
}

fn run_suites(suite: &str, ring: &GradedRing, n: usize) -> Result<Vec<Check>, KrizError> {
    let cp1;
    let line_ring = if ring.m() == 1 && ring.dim() == 2 {
        ring
    } else {
        cp1 = kriz::ring::preset_ring("cp", 1)?;
        &cp1
    };
    match suite {
        "diffs" => verify::suite_diffs(ring, n),
        "injectivity" => verify::suite_injectivity(ring, n),
        "duality" => verify::suite_duality(ring, n),
        "characters" => verify::suite_characters(ring, n),
        "subcomplexes" => verify::suite_subcomplexes(ring, n),
        "cp1" => verify::suite_cp1(line_ring, n),
        "all" => {
            let mut checks = verify::suite_diffs(ring, n)?;
            checks.extend(verify::suite_injectivity(ring, n)?);
            checks.extend(verify::suite_duality(ring, n)?);
            checks.extend(verify::suite_characters(ring, n)?);
            checks.extend(verify::suite_subcomplexes(ring, n)?);
            checks.extend(verify::suite_cp1(line_ring, n)?);
            Ok(checks)
        }
        other => Err(KrizError::Parse {
            line: 0,
            msg: format!(
                "unknown suite {other}; available: diffs injectivity duality characters subcomplexes cp1 all"
            ),
        }),
    }
}
