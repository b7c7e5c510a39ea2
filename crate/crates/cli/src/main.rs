use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polyspace::catalog::{self, paper_reports, r2_check, read_jsonl, reference, Check};
use polyspace::identities::{run_suite, SuiteConfig};
use polyspace::{enumerate_codes, is_realizable, report, CatalogEntry, EnumerateOptions, GeneticCode, LengthVector};

#[derive(Parser)]
#[command(name = "polyspace", version, about = "Invariants of planar polygon spaces")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genetic code and invariants of one space.
    #[command(group(ArgGroup::new("input").required(true).args(["lengths", "code"])))]
    Analyze {
        /// Comma-separated side lengths, e.g. "1/6,1/6,1,1,1".
        #[arg(long)]
        lengths: Option<String>,
        /// A genetic code, e.g. "7:[421|51]".
        #[arg(long)]
        code: Option<String>,
    },
    /// Write every realizable code for `n` as JSON lines.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "POLYSPACE_JOBS")]
        jobs: Option<usize>,
        #[arg(long)]
        with_reports: bool,
        /// Required for n = 9.
        #[arg(long)]
        allow_long: bool,
        /// Progress file; finished subtrees are skipped when rerun.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Compare computed statistics with the bundled reference values.
    Verify {
        #[arg(long, value_enum)]
        paper: Target,
        #[arg(long)]
        n: Option<usize>,
        /// Use a catalog file instead of enumerating.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        allow_long: bool,
    },
    /// Exact checks of the binomial identities.
    Identities {
        #[arg(long, default_value_t = 20)]
        max_m: i64,
        #[arg(long, default_value_t = 20)]
        max_k: u64,
        /// Also check the WZ certificate.
        #[arg(long)]
        wz: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Table1,
    Section3,
    R2thm,
}

enum Failure {
    /// Bad flags or unreadable input; exit 2.
    Usage(String),
    /// A computation or comparison did not succeed; exit 1.
    Failed(String),
}

impl From<polyspace::Error> for Failure {
    fn from(e: polyspace::Error) -> Self {
        match e {
            polyspace::Error::Parse { .. } | polyspace::Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { lengths, code } => analyze(lengths, code, cli.json),
        Command::Enumerate {
            n,
            out,
            jobs,
            with_reports,
            allow_long,
            checkpoint,
        } => {
            let opts = EnumerateOptions {
                jobs,
                with_reports,
                allow_long,
                checkpoint,
            };
            enumerate(n, out, &opts)
        }
        Command::Verify {
            paper,
            n,
            catalog,
            allow_long,
        } => verify(paper, n, catalog, allow_long, cli.json),
        Command::Identities { max_m, max_k, wz } => identities(max_m, max_k, wz, cli.json),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(json: bool, value: &Value, text: &str) {
    if json {
        println!("{value}");
    } else {
        print!("{text}");
    }
}

fn analyze(lengths: Option<String>, code: Option<String>, json: bool) -> Outcome {
    let (code, witness) = match (lengths, code) {
        (Some(l), None) => {
            let l: LengthVector = l.parse()?;
            if !l.is_generic() {
                return Err(Failure::Failed(format!("length vector {l} is not generic")));
            }
            (l.genetic_code()?, l)
        }
        (None, Some(c)) => {
            let c: GeneticCode = c.parse()?;
            match is_realizable(&c)? {
                Some(w) => (c, w),
                None => {
                    emit(
                        json,
                        &json!({ "code": c, "realizable": false }),
                        &format!("code: {c}\nrealizable: no\n"),
                    );
                    return Ok(false);
                }
            }
        }
        _ => return Err(Failure::Usage("give exactly one of --lengths, --code".into())),
    };
    if code.is_empty() {
        emit(
            json,
            &json!({ "code": code, "witness": witness.to_string(), "empty": true }),
            &format!("generic: yes\ncode: {code}\nthe polygon space is empty\n"),
        );
        return Ok(true);
    }
    let r = report(&code)?;
    let mut text = format!("generic: yes\ncode: {code}\nwitness: {witness}\n");
    text += &format!("d-vector: {:?}\n", r.d_vector);
    text += &format!("orientable: {}\n", r.orientable);
    text += &format!("cobordism: {}\n", r.cobordism);
    if let Some(note) = &r.cobordism_note {
        text += &format!("  note: {note}\n");
    }
    text += &format!("euler characteristic: {}\n", r.euler);
    text += &format!("nonzero vector field: {}\n", r.has_vector_field);
    text += &format!("w_i odd-coefficient degrees: {:?}\n", r.sw_nonzero_degrees);
    text += &format!("largest nonzero power of R: {}\n", r.r_height);
    match r.immersion {
        Some(i) if i.obstructed => text += &format!("immersion: none in R^{}\n", i.euclidean_dim),
        Some(i) => text += &format!("immersion: no obstruction found in R^{}\n", i.euclidean_dim),
        None => text += "immersion: no applicable bound\n",
    }
    text += &format!("parallelizable: {}\n", r.parallelizable);
    let entry = CatalogEntry {
        code,
        witness,
        report: Some(r),
    };
    if json {
        println!("{}", catalog::entry_to_json(&entry));
    } else {
        print!("{text}");
    }
    Ok(true)
}

fn enumerate(n: usize, out: Option<PathBuf>, opts: &EnumerateOptions) -> Outcome {
    eprintln!("enumerating n={n}");
    let entries = enumerate_codes(n, opts)?;
    eprintln!("{} codes", entries.len());
    match out {
        Some(path) => catalog::write_jsonl(&entries, BufWriter::new(File::create(path)?))?,
        None => catalog::write_jsonl(&entries, BufWriter::new(io::stdout().lock()))?,
    }
    Ok(true)
}

fn load(path: &PathBuf) -> Result<Vec<CatalogEntry>, Failure> {
    Ok(read_jsonl(BufReader::new(File::open(path)?))?)
}

fn catalog_for(n: Option<usize>, path: Option<PathBuf>, allow_long: bool) -> Result<(usize, Vec<CatalogEntry>), Failure> {
    match (n, path) {
        (_, Some(p)) => {
            let entries = load(&p)?;
            let found = entries.first().map(|e| e.code.n());
            let n = n.or(found).ok_or_else(|| Failure::Usage("empty catalog".into()))?;
            if entries.iter().any(|e| e.code.n() != n) {
                return Err(Failure::Usage(format!("catalog does not contain only n={n} codes")));
            }
            Ok((n, entries))
        }
        (Some(n), None) => {
            let opts = EnumerateOptions {
                allow_long,
                ..Default::default()
            };
            Ok((n, enumerate_codes(n, &opts)?))
        }
        (None, None) => Err(Failure::Usage("give --n or --catalog".into())),
    }
}

fn print_checks(checks: &[Check], json: bool) -> bool {
    let passed = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        text += &format!("{}: expected {}, found {}: {verdict}\n", c.name, c.expected, c.found);
        if let Some((missing, extra)) = &c.diff {
            text += &format!("  missing: {}\n  unexpected: {}\n", missing.join(" "), extra.join(" "));
        }
    }
    emit(json, &json!({ "passed": passed, "checks": checks }), &text);
    passed
}

fn verify(target: Target, n: Option<usize>, path: Option<PathBuf>, allow_long: bool, json: bool) -> Outcome {
    let reference = reference();
    match target {
        Target::Table1 => {
            let (n, entries) = catalog_for(n, path, allow_long)?;
            let Some(&want) = reference.census.get(&n) else {
                return Err(Failure::Usage(format!("no reference count for n={n}")));
            };
            let passed = entries.len() == want;
            let verdict = if passed { "PASS" } else { "FAIL" };
            let text = if passed {
                format!("{} codes: {verdict}\n", entries.len())
            } else {
                format!("{} codes: {verdict} (expected {want})\n", entries.len())
            };
            let value = json!({ "n": n, "expected": want, "found": entries.len(), "passed": passed });
            emit(json, &value, &text);
            Ok(passed)
        }
        Target::Section3 => {
            let (n, entries) = catalog_for(Some(n.unwrap_or(7)), path, false)?;
            if n != 7 {
                return Err(Failure::Usage("section3 statistics concern n=7".into()));
            }
            let r = paper_reports(&entries, &reference)?;
            Ok(print_checks(&r.checks, json))
        }
        Target::R2thm => {
            let (n, entries) = catalog_for(n, path, false)?;
            let (lo, hi) = reference.r2_zero_range;
            if !(lo..=hi).contains(&n) {
                return Err(Failure::Usage(format!("r2thm is checked for {lo} <= n <= {hi}")));
            }
            let c = r2_check(&entries, n)?;
            Ok(print_checks(&[c], json))
        }
    }
}

fn identities(max_m: i64, max_k: u64, wz: bool, json: bool) -> Outcome {
    let cfg = SuiteConfig {
        max_m,
        max_k,
        wz,
        ..Default::default()
    };
    let r = run_suite(&cfg);
    let mut text = String::new();
    for t in &r.tallies {
        let verdict = if t.passed() { "PASS" } else { "FAIL" };
        text += &format!("{}: {} cases, {} failures: {verdict}\n", t.name, t.checked, t.failures.len());
        for f in t.failures.iter().take(10) {
            text += &format!("  {f}\n");
        }
    }
    emit(json, &json!({ "passed": r.passed(), "tallies": r.tallies }), &text);
    io::stdout().flush()?;
    Ok(r.passed())
}
