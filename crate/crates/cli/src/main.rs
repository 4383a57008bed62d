use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use homforge_core::classify::{classify, classify_exhaustive, ClassRow};
use homforge_core::complexes::{build_complex, BuildOptions, ComplexKind, MAX_DEGREE};
use homforge_core::lines::LineTuple;
use homforge_core::report::{Record, Report};
use homforge_core::spectral::step3::x_subgroup;
use homforge_core::suites::{run_suite, skipped, Suite, SuiteOptions};
use homforge_core::{Error, Result};

const DEFAULT_SEED: u64 = 20_240_917;
const EXHAUSTIVE_MERGE_SAMPLES: usize = 100_000;
const WITNESS_DIM: usize = 3_000;
const WITNESS_GENERATORS: usize = 8;
const WITNESS_TERMS: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "homforge", version, about = "Line-configuration complexes over small prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Field size (a prime).
    #[arg(long = "q", global = true, default_value_t = 5)]
    q: u32,
    /// Ambient dimension.
    #[arg(long = "n", global = true)]
    n: Option<usize>,
    /// Tuple length (classify) or homological degree (homology).
    #[arg(long, global = true)]
    degree: Option<usize>,
    #[arg(long, global = true, default_value = "D")]
    kind: ComplexKind,
    #[arg(long, global = true, default_value = "all")]
    suite: Suite,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Classify by raw enumeration instead of canonical forms.
    #[arg(long, global = true)]
    exhaustive: bool,
    #[arg(long, global = true, default_value_t = 50_000)]
    max_basis: usize,
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_nnz: usize,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Orbit table of tuples of a given length.
    Classify,
    /// Homology of a coinvariant complex in one degree.
    Homology,
    /// Run a verification suite.
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Tsv,
}

#[derive(Serialize)]
struct RunConfig {
    command: &'static str,
    q: u32,
    n: usize,
    degree: Option<usize>,
    kind: Option<String>,
    suite: Option<String>,
    seed: u64,
    exhaustive: bool,
    max_basis: usize,
    max_nnz: usize,
    skipped_suites: Vec<String>,
}

impl Cli {
    fn config(&self) -> RunConfig {
        let (command, kind, suite) = match self.command {
            Command::Classify => ("classify", None, None),
            Command::Homology => ("homology", Some(self.kind.to_string()), None),
            Command::Verify => ("verify", None, Some(self.suite.to_string())),
        };
        RunConfig {
            command,
            q: self.q,
            n: self.n.unwrap_or(4),
            degree: self.degree,
            kind,
            suite,
            seed: self.seed,
            exhaustive: self.exhaustive,
            max_basis: self.max_basis,
            max_nnz: self.max_nnz,
            skipped_suites: match self.command {
                Command::Verify => skipped(self.suite, self.q).iter().map(|s| s.to_string()).collect(),
                _ => Vec::new(),
            },
        }
    }

    fn build(&self) -> BuildOptions {
        BuildOptions {
            max_basis: self.max_basis,
            max_nnz: self.max_nnz,
            order_seed: None,
        }
    }
}

/// Human-readable text plus report records.
struct Outcome {
    text: String,
    records: Vec<Record>,
}

fn cmd_classify(cli: &Cli) -> Result<Outcome> {
    let n = cli.n.unwrap_or(4);
    let len = cli.degree.unwrap_or(3);
    let rows = if cli.exhaustive {
        if n != 4 {
            return Err(Error::Invalid("exhaustive classification is implemented for n = 4".into()));
        }
        classify_exhaustive(cli.q, len, EXHAUSTIVE_MERGE_SAMPLES, cli.seed)?
    } else {
        classify(cli.q, n, len, &cli.build())?
    };
    let source = if cli.exhaustive { "raw enumeration" } else { "canonical forms" };
    let total: usize = rows.iter().map(|r| r.count).sum();
    let mut text = format!("orbits of {len}-tuples in F_{}^{n} ({source}): {total}\n", cli.q);
    text.push_str(&table(&rows));
    let records = rows
        .iter()
        .map(|r| {
            Record::new(
                "classify/family",
                json!({"q": cli.q, "n": n, "length": len, "family": r.family, "source": source}),
                true,
                format!("count {}; parameters [{}]; Levi {}", r.count, r.params.join(", "), r.levi.join(" | ")),
            )
        })
        .collect();
    Ok(Outcome { text, records })
}

fn table(rows: &[ClassRow]) -> String {
    let params: Vec<String> = rows.iter().map(|r| r.params.join(" ")).collect();
    let fw = rows.iter().map(|r| r.family.chars().count()).max().unwrap_or(0).max(6);
    let pw = params.iter().map(|p| p.chars().count()).max().unwrap_or(0).max(10);
    let mut out = format!("{:<fw$}  {:>5}  {:<pw$}  Levi\n", "family", "count", "parameters");
    for (r, p) in rows.iter().zip(&params) {
        out.push_str(&format!("{:<fw$}  {:>5}  {:<pw$}  {}\n", r.family, r.count, p, r.levi.join(" | ")));
    }
    out
}

fn cmd_homology(cli: &Cli) -> Result<Outcome> {
    let n = cli.n.unwrap_or(4);
    let degree = cli.degree.unwrap_or(1);
    let kind = cli.kind;
    if degree >= MAX_DEGREE {
        return Err(Error::Invalid(format!(
            "H_{degree} needs chains of length {}, complexes are built through length {MAX_DEGREE}",
            degree + 1
        )));
    }
    let cx = build_complex(kind, n, cli.q, degree + 1, &cli.build())?;
    let group = cx.homology(degree)?;
    let params = json!({"kind": kind.to_string(), "q": cli.q, "n": n, "degree": degree});
    let mut text = format!(
        "H_{degree}({kind}_*(F_{}^{n})) = {group}\nbasis sizes by degree: {:?}\n",
        cli.q,
        cx.chain().dims()
    );
    let mut records = vec![Record::new(
        "homology/structure",
        params.clone(),
        true,
        format!("{group}; basis sizes {:?}", cx.chain().dims()),
    )];

    let lo = degree.saturating_sub(1);
    let span: usize = (lo..=degree + 1).map(|l| cx.dim(l)).sum();
    if !group.is_trivial() && span <= WITNESS_DIM {
        let pres = cx.chain().present(degree)?;
        for (i, (z, order)) in pres.generators.iter().zip(&pres.orders).take(WITNESS_GENERATORS).enumerate() {
            let mut terms = Vec::new();
            for (j, c) in z.iter().enumerate().filter(|(_, c)| !c.is_zero()).take(WITNESS_TERMS) {
                terms.push(format!("{c}·[{}]", LineTuple::new(cli.q, n, cx.basis(degree)[j].clone())?));
            }
            let more = z.iter().filter(|c| !c.is_zero()).count().saturating_sub(WITNESS_TERMS);
            let tail = if more > 0 { format!(" + … ({more} more)") } else { String::new() };
            let ord = if order.is_zero() { "∞".to_string() } else { order.to_string() };
            let w = format!("generator {i} (order {ord}): {}{tail}", terms.join(" + "));
            text.push_str(&w);
            text.push('\n');
            records.push(Record::new(
                "homology/generator",
                json!({"kind": kind.to_string(), "q": cli.q, "n": n, "degree": degree, "index": i}),
                true,
                w,
            ));
        }
    } else if !group.is_trivial() {
        text.push_str("generator witnesses omitted: complex too large for dense presentation\n");
    }

    if kind == ComplexKind::C && n == 4 && (degree == 5 || degree == 6) && cli.q >= 5 {
        let x = x_subgroup(cli.q, &cli.build())?;
        let order = x.order.as_ref().map_or("infinite".to_string(), |o| o.to_string());
        let detail = format!(
            "x_(a,b,c) are 6-tuples, so their classes lie in degree 6: H_6 = {}, {} classes span rank {} (order {order}), H_6/<x> = {}; {}/{} bound in D",
            x.homology, x.triples, x.rank, x.quotient, x.bounding_in_d, x.triples
        );
        text.push_str(&detail);
        text.push('\n');
        records.push(Record::new(
            "homology/x-subgroup",
            json!({"q": cli.q, "n": 4, "degree": 6}),
            x.bounding_in_d == x.triples,
            detail,
        ));
    }
    Ok(Outcome { text, records })
}

fn cmd_verify(cli: &Cli) -> Result<Outcome> {
    let opts = SuiteOptions {
        q: cli.q,
        n: cli.n,
        seed: cli.seed,
        build: cli.build(),
    };
    let records = run_suite(cli.suite, &opts)?;
    let bad = records.iter().filter(|r| r.status != homforge_core::report::Status::Ok).count();
    let text = format!("suite {} at q = {}: {} checks, {} not ok\n", cli.suite, cli.q, records.len(), bad);
    Ok(Outcome { text, records })
}

fn run(cli: &Cli) -> std::result::Result<bool, String> {
    let outcome = match cli.command {
        Command::Classify => cmd_classify(cli),
        Command::Homology => cmd_homology(cli),
        Command::Verify => cmd_verify(cli),
    };
    let (text, records, refused) = match outcome {
        Ok(o) => (o.text, o.records, None),
        Err(e) => {
            let msg = e.to_string();
            let r = Record::refused("refusal", json!({"q": cli.q}), msg.clone());
            (String::new(), vec![r], Some(msg))
        }
    };
    let report = Report::new(cli.config(), records);
    let ok = report.all_ok();
    let render = |f: Format| match f {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(),
    };
    let wants_report = cli.out.is_some() || cli.format.is_some() || matches!(cli.command, Command::Verify);
    if wants_report {
        let body = render(cli.format.unwrap_or(Format::Json)).map_err(|e| e.to_string())?;
        match &cli.out {
            Some(path) => {
                fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?;
                print!("{text}");
            }
            None => print!("{body}"),
        }
    } else {
        print!("{text}");
    }
    if let Some(msg) = refused {
        return Err(msg);
    }
    if !ok {
        for r in report.failures().take(10) {
            eprintln!("{} {}: {} {}", r.status, r.check, r.params, r.detail);
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("homforge: refused: {msg}");
            ExitCode::from(2)
        }
    }
}
