use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use pnvd::constructions::ConstructionRecipe;
use pnvd::enumeration::{catalog_m, linear_shift_experiment, SolutionCatalog};
use pnvd::planar::{planar_report, surjectivity_table, DEFAULT_SURJECTIVITY_CAP, LONG_SURJECTIVITY_CAP};
use pnvd::report::{CorpusSummary, SuiteReport, SurjectivityTable};
use pnvd::spectral::{spectrum_at_zero, WalshSpectrum};
use pnvd::suites::bent_corpus;
use pnvd::{analyze, emit_report, run_suite, Error, Format, FunctionTable, SuiteOptions, SUITES};

#[derive(Parser)]
#[command(name = "pnvd", version, about = "Value distributions of perfect nonlinear functions")]
struct Cli {
    /// Seed for sampled experiments and suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enable the larger experiment rows.
    #[arg(long, global = true)]
    long: bool,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,
    /// Include wall times in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a function table from a named construction.
    Construct {
        #[command(subcommand)]
        recipe: Recipe,
        /// Write the table here instead of stdout.
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Value distribution, type and checks of a function table.
    Analyze { table: PathBuf },
    /// Walsh spectra with cyclotomic coefficient vectors.
    Walsh {
        table: PathBuf,
        /// Only `W_F(b, 0)` for `b != 0`.
        #[arg(long)]
        at_zero: bool,
    },
    /// Solutions of the `T_i` system and the admissible distributions.
    Enumerate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Image set and 2-to-1 report for `F: F_p^n -> F_p^n`.
    Planar { table: PathBuf },
    #[command(subcommand)]
    Experiment(Experiment),
    /// Run verification suites; all of them when none are named.
    Verify {
        suites: Vec<String>,
        #[arg(long)]
        all: bool,
        /// List suite ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Analyses of the built-in bent corpus.
    Corpus,
}

#[derive(Subcommand)]
enum Experiment {
    /// Distributions of `F + A` over random linear maps `A`.
    LinearShifts {
        table: PathBuf,
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
    },
    /// Surjectivity of coordinate restrictions of `x^2`.
    Surjectivity {
        #[arg(long)]
        p: u32,
        /// `a..b` (inclusive) or a comma list.
        #[arg(long, value_parser = parse_range)]
        n: Ints,
        /// Range of `k`; default `floor(n/2) + 1`.
        #[arg(long, value_parser = parse_range)]
        k: Option<Ints>,
    },
}

#[derive(Subcommand)]
enum Recipe {
    Mm(Dims),
    Psap(Dims),
    Opoly {
        #[arg(long)]
        n: u32,
    },
    Gold {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lambda: Option<u32>,
    },
    Kasami {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        i: u32,
        #[arg(long)]
        lambda: Option<u32>,
    },
    /// `Tr(λ x^d)` on `F_{p^n}`.
    Monomial {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        d: u64,
        #[arg(long)]
        lambda: Option<u32>,
    },
    /// `x^d` on `F_{p^n}`.
    PlanarMonomial {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u64,
    },
    /// The (8,4) reference function.
    Seed84,
}

#[derive(Args)]
struct Dims {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Debug)]
struct Ints(Vec<u32>);

fn parse_range(s: &str) -> Result<Ints, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("`{t}` is not a number"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        return Ok(Ints((a..=b).collect()));
    }
    s.split(',').map(num).collect::<Result<_, _>>().map(Ints)
}

impl Recipe {
    fn recipe(&self) -> ConstructionRecipe {
        use ConstructionRecipe as R;
        match *self {
            Recipe::Mm(Dims { p, n, m }) => R::MaioranaMcFarland { p, n, m, pi: None, rho: None, l: None },
            Recipe::Psap(Dims { p, n, m }) => R::PartialSpread { p, n, m, psi: None },
            Recipe::Opoly { n } => R::OPolynomial { n, psi: None },
            Recipe::Gold { n, lambda } => R::Gold { n, lambda },
            Recipe::Kasami { n, i, lambda } => R::Kasami { n, i, lambda },
            Recipe::Monomial { p, n, d, lambda } => R::PAryMonomial { p, n, d, lambda },
            Recipe::PlanarMonomial { p, n, d } => R::PlanarMonomial { p, n, d },
            Recipe::Seed84 => R::Seed84,
        }
    }
}

/// Outcome of a command: the rendered output and whether every check held.
struct Outcome {
    output: String,
    passed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, passed: true }
    }
}

fn read_table(path: &Path) -> anyhow::Result<FunctionTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(FunctionTable::from_text(&text)?)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn catalog_text(c: &SolutionCatalog) -> String {
    let mut out = format!("p = {}, m = {}, {} solutions", c.p, c.m, c.entries.len());
    if c.parity_rejected > 0 {
        out += &format!(" ({} more rejected by parity)", c.parity_rejected);
    }
    out.push('\n');
    for e in &c.entries {
        let status = match e.realizable {
            Some(true) => "realizable",
            Some(false) => "excluded",
            None => "untested",
        };
        out += &format!("{} {:?} {}", e.solution, e.branch, status);
        if let Some(d) = &e.distribution {
            out += &format!(" -> {d}");
        }
        out.push('\n');
    }
    if c.n.is_some() {
        out += &format!("{} distinct admissible distributions\n", c.distributions().len());
    }
    out
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let format = if cli.json { Format::Json } else { cli.format.unwrap_or(Format::Text) };
    let opts = SuiteOptions { seed: cli.seed, long: cli.long };
    match &cli.command {
        Command::Construct { recipe, out } => {
            let text = recipe.recipe().build()?.to_text();
            match out {
                Some(path) => {
                    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Analyze { table } => {
            let a = analyze(&read_table(table)?)?;
            let c = &a.checks;
            let passed = a.verdict.within_bounds || !c.perfect_nonlinear;
            let passed = passed
                && c.second_moment != Some(false)
                && c.image_set.as_ref().map_or(true, |r| r.satisfied)
                && c.perfect_nonlinear == c.bent_by_spectrum;
            Ok(Outcome { output: emit_report(&a, format), passed })
        }
        Command::Walsh { table, at_zero } => {
            let f = read_table(table)?;
            let output = if *at_zero {
                let z = spectrum_at_zero(&f);
                match format {
                    Format::Json => json(&z),
                    _ => z.iter().map(|(b, w)| format!("{b}: {w}\n")).collect(),
                }
            } else {
                let s = WalshSpectrum::compute(&f);
                match format {
                    Format::Json => json(&s),
                    _ => s
                        .components
                        .iter()
                        .map(|(b, ws)| format!("{b}: {}\n", ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")))
                        .collect(),
                }
            };
            Ok(Outcome::ok(output))
        }
        Command::Enumerate { p, m, n } => {
            let c = catalog_m(*p, *m, *n)?;
            Ok(Outcome::ok(match format {
                Format::Json => json(&c),
                _ => catalog_text(&c),
            }))
        }
        Command::Planar { table } => {
            let r = planar_report(&read_table(table)?)?;
            Ok(Outcome::ok(match format {
                Format::Json => json(&r),
                _ => format!(
                    "planar: {}\n2-to-1: {}\nimage size: {} (lower bound {}, upper bound {})\neven: {}\n",
                    r.is_planar, r.is_two_to_one, r.image_size, r.lower_bound, r.upper_bound.floor, r.even_function
                ),
            }))
        }
        Command::Experiment(Experiment::LinearShifts { table, samples }) => {
            let f = read_table(table)?;
            let t = Instant::now();
            let r = linear_shift_experiment(&f, *samples, cli.seed);
            let mut output = match format {
                Format::Json => json(&r),
                _ => {
                    let mut s = format!("{} distinct distributions in {} samples (seed {})\n", r.hits.len(), r.samples, r.seed);
                    for (d, h) in &r.hits {
                        s += &format!("{d}: {h}\n");
                    }
                    s
                }
            };
            if cli.timing && format != Format::Json {
                output += &format!("wall time {:.3} s\n", t.elapsed().as_secs_f64());
            }
            Ok(Outcome::ok(output))
        }
        Command::Experiment(Experiment::Surjectivity { p, n, k }) => {
            let cap = if cli.long { LONG_SURJECTIVITY_CAP } else { DEFAULT_SURJECTIVITY_CAP };
            let ks = match k {
                Some(Ints(ks)) if !ks.is_empty() => Some((*ks.iter().min().unwrap(), *ks.iter().max().unwrap())),
                _ => None,
            };
            let rows = surjectivity_table(*p, &n.0, ks, cap)?;
            Ok(Outcome::ok(emit_report(&SurjectivityTable(rows), format)))
        }
        Command::Verify { suites, all, list } => {
            if *list {
                return Ok(Outcome::ok(SUITES.iter().map(|(id, d)| format!("{id:<28}{d}\n")).collect()));
            }
            let ids: Vec<&str> = if *all || suites.is_empty() {
                SUITES.iter().map(|s| s.0).collect()
            } else {
                suites.iter().map(String::as_str).collect()
            };
            let mut results = Vec::new();
            for id in ids {
                results.push(run_suite(id, opts)?);
            }
            let report = SuiteReport { suites: &results, timing: cli.timing };
            Ok(Outcome { output: emit_report(&report, format), passed: report.passed() })
        }
        Command::Corpus => {
            let rows = bent_corpus()
                .into_iter()
                .map(|(name, f)| analyze(&f).map(|a| (name, a)))
                .collect::<pnvd::Result<Vec<_>>>()?;
            Ok(Outcome::ok(emit_report(&CorpusSummary(rows), format)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            print!("{}", o.output);
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let violation = matches!(
                e.downcast_ref::<Error>(),
                Some(Error::TheoremViolation(_) | Error::ShapeViolation(_) | Error::ConstraintViolation(_))
            );
            if violation {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
