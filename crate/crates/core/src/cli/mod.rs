//! Command-line front end.
//!
//! Settings are layered: built-in defaults, then the JSON config file named
//! by `--config` or `CL3COMP_CONFIG`, then individual flags.

mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{
    classify_with_norm, tables, AlgebraHandle, Carrier, ClassifyCell, PropertyReport,
};
use crate::clifford::{Multivector, Signature};
use crate::error::{Error, Result};
use crate::expr::parse;
use crate::involutions::NormId;
use crate::products::{Product, ProductId, SplitInterpretation, TauVariant};
use crate::roots::{
    closure, default_grid, doubled_hurwitz, hurwitz_units, identify_root_system,
    octonion_grid_units, seed_search, ClosureOutcome, RootSystemReport, VectorSet,
};
use crate::verify::{all_passed, run_suite, Check, Suite, SuiteContext};

pub const SCHEMA: &str = "cl3comp.report/1";
pub const CONFIG_ENV: &str = "CL3COMP_CONFIG";

const GRAMMAR: &str = "\
Expressions:
  expr    := term (('+' | '-') term)*
  term    := unary ('*' unary)*          '*' is the session product (--product)
  unary   := '-' unary | primary
  primary := literal | '(' expr ')'
  literal := number ['/' number] ['s3'] [blade] | 's3' [blade] | blade
  blade   := e1 | e2 | e3 | e12 | e23 | e13 | e123
A coefficient written next to a blade scales it: '1/2 s3 e3' is (sqrt(3)/2) e3.

Exit codes: 0 success, 1 a hard check failed, 2 usage or parse error.";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    #[serde(alias = "markdown")]
    #[value(alias = "markdown")]
    Md,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    #[default]
    Exact,
    Float { tolerance: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SessionConfig {
    pub sig: Signature,
    pub product: ProductId,
    pub tau: String,
    pub split: SplitInterpretation,
    pub scalar_mode: ScalarMode,
    pub format: Option<Format>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        Self {
            sig: Signature::ALL[0],
            product: ProductId::Dot,
            tau: "corrected".into(),
            split: SplitInterpretation::EvenOdd,
            scalar_mode: ScalarMode::Exact,
            format: None,
            seed: 0,
            out: None,
        }
    }
}

impl SessionConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn tau_variant(&self) -> Result<TauVariant> {
        self.tau.parse()
    }

    pub fn handle(&self) -> Result<AlgebraHandle> {
        Ok(AlgebraHandle::new(self.sig, self.product)
            .with_tau(self.tau_variant()?)
            .with_split(self.split))
    }

    fn apply(&mut self, g: &GlobalArgs) -> Result<()> {
        if let Some(s) = &g.sig {
            self.sig = s.parse()?;
        }
        if let Some(p) = &g.product {
            self.product = p.parse()?;
        }
        if let Some(t) = &g.tau {
            t.parse::<TauVariant>()?;
            self.tau = t.clone();
        }
        if let Some(s) = &g.split {
            self.split = s.parse()?;
        }
        if let Some(f) = g.format {
            self.format = Some(f);
        }
        if let Some(o) = &g.out {
            self.out = Some(o.clone());
        }
        if let Some(s) = g.seed {
            self.seed = s;
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "cl3comp",
    version,
    about = "Composition algebras from Cl(p,q), p + q = 3, in exact arithmetic",
    after_help = GRAMMAR
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Signature as p,q
    #[arg(long, global = true)]
    sig: Option<String>,
    /// clifford | dot | bullet | star | dot- | bullet- | star- | rot-para | ps-para | star-composed
    #[arg(long, global = true)]
    product: Option<String>,
    /// paper | corrected | file:<path>
    #[arg(long, global = true)]
    tau: Option<String>,
    /// evenodd | pseudoscalar
    #[arg(long, global = true)]
    split: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for fuzzed suites
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON config file
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    /// Include per-check runtimes (reports are then not byte-reproducible)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print it in canonical form
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Classify one algebra, or the whole signature x product matrix
    Classify {
        #[arg(long)]
        all: bool,
        /// nstar | ntilde | ndagger | nbar (default: the carrier's norm)
        #[arg(long)]
        norm: Option<String>,
        #[arg(long, value_enum)]
        carrier: Option<CarrierArg>,
    },
    /// Regenerate a table from live computation
    Tables {
        #[arg(value_enum)]
        which: TableId,
    },
    /// Enumerate integral units and identify their root system
    Roots {
        #[arg(value_enum)]
        lattice: Lattice,
        /// Also write the vectors as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 2000)]
        cap: usize,
    },
    /// Run an exact check suite
    Verify {
        /// composition | tau | involutions | biquaternion | all
        suite: String,
        #[arg(long)]
        norm: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CarrierArg {
    Full,
    Rot,
    Ps,
    Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableId {
    Table1,
    Table2,
    Section2,
    Section3,
    Section4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    D4,
    D4d4,
    E8,
}

/// What a command produced: the rendered report and whether its hard
/// checks passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    config: &'a SessionConfig,
    passed: bool,
    result: &'a T,
}

fn json<T: Serialize>(command: &str, cfg: &SessionConfig, passed: bool, result: &T) -> Result<String> {
    let env = Envelope {
        schema: SCHEMA,
        command,
        config: cfg,
        passed,
        result,
    };
    Ok(serde_json::to_string_pretty(&env)? + "\n")
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Invalid(_)
        | Error::InvalidSignature { .. }
        | Error::SignatureMismatch { .. }
        | Error::NotInSubalgebra { .. }
        | Error::NotClosed(_)
        | Error::GridTooLarge(_)
        | Error::Json(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok((outcome, out)) => {
            let written = match &out {
                Some(path) => fs::write(path, &outcome.text).map_err(Error::from),
                None => stdout.write_all(outcome.text.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> Result<(Outcome, Option<PathBuf>)> {
    let mut cfg = match &cli.global.config {
        Some(path) => SessionConfig::load(path)?,
        None => SessionConfig::default(),
    };
    cfg.apply(&cli.global)?;
    let outcome = match &cli.command {
        Command::Eval { expr } => eval(&cfg, expr)?,
        Command::Classify {
            all,
            norm,
            carrier,
        } => {
            if *all {
                classify_all(&cfg)?
            } else {
                let norm = norm.as_deref().map(str::parse::<NormId>).transpose()?;
                classify_one(&cfg, norm, *carrier)?
            }
        }
        Command::Tables { which } => table(&cfg, *which)?,
        Command::Roots { lattice, csv, cap } => roots(&cfg, *lattice, csv.as_deref(), *cap)?,
        Command::Verify { suite, norm } => {
            let norm = norm.as_deref().map(str::parse::<NormId>).transpose()?;
            verify(&cfg, suite.parse()?, norm, cli.global.timings)?
        }
    };
    Ok((outcome, cfg.out.clone()))
}

fn float_text(m: &Multivector, tolerance: f64) -> Result<String> {
    let mut terms = Vec::new();
    for (k, c) in m.coords().iter().enumerate() {
        let v = c.to_f64()?;
        if v.abs() > tolerance {
            let blade = crate::clifford::Blade::from_index(k);
            terms.push(if k == 0 {
                format!("{v}")
            } else {
                format!("{v} {blade}")
            });
        }
    }
    Ok(if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    })
}

#[derive(Serialize)]
struct EvalResult<'a> {
    expr: &'a str,
    value: String,
}

fn eval(cfg: &SessionConfig, expr: &str) -> Result<Outcome> {
    let product = Product::new(cfg.product, cfg.tau_variant()?, cfg.split);
    let value = parse(expr, cfg.sig, &product)?;
    let text = match cfg.scalar_mode {
        ScalarMode::Exact => value.to_string(),
        ScalarMode::Float { tolerance } => float_text(&value, tolerance)?,
    };
    let rendered = match cfg.format {
        None => text + "\n",
        Some(Format::Json) => json("eval", cfg, true, &EvalResult { expr, value: text })?,
        Some(Format::Md) => format!("`{expr}` = `{text}`\n"),
        Some(Format::Csv) => render::eval_csv(&value)?,
    };
    Ok(Outcome {
        text: rendered,
        passed: true,
    })
}

fn classify_one(cfg: &SessionConfig, norm: Option<NormId>, carrier: Option<CarrierArg>) -> Result<Outcome> {
    let mut handle = cfg.handle()?;
    if let Some(c) = carrier {
        handle = handle.with_carrier(match c {
            CarrierArg::Full => Carrier::Full,
            CarrierArg::Rot => Carrier::Rot,
            CarrierArg::Ps => Carrier::Ps,
            CarrierArg::Scalar => Carrier::Scalar,
        });
    }
    let norm = norm.unwrap_or(handle.carrier.default_norm());
    let report: PropertyReport = classify_with_norm(&handle, norm)?;
    let text = match cfg.format.unwrap_or_default() {
        Format::Json => json("classify", cfg, true, &report)?,
        Format::Md => render::property_md(&report),
        Format::Csv => render::property_csv(&report)?,
    };
    Ok(Outcome { text, passed: true })
}

/// Every cell is a match, or a mismatch that carries a witness.
pub fn matrix_passes(cells: &[ClassifyCell]) -> bool {
    cells
        .iter()
        .all(|c| c.verdict == "match" || c.witness.is_some())
}

fn classify_all(cfg: &SessionConfig) -> Result<Outcome> {
    let cells = tables::classify_all(&cfg.tau_variant()?)?;
    let passed = matrix_passes(&cells);
    let text = match cfg.format.unwrap_or_default() {
        Format::Json => json("classify --all", cfg, passed, &cells)?,
        Format::Md => render::matrix_md(&cells),
        Format::Csv => render::matrix_csv(&cells)?,
    };
    Ok(Outcome { text, passed })
}

fn table(cfg: &SessionConfig, which: TableId) -> Result<Outcome> {
    let tau = cfg.tau_variant()?;
    let fmt = cfg.format.unwrap_or_default();
    let name = format!("tables {}", which.to_possible_value().expect("value").get_name());
    let (text, passed) = match which {
        TableId::Table1 => {
            let rows = tables::table1()?;
            // Okubo rows follow the star product and are reported, not asserted.
            let passed = rows
                .iter()
                .filter(|r| !r.label.starts_with("Okubo"))
                .all(|r| r.agrees);
            let text = match fmt {
                Format::Json => json(&name, cfg, passed, &rows)?,
                Format::Md => render::table1_md(&rows),
                Format::Csv => render::table1_csv(&rows)?,
            };
            (text, passed)
        }
        TableId::Table2 => {
            let cells = tables::table2(&tau)?;
            let passed = cells
                .iter()
                .filter(|c| c.row == "x bullet y" && c.column == "O" || c.row == "x dot y" && c.column == "pO")
                .all(|c| c.verdict.holds());
            let text = match fmt {
                Format::Json => json(&name, cfg, passed, &cells)?,
                Format::Md => render::table2_md(&cells),
                Format::Csv => render::table2_csv(&cells)?,
            };
            (text, passed)
        }
        TableId::Section2 => {
            let t = tables::section2(&tau)?;
            // The O and pO columns are asserted; the Okubo column is recorded.
            let passed = t.rows.iter().all(|r| r.claimed[..2] == r.computed[..2]);
            let text = match fmt {
                Format::Json => json(&name, cfg, passed, &t)?,
                Format::Md => render::section2_md(&t),
                Format::Csv => render::section2_csv(&t)?,
            };
            (text, passed)
        }
        TableId::Section3 => {
            let rows = tables::section3()?;
            let tensor: Vec<_> = Signature::ALL
                .iter()
                .map(|s| (s.to_string(), crate::analysis::verify_biquaternion_rows(*s)))
                .collect();
            let passed = rows.iter().all(|r| r.agrees())
                && tensor.iter().all(|(_, rs)| rs.iter().all(|r| r.verdict.holds()));
            #[derive(Serialize)]
            struct Section3<'a> {
                subalgebras: &'a [tables::SubalgebraRow],
                tensor_rows: &'a [(String, Vec<crate::analysis::TensorRow>)],
            }
            let body = Section3 {
                subalgebras: &rows,
                tensor_rows: &tensor,
            };
            let text = match fmt {
                Format::Json => json(&name, cfg, passed, &body)?,
                Format::Md => render::section3_md(&rows, &tensor),
                Format::Csv => render::section3_csv(&rows)?,
            };
            (text, passed)
        }
        TableId::Section4 => {
            let cells = tables::classify_all(&tau)?;
            let passed = matrix_passes(&cells);
            let text = match fmt {
                Format::Json => json(&name, cfg, passed, &cells)?,
                Format::Md => render::matrix_md(&cells),
                Format::Csv => render::matrix_csv(&cells)?,
            };
            (text, passed)
        }
    };
    Ok(Outcome { text, passed })
}

#[derive(Serialize)]
pub struct SearchSummary {
    pub scanned: usize,
    pub hits: usize,
    pub first_seed: Option<Multivector>,
    pub cap_exceeded: usize,
    pub left_grid: usize,
    pub other_sizes: Vec<(usize, usize)>,
}

#[derive(Serialize)]
pub struct RootsResult {
    pub lattice: Lattice,
    pub expected_count: usize,
    pub expected_type: &'static str,
    pub report: RootSystemReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
}

/// Runs one lattice pipeline; returns the vectors too for CSV export.
pub fn roots_pipeline(sig: Signature, lattice: Lattice, cap: usize) -> Result<(RootsResult, VectorSet)> {
    let (set, search, expected_count, expected_type) = match lattice {
        Lattice::D4 => (hurwitz_units()?, None, 24, "D4"),
        Lattice::D4d4 => (doubled_hurwitz(cap)?, None, 48, "D4⊕D4"),
        Lattice::E8 => {
            let (blades, halves) = octonion_grid_units(sig)?;
            let handle = AlgebraHandle::new(sig, ProductId::Dot);
            let grid = default_grid();
            let search = seed_search(&halves, &blades, &handle, 240, cap, Some(&grid))?;
            let summary = SearchSummary {
                scanned: search.scanned,
                hits: search.hits.len(),
                first_seed: search.hits.first().map(|h| h.seed.clone()),
                cap_exceeded: search.cap_exceeded,
                left_grid: search.left_grid,
                other_sizes: search.other_sizes.clone(),
            };
            let set = match &summary.first_seed {
                Some(h) => {
                    let seed = blades.union(&VectorSet::new(sig, NormId::NStar, [h.clone()])?)?;
                    match closure(&seed, &handle, cap, Some(&grid))? {
                        ClosureOutcome::Closed(set) => set,
                        _ => unreachable!("hit closures are closed"),
                    }
                }
                None => VectorSet::new(sig, NormId::NStar, [])?,
            };
            (set, Some(summary), 240, "E8")
        }
    };
    let report = identify_root_system(&set)?;
    Ok((
        RootsResult {
            lattice,
            expected_count,
            expected_type,
            report,
            search,
        },
        set,
    ))
}

fn roots(cfg: &SessionConfig, lattice: Lattice, csv: Option<&Path>, cap: usize) -> Result<Outcome> {
    let (result, set) = roots_pipeline(cfg.sig, lattice, cap)?;
    if let Some(path) = csv {
        set.write_csv(fs::File::create(path)?)?;
    }
    let passed = result.report.count == result.expected_count
        && result.report.type_label == result.expected_type;
    let name = format!("roots {}", lattice.to_possible_value().expect("value").get_name());
    let text = match cfg.format.unwrap_or_default() {
        Format::Json => json(&name, cfg, passed, &result)?,
        Format::Md => render::roots_md(&result),
        Format::Csv => {
            let mut buf = Vec::new();
            set.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("utf-8 csv")
        }
    };
    Ok(Outcome { text, passed })
}

fn verify(cfg: &SessionConfig, suite: Suite, norm: Option<NormId>, timings: bool) -> Result<Outcome> {
    let ctx = SuiteContext {
        sig: cfg.sig,
        product: cfg.product,
        tau: cfg.tau_variant()?,
        split: cfg.split,
        norm,
        seed: cfg.seed,
        fuzz_count: 100,
        timings,
    };
    let checks: Vec<Check> = run_suite(suite, &ctx)?;
    let passed = all_passed(&checks);
    let text = match cfg.format.unwrap_or_default() {
        Format::Json => json("verify", cfg, passed, &checks)?,
        Format::Md => render::checks_md(&checks),
        Format::Csv => render::checks_csv(&checks)?,
    };
    Ok(Outcome { text, passed })
}
