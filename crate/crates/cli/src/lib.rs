//! Command-line front end for `sasaki-join`.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the
//! exit code with everything that should go to stdout and stderr, so the
//! binary and the tests share one path.

mod commands;
pub mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sasaki_join::exact::{default_precision, parse_rational, Rational};
use sasaki_join::{Error, FanoBase, ReebRay, WeightVector};

pub const PRECISION_ENV: &str = "SASAKI_PRECISION";

#[derive(Parser, Debug)]
#[command(name = "sasaki", version, about = "Exact invariants of Sasaki joins M * S^3_w")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Suppress every floating-point field.
    #[arg(long, global = true)]
    pub exact_only: bool,

    /// Width of refined isolating intervals (`1/10^12`, `1e-12`, ...).
    /// Overrides SASAKI_PRECISION.
    #[arg(long, global = true)]
    pub precision: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// How the base `N` is given: `--base`, or `--dn` with an optional
/// `--index` (default `cpn:<dn>`).
#[derive(Args, Debug, Clone)]
pub struct BaseArgs {
    #[arg(long)]
    pub base: Option<FanoBase>,
    /// Complex dimension d_N.
    #[arg(long)]
    pub dn: Option<u32>,
    /// Fano index I_N.
    #[arg(long)]
    pub index: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CohomologyFamily {
    Sphere,
    Quadric,
    Delpezzo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegularityFilter {
    Regular,
    QuasiRegular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RationalityFilter {
    Rational,
    Irrational,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Relative Fano indices and smoothness of the join.
    Join {
        #[arg(long)]
        base: FanoBase,
        #[arg(long)]
        w: WeightVector,
    },
    /// Weight vectors whose Sasaki cone contains a regular Reeb field.
    RegularCones {
        #[arg(long)]
        base: FanoBase,
    },
    /// Quotient orbifold of the ray v.
    Quotient {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        w: WeightVector,
        #[arg(long)]
        v: ReebRay,
    },
    /// Reeb orbit periods, generic and along D1, D2.
    Periods {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        w: WeightVector,
        #[arg(long)]
        v: ReebRay,
    },
    /// Integral cohomology ring of a join.
    Cohomology {
        #[arg(long, value_enum)]
        family: CohomologyFamily,
        #[arg(long)]
        w: WeightVector,
        /// Sphere dimension parameter: the join with S^{2r+1}.
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Number of blow-ups for the del Pezzo family.
        #[arg(long)]
        k: Option<u8>,
    },
    /// Weight vectors with w1*w2 = W grouped by cohomology ring.
    Classes {
        #[arg(long, visible_alias = "W")]
        product: u64,
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Homotopy type of the 7-manifolds of w and w'.
    Homotopy {
        #[arg(long)]
        w: WeightVector,
        #[arg(long)]
        wprime: WeightVector,
    },
    /// First Pontrjagin class of the 7-manifold of w.
    P1 {
        #[arg(long)]
        w: WeightVector,
    },
    /// Pontrjagin obstruction to a homeomorphism between w and w'.
    Homeo {
        #[arg(long)]
        w: WeightVector,
        #[arg(long)]
        wprime: WeightVector,
    },
    /// All Einstein rays in the w-cone, classified.
    KeSolve {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        w: WeightVector,
    },
    /// Exact value of the Einstein defect integral at v.
    KeDefect {
        #[arg(long)]
        w: WeightVector,
        #[arg(long)]
        v: ReebRay,
        #[arg(long)]
        dn: u32,
    },
    /// Quasi-regular Einstein ray attached to a rational k > 1.
    Family {
        #[arg(long, value_parser = rational_arg)]
        k: Rational,
        #[arg(long, default_value_t = 1)]
        dn: u32,
        #[arg(long)]
        base: Option<FanoBase>,
    },
    /// Y^{p,q} as a join over CP^1.
    Ypq {
        #[arg(long, requires = "q", conflicts_with = "from_ab")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        q: Option<u64>,
        /// Derive (p,q) from k = a/b.
        #[arg(long, num_args = 2, value_names = ["A", "B"], required_unless_present = "p")]
        from_ab: Option<Vec<u64>>,
    },
    /// Sasaki-Ricci soliton parameter on the ray v.
    Soliton {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        w: WeightVector,
        #[arg(long)]
        v: ReebRay,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Extremal admissible profile on the ray v.
    Extremal {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        w: WeightVector,
        #[arg(long)]
        v: ReebRay,
    },
    /// Batch over w1 <= w-max and v1, v2 <= v-max.
    Enumerate {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        w_max: u64,
        #[arg(long)]
        v_max: u64,
        #[arg(long, value_enum)]
        regularity: Option<RegularityFilter>,
        #[arg(long, value_enum)]
        rationality: Option<RationalityFilter>,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// One structured document per invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub provenance: Vec<String>,
}

impl CommandResult {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "provenance": self.provenance,
        })
    }

    pub fn from_json(doc: &Value) -> Option<Self> {
        Some(CommandResult {
            command: doc.get("command")?.as_str()?.to_string(),
            inputs: doc.get("inputs")?.clone(),
            outputs: doc.get("outputs")?.clone(),
            provenance: doc
                .get("provenance")?
                .as_array()?
                .iter()
                .map(|p| p.as_str().map(str::to_string))
                .collect::<Option<_>>()?,
        })
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Library(e) if e.is_validation() => 2,
            Failure::Library(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("error: {m}\n"),
            Failure::Library(e) => format!("error: {e}\n"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Settings shared by every subcommand.
pub struct Context {
    pub style: render::Style,
    pub precision: Rational,
}

/// Runs with SASAKI_PRECISION taken from the process environment.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_env(argv, std::env::var(PRECISION_ENV).ok())
}

pub fn run_with_env<I, T>(argv: I, env_precision: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli, env_precision) {
        Ok(result) => {
            let doc = result.to_json();
            let stdout = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
                    s.push('\n');
                    s
                }
                Format::Table => render::table(&doc),
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(f) => Outcome {
            code: f.exit_code(),
            stdout: String::new(),
            stderr: f.message(),
        },
    }
}

fn execute(cli: &Cli, env_precision: Option<String>) -> Result<CommandResult, Failure> {
    let precision = match cli.precision.as_deref().or(env_precision.as_deref()) {
        Some(text) => {
            let p = parse_rational(text)?;
            if p <= Rational::from_integer(0.into()) {
                return Err(Failure::Usage(format!("precision must be positive, got {text}")));
            }
            p
        }
        None => default_precision(),
    };
    let ctx = Context {
        style: render::Style { exact_only: cli.exact_only },
        precision,
    };
    commands::dispatch(&cli.command, &ctx)
}
