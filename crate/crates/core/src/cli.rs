//! Command-line front end. [`run`] is the whole program minus process I/O.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{classify_21, classify_42_binary, classify_double_diagonal, ClassificationRecord};
use crate::code::{ConvolutionalCode, DEFAULT_SEARCH_CAP};
use crate::constructions::{
    building_up, default_a_vec, direct_sum, find_completion, hm_extend, orthogonal_chain,
    OrthogonalStep,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::{col_hermite, format_vector, parse_vector, row_hermite, smith, PolyMatrix};
use crate::poly::Poly;

/// Process exit code for unparseable input.
pub const EXIT_PARSE: i32 = 2;
/// Process exit code for violated preconditions.
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sdconv", version, about = "Self-dual convolutional codes over F_q[z]")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Field as `p`, `p^l` or a prime power `q`.
    #[arg(long, global = true, default_value = "2")]
    field: String,
    /// Monic irreducible modulus in `x`, e.g. `x^2+x+1`.
    #[arg(long, global = true)]
    modulus: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Render generators in canonical row Hermite form.
    #[arg(long, global = true)]
    canonical: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Row,
    Col,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Self-orthogonality, non-catastrophicity and self-duality verdicts.
    Check { matrix: String },
    /// A generator of the dual code.
    Dual { matrix: String },
    /// Hermite form with its unimodular transform.
    Hermite {
        #[arg(long, value_enum, default_value_t = SideArg::Row)]
        side: SideArg,
        matrix: String,
    },
    /// Smith form `U·G·V = S`.
    Smith { matrix: String },
    /// Bounded free-distance search.
    Distance {
        #[arg(long)]
        bound: usize,
        /// Maximum number of messages to visit.
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u128,
        matrix: String,
    },
    /// Build a new self-dual code.
    Construct {
        #[command(subcommand)]
        kind: Construction,
    },
    /// Harada–Munemasa extension followed by a completion search.
    Complete {
        /// Comma-separated `a_i`; derived automatically when omitted.
        #[arg(long)]
        a: Option<String>,
        matrix: String,
    },
    /// Enumerate a family of self-dual codes as a catalog.
    Classify {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Debug, Subcommand)]
enum Construction {
    DirectSum { first: String, second: String },
    BuildingUp {
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        matrix: String,
    },
    /// Each step is `M:lambda:perm`; `M` may be `I`, `perm` is a 1-based
    /// comma list (output column j is input column perm_j) or empty.
    OrthogonalChain {
        #[arg(long = "step")]
        steps: Vec<String>,
        matrix: String,
    },
}

#[derive(Debug, Subcommand)]
enum Family {
    TwoOne,
    FourTwo {
        #[arg(long, default_value_t = 1)]
        max_deg: usize,
    },
    DoubleDiagonal {
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: EXIT_PARSE, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => match &cli.global.out {
            Some(path) => match std::fs::write(path, &report) {
                Ok(()) => Outcome { code: 0, stdout: String::new(), stderr: String::new() },
                Err(e) => Outcome {
                    code: EXIT_PRECONDITION,
                    stdout: String::new(),
                    stderr: format!("error[io]: {}: {e}\n", path.display()),
                },
            },
            None => Outcome { code: 0, stdout: report, stderr: String::new() },
        },
        Err(e) => Outcome {
            code: if is_input_error(&e) { EXIT_PARSE } else { EXIT_PRECONDITION },
            stdout: String::new(),
            stderr: format!("error[{}]: {}\n", e.kind(), e),
        },
    }
}

/// Errors caused by unreadable arguments rather than by their meaning.
fn is_input_error(e: &Error) -> bool {
    e.is_parse()
        || matches!(
            e,
            Error::NotPrime(_)
                | Error::ReducibleModulus(_)
                | Error::DegreeMismatch { .. }
                | Error::InvalidModulus(_)
                | Error::FieldTooLarge(_)
        )
}

fn parse_int(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} '{s}'")))
}

/// `p`, `q` or `p^l`, with an optional modulus polynomial in `x`.
pub fn parse_field(selector: &str, modulus: Option<&str>) -> Result<FieldSpec> {
    let (p, l) = match selector.split_once('^') {
        Some((p, l)) => {
            let l = u32::try_from(parse_int(l, "field degree")?)
                .map_err(|_| Error::Parse(format!("bad field degree '{l}'")))?;
            (parse_int(p, "characteristic")?, l)
        }
        None => {
            let f = FieldSpec::of_order(parse_int(selector, "field order")?)?;
            (f.characteristic() as u64, f.degree())
        }
    };
    let Some(m) = modulus else {
        return FieldSpec::new(p, l, None);
    };
    let prime = FieldSpec::prime(p)?;
    if m.contains('z') {
        return Err(Error::Parse("modulus must be written in x".into()));
    }
    let poly = Poly::parse(&prime, &m.replace('x', "z"))?;
    let coeffs: Vec<u32> = poly.coeffs().iter().map(|c| c.index()).collect();
    FieldSpec::new(p, l, Some(&coeffs))
}

fn render(m: &PolyMatrix, canonical: bool) -> String {
    if canonical {
        row_hermite(m).map(|d| d.form.to_string()).unwrap_or_else(|_| m.to_string())
    } else {
        m.to_string()
    }
}

fn text_or_json(format: Format, lines: &[(&str, Value)]) -> String {
    match format {
        Format::Json => {
            let map: serde_json::Map<String, Value> =
                lines.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            format!("{}\n", Value::Object(map))
        }
        Format::Text => lines.iter().fold(String::new(), |mut out, (k, v)| {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "{k}: {v}");
            out
        }),
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let g = &cli.global;
    let field = parse_field(&g.field, g.modulus.as_deref())?;
    let matrix = |s: &str| PolyMatrix::parse(&field, s);
    let code = |s: &str| ConvolutionalCode::new(matrix(s)?);
    let gen = |c: &ConvolutionalCode| render(c.generator(), g.canonical);
    match &cli.command {
        Command::Check { matrix: s } => {
            let c = code(s)?;
            let so = c.is_self_orthogonal();
            let nc = c.is_noncatastrophic();
            let sd = c.is_self_dual();
            let mut lines = vec![
                ("n", json!(c.length())),
                ("k", json!(c.dimension())),
                ("delta", json!(c.degree())),
                ("n=2k", json!(c.length() == 2 * c.dimension())),
                ("self-orthogonal", json!(so)),
                ("non-catastrophic", json!(nc)),
                ("self-dual", json!(sd)),
            ];
            if g.canonical {
                lines.push(("canonical", json!(c.canonical_generator().to_string())));
            }
            Ok(text_or_json(g.format, &lines))
        }
        Command::Dual { matrix: s } => {
            let d = code(s)?.dual();
            Ok(text_or_json(g.format, &[("dual", json!(gen(&d)))]))
        }
        Command::Hermite { side, matrix: s } => {
            let m = matrix(s)?;
            let d = match side {
                SideArg::Row => row_hermite(&m)?,
                SideArg::Col => col_hermite(&m)?,
            };
            let relation = match side {
                SideArg::Row => "transform*input = form",
                SideArg::Col => "input*transform = form",
            };
            Ok(text_or_json(
                g.format,
                &[
                    ("form", json!(d.form.to_string())),
                    ("transform", json!(d.transform.to_string())),
                    ("relation", json!(relation)),
                ],
            ))
        }
        Command::Smith { matrix: s } => {
            let d = smith(&matrix(s)?)?;
            let factors: Vec<String> = d.invariant_factors().iter().map(Poly::to_string).collect();
            Ok(text_or_json(
                g.format,
                &[
                    ("s", json!(d.s.to_string())),
                    ("u", json!(d.u.to_string())),
                    ("v", json!(d.v.to_string())),
                    ("invariant-factors", json!(factors.join(","))),
                ],
            ))
        }
        Command::Distance { bound, cap, matrix: s } => {
            let r = code(s)?.free_distance_with_cap(*bound, *cap)?;
            Ok(match g.format {
                Format::Text => format!("{r}\n"),
                Format::Json => {
                    let status = if r.is_stable() { "stable" } else { "upper-bound" };
                    format!(
                        "{}\n",
                        json!({"dfree": r.value, "bound": r.search_bound, "status": status})
                    )
                }
            })
        }
        Command::Construct { kind } => {
            let out = match kind {
                Construction::DirectSum { first, second } => direct_sum(&code(first)?, &code(second)?)?,
                Construction::BuildingUp { f, a, b, matrix: s } => building_up(
                    &code(s)?,
                    &parse_vector(&field, f)?,
                    field.parse_element(a)?,
                    field.parse_element(b)?,
                )?,
                Construction::OrthogonalChain { steps, matrix: s } => {
                    let c = code(s)?;
                    let steps = steps
                        .iter()
                        .map(|st| parse_step(&field, c.length(), st))
                        .collect::<Result<Vec<_>>>()?;
                    orthogonal_chain(&c, &steps)?
                }
            };
            Ok(text_or_json(
                g.format,
                &[
                    ("gen", json!(gen(&out))),
                    ("n", json!(out.length())),
                    ("k", json!(out.dimension())),
                    ("delta", json!(out.degree())),
                    ("self-dual", json!(out.is_self_dual())),
                ],
            ))
        }
        Command::Complete { a, matrix: s } => {
            let c = code(s)?;
            let a_vec = match a {
                Some(a) => parse_vector(&field, a)?,
                None => default_a_vec(&c)?,
            };
            let extended = hm_extend(&c, &a_vec)?;
            let r = find_completion(&extended)?;
            let generator = render(&r.generator, g.canonical);
            Ok(match g.format {
                Format::Text => format!(
                    "{}\nextended: {}\nf: {}\ngen: {}\n",
                    r.kind.label(),
                    extended,
                    format_vector(&r.witness_f),
                    generator
                ),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "verdict": r.kind.label(),
                        "extended": extended.to_string(),
                        "f": format_vector(&r.witness_f),
                        "gen": generator,
                    })
                ),
            })
        }
        Command::Classify { family } => {
            let records: Vec<ClassificationRecord> = match family {
                Family::TwoOne => classify_21(&field),
                Family::FourTwo { max_deg } => {
                    if !field.is_binary() {
                        return Err(Error::NotBinary);
                    }
                    classify_42_binary(*max_deg)
                }
                Family::DoubleDiagonal { k } => {
                    if *k == 0 {
                        return Err(Error::DimensionMismatch("k must be at least 1".into()));
                    }
                    classify_double_diagonal(&field, *k).unwrap_or_default()
                }
            };
            Ok(records.iter().fold(String::new(), |mut out, r| {
                let line = match g.format {
                    Format::Text => r.catalog_line(),
                    Format::Json => r.to_json().to_string(),
                };
                let _ = writeln!(out, "{line}");
                out
            }))
        }
    }
}

/// `M:lambda:perm`.
fn parse_step(field: &FieldSpec, n: usize, s: &str) -> Result<OrthogonalStep> {
    let parts: Vec<&str> = s.split(':').collect();
    let [m, lambda, perm] = parts[..] else {
        return Err(Error::Parse(format!("step '{s}' is not of the form M:lambda:perm")));
    };
    let m = match m.trim() {
        "I" => PolyMatrix::identity(field, n),
        other => PolyMatrix::parse(field, other)?,
    };
    let lambda = Poly::parse(field, lambda)?;
    let a = if perm.trim().is_empty() {
        PolyMatrix::identity(field, n)
    } else {
        let cols = perm
            .split(',')
            .map(|p| match parse_int(p, "permutation entry")? {
                0 => Err(Error::NotPermutation),
                v => Ok(v as usize - 1),
            })
            .collect::<Result<Vec<_>>>()?;
        if cols.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {} for {n} columns",
                cols.len()
            )));
        }
        OrthogonalStep::permutation(field, &cols)?.a
    };
    Ok(OrthogonalStep { m, lambda, a })
}
