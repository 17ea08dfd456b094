//! `shiftpow` command-line front end.
//!
//! Exit codes: 0 success, 2 domain or validation error (JSON error object
//! on the output stream), 64 usage error, 65 malformed JSON input,
//! 66 unreadable input file.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use shiftpow::algebra::{parse_rational, Field};
use shiftpow::construct::{self, ProbeConfig, ProbeKind};
use shiftpow::family::{self, Family};
use shiftpow::json::*;
use shiftpow::polya::{self, ExperimentConfig, ENUMERATION_LIMIT};
use shiftpow::sde::{self, SdeParams};
use shiftpow::waring;
use shiftpow::{Error, PolyaSequence};

#[derive(Parser)]
#[command(name = "shiftpow", version, about = "Exact analysis of families of shifted powers (x - a)^e")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format; json is the stable contract, text is derived from it.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Scalar field: rational or cyclotomic:k. Overrides the field of input
    /// families and sets the field of experiment shifts.
    #[arg(long, global = true)]
    field: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Input {
    /// Input JSON file ("-" for stdin). Stdin is read when neither this nor --json is given.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Inline input JSON.
    #[arg(long)]
    json: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    /// Largest equal-exponent class or a transversal, size >= ceil(sqrt(s)).
    Sqrt,
    /// Odd-sequence removal, size >= floor(s/2) + 1 (rational shifts).
    Halfplus,
    /// The floor((s+4)/3) largest exponents (rational shifts).
    Top,
    /// Greedy maximal independent subfamily.
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentMode {
    /// Independence frequency for one exponent sequence.
    Mc,
    /// Joint independence over every bounded Pólya sequence.
    Sweep,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    /// Roots-of-unity identity: certificate with monomial right-hand side.
    Unity,
    /// The identity rearranged as a dependent family.
    UnityFamily,
    /// Pólya family of dimension (3d + 2)/4.
    Lowdim,
    /// (x+1)^i - (x-1)^i as a sum of odd monomials.
    Pairing,
    /// Exact cubic relation in Q(ξ_12).
    H3,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeKindArg {
    Bigexp,
    Gmk,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sufficient and necessary exponent conditions for independence.
    FamilyCheck(Input),
    /// Exact span dimension.
    FamilyDim(Input),
    /// Extract an independent subfamily.
    FamilyWitness {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "halfplus")]
        kind: WitnessKind,
    },
    /// Find a shifted differential equation annihilating a family.
    SdeFind {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        /// Search (k, l) in order of k + l up to this bound instead.
        #[arg(long)]
        search: Option<u32>,
    },
    /// Check an equation against a family.
    SdeVerify {
        /// Family JSON.
        #[command(flatten)]
        input: Input,
        /// Equation JSON file.
        #[arg(long)]
        sde: PathBuf,
    },
    /// Waring rank of a univariate polynomial.
    WaringRank {
        /// Use (x+1)^(2d+2) - x^(2d+2).
        #[arg(long)]
        h_poly: Option<u32>,
        /// Use (x+1)^(n+1) - x^(n+1).
        #[arg(long)]
        h_n: Option<u32>,
        /// Coefficient array, low to high, e.g. '[1, 0, 3]'.
        #[arg(long)]
        poly: Option<String>,
        /// With --h-poly, also report the floating-point decomposition residual.
        #[arg(long)]
        residual: bool,
        #[arg(long, default_value_t = 1e-15)]
        precision: f64,
    },
    /// Number of Pólya sequences of length s with all exponents below d.
    PolyaCount {
        #[arg(short = 's')]
        s: usize,
        #[arg(short = 'd')]
        d: usize,
    },
    /// List Pólya sequences of length s with all exponents below d.
    PolyaEnum {
        #[arg(short = 's')]
        s: usize,
        #[arg(short = 'd')]
        d: usize,
        #[arg(long, default_value_t = ENUMERATION_LIMIT)]
        limit: usize,
    },
    /// Seeded Monte Carlo independence experiments.
    Experiment {
        #[arg(long, value_enum, default_value = "mc")]
        mode: ExperimentMode,
        /// Exponents for mc mode, comma separated.
        #[arg(long, default_value = "2,2,0")]
        exps: String,
        /// Family size for sweep mode.
        #[arg(short = 's', default_value_t = 3)]
        s: usize,
        #[arg(long, default_value_t = 100)]
        set_size: u64,
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = ENUMERATION_LIMIT)]
        limit: usize,
    },
    /// Build an explicit family with its certificate.
    Construct {
        #[arg(long, value_enum)]
        kind: ConstructKind,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(short = 'd', long = "degree", default_value_t = 4)]
        d: u32,
        #[arg(long, default_value = "1")]
        mu: String,
        #[arg(long, default_value_t = 2)]
        i: u32,
    },
    /// Bounded search for counterexamples to the open independence questions.
    Probe {
        #[arg(long, value_enum)]
        kind: ProbeKindArg,
        #[arg(short = 's', default_value_t = 3)]
        s: usize,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, default_value_t = -4, allow_negative_numbers = true)]
        b: i64,
        #[arg(short = 'd', default_value_t = 4)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        conductor: u32,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

enum Failure {
    Usage(String),
    Malformed(String),
    NoInput(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Malformed(m),
            other => Failure::Domain(other),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_text(input: &Input) -> CliResult<String> {
    if let Some(j) = &input.json {
        return Ok(j.clone());
    }
    let mut buf = String::new();
    match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            return fs::read_to_string(p).map_err(|e| Failure::NoInput(format!("{}: {e}", p.display())));
        }
        _ => io::stdin().read_to_string(&mut buf).map_err(|e| Failure::NoInput(e.to_string()))?,
    };
    Ok(buf)
}

fn parse_json(text: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| Failure::Malformed(e.to_string()))
}

fn read_family(input: &Input, field: &Option<Field>) -> CliResult<Family> {
    let f = family_from_json(&parse_json(&read_text(input)?)?)?;
    Ok(match field {
        Some(field) => Family::new(field.clone(), f.terms().to_vec())?,
        None => f,
    })
}

fn resolve_seed(seed: Option<u64>) -> CliResult<u64> {
    match seed {
        Some(s) => Ok(s),
        None if std::env::var("CI").is_ok_and(|v| v == "1") => {
            Err(Failure::Usage("randomized subcommands require --seed when CI=1".into()))
        }
        None => Ok(rand::random()),
    }
}

fn parse_exps(s: &str) -> CliResult<PolyaSequence> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map(PolyaSequence::new)
        .map_err(|e| Failure::Usage(format!("bad exponent list {s:?}: {e}")))
}

fn count_json(n: &shiftpow::BigInt) -> Value {
    match n.to_string().parse::<u64>() {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn run(cli: &Cli) -> CliResult<Value> {
    let field = cli.field.as_deref().map(parse_field_tag).transpose()?;
    Ok(match &cli.cmd {
        Cmd::FamilyCheck(input) => {
            let f = read_family(input, &field)?;
            let seq = f.polya_sequence();
            json!({
                "s": f.len(),
                "exponents": seq.exps(),
                "polya": seq.satisfies_polya(),
                "gmk": seq.gmk_condition(),
                "atkinson_sharma": f.has_rational_shifts().then(|| family::atkinson_sharma_condition(&f)),
                "big_exponent": big_exponent_to_json(&family::big_exponent_conditions(&f)),
            })
        }
        Cmd::FamilyDim(input) => {
            let f = read_family(input, &field)?;
            let dim = f.dimension();
            json!({ "s": f.len(), "dim": dim, "independent": dim == f.len() })
        }
        Cmd::FamilyWitness { input, kind } => {
            let f = read_family(input, &field)?;
            let (name, w) = match kind {
                WitnessKind::Sqrt => ("sqrt", family::sqrt_witness(&f)?),
                WitnessKind::Halfplus => ("halfplus", family::real_halfplus_witness(&f)?),
                WitnessKind::Top => ("top", family::real_top_exponent_witness(&f)?),
                WitnessKind::Greedy => ("greedy", f.max_independent_subfamily()),
            };
            json!({ "kind": name, "s": f.len(), "size": w.len(), "family": family_to_json(&w) })
        }
        Cmd::SdeFind { input, t, k, l, search } => {
            let f = read_family(input, &field)?;
            let s = f.len() as u32;
            let found = match (search, k, l) {
                (Some(max), _, _) => sde::search(&f, t.unwrap_or(s), *max),
                (None, None, None) => Some(sde::find_small_sde(&f)),
                (None, k, l) => {
                    let p = sde::small_params(f.len());
                    sde::find_sde(&f, SdeParams::new(t.unwrap_or(s), k.unwrap_or(p.k), l.unwrap_or(p.l)))
                }
            };
            match found {
                Some(e) => sde_to_json(&e),
                None => json!({ "found": false }),
            }
        }
        Cmd::SdeVerify { input, sde } => {
            let f = read_family(input, &field)?;
            let text = fs::read_to_string(sde).map_err(|e| Failure::NoInput(format!("{}: {e}", sde.display())))?;
            let e = sde_from_json(&parse_json(&text)?)?;
            let satisfied: Vec<bool> = f.expansions().iter().map(|p| sde::verify_sde(&e, p)).collect();
            json!({
                "order": e.order(),
                "degree_bounds": e.degree_bounds_hold(),
                "satisfied": satisfied,
                "all_satisfied": satisfied.iter().all(|&b| b),
                "root_divisibility": sde::check_root_divisibility(&e, &f).ok(),
            })
        }
        Cmd::WaringRank { h_poly, h_n, poly, residual, precision } => {
            let p = match (h_poly, h_n, poly) {
                (Some(d), None, None) => waring::h_polynomial(*d),
                (None, Some(n), None) => waring::h_even_or_odd(*n),
                (None, None, Some(text)) => poly_from_json(&parse_json(text)?)?,
                _ => return Err(Failure::Usage("give exactly one of --h-poly, --h-n, --poly".into())),
            };
            let mut r = waring::waring_rank(&p)?;
            if *residual {
                let d = h_poly.ok_or_else(|| Failure::Usage("--residual needs --h-poly".into()))?;
                r.residual = Some(waring::real_decomposition_residual(d, *precision)?);
            }
            waring_to_json(&r)
        }
        Cmd::PolyaCount { s, d } => {
            json!({ "s": s, "d": d, "count": count_json(&polya::count_polya(*s, *d)?) })
        }
        Cmd::PolyaEnum { s, d, limit } => {
            let count = polya::count_polya(*s, *d)?;
            if count > shiftpow::BigInt::from(*limit) {
                return Err(Error::EnumerationTooLarge { count: count.to_string(), limit: *limit }.into());
            }
            let seqs: Vec<Value> = polya::enumerate_polya(*s, *d)?.map(|m| json!(m.to_sequence().exps())).collect();
            json!({ "s": s, "d": d, "count": count_json(&count), "sequences": seqs })
        }
        Cmd::Experiment { mode, exps, s, set_size, trials, seed, limit } => {
            let mut cfg = ExperimentConfig::new(*set_size, *trials, resolve_seed(*seed)?);
            if let Some(f) = &field {
                cfg.field = f.clone();
            }
            match mode {
                ExperimentMode::Mc => {
                    let r = polya::monte_carlo_independence(&parse_exps(exps)?, &cfg)?;
                    monte_carlo_to_json(&r)
                }
                ExperimentMode::Sweep => sweep_to_json(&polya::genericity_sweep(*s, &cfg, *limit)?),
            }
        }
        Cmd::Construct { kind, k, d, mu, i } => {
            let mu = parse_rational(mu).map_err(|e| Failure::Usage(e.to_string()))?;
            match kind {
                ConstructKind::Unity => certificate_to_json(&construct::unity_identity(*k, *d, &mu)?),
                ConstructKind::UnityFamily => {
                    let c = construct::unity_dependence_family(*k, *d, &mu)?;
                    let mut v = certificate_to_json(&c);
                    v["gmk"] = json!(c.family().polya_sequence().gmk_condition());
                    v["dim"] = json!(c.family().dimension());
                    v
                }
                ConstructKind::Lowdim => {
                    let (f, dim) = construct::lowdim_family(*d)?;
                    let mut v = family_to_json(&f);
                    v["expected_dim"] = json!(dim);
                    v["dim"] = json!(f.dimension());
                    v
                }
                ConstructKind::Pairing => {
                    json!({ "d": d, "i": i, "holds": construct::pairing_identity_check(*d, *i)? })
                }
                ConstructKind::H3 => certificate_to_json(&construct::h3_witness()),
            }
        }
        Cmd::Probe { kind, s, a, b, d, conductor, seed, samples } => {
            let kind = match kind {
                ProbeKindArg::Bigexp => ProbeKind::BigExp { s: *s, a: *a, b: *b },
                ProbeKindArg::Gmk => ProbeKind::Gmk { s: *s, d: *d },
            };
            let cfg = ProbeConfig { kind, conductor: *conductor, seed: resolve_seed(*seed)?, samples: *samples };
            probe_to_json(&construct::conjecture_probe(&cfg)?)
        }
    })
}

fn render_text(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(x, &key, out);
            }
        }
        other => {
            let shown = match other {
                Value::String(s) => s.clone(),
                x => x.to_string(),
            };
            if prefix.is_empty() {
                out.push_str(&format!("{shown}\n"));
            } else {
                out.push_str(&format!("{prefix}: {shown}\n"));
            }
        }
    }
}

fn emit(cli: &Cli, v: &Value) -> io::Result<()> {
    let text = match cli.format {
        Format::Json => format!("{v}\n"),
        Format::Text => {
            let mut s = String::new();
            render_text(v, "", &mut s);
            s
        }
    };
    match &cli.out {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (value, code) = match run(&cli) {
        Ok(v) => (v, 0),
        Err(Failure::Domain(e)) => (error_to_json(&e), 2),
        Err(Failure::Malformed(m)) => (json!({ "error": { "kind": "malformed_json", "message": m } }), 65),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(64);
        }
        Err(Failure::NoInput(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(66);
        }
    };
    if let Err(e) = emit(&cli, &value) {
        eprintln!("error: {e}");
        return ExitCode::from(74);
    }
    ExitCode::from(code)
}
