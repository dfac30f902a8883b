//! Command-line front end: argument model, dispatch and rendering.
//!
//! Every verb produces a list of JSON records. Structured mode prints them
//! one per line; text mode prints [`render_text`] of each, so both views
//! always carry the same content.

pub mod args;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use csalg::classification::{check_direct_finiteness, choose_prime, verify_g1_invariance};
use csalg::exact_arith::parse_rational;
use csalg::mu_dynamics::{cyclic_witness, enumerate_mu_orbits, in_chain_vp, is_certified_positive};
use csalg::representations::{evaluate_rep, is_irreducible, make_character, separate, Mode, Separation};
use csalg::wiener::{faithfulness_witness, map_to_delta0, sufficient_power};
use csalg::wiener_k::{invert_on_k, restrict, spectrum_on_k};
use csalg::{parse_element, AlgebraElement, BigInt, CoeffSeq, Cyclotomic};

use args::{parse_k, parse_matrix, parse_rep, RepArg};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] csalg::Error),
}

impl CliError {
    /// 2 for usage and parse errors, 1 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(e) if e.is_parse() => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        if self.exit_code() == 2 {
            "usage"
        } else {
            "domain"
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "csalg", version, about = "Exact computations in the algebra of the semigroup yx = xy^2")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    pub mode: OutputMode,
    /// Largest dimension tried by `separate`.
    #[arg(long, global = true, default_value_t = csalg::representations::DEFAULT_MAX_K)]
    pub max_k: u32,
    /// Circle grid size for the B-norm.
    #[arg(long, global = true, default_value_t = 256)]
    pub grid: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an element, or its value under the character (x, y).
    Eval {
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(allow_hyphen_values = true, requires = "y")]
        x: Option<String>,
        #[arg(allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Product of two elements.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// A-norm and grid B-norm.
    Norm {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Image of an element under pi(...) or chi(...).
    RepEval {
        rep: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Finds a representation not annihilating the element.
    Separate {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Burnside test on matrix generators, or on the generators of pi(...).
    IrredCheck {
        #[arg(required = true, num_args = 1..)]
        generators: Vec<String>,
    },
    /// Minimal doubling orbits with k points.
    MuOrbits { k: u32 },
    /// Membership of a sequence in V_p.
    ChainCheck {
        #[arg(allow_hyphen_values = true)]
        seq: String,
        p: u32,
    },
    /// The cyclic witness h on K (`N:e` or `N:e1,e2,...`).
    Witness {
        #[arg(allow_hyphen_values = true)]
        seq: String,
        k: String,
    },
    /// Inverse of f restricted to K.
    WienerInvert {
        #[arg(allow_hyphen_values = true)]
        seq: String,
        k: String,
    },
    /// Values of f on K.
    Spectrum {
        #[arg(allow_hyphen_values = true)]
        seq: String,
        k: String,
    },
    /// Odd prime p with p*beta non-integral for all betas.
    ChoosePrime { betas: Vec<String> },
    /// Direct finiteness check on the pair (a, b).
    DfCheck {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Invariance of G_1 under the xy-action for alpha, beta.
    G1Check {
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
        #[arg(default_value_t = 12)]
        m: usize,
    },
    /// Smallest |j| with delta_j . a != 0.
    FaithfulWitness {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// xi_k^-1 x^N y^k xi, with N chosen large enough if omitted.
    Converge {
        #[arg(allow_hyphen_values = true)]
        seq: String,
        #[arg(allow_hyphen_values = true)]
        k: String,
        n: Option<u32>,
    },
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Mul { .. } => "mul",
            Command::Norm { .. } => "norm",
            Command::RepEval { .. } => "rep-eval",
            Command::Separate { .. } => "separate",
            Command::IrredCheck { .. } => "irred-check",
            Command::MuOrbits { .. } => "mu-orbits",
            Command::ChainCheck { .. } => "chain-check",
            Command::Witness { .. } => "witness",
            Command::WienerInvert { .. } => "wiener-invert",
            Command::Spectrum { .. } => "spectrum",
            Command::ChoosePrime { .. } => "choose-prime",
            Command::DfCheck { .. } => "df-check",
            Command::G1Check { .. } => "g1-check",
            Command::FaithfulWitness { .. } => "faithful-witness",
            Command::Converge { .. } => "converge",
        }
    }
}

fn elem(s: &str) -> Result<AlgebraElement, CliError> {
    Ok(parse_element(s)?)
}

fn seq(s: &str) -> Result<CoeffSeq, CliError> {
    Ok(s.parse()?)
}

fn scalar(s: &str) -> Result<Cyclotomic, CliError> {
    Ok(csalg::algebra::parse_scalar(s)?)
}

/// One entry per term: `m`, `n` as a decimal string, and the coefficient as
/// its conductor with the `p/q` coefficient list in the power basis.
pub fn element_terms(a: &AlgebraElement) -> Value {
    a.terms()
        .map(|(s, c)| {
            let coeffs: Vec<String> = c.coeffs().iter().map(csalg::exact_arith::format_rational).collect();
            json!({"m": s.m(), "n": s.n().to_string(), "conductor": c.conductor(), "coeffs": coeffs})
        })
        .collect()
}

fn record(verb: &str, fields: Value) -> Value {
    let mut v = fields;
    v.as_object_mut().expect("record fields are an object").insert("verb".into(), verb.into());
    v
}

/// Runs one invocation and returns its records.
pub fn execute(cli: &Cli) -> Result<Vec<Value>, CliError> {
    let verb = cli.command.verb();
    let one = |fields: Value| Ok(vec![record(verb, fields)]);
    match &cli.command {
        Command::Eval { element, x, y } => {
            let a = elem(element)?;
            match (x, y) {
                (Some(x), Some(y)) => {
                    let chi = make_character(scalar(x)?, scalar(y)?, Mode::Algebraic)?;
                    one(json!({"element": a.to_string(), "character": chi.to_string(), "value": chi.evaluate(&a)?.to_string()}))
                }
                _ => one(json!({"element": a.to_string(), "x_degrees": a.x_degrees(), "terms": element_terms(&a)})),
            }
        }
        Command::Mul { a, b } => {
            let p = elem(a)?.checked_product(&elem(b)?)?;
            one(json!({"product": p.to_string(), "terms": element_terms(&p)}))
        }
        Command::Norm { element } => {
            let a = elem(element)?;
            one(json!({"norm_a": a.norm_a(), "norm_b": a.norm_b(cli.grid)?, "grid": cli.grid}))
        }
        Command::RepEval { rep, element } => {
            let a = elem(element)?;
            match parse_rep(rep)? {
                RepArg::Rep(r) => one(json!({"rep": r.to_string(), "image": evaluate_rep(&r, &a)?.to_string()})),
                RepArg::Character(c) => one(json!({"rep": c.to_string(), "image": c.evaluate(&a)?.to_string()})),
            }
        }
        Command::Separate { element } => {
            let s = separate(&elem(element)?, cli.max_k)?;
            let k = match &s {
                Separation::Character { .. } => 1,
                Separation::Rep { rep, .. } => rep.k(),
            };
            one(json!({"rep": s.descriptor(), "witness": s.witness(), "k": k}))
        }
        Command::IrredCheck { generators } => {
            let mats = match generators.as_slice() {
                [d] if d.trim_start().starts_with("pi(") => match parse_rep(d)? {
                    RepArg::Rep(r) => r.generators().to_vec(),
                    RepArg::Character(_) => unreachable!(),
                },
                _ => generators.iter().map(|g| parse_matrix(g)).collect::<Result<_, _>>()?,
            };
            one(json!({"irreducible": is_irreducible(&mats)?, "dimension": mats[0].rows()}))
        }
        Command::MuOrbits { k } => Ok(enumerate_mu_orbits(*k)?
            .iter()
            .map(|o| {
                let exps: Vec<u64> = o.as_set().exps().collect();
                record(verb, json!({"modulus": o.modulus(), "k": o.k(), "exps": exps}))
            })
            .collect()),
        Command::ChainCheck { seq: f, p } => one(json!({"p": p, "in_chain": in_chain_vp(&seq(f)?, *p)?})),
        Command::Witness { seq: f, k } => {
            let k = parse_k(k)?;
            Ok(cyclic_witness(&seq(f)?, &k)?
                .into_iter()
                .map(|(e, h)| {
                    let fields = json!({"modulus": k.modulus(), "e": e, "value": h.to_string(), "positive": is_certified_positive(&h)});
                    record(verb, fields)
                })
                .collect())
        }
        Command::WienerInvert { seq: f, k } => {
            let k = parse_k(k)?;
            let g = invert_on_k(&restrict(&seq(f)?, &k)?)?;
            Ok(g.iter()
                .map(|(e, v)| record(verb, json!({"modulus": k.modulus(), "e": e, "value": v.to_string()})))
                .collect())
        }
        Command::Spectrum { seq: f, k } => {
            let k = parse_k(k)?;
            let values: Vec<String> = spectrum_on_k(&restrict(&seq(f)?, &k)?).iter().map(Cyclotomic::to_string).collect();
            one(json!({"values": values}))
        }
        Command::ChoosePrime { betas } => {
            let betas = betas.iter().map(|b| parse_rational(b)).collect::<Result<Vec<_>, _>>()?;
            one(json!({"prime": choose_prime(&betas)?}))
        }
        Command::DfCheck { a, b } => {
            let v = check_direct_finiteness(&elem(a)?, &elem(b)?)?;
            one(json!({"verdict": v.to_string(), "pass": true}))
        }
        Command::G1Check { alpha, beta, m } => {
            let ok = verify_g1_invariance(&scalar(alpha)?, &scalar(beta)?, *m)?;
            one(json!({"invariant": ok, "pass": ok, "m": m}))
        }
        Command::FaithfulWitness { element } => {
            let j = faithfulness_witness(&elem(element)?)?;
            one(json!({"j": j.map(|j| j.to_string())}))
        }
        Command::Converge { seq: xi, k, n } => {
            let xi = seq(xi)?;
            let k: BigInt = k.trim().parse().map_err(|_| CliError::Usage(format!("bad index '{k}'")))?;
            let n = n.unwrap_or_else(|| sufficient_power(&xi, &k));
            let out = map_to_delta0(&xi, &k, n)?;
            one(json!({"n": n, "result": out.to_string(), "is_delta0": out.is_delta0()}))
        }
    }
}

fn s<'a>(r: &'a Value, key: &str) -> &'a str {
    r[key].as_str().unwrap_or_default()
}

fn yes_no(r: &Value, key: &str) -> bool {
    r[key].as_bool().unwrap_or(false)
}

fn list(r: &Value, key: &str) -> String {
    let items: Vec<String> = r[key]
        .as_array()
        .map(|a| a.iter().map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_owned)).collect())
        .unwrap_or_default();
    items.join(",")
}

/// Human-readable form of a record produced by [`execute`].
pub fn render_text(r: &Value) -> String {
    match s(r, "verb") {
        "eval" if r.get("value").is_some() => s(r, "value").to_owned(),
        "eval" => s(r, "element").to_owned(),
        "mul" => s(r, "product").to_owned(),
        "norm" => format!("norm_A={} norm_B={} grid={}", r["norm_a"], r["norm_b"], r["grid"]),
        "rep-eval" => s(r, "image").to_owned(),
        "separate" => format!("{} witness={}", s(r, "rep"), s(r, "witness")),
        "irred-check" => {
            let word = if yes_no(r, "irreducible") { "irreducible" } else { "reducible" };
            format!("{word} dim={}", r["dimension"])
        }
        "mu-orbits" => format!("N={} k={} exps=[{}]", r["modulus"], r["k"], list(r, "exps")),
        "chain-check" => {
            let word = if yes_no(r, "in_chain") { "in" } else { "not in" };
            format!("{word} V_{}", r["p"])
        }
        "witness" => {
            let tag = if yes_no(r, "positive") { "" } else { " (not positive)" };
            format!("{}/{}: {}{tag}", r["e"], r["modulus"], s(r, "value"))
        }
        "wiener-invert" => format!("{}/{}: {}", r["e"], r["modulus"], s(r, "value")),
        "spectrum" => format!("{{{}}}", list(r, "values").replace(',', ", ")),
        "choose-prime" => r["prime"].to_string(),
        "df-check" => format!("PASS {}", s(r, "verdict")),
        "g1-check" => {
            let word = if yes_no(r, "pass") { "PASS" } else { "FAIL" };
            format!("{word} M={}", r["m"])
        }
        "faithful-witness" => match r["j"].as_str() {
            Some(j) => format!("j={j}"),
            None => "none".into(),
        },
        "converge" => format!("N={} {}", r["n"], s(r, "result")),
        other => format!("unknown record '{other}'"),
    }
}

/// The output lines for `records` under `mode`.
pub fn render(records: &[Value], mode: OutputMode) -> Vec<String> {
    records
        .iter()
        .map(|r| match mode {
            OutputMode::Text => render_text(r),
            OutputMode::Structured => r.to_string(),
        })
        .collect()
}
