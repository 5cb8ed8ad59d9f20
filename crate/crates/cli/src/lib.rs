//! Command-line front end for the `equising` library.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a well-formed negative
//! verdict (invalid semigroup, reducible polynomial), 2 for usage and parse errors.

use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use equising::abhyankar::{int_mult, is_irreducible, milnor, semigroup_of, AbhyankarError};
use equising::bipoly::{parse_poly_bounded, BiPoly, Order, PolyError};
use equising::canon::{canonical_element, enumerate_e, generic_form, sample_member, CanonError};
use equising::enumalg::enumerate_semigroups;
use equising::numsg::{parse_generators, puiseux_pairs, validate, NumsgError, SemigroupData};
use num_bigint::BigInt;
use serde_json::{json, Value};

const DEFAULT_MAX_DEGREE: u32 = 4096;

#[derive(Parser, Debug)]
#[command(name = "equising", version, about = "Equisingularity classes of plane curve branches")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a generator sequence and print its characteristic data.
    Validate {
        #[arg(required = true, allow_negative_numbers = true)]
        gens: Vec<String>,
    },
    /// Print the canonical equation of a semigroup.
    Canonical {
        #[arg(required = true, allow_negative_numbers = true)]
        gens: Vec<String>,
    },
    /// Print the generic form of the class; with a bound, list the free monomials.
    Generic {
        #[arg(required = true, allow_negative_numbers = true)]
        gens: Vec<String>,
        #[arg(long)]
        xdeg_bound: Option<u64>,
    },
    /// Draw a pseudo-random member of the class.
    Sample {
        #[arg(required = true, allow_negative_numbers = true)]
        gens: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of extra free monomials.
        #[arg(long, default_value_t = 2)]
        terms: usize,
        /// Coefficients are drawn from [-B, B].
        #[arg(long, default_value_t = 5)]
        coeff_bound: u64,
    },
    /// List every semigroup with Milnor number M.
    Enumerate {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        with_canonical: bool,
    },
    /// Run the irreducibility criterion on POLY.
    Irreducible { poly: String },
    /// Print the semigroup of an irreducible POLY.
    SemigroupOf { poly: String },
    /// Print the Milnor number of an irreducible POLY.
    Milnor { poly: String },
    /// Print the intersection multiplicity of two polynomials at the origin.
    Intersect { f: String, g: String },
    /// Print the Newton-Puiseux pairs of a semigroup.
    Puiseux {
        #[arg(required = true, allow_negative_numbers = true)]
        gens: Vec<String>,
    },
}

/// A failed command: exit code plus message.
struct Failure {
    code: i32,
    msg: String,
    /// Extra payload emitted under `--json` alongside the message.
    payload: Option<Value>,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
            payload: None,
        }
    }

    fn negative(msg: impl Into<String>, payload: Option<Value>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
            payload,
        }
    }
}

impl From<NumsgError> for Failure {
    fn from(e: NumsgError) -> Self {
        match e {
            NumsgError::Parse(_) => Failure::usage(e.to_string()),
            NumsgError::Invalid(ref report) => Failure::negative(e.to_string(), Some(report.to_json())),
            _ => Failure::negative(e.to_string(), None),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<CanonError> for Failure {
    fn from(e: CanonError) -> Self {
        match e {
            CanonError::Numsg(n) => n.into(),
            CanonError::NotInClass { .. } => Failure {
                code: 3,
                msg: e.to_string(),
                payload: None,
            },
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<AbhyankarError> for Failure {
    fn from(e: AbhyankarError) -> Self {
        match e {
            AbhyankarError::Reducible { verdict } => Failure::negative(verdict.to_string(), None),
            AbhyankarError::Poly(p) => p.into(),
            AbhyankarError::Numsg(n) => n.into(),
            AbhyankarError::MilnorMismatch { .. } => Failure {
                code: 3,
                msg: e.to_string(),
                payload: None,
            },
            _ => Failure::usage(e.to_string()),
        }
    }
}

/// Text and JSON renderings of a result, plus its exit code.
struct Output {
    code: i32,
    text: String,
    json: Value,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output {
            code: 0,
            text: text.into(),
            json,
        }
    }
}

struct Env<'a> {
    stdin: &'a mut dyn Read,
    max_degree: u32,
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run(
    argv: impl IntoIterator<Item = String>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let argv: Vec<String> = argv.into_iter().collect();
    let json_requested = argv.iter().skip(1).any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let _ = write!(stderr, "{}", e.render());
            if json_requested {
                let msg = e.kind().to_string();
                let _ = writeln!(stdout, "{}", json!({"error": msg, "exitCode": 2}));
            }
            return 2;
        }
    };
    let result = max_degree().and_then(|max_degree| {
        let mut env = Env { stdin, max_degree };
        execute(&cli.command, &mut env)
    });
    match result {
        Ok(out) => {
            if cli.json {
                let _ = writeln!(stdout, "{}", out.json);
            } else {
                let _ = write!(stdout, "{}", out.text);
            }
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "equising: {}", f.msg);
            if cli.json {
                let mut v = json!({"error": f.msg, "exitCode": f.code});
                if let Some(p) = f.payload {
                    v["detail"] = p;
                }
                let _ = writeln!(stdout, "{v}");
            }
            f.code
        }
    }
}

fn max_degree() -> Result<u32, Failure> {
    match std::env::var("EQUISING_MAX_DEGREE") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("EQUISING_MAX_DEGREE must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn execute(cmd: &Command, env: &mut Env<'_>) -> Result<Output, Failure> {
    match cmd {
        Command::Validate { gens } => cmd_validate(gens),
        Command::Canonical { gens } => {
            let c = canonical_element(&semigroup(gens)?)?;
            Ok(Output::ok(format!("{}\n", c.nested_string()), c.to_json()))
        }
        Command::Generic { gens, xdeg_bound } => cmd_generic(gens, *xdeg_bound),
        Command::Sample {
            gens,
            seed,
            terms,
            coeff_bound,
        } => {
            let s = semigroup(gens)?;
            let p = sample_member(&s, *seed, *terms, *coeff_bound)?;
            Ok(Output::ok(
                format!("{p}\n"),
                json!({"generators": s.to_json()["generators"], "seed": seed, "terms": terms, "poly": p.to_string()}),
            ))
        }
        Command::Enumerate { m, with_canonical } => cmd_enumerate(*m, *with_canonical),
        Command::Irreducible { poly } => {
            let p = read_poly(poly, env)?;
            let trace = is_irreducible(&p)?;
            let mut text = format!("{}\n", trace.verdict);
            if trace.verdict.is_irreducible() {
                text.push_str(&format!("r: {}\nd: {}\n", join(&trace.r), join(&trace.d)));
            }
            let mut json = trace.to_json();
            if !trace.verdict.is_irreducible() {
                json["message"] = json!(trace.verdict.to_string());
            }
            Ok(Output {
                code: if trace.verdict.is_irreducible() { 0 } else { 1 },
                text,
                json,
            })
        }
        Command::SemigroupOf { poly } => {
            let s = semigroup_of(&read_poly(poly, env)?)?;
            Ok(Output::ok(format!("{s}\n"), s.to_json()))
        }
        Command::Milnor { poly } => {
            let mu = milnor(&read_poly(poly, env)?)?;
            Ok(Output::ok(format!("{mu}\n"), json!({"milnor": mu})))
        }
        Command::Intersect { f, g } => {
            let f = read_poly(f, env)?;
            let g = read_poly(g, env)?;
            let i = int_mult(&f, &g);
            let v = match i {
                Order::Finite(n) => json!(n),
                Order::Infinite => json!("inf"),
            };
            Ok(Output::ok(format!("{i}\n"), json!({"intersection": v})))
        }
        Command::Puiseux { gens } => {
            let s = semigroup(gens)?;
            let pairs = puiseux_pairs(&s)?;
            let text: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
            Ok(Output::ok(
                format!("{}\n", text.join(" ")),
                json!({"generators": s.to_json()["generators"], "puiseuxPairs": pairs_json(&pairs)}),
            ))
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn int_json(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse().expect("integer literal"))
}

fn pairs_json(pairs: &[(BigInt, BigInt)]) -> Value {
    Value::Array(pairs.iter().map(|(a, b)| json!([int_json(a), int_json(b)])).collect())
}

fn generators(gens: &[String]) -> Result<Vec<BigInt>, Failure> {
    Ok(parse_generators(&gens.join(" "))?)
}

fn semigroup(gens: &[String]) -> Result<SemigroupData, Failure> {
    let r = generators(gens)?;
    let report = validate(&r);
    if !report.valid {
        return Err(Failure::negative(
            format!("not a valid branch semigroup: {report}"),
            Some(report.to_json()),
        ));
    }
    Ok(SemigroupData::new(r)?)
}

fn cmd_validate(gens: &[String]) -> Result<Output, Failure> {
    let r = generators(gens)?;
    let report = validate(&r);
    if !report.valid {
        let mut json = report.to_json();
        json["generators"] = Value::Array(r.iter().map(int_json).collect());
        return Ok(Output {
            code: 1,
            text: format!("invalid: {report}\n"),
            json,
        });
    }
    let s = SemigroupData::new(r)?;
    let mut json = s.to_json();
    json["valid"] = json!(true);
    json["failures"] = json!([]);
    let text = format!(
        "valid\nr: {}\nd: {}\ne: {}\nm: {}\nconductor: {}\n",
        join(s.r()),
        join(s.d()),
        join(s.e()),
        join(s.m()),
        s.conductor().unwrap()
    );
    Ok(Output::ok(text, json))
}

fn cmd_generic(gens: &[String], bound: Option<u64>) -> Result<Output, Failure> {
    let s = semigroup(gens)?;
    let g = generic_form(&s)?;
    let mut text = g.to_string();
    let mut json = g.to_json();
    if let Some(bound) = bound {
        let mut sets = Vec::new();
        for l in &g.levels {
            for c in &l.constraints {
                let members = enumerate_e(&s, l.k, c.i, bound)?;
                text.push_str(&format!("  level {} i={}: {} monomials with t0 <= {bound}\n", l.k, c.i, members.len()));
                for t in &members {
                    text.push_str(&format!("    {}\n", join(t)));
                }
                sets.push(json!({"k": l.k, "i": c.i, "thetas": members}));
            }
        }
        json["xdegBound"] = json!(bound);
        json["monomials"] = Value::Array(sets);
    }
    Ok(Output::ok(text, json))
}

fn cmd_enumerate(m: i64, with_canonical: bool) -> Result<Output, Failure> {
    let classes = if m < 0 { Vec::new() } else { enumerate_semigroups(m as u64) };
    let mut text = String::new();
    let mut list = Vec::new();
    for s in &classes {
        let pairs = puiseux_pairs(s)?;
        let mut entry = json!({"generators": s.to_json()["generators"], "puiseuxPairs": pairs_json(&pairs)});
        if with_canonical {
            let c = canonical_element(s)?.nested_string();
            text.push_str(&format!("{s}: {c}\n"));
            entry["canonical"] = json!(c);
        } else {
            text.push_str(&format!("{s}\n"));
        }
        list.push(entry);
    }
    Ok(Output::ok(text, json!({"milnor": m, "classes": list})))
}

/// Inline expression, a `.poly` file, or `-` for standard input.
fn read_poly(arg: &str, env: &mut Env<'_>) -> Result<BiPoly, Failure> {
    let text = if arg == "-" {
        let mut s = String::new();
        env.stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
        s
    } else if arg.ends_with(".poly") {
        std::fs::read_to_string(arg).map_err(|e| Failure::usage(format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    parse_poly_bounded(text.trim(), env.max_degree).map_err(|e| Failure::usage(format!("{arg}: {e}")))
}
