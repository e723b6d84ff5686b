//! The `abelaut` command line.
//!
//! Exit codes: 0 on success, 1 on a domain error (including a failed
//! `verify`), 2 on a usage error. Every command accepts `--json`.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::analysis::{
    check_scc_instance, path_polynomial, scc_decompose, witness_search, PathWord, DEFAULT_WITNESS_DEGREE,
};
use crate::complete::{
    embed_scale, find_counterexample, gtilde_add, gtilde_eq, gtilde_step, locate, locate_at, principal_from_matrix,
    CompleteConfig, GTildeElement, IntVector, LocationMap,
};
use crate::error::{Error, Result};
use crate::exactalg::{
    companion_from_chi, parse_matrix, try_divide_mod, HalfIntegralMatrix, IntPolynomial, RationalPolynomial,
};
use crate::group::{build_principal, check_abelian, gamma_of, DEFAULT_BOUND};
use crate::mealy::{parse_automaton, serialize_automaton, Bit, MealyAutomaton, Word};

#[derive(Debug, Parser)]
#[command(name = "abelaut", version, about = "Abelian binary Mealy automata and their complete automata")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BoundArg {
    /// Closure bound (number of elements or states).
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a word through a state.
    Transduce {
        #[arg(long)]
        aut: String,
        #[arg(long)]
        state: String,
        /// Bit string such as 0110; `-` is the empty word.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Classify an automaton as abelian free, boolean, trivial or not abelian.
    Check {
        #[arg(long)]
        aut: String,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Print the residuation difference of the least odd state.
    Gamma {
        #[arg(long)]
        aut: String,
    },
    /// Build the principal machine from an automaton, a chi, or a matrix.
    #[command(group(ArgGroup::new("source").required(true).args(["aut", "chi", "matrix"])))]
    Principal {
        #[arg(long)]
        aut: Option<String>,
        /// Characteristic polynomial, constant first, e.g. "1/2 1 1".
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Close a vector under residuation in the complete automaton of (A, e).
    Orbit {
        #[arg(long)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        e: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Find (p, e) and a vector for every state.
    Locate {
        #[arg(long)]
        aut: String,
        #[arg(long)]
        matrix: String,
        /// Odd state to place at e1 (default: least odd state).
        #[arg(long)]
        state: Option<String>,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Check a location map on all words up to a length.
    Verify {
        #[arg(long)]
        aut: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 10)]
        maxlen: usize,
    },
    /// Map v in p^-1 G to q^-1 G.
    Embed {
        #[arg(long)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Arithmetic on fractions v/p.
    Gtilde {
        #[command(subcommand)]
        op: GtildeOp,
    },
    /// Strongly connected components of an automaton, or the principal
    /// machine report of a matrix.
    #[command(group(ArgGroup::new("source").required(true).args(["aut", "matrix"])))]
    Scc {
        #[arg(long)]
        aut: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = DEFAULT_WITNESS_DEGREE)]
        max_degree: usize,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Path polynomial of a word over 0, 1, n.
    Pathpoly {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Least path polynomial congruent to -1 modulo chi*.
    Witness {
        /// chi*, constant first, e.g. "2 2 1".
        #[arg(long, allow_hyphen_values = true)]
        chi_star: String,
        #[arg(long, default_value_t = DEFAULT_WITNESS_DEGREE)]
        max_degree: usize,
    },
    /// Search for matrices that locate an automaton.
    Infer {
        #[arg(long)]
        aut: String,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 2)]
        coeff_bound: i64,
        #[command(flatten)]
        bound: BoundArg,
    },
}

#[derive(Debug, Args)]
struct Fraction {
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long, allow_hyphen_values = true)]
    p: String,
}

#[derive(Debug, Args)]
struct OtherFraction {
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
}

#[derive(Debug, Subcommand)]
enum GtildeOp {
    /// Whether v/p and w/q are equal.
    Eq {
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        a: Fraction,
        #[command(flatten)]
        b: OtherFraction,
    },
    /// v/p + w/q.
    Add {
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        a: Fraction,
        #[command(flatten)]
        b: OtherFraction,
    },
    /// Residual of v/p on a bit.
    Res {
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        a: Fraction,
        #[arg(long)]
        bit: u8,
    },
}

/// Runs the command line; `-` as a file name reads standard input.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let rendered = err.render().to_string();
            let sink: &mut dyn Write = if err.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut ctx = Context { stdin, stdin_used: None };
    match dispatch(&cli, &mut ctx) {
        Ok(Outcome { text, json, ok }) => {
            let body =
                if cli.json { format!("{}\n", serde_json::to_string_pretty(&json).expect("json")) } else { text };
            let _ = stdout.write_all(body.as_bytes());
            if ok {
                0
            } else {
                1
            }
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            1
        }
    }
}

struct Outcome {
    text: String,
    json: Value,
    /// False when the command ran but its check failed.
    ok: bool,
}

impl Outcome {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Outcome { text: text.into(), json, ok: true }
    }
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: Option<String>,
}

impl Context<'_> {
    fn read(&mut self, path: &str) -> Result<String> {
        if path == "-" {
            if let Some(text) = &self.stdin_used {
                return Ok(text.clone());
            }
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| Error::InvalidArgument(format!("cannot read standard input: {e}")))?;
            self.stdin_used = Some(text.clone());
            return Ok(text);
        }
        fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read `{path}`: {e}")))
    }

    fn automaton(&mut self, path: &str) -> Result<MealyAutomaton> {
        parse_automaton(&self.read(path)?)
    }

    fn matrix(&mut self, path: &str) -> Result<HalfIntegralMatrix> {
        parse_matrix(&self.read(path)?)
    }
}

fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

fn vector_json(v: &IntVector) -> Value {
    Value::Array(v.entries().iter().map(big).collect())
}

fn poly_json(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(big).collect())
}

fn automaton_json(aut: &MealyAutomaton) -> Value {
    let transitions: Vec<Value> = aut
        .states()
        .flat_map(|s| {
            Bit::BOTH.map(|a| {
                let (t, out) = aut.step(s, a);
                json!({"src": aut.label(s), "in": a.as_u8(), "out": out.as_u8(), "dst": aut.label(t)})
            })
        })
        .collect();
    json!({"name": aut.name(), "states": aut.labels(), "transitions": transitions})
}

fn map_json(map: &LocationMap) -> Value {
    let assignment: serde_json::Map<String, Value> =
        map.assignment.iter().map(|(k, v)| (k.clone(), vector_json(v))).collect();
    json!({"p": poly_json(&map.p), "e": vector_json(&map.e), "partial": map.partial, "assignment": assignment})
}

fn parse_word(text: &str) -> Result<Word> {
    text.parse()
}

fn parse_poly(text: &str) -> Result<IntPolynomial> {
    text.parse()
}

fn parse_vector(text: &str) -> Result<IntVector> {
    text.parse()
}

fn dispatch(cli: &Cli, ctx: &mut Context<'_>) -> Result<Outcome> {
    match &cli.command {
        Command::Transduce { aut, state, word } => {
            let aut = ctx.automaton(aut)?;
            let w = parse_word(word)?;
            let out = aut.transduce_label(state, &w)?;
            Ok(Outcome::new(
                format!("{out}\n"),
                json!({"state": state, "input": w.to_string(), "output": out.to_string()}),
            ))
        }
        Command::Check { aut, bound } => {
            let aut = ctx.automaton(aut)?;
            let report = check_abelian(&aut, bound.bound)?;
            let gamma = report.gamma.as_ref().map(ToString::to_string);
            let mut text = format!("verdict: {:?}\n", report.verdict);
            if let Some(g) = &gamma {
                text += &format!("gamma: {g}\n");
            }
            if let Some((state, reason)) = &report.witness {
                text += &format!("witness: {state}\nreason: {reason}\n");
            }
            let witness = report.witness.as_ref().map(|(s, r)| json!({"state": s, "reason": r}));
            Ok(Outcome::new(text, json!({"verdict": report.verdict, "gamma": gamma, "witness": witness})))
        }
        Command::Gamma { aut } => {
            let aut = ctx.automaton(aut)?;
            let gamma = gamma_of(&aut)?;
            Ok(Outcome::new(format!("{gamma}\n"), json!({"gamma": gamma.to_string()})))
        }
        Command::Principal { aut, chi, matrix, bound } => {
            let principal = match (aut, chi, matrix) {
                (Some(path), _, _) => build_principal(&ctx.automaton(path)?, bound.bound)?,
                (_, Some(chi), _) => {
                    let chi: RationalPolynomial = chi.parse()?;
                    principal_from_matrix(&companion_from_chi(&chi)?, bound.bound)?
                }
                (_, _, Some(path)) => principal_from_matrix(&ctx.matrix(path)?, bound.bound)?,
                _ => return Err(Error::InvalidArgument("one of --aut, --chi, --matrix is required".into())),
            };
            Ok(Outcome::new(serialize_automaton(&principal), automaton_json(&principal)))
        }
        Command::Orbit { matrix, e, v, bound } => {
            let cfg = CompleteConfig::new(ctx.matrix(matrix)?, parse_vector(e)?)?;
            let orbit = cfg.orbit(&parse_vector(v)?, bound.bound)?;
            Ok(Outcome::new(serialize_automaton(&orbit), automaton_json(&orbit)))
        }
        Command::Locate { aut, matrix, state, bound } => {
            let aut = ctx.automaton(aut)?;
            let a = ctx.matrix(matrix)?;
            let map = match state {
                Some(s) => locate_at(&aut, &a, s, bound.bound)?,
                None => locate(&aut, &a, bound.bound)?,
            };
            Ok(Outcome::new(map.to_string(), map_json(&map)))
        }
        Command::Verify { aut, matrix, map, maxlen } => {
            let aut = ctx.automaton(aut)?;
            let a = ctx.matrix(matrix)?;
            let map: LocationMap = ctx.read(map)?.parse()?;
            let cfg = map.config(&a)?;
            let cx = find_counterexample(&aut, &cfg, &map, *maxlen)?;
            let text = match &cx {
                None => "true\n".to_string(),
                Some(c) => format!(
                    "false\ncounterexample: state {} input {} expected {} found {}\n",
                    c.state, c.input, c.expected, c.found
                ),
            };
            let cx_json = cx.as_ref().map(|c| {
                json!({"state": c.state, "input": c.input.to_string(), "expected": c.expected.to_string(), "found": c.found.to_string()})
            });
            Ok(Outcome { ok: cx.is_none(), text, json: json!({"verified": cx.is_none(), "counterexample": cx_json}) })
        }
        Command::Embed { matrix, p, q, v } => {
            let a = ctx.matrix(matrix)?;
            let (p, q, v) = (parse_poly(p)?, parse_poly(q)?, parse_vector(v)?);
            let image = embed_scale(&a, &p, &q, &v)?;
            let r = try_divide_mod(&q, &p, &a.chi_star())?;
            Ok(Outcome::new(format!("{image}\n"), json!({"r": poly_json(&r), "vector": vector_json(&image)})))
        }
        Command::Gtilde { op } => gtilde(op, ctx),
        Command::Scc { aut, matrix, max_degree, bound } => match (aut, matrix) {
            (Some(path), _) => {
                let aut = ctx.automaton(path)?;
                let scc = scc_decompose(&aut);
                let labels = scc.labels(&aut);
                let mut text = String::new();
                for c in &labels {
                    text += &format!("component: {}\n", c.join(" "));
                }
                for (x, y) in &scc.edges {
                    text += &format!("edge: {x} -> {y}\n");
                }
                Ok(Outcome::new(text, json!({"components": labels, "edges": scc.edges})))
            }
            (_, Some(path)) => {
                let report = check_scc_instance(&ctx.matrix(path)?, bound.bound, *max_degree)?;
                let value = serde_json::to_value(&report).expect("json");
                Ok(Outcome::new(report.to_string(), value))
            }
            _ => Err(Error::InvalidArgument("one of --aut, --matrix is required".into())),
        },
        Command::Pathpoly { word } => {
            let w: PathWord = word.parse()?;
            let p = path_polynomial(&w);
            Ok(Outcome::new(
                format!("{}\n", p.to_list_string()),
                json!({"word": w.to_string(), "coefficients": poly_json(&p), "polynomial": p.to_string()}),
            ))
        }
        Command::Witness { chi_star, max_degree } => {
            let chi_star = parse_poly(chi_star)?;
            let w = witness_search(&chi_star, *max_degree)?;
            let text = match &w {
                Some(w) => format!("{}\n", w.to_list_string()),
                None => "none\n".to_string(),
            };
            Ok(Outcome::new(text, json!({"witness": w.as_ref().map(poly_json)})))
        }
        Command::Infer { aut, max_dim, coeff_bound, bound } => {
            let aut = ctx.automaton(aut)?;
            let found = crate::analysis::infer_matrix(&aut, *max_dim, *coeff_bound, bound.bound)?;
            let mut text = String::new();
            let mut matches = Vec::new();
            for (a, map) in &found {
                let chi = a.char_poly();
                text += &format!("chi: {chi}\n{}{map}\n", crate::exactalg::serialize_matrix(a));
                matches.push(json!({
                    "chi": chi.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "matrix": crate::exactalg::serialize_matrix(a),
                    "map": map_json(map),
                }));
            }
            if found.is_empty() {
                text = "none\n".into();
            }
            Ok(Outcome::new(text, json!({"matches": matches})))
        }
    }
}

fn fraction(v: &str, p: &str) -> Result<GTildeElement> {
    GTildeElement::new(parse_vector(v)?, parse_poly(p)?)
}

fn fraction_json(x: &GTildeElement) -> Value {
    json!({"v": vector_json(x.numerator()), "p": poly_json(x.denominator())})
}

fn gtilde(op: &GtildeOp, ctx: &mut Context<'_>) -> Result<Outcome> {
    match op {
        GtildeOp::Eq { matrix, a, b } => {
            let m = ctx.matrix(matrix)?;
            let equal = gtilde_eq(&fraction(&a.v, &a.p)?, &fraction(&b.w, &b.q)?, &m)?;
            Ok(Outcome::new(format!("{equal}\n"), json!({"equal": equal})))
        }
        GtildeOp::Add { matrix, a, b } => {
            let m = ctx.matrix(matrix)?;
            let sum = gtilde_add(&fraction(&a.v, &a.p)?, &fraction(&b.w, &b.q)?, &m)?;
            Ok(Outcome::new(format!("{sum}\n"), fraction_json(&sum)))
        }
        GtildeOp::Res { matrix, a, bit } => {
            let m = ctx.matrix(matrix)?;
            let bit =
                Bit::from_u8(*bit).ok_or_else(|| Error::InvalidArgument(format!("bit must be 0 or 1, got {bit}")))?;
            let (r, out) = gtilde_step(&fraction(&a.v, &a.p)?, &m, bit)?;
            let mut value = fraction_json(&r);
            value["output"] = json!(out.as_u8());
            Ok(Outcome::new(format!("{r}\noutput: {out}\n"), value))
        }
    }
}
