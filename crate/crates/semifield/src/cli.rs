//! The `semifield` command line.
//!
//! Every subcommand prints a human-readable rendering by default and one JSON
//! record per line with `--json`. Exit codes: 0 when a verdict or result was
//! produced, 1 on usage, parse or domain errors, 2 when a budget ran out.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use semifield_core::decide::{
    decide_statement_with, verify_certificate, Certificate, Class, Diagram, Limits, Verdict,
    DEFAULT_NODE_BUDGET, DEFAULT_POINT_BUDGET,
};
use semifield_core::models::{
    endo_monoid_algebra, flat_extension, holds_finite_with, holds_quasi_algebra, holds_quasi_z,
    holds_quasi_zn, nfb_witness, Assignment, FiniteAlgebra, FiniteMonoid, DEFAULT_EVAL_BUDGET,
};
use semifield_core::orders::{
    group_right_order_exists_with, monoid_right_order_exists_with, OrderVerdict,
};
use semifield_core::terms::{
    parse, parse_statement, parse_term, GroupWord, MonoidWord, Parsed, Signature,
};
use semifield_core::translate::{
    efree_wrap, ell_to_basic_with, right_regularize, star_translate_with, to_quasiequation,
    to_simple, zero_simplify, zero_simplify_statement, BasicInequation, Quasiequation,
    SimpleInequation, StarVariant, DEFAULT_TERM_BUDGET,
};
use semifield_core::{Error, Result};
use serde_json::{json, Value};

use crate::bench;
use crate::corpus::{generate, generate_corpus, GenParams, Kind};
use crate::record::RunRecord;

#[derive(Parser, Debug)]
#[command(
    name = "semifield",
    version,
    about = "Decide equations of idempotent semifields and lattice-ordered groups"
)]
struct Cli {
    /// Print one JSON record per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Report wall-clock time for each command.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Budgets {
    /// Search nodes before giving up.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    nodes: u64,
    /// Points a refuting diagram may have.
    #[arg(long, default_value_t = DEFAULT_POINT_BUDGET)]
    points: usize,
    /// Words allowed while normalizing lattice terms.
    #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
    terms: usize,
}

impl Budgets {
    fn limits(&self) -> Limits {
        Limits {
            nodes: self.nodes,
            points: self.points,
            terms: self.terms,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term or statement and print its normal form.
    Parse {
        #[arg(long, default_value = "lgroup", value_parser = parse_signature)]
        sig: Signature,
        text: String,
    },
    /// Translate between statement shapes.
    Translate {
        #[command(subcommand)]
        which: Translation,
    },
    /// Decide a statement over a class of algebras.
    Decide {
        #[arg(long, default_value = "lgroup", value_parser = parse_class)]
        class: Class,
        #[command(flatten)]
        budgets: Budgets,
        statement: String,
    },
    /// Finite models and quasiequation oracles.
    Model {
        #[command(subcommand)]
        cmd: ModelCommand,
    },
    /// Right-order existence on free groups and monoids.
    Order {
        #[command(subcommand)]
        cmd: OrderCommand,
    },
    /// The inequation `x <= e \/ x^n` and its refutation in flat(Z_n).
    Witness {
        #[arg(long)]
        n: usize,
    },
    /// Write a seeded statement corpus.
    Gen(GenArgs),
    /// Decide every statement of a corpus and tabulate the results.
    Bench(BenchArgs),
}

#[derive(Subcommand, Debug)]
enum Translation {
    /// Semiring statement to simple inequations.
    Simple {
        #[arg(long, default_value = "semiring", value_parser = parse_signature)]
        sig: Signature,
        statement: String,
    },
    /// Eliminate inverses from a basic inequation.
    Star {
        /// Use `x y u x s` in place of `x y u y s`.
        #[arg(long)]
        literal: bool,
        inequation: String,
    },
    /// ℓ-group statement to basic inequations.
    Basic {
        #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
        terms: usize,
        statement: String,
    },
    /// Simple inequation to its quasiequation.
    Quasi { inequation: String },
    /// Simple inequation to an `e`-free one.
    Efree { inequation: String },
    /// Simplify `0` away from a term or statement.
    Zero { text: String },
    /// Drop joinands with variables missing from the left side.
    Rightreg { inequation: String },
}

#[derive(Subcommand, Debug)]
enum ModelCommand {
    /// Check a statement or quasiequation in a finite algebra.
    Check {
        /// flat-zn:N, flat-trivial, flat-idem, flat-z2xz3, o:K, b0 or file:PATH.
        #[arg(long)]
        algebra: String,
        /// Assignments to enumerate before giving up.
        #[arg(long, default_value_t = DEFAULT_EVAL_BUDGET)]
        evals: u64,
        text: String,
    },
    /// Check a quasiequation in Z, Z_n, or the monoid reduct of an algebra.
    Quasi {
        /// Z, Zn:N, or an algebra as for `model check`.
        #[arg(long = "in")]
        target: String,
        quasi: String,
    },
    /// Print an algebra's operation tables as JSON.
    Export {
        #[arg(long)]
        algebra: String,
    },
}

#[derive(Subcommand, Debug)]
enum OrderCommand {
    /// Is there a right order making every word positive?
    Group {
        #[command(flatten)]
        budgets: Budgets,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Is there a right order with `s < t` for every pair `s<t`?
    Monoid {
        #[command(flatten)]
        budgets: Budgets,
        #[arg(required = true)]
        pairs: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Shape of the statements; defaults from --signature.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// monoid, group, semiring, semiring0 or lgroup.
    #[arg(long, value_parser = parse_signature)]
    signature: Option<Signature>,
    #[arg(long, default_value_t = 2)]
    vars: usize,
    #[arg(long, default_value_t = 2)]
    joinands: usize,
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Write the corpus here instead of standard output.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    corpus: PathBuf,
    /// Class to decide over; defaults from the corpus signature.
    #[arg(long, value_parser = parse_class)]
    class: Option<Class>,
    #[command(flatten)]
    budgets: Budgets,
}

fn parse_signature(s: &str) -> std::result::Result<Signature, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_class(s: &str) -> std::result::Result<Class, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// The default generator shape for a signature.
pub fn default_kind(sig: Signature) -> Kind {
    match sig {
        Signature::Monoid => Kind::Monoid,
        Signature::Group => Kind::Group,
        Signature::Semiring => Kind::Simple,
        Signature::Semiring0 => Kind::Zero,
        Signature::Lgroup => Kind::Basic,
    }
}

struct Output<'a> {
    argv: Vec<String>,
    json: bool,
    timings: bool,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn emit(&mut self, command: &str, body: Value, human: &str, elapsed: Duration) -> Result<()> {
        let ms = elapsed.as_secs_f64() * 1e3;
        let written = if self.json {
            let mut rec = RunRecord::new(command, &self.argv, body);
            rec.elapsed_ms = self.timings.then_some(ms);
            writeln!(self.out, "{}", rec.to_line())
        } else {
            let timing = if self.timings {
                format!("elapsed: {ms:.3} ms\n")
            } else {
                String::new()
            };
            write!(self.out, "{human}{timing}")
        };
        written.map_err(io_error)
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Domain(format!("i/o: {e}"))
}

/// Run the command line `args` (program name first). Returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let command = command_name(&cli.command);
    let mut o = Output {
        argv: args[1..].to_vec(),
        json: cli.json,
        timings: cli.timings,
        out,
    };
    match execute(cli.command, &mut o) {
        Ok(()) => 0,
        Err(e) => {
            let code = if e.is_budget() { 2 } else { 1 };
            if o.json {
                let kind = if e.is_budget() { "budget" } else { "error" };
                let rec = RunRecord::new(
                    command,
                    &o.argv,
                    json!({ "error": { "kind": kind, "message": e.to_string() } }),
                );
                let _ = writeln!(o.out, "{}", rec.to_line());
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Parse { .. } => "parse",
        Command::Translate { .. } => "translate",
        Command::Decide { .. } => "decide",
        Command::Model { .. } => "model",
        Command::Order { .. } => "order",
        Command::Witness { .. } => "witness",
        Command::Gen(_) => "gen",
        Command::Bench(_) => "bench",
    }
}

fn execute(command: Command, o: &mut Output) -> Result<()> {
    let start = Instant::now();
    match command {
        Command::Parse { sig, text } => {
            let (kind, printed, size, vars) = match parse(&text, sig)? {
                Parsed::Statement(st) => ("statement", st.to_string(), st.size(), st.vars()),
                Parsed::Term(t) => ("term", t.to_string(), t.size(), t.vars()),
            };
            let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
            let body = json!({ "input": text, "signature": sig, "kind": kind, "output": printed, "size": size, "vars": vars });
            let human = format!("{printed}\n{kind} in {sig}, size {size}\n");
            o.emit("parse", body, &human, start.elapsed())
        }
        Command::Translate { which } => translate(which, o, start),
        Command::Decide {
            class,
            budgets,
            statement,
        } => {
            let st = parse_statement(&statement, class.signature())?;
            let verdict = decide_statement_with(&st, class, &budgets.limits())?;
            let body = json!({
                "input": statement,
                "class": class,
                "status": verdict.status,
                "certificate": verdict.certificate,
                "stats": verdict.stats,
            });
            let human = render_verdict(&verdict);
            o.emit("decide", body, &human, start.elapsed())
        }
        Command::Model { cmd } => model(cmd, o, start),
        Command::Order { cmd } => {
            let (input, v) = match cmd {
                OrderCommand::Group { budgets, words } => {
                    let ws = words
                        .iter()
                        .map(|w| group_word(w))
                        .collect::<Result<Vec<_>>>()?;
                    (
                        json!({ "words": words }),
                        group_right_order_exists_with(&ws, &budgets.limits())?,
                    )
                }
                OrderCommand::Monoid { budgets, pairs } => {
                    let ps = pairs
                        .iter()
                        .map(|p| monoid_pair(p))
                        .collect::<Result<Vec<_>>>()?;
                    (
                        json!({ "pairs": pairs }),
                        monoid_right_order_exists_with(&ps, &budgets.limits())?,
                    )
                }
            };
            let body = json!({
                "input": input,
                "exists": v.exists,
                "reduced_words": v.reduced_words,
                "certificate": v.certificate,
                "stats": v.stats,
            });
            let human = render_order(&v);
            o.emit("order", body, &human, start.elapsed())
        }
        Command::Witness { n } => {
            let w = nfb_witness(n)?;
            let assignment = w.assignment.as_ref().map(|a| named(&w.algebra, a));
            let body = json!({
                "n": n,
                "inequation": w.inequation.to_string(),
                "algebra": w.algebra.name,
                "assignment": assignment,
                "degenerate": w.degenerate,
            });
            let human = match &assignment {
                Some(a) => format!(
                    "{} fails in {} at {}\n",
                    w.inequation,
                    w.algebra.name,
                    render_assignment(a)
                ),
                None => format!(
                    "{} holds in {} (degenerate case)\n",
                    w.inequation, w.algebra.name
                ),
            };
            o.emit("witness", body, &human, start.elapsed())
        }
        Command::Gen(args) => gen(args, o, start),
        Command::Bench(args) => {
            let text = std::fs::read_to_string(&args.corpus).map_err(io_error)?;
            let report = bench::run_bench(&text, args.class, &args.budgets.limits(), o.timings)?;
            bench::emit(&report, o.json, &o.argv, o.out).map_err(io_error)
        }
    }
}

fn group_word(text: &str) -> Result<GroupWord> {
    parse_term(text, Signature::Group)?
        .to_group_word()
        .ok_or_else(|| Error::Domain(format!("`{text}` is not a group word")))
}

fn monoid_word(text: &str) -> Result<MonoidWord> {
    parse_term(text, Signature::Monoid)?
        .to_monoid_word()
        .ok_or_else(|| Error::Domain(format!("`{text}` is not a monoid word")))
}

/// `s<t` as a pair of monoid words.
fn monoid_pair(text: &str) -> Result<(MonoidWord, MonoidWord)> {
    let (s, t) = text
        .split_once('<')
        .filter(|(_, t)| !t.starts_with('='))
        .ok_or_else(|| Error::Domain(format!("expected `s<t`, got `{text}`")))?;
    Ok((monoid_word(s)?, monoid_word(t)?))
}

fn translate(which: Translation, o: &mut Output, start: Instant) -> Result<()> {
    // (input, size_in, outputs with sizes, fresh variables, extra fields)
    let (input, size_in, outputs, fresh, extra): (
        String,
        usize,
        Vec<(String, usize)>,
        Vec<String>,
        Value,
    ) = match which {
        Translation::Simple { sig, statement } => {
            let st = parse_statement(&statement, sig)?;
            let out = to_simple(&st)?;
            (
                statement,
                st.size(),
                sized(&out, SimpleInequation::size),
                vec![],
                json!({}),
            )
        }
        Translation::Star {
            literal,
            inequation,
        } => {
            let b = BasicInequation::parse(&inequation)?;
            let variant = if literal {
                StarVariant::Literal
            } else {
                StarVariant::Chain
            };
            let t = star_translate_with(&b, variant);
            let fresh = t.fresh.iter().map(|v| v.to_string()).collect();
            let bound = 7 * b.size() * b.size() + b.size();
            let extra = json!({ "steps": t.steps, "variant": if literal { "literal" } else { "chain" }, "bound": bound });
            (
                inequation,
                b.size(),
                sized(&[t.result], SimpleInequation::size),
                fresh,
                extra,
            )
        }
        Translation::Basic { terms, statement } => {
            let st = parse_statement(&statement, Signature::Lgroup)?;
            let t = ell_to_basic_with(&st, terms)?;
            let fresh = t.fresh.iter().map(|v| v.to_string()).collect();
            let extra = json!({ "shaped": t.shaped, "bound": 2 * st.size() * st.size() });
            (
                statement,
                st.size(),
                sized(&t.outputs, BasicInequation::size),
                fresh,
                extra,
            )
        }
        Translation::Quasi { inequation } => {
            let e = SimpleInequation::parse(&inequation)?;
            let q = to_quasiequation(&e);
            let size = q
                .premises
                .iter()
                .chain([&q.conclusion])
                .map(|p| p.lhs.size() + p.rhs.size())
                .sum();
            (
                inequation,
                e.size(),
                vec![(q.to_string(), size)],
                vec![],
                json!({}),
            )
        }
        Translation::Efree { inequation } => {
            let e = SimpleInequation::parse(&inequation)?;
            let (w, z) = efree_wrap(&e);
            (
                inequation,
                e.size(),
                sized(&[w], SimpleInequation::size),
                vec![z.to_string()],
                json!({}),
            )
        }
        Translation::Zero { text } => match parse(&text, Signature::Semiring0)? {
            Parsed::Term(t) => {
                let z = zero_simplify(&t);
                (
                    text,
                    t.size(),
                    vec![(z.to_string(), z.size())],
                    vec![],
                    json!({}),
                )
            }
            Parsed::Statement(st) => {
                let (l, rel, r) = zero_simplify_statement(&st)?;
                let size = l.size() + r.size();
                (
                    text,
                    st.size(),
                    vec![(format!("{l} {rel} {r}"), size)],
                    vec![],
                    json!({}),
                )
            }
        },
        Translation::Rightreg { inequation } => {
            let e = SimpleInequation::parse(&inequation)?;
            let out: Vec<SimpleInequation> = right_regularize(&e).into_iter().collect();
            (
                inequation,
                e.size(),
                sized(&out, SimpleInequation::size),
                vec![],
                json!({ "empty": out.is_empty() }),
            )
        }
    };
    let mut body = json!({
        "input": input,
        "output": outputs.iter().map(|(s, _)| s).collect::<Vec<_>>(),
        "fresh_vars": fresh,
        "size_in": size_in,
        "size_out": outputs.iter().map(|(_, n)| n).collect::<Vec<_>>(),
    });
    if let (Value::Object(b), Value::Object(e)) = (&mut body, extra) {
        b.extend(e);
    }
    let mut human = String::new();
    if outputs.is_empty() {
        human.push_str("(empty)\n");
    }
    for (s, _) in &outputs {
        human.push_str(s);
        human.push('\n');
    }
    o.emit("translate", body, &human, start.elapsed())
}

fn sized<T: ToString>(items: &[T], size: impl Fn(&T) -> usize) -> Vec<(String, usize)> {
    items.iter().map(|t| (t.to_string(), size(t))).collect()
}

/// Parse an algebra description.
pub fn algebra(spec: &str) -> Result<FiniteAlgebra> {
    let bad = || Error::Domain(format!("unknown algebra `{spec}`"));
    let number = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let Some(n) = spec.strip_prefix("flat-zn:") {
        let n = number(n)?;
        if n == 0 {
            return Err(Error::Domain("Z_n needs n >= 1".into()));
        }
        return Ok(flat_extension(&FiniteMonoid::cyclic(n)));
    }
    if let Some(k) = spec.strip_prefix("o:") {
        return endo_monoid_algebra(number(k)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(io_error)?;
        let a: FiniteAlgebra =
            serde_json::from_str(&text).map_err(|e| Error::Domain(format!("{path}: {e}")))?;
        a.validate()?;
        return Ok(a);
    }
    match spec {
        "flat-trivial" => Ok(flat_extension(&FiniteMonoid::trivial())),
        "flat-idem" => Ok(flat_extension(&FiniteMonoid::idempotent_pair())),
        "flat-z2xz3" => Ok(flat_extension(
            &FiniteMonoid::cyclic(2).product(&FiniteMonoid::cyclic(3)),
        )),
        "b0" => Ok(FiniteAlgebra::boolean_zero()),
        _ => Err(bad()),
    }
}

/// The widest signature `a` can interpret.
fn algebra_signature(a: &FiniteAlgebra) -> Signature {
    if a.zero().is_some() {
        Signature::Semiring0
    } else if a.has_meet() {
        Signature::Lgroup
    } else {
        Signature::Semiring
    }
}

fn named(a: &FiniteAlgebra, asg: &Assignment) -> BTreeMap<String, String> {
    asg.iter()
        .map(|(v, &i)| (v.to_string(), a.names()[i].clone()))
        .collect()
}

fn render_assignment(a: &BTreeMap<String, String>) -> String {
    let parts: Vec<String> = a.iter().map(|(v, x)| format!("{v} = {x}")).collect();
    parts.join(", ")
}

fn model(cmd: ModelCommand, o: &mut Output, start: Instant) -> Result<()> {
    match cmd {
        ModelCommand::Check {
            algebra: spec,
            evals,
            text,
        } => {
            let a = algebra(&spec)?;
            let check = if text.contains("=>") {
                holds_quasi_algebra(&a, &Quasiequation::parse(&text)?)?
            } else {
                holds_finite_with(&a, &parse_statement(&text, algebra_signature(&a))?, evals)?
            };
            let witness = check.witness.as_ref().map(|w| named(&a, w));
            let body = json!({ "input": text, "algebra": a.name, "holds": check.holds, "witness": witness });
            let human = match &witness {
                None => format!("holds in {}\n", a.name),
                Some(w) => format!("fails in {} at {}\n", a.name, render_assignment(w)),
            };
            o.emit("model", body, &human, start.elapsed())
        }
        ModelCommand::Quasi { target, quasi } => {
            let q = Quasiequation::parse(&quasi)?;
            let (name, holds, witness) = if target == "Z" {
                ("Z".to_string(), holds_quasi_z(&q), None)
            } else if let Some(n) = target.strip_prefix("Zn:") {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad modulus `{n}`")))?;
                let c = holds_quasi_zn(&q, n)?;
                let m = FiniteMonoid::cyclic(n);
                let w = c.witness.map(|w| {
                    w.iter()
                        .map(|(v, &i)| (v.to_string(), m.names()[i].clone()))
                        .collect::<BTreeMap<_, _>>()
                });
                (format!("Z{n}"), c.holds, w)
            } else {
                let a = algebra(&target)?;
                let c = holds_quasi_algebra(&a, &q)?;
                let w = c.witness.as_ref().map(|w| named(&a, w));
                (a.name.clone(), c.holds, w)
            };
            let body = json!({ "input": quasi, "in": name, "holds": holds, "witness": witness });
            let human = match (&witness, holds) {
                (Some(w), _) => format!("fails in {name} at {}\n", render_assignment(w)),
                (None, true) => format!("holds in {name}\n"),
                (None, false) => format!("fails in {name}\n"),
            };
            o.emit("model", body, &human, start.elapsed())
        }
        ModelCommand::Export { algebra: spec } => {
            let a = algebra(&spec)?;
            let tables = serde_json::to_value(&a).expect("algebras serialize");
            let human = format!(
                "{}\n",
                serde_json::to_string_pretty(&a).expect("algebras serialize")
            );
            o.emit(
                "model",
                json!({ "algebra": tables }),
                &human,
                start.elapsed(),
            )
        }
    }
}

fn gen(args: GenArgs, o: &mut Output, start: Instant) -> Result<()> {
    let kind = match (args.kind, args.signature) {
        (Some(k), Some(s)) if k.signature() != s => {
            return Err(Error::Domain(format!(
                "kind {} produces {} statements, not {s}",
                k.name(),
                k.signature()
            )));
        }
        (Some(k), _) => k,
        (None, Some(s)) => default_kind(s),
        (None, None) => Kind::Simple,
    };
    let params = GenParams::new(kind, args.vars, args.joinands, args.max_len, args.count);
    let text = generate_corpus(args.seed, &params)?;
    if let Some(path) = &args.out {
        std::fs::write(path, &text).map_err(io_error)?;
    }
    if o.json {
        let statements: Vec<String> = generate(args.seed, &params)?
            .iter()
            .map(|s| s.to_string())
            .collect();
        let body = json!({
            "seed": args.seed,
            "signature": kind.signature(),
            "params": params,
            "path": args.out,
            "statements": statements,
        });
        o.emit("gen", body, "", start.elapsed())
    } else if let Some(path) = &args.out {
        let human = format!("wrote {} statements to {}\n", args.count, path.display());
        o.emit("gen", Value::Null, &human, start.elapsed())
    } else {
        o.emit("gen", Value::Null, &text, start.elapsed())
    }
}

fn render_diagram(d: &Diagram) -> String {
    let mut s = format!("diagram: {} points, base {}\n", d.points, d.base);
    for (v, pairs) in &d.maps {
        let ps: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        s.push_str(&format!("  {v}: {}\n", ps.join(" ")));
    }
    for t in &d.traces {
        let ps: Vec<String> = t.iter().map(|p| p.to_string()).collect();
        s.push_str(&format!("  trace {}\n", ps.join(" ")));
    }
    s
}

fn render_certificate(c: &Certificate) -> String {
    match c {
        Certificate::Diagram { target, diagram } => {
            format!("refutes {target}\n{}", render_diagram(diagram))
        }
        Certificate::Integer { assignment } => {
            let parts: Vec<String> = assignment
                .iter()
                .map(|(v, n)| format!("{v} = {n}"))
                .collect();
            format!("fails in (Z, max, +) at {}\n", parts.join(", "))
        }
        Certificate::BooleanZero { zeros } => {
            let zs: Vec<String> = zeros.iter().map(|v| v.to_string()).collect();
            format!(
                "fails in {{0, e}} with 0 at [{}], e elsewhere\n",
                zs.join(", ")
            )
        }
        Certificate::ZeroPadded { zeros, inner } => {
            let zs: Vec<String> = zeros.iter().map(|v| v.to_string()).collect();
            format!(
                "with 0 at [{}]: {}",
                zs.join(", "),
                render_certificate(inner)
            )
        }
    }
}

fn render_verdict(v: &Verdict) -> String {
    let mut s = format!(
        "{} (nodes {}, subproblems {})\n",
        v.status, v.stats.nodes, v.stats.subproblems
    );
    if let Some(c) = &v.certificate {
        s.push_str(&render_certificate(c));
    }
    s
}

fn render_order(v: &OrderVerdict) -> String {
    let ws: Vec<String> = v.reduced_words.iter().map(|w| w.to_string()).collect();
    let mut s = format!(
        "{} (words {}; nodes {})\n",
        if v.exists { "exists" } else { "does not exist" },
        ws.join(", "),
        v.stats.nodes
    );
    if let Some(d) = &v.certificate {
        s.push_str(&render_diagram(d));
    }
    s
}

/// Re-verify the certificate in a `decide` record against its statement.
pub fn check_decide_record(rec: &RunRecord) -> std::result::Result<(), String> {
    let field = |k: &str| rec.get(k).cloned().ok_or_else(|| format!("missing `{k}`"));
    let class: Class = serde_json::from_value(field("class")?).map_err(|e| e.to_string())?;
    let input: String = serde_json::from_value(field("input")?).map_err(|e| e.to_string())?;
    let st = parse_statement(&input, class.signature()).map_err(|e| e.to_string())?;
    match serde_json::from_value::<Option<Certificate>>(field("certificate")?)
        .map_err(|e| e.to_string())?
    {
        Some(c) => verify_certificate(&st, class, &c),
        None => Ok(()),
    }
}
