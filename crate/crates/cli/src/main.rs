use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wpolab_core::bound_ops::theta;
use wpolab_core::construct::{
    aligned_chain, decompinver_witness, extend_realizer, minoration_witness, mixing_poset,
    prefix_audit, sierpinskisation, LazyPoset,
};
use wpolab_core::harness::{run_suite_with, SUITES};
use wpolab_core::io::{to_dot, PosetFile};
use wpolab_core::poset::{embeds, intersect, FinPoset};
use wpolab_core::term::PosetTerm;
use wpolab_core::{theta_plus, theta_tilde, CnfOrdinal, Error, KOrdinal};

#[derive(Parser)]
#[command(
    name = "wpolab",
    version,
    about = "Ordinals, well-partial-order lengths and realizer constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinal arithmetic on canonical forms like `w^2*3+w+1` or `W1*(2)+(w)`.
    Ord {
        op: OrdOp,
        a: String,
        /// Second operand; not used by `hartog`.
        b: Option<String>,
    },
    /// The bound on lengths of intersections of well orders of the given types.
    Theta {
        #[arg(required = true, num_args = 1..)]
        args: Vec<String>,
        #[arg(long, value_enum, default_value_t = ThetaOp::Plus)]
        op: ThetaOp,
    },
    /// Finite posets given as files (`@path` or an existing path) or terms.
    Poset {
        #[command(subcommand)]
        command: PosetCommand,
    },
    /// Export a prefix of a construction.
    Construct(ConstructArgs),
    /// Run a verification suite.
    Verify {
        /// A suite name, or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        cases: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        /// Print the reports as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrdOp {
    Add,
    Mul,
    Nadd,
    Nmul,
    Div,
    Sub,
    Hartog,
    Cmp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaOp {
    Plus,
    Tilde,
    Theta,
}

#[derive(Subcommand)]
enum PosetCommand {
    /// The length: exact for terms, by recursion for finite posets.
    Len {
        input: String,
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Height and size of the tree of bad sequences.
    Badtree {
        input: String,
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// The intersection of two posets on the same vertices.
    Intersect {
        a: String,
        b: String,
        #[arg(long)]
        prefix: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether the first poset embeds into the second; exits 1 when it does not.
    Embeds {
        a: String,
        b: String,
        #[arg(long)]
        prefix: Option<usize>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    kind: Kind,
    /// Ordinal parameters: one for `sierp`, two for the others except
    /// `decompinver`, which takes blocks `A:B`.
    #[arg(required = true, num_args = 1..)]
    params: Vec<String>,
    #[arg(long)]
    prefix: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Poset to extend: `chain:N`, `sierp:A`, `mixing:A,B` or `minoration:A,B`.
    #[arg(long, default_value = "chain:0")]
    base: String,
    /// Audit the prefix and exit 1 when a check fails.
    #[arg(long)]
    audit: bool,
    /// Section window `A,B` for mixing audits.
    #[arg(long, value_parser = parse_window)]
    window: Option<(u64, u64)>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Sierp,
    Mixing,
    Decompinver,
    Minoration,
    Extend,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::NonCanonical { .. }
            | Error::BadOrdinal { .. }
            | Error::Format(_)
            | Error::Io(_)
            | Error::UnknownSuite(_)
            | Error::Cycle { .. }
            | Error::VertexOutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_window(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or("expected A,B")?;
    Ok((
        a.trim().parse().map_err(|e| format!("{e}"))?,
        b.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

fn kord(s: &str) -> Result<KOrdinal, Failure> {
    Ok(s.parse()?)
}

fn countable(s: &str) -> Result<CnfOrdinal, Failure> {
    kord(s)?
        .as_countable()
        .ok_or_else(|| usage(format!("`{s}` must be countable here")))
}

fn second(b: Option<String>, op: &str) -> Result<String, Failure> {
    b.ok_or_else(|| usage(format!("`ord {op}` takes two operands")))
}

fn ord(op: OrdOp, a: &str, b: Option<String>) -> Outcome {
    let out = match op {
        OrdOp::Hartog => {
            if b.is_some() {
                return Err(usage("`ord hartog` takes one operand"));
            }
            kord(a)?.hartog()?.to_string()
        }
        OrdOp::Add => kord(a)?.add(&kord(&second(b, "add")?)?).to_string(),
        OrdOp::Nadd => kord(a)?.nat_add(&kord(&second(b, "nadd")?)?).to_string(),
        OrdOp::Cmp => {
            let (x, y) = (kord(a)?, kord(&second(b, "cmp")?)?);
            match x.cmp(&y) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            }
            .to_string()
        }
        OrdOp::Mul => countable(a)?
            .mul(&countable(&second(b, "mul")?)?)
            .to_string(),
        OrdOp::Nmul => countable(a)?
            .nat_mul(&countable(&second(b, "nmul")?)?)
            .to_string(),
        OrdOp::Sub => countable(a)?
            .left_subtract(&countable(&second(b, "sub")?)?)?
            .to_string(),
        OrdOp::Div => {
            let d = kord(&second(b, "div")?)?;
            let (q, r) = match d.as_countable() {
                Some(d) => {
                    let (q, r) = countable(a)?.euclid_div(&d)?;
                    (q, KOrdinal::from(r))
                }
                None if d.is_initial() => kord(a)?.div_cardinal(d.level())?,
                None => return Err(usage("uncountable divisors must be cardinals W<k>")),
            };
            format!("{q} {r}")
        }
    };
    println!("{out}");
    Ok(())
}

fn theta_cmd(args: &[String], op: ThetaOp) -> Outcome {
    let args = args
        .iter()
        .map(|s| kord(s))
        .collect::<Result<Vec<_>, _>>()?;
    let v = match op {
        ThetaOp::Plus => theta_plus(&args)?,
        ThetaOp::Tilde => theta_tilde(&args)?,
        ThetaOp::Theta => theta(&args)?,
    };
    println!("{v}");
    Ok(())
}

/// A poset argument: a file, or a term denoted in full or up to `prefix`.
enum Input {
    File(PosetFile),
    Term(PosetTerm),
}

fn input(arg: &str) -> Result<Input, Failure> {
    if let Some(path) = arg.strip_prefix('@') {
        return Ok(Input::File(PosetFile::load(path)?));
    }
    if Path::new(arg).is_file() {
        return Ok(Input::File(PosetFile::load(arg)?));
    }
    Ok(Input::Term(arg.parse()?))
}

fn finite(arg: &str, prefix: Option<usize>) -> Result<(FinPoset, Option<Vec<String>>), Failure> {
    match input(arg)? {
        Input::File(f) => Ok((f.to_poset()?, f.labels())),
        Input::Term(t) => {
            let budget = match (t.size(), prefix) {
                (_, Some(n)) => n,
                (Some(n), None) => usize::try_from(n).map_err(|_| usage("term too large"))?,
                (None, None) => return Err(usage(format!("`{t}` is infinite; pass --prefix N"))),
            };
            Ok((t.denote_prefix(budget), None))
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(p: &FinPoset, file: PosetFile, labels: Option<&[String]>, format: Format) -> String {
    match format {
        Format::Json => file.to_json() + "\n",
        Format::Dot => to_dot(p, labels),
    }
}

fn poset(cmd: PosetCommand) -> Outcome {
    match cmd {
        PosetCommand::Len { input: arg, prefix } => match (input(&arg)?, prefix) {
            (Input::Term(t), None) => println!("{}", t.length()),
            _ => println!("{}", finite(&arg, prefix)?.0.length_recursive()?),
        },
        PosetCommand::Badtree { input, prefix } => {
            let tree = finite(&input, prefix)?.0.bad_tree();
            println!("height {} nodes {}", tree.height(), tree.node_count());
        }
        PosetCommand::Intersect {
            a,
            b,
            prefix,
            format,
            out,
        } => {
            let (p, q) = (finite(&a, prefix)?.0, finite(&b, prefix)?.0);
            let i = intersect(&p, &q)?;
            emit(
                &render(&i, PosetFile::from_poset(&i), None, format),
                out.as_deref(),
            )?;
        }
        PosetCommand::Embeds { a, b, prefix } => {
            let (p, q) = (finite(&a, prefix)?.0, finite(&b, prefix)?.0);
            if embeds(&p, &q) {
                println!("yes");
            } else {
                println!("no");
                return Err(Failure::Check(String::new()));
            }
        }
    }
    Ok(())
}

fn pair(params: &[String], what: &str) -> Result<(CnfOrdinal, CnfOrdinal), Failure> {
    match params {
        [a, b] => Ok((countable(a)?, countable(b)?)),
        _ => Err(usage(format!("`{what}` takes two ordinals"))),
    }
}

fn base(desc: &str) -> Result<LazyPoset, Failure> {
    let (kind, rest) = desc
        .split_once(':')
        .ok_or_else(|| usage("--base expects KIND:PARAMS"))?;
    let params: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
    Ok(match kind {
        "chain" => aligned_chain(
            rest.parse()
                .map_err(|_| usage(format!("bad chain size `{rest}`")))?,
        ),
        "sierp" => sierpinskisation(&countable(rest)?)?,
        "mixing" => {
            let (a, b) = pair(&params, "mixing")?;
            mixing_poset(&a, &b)?
        }
        "minoration" => {
            let (a, b) = pair(&params, "minoration")?;
            minoration_witness(&a, &b)?
        }
        _ => return Err(usage(format!("unknown base `{kind}`"))),
    })
}

fn construct(args: ConstructArgs) -> Outcome {
    let p = match args.kind {
        Kind::Sierp => match args.params.as_slice() {
            [a] => sierpinskisation(&countable(a)?)?,
            _ => return Err(usage("`sierp` takes one ordinal")),
        },
        Kind::Mixing => {
            let (a, b) = pair(&args.params, "mixing")?;
            mixing_poset(&a, &b)?
        }
        Kind::Minoration => {
            let (a, b) = pair(&args.params, "minoration")?;
            minoration_witness(&a, &b)?
        }
        Kind::Extend => {
            let (a, b) = pair(&args.params, "extend")?;
            extend_realizer(&base(&args.base)?, &a, &b)?
        }
        Kind::Decompinver => {
            let blocks = args
                .params
                .iter()
                .map(|s| {
                    let (a, b) = s
                        .split_once(':')
                        .ok_or_else(|| usage(format!("block `{s}` is not A:B")))?;
                    Ok((countable(a)?, countable(b)?))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            decompinver_witness(&blocks)?
        }
    };
    let prefix = p.prefix(args.prefix);
    let fin = prefix.poset()?;
    let file = PosetFile::from_prefix(&p, &prefix)?;
    let labels = file.labels();
    emit(
        &render(&fin, file, labels.as_deref(), args.format),
        args.out.as_deref(),
    )?;
    if args.audit {
        let report = prefix_audit(&p, args.prefix, args.window);
        for c in &report.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            eprintln!(
                "{status} {}{}",
                c.name,
                c.witness
                    .as_deref()
                    .map(|w| format!(": {w}"))
                    .unwrap_or_default()
            );
        }
        if !report.passed() {
            return Err(Failure::Check(format!(
                "{} audit failed at {}",
                report.construction, report.prefix
            )));
        }
    }
    Ok(())
}

fn verify(suite: &str, cases: u64, seed: u64, jobs: Option<usize>, json: bool) -> Outcome {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![suite]
    };
    let mut failed = false;
    for name in names {
        let report = run_suite_with(name, cases, seed, jobs)?;
        if json {
            println!("{}", report.to_json());
        } else {
            println!("{report}");
            for f in &report.failures {
                println!("  {}: expected {}, got {}", f.input, f.expected, f.actual);
            }
        }
        failed |= !report.passed();
    }
    if failed {
        Err(Failure::Check(String::new()))
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Ord { op, a, b } => ord(op, &a, b),
        Command::Theta { args, op } => theta_cmd(&args, op),
        Command::Poset { command } => poset(command),
        Command::Construct(args) => construct(args),
        Command::Verify {
            suite,
            cases,
            seed,
            jobs,
            json,
        } => verify(&suite, cases, seed, jobs, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
