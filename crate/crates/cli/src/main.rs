//! `opetope`: enumerate opetopes by either route, run the bounded checks, and
//! slice user presentations.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use opetope::opetope::{
    bd_opetopes, check_opetope_equivalence, count_table, count_table_text, leinster_monad, leinster_opetopes,
    OpetopeSet,
};
use opetope::polymonad::{
    check_cartesian, check_monad_laws, check_suitable, CartesianConfig, FreeMonoid, IdentityMonad, LawConfig,
    PolyMonad, SignatureMonad, SuitableConfig,
};
use opetope::report::Report;
use opetope::symcat::{
    check_axioms, check_comb, iterated_slice, slice, the_multicat_i, AxiomCheckConfig, Presentation, SymMulticat,
};
use opetope::zeta::{comparison_iso, zeta_obj};

#[derive(Parser)]
#[command(
    name = "opetope",
    version,
    about = "Opetopes by iterated slicing and by free operads"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List opetope codes of one dimension, or a table of counts.
    Enumerate(EnumerateArgs),
    /// Run a bounded check and print a report.
    Check(CheckArgs),
    /// Slice a presentation and list the result.
    Slice(SliceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Bd,
    Leinster,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    /// Unit and associativity laws of a monad.
    Laws,
    /// Naturality squares of unit and multiplication are pullbacks; T
    /// preserves pullbacks.
    Cartesian,
    /// Colimits of injective chains and coproduct stability.
    Suitable,
    /// Symmetric multicategory axioms of a presentation sliced --dim times.
    Axioms,
    /// The comparison between ζ(Q)' and ζ(Q+).
    Iso,
    /// Agreement of the two opetope routes in dimension --dim.
    Equiv,
    /// Combing preserves the evaluation of random configurations.
    Comb,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 4)]
    max_size: usize,
    #[arg(long, value_enum, default_value_t = Route::Bd)]
    route: Route,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
    /// Print counts by size for every dimension up to --dim instead of codes.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    kind: CheckKind,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Size bound; each check has its own default.
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Presentation file; the multicategory I when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// identity, free-monoid, zeta (of I sliced --dim times), tower (T_dim),
    /// or a signature file.
    #[arg(long, default_value = "identity")]
    monad: String,
}

#[derive(Args)]
struct SliceArgs {
    /// Presentation file; the multicategory I when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Number of times to slice.
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// Exit 2: bad usage or unreadable input. Exit 1: a check failed.
enum Failure {
    Usage(String),
    Check(String),
}

fn main() -> ExitCode {
    if let Ok(n) = std::env::var("OPETOPE_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: OPETOPE_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate(a) => enumerate(&a),
        Command::Check(a) => check(&a),
        Command::Slice(a) => slice_cmd(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("{}", msg);
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn internal<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Check(format!("error: {}", e))
}

#[derive(Serialize)]
struct RouteSet<'a> {
    route: &'static str,
    #[serde(flatten)]
    set: &'a OpetopeSet,
}

fn enumerate(a: &EnumerateArgs) -> Result<(), Failure> {
    if a.table {
        let rows = count_table(a.dim, a.max_size).map_err(internal)?;
        let out = match a.format {
            Format::Json => json(&rows),
            Format::Ascii => count_table_text(&rows),
        };
        print!("{}", out);
        return if rows.iter().all(|r| r.bd == r.leinster) {
            Ok(())
        } else {
            Err(Failure::Check("routes disagree".into()))
        };
    }
    let bd = || bd_opetopes(a.dim, a.max_size).map_err(internal);
    let le = || leinster_opetopes(a.dim, a.max_size).map_err(internal);
    match a.route {
        Route::Bd => print_set(&bd()?, a.format),
        Route::Leinster => print_set(&le()?, a.format),
        Route::Both => {
            let (x, y) = (bd()?, le()?);
            match a.format {
                Format::Json => print!(
                    "{}",
                    json(&[
                        RouteSet { route: "bd", set: &x },
                        RouteSet {
                            route: "leinster",
                            set: &y
                        }
                    ])
                ),
                Format::Ascii => print!("# bd\n{}# leinster\n{}", x.to_text(), y.to_text()),
            }
            if x.codes != y.codes {
                return Err(Failure::Check("routes disagree".into()));
            }
        }
    }
    Ok(())
}

fn print_set(s: &OpetopeSet, format: Format) {
    match format {
        Format::Json => print!("{}", json(s)),
        Format::Ascii => print!("{}", s.to_text()),
    }
}

fn load_presentation(input: &Option<PathBuf>) -> Result<Arc<dyn SymMulticat>, String> {
    match input {
        None => Ok(Arc::new(the_multicat_i())),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {}", p.display(), e))?;
            let q = Presentation::from_json(&text).map_err(|e| format!("{}: {}", p.display(), e))?;
            Ok(Arc::new(q))
        }
    }
}

fn load_monad(name: &str, dim: usize) -> Result<Arc<dyn PolyMonad>, Failure> {
    Ok(match name {
        "identity" => Arc::new(IdentityMonad::on_point()),
        "free-monoid" => Arc::new(FreeMonoid),
        "tower" => leinster_monad(dim),
        "zeta" => {
            let q = iterated_slice(Arc::new(the_multicat_i()), dim).map_err(internal)?;
            zeta_obj(q).map_err(internal)?.monad
        }
        path => Arc::new(SignatureMonad::load(Path::new(path)).map_err(|e| Failure::Usage(e.to_string()))?),
    })
}

fn print_report<T: Serialize>(value: &T, report: &Report, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => print!("{}", json(value)),
        Format::Ascii => {
            println!("{}", report.name);
            for c in &report.checks {
                println!(
                    "{} {} ({} cases)",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.cases
                );
                for w in &c.counterexamples {
                    println!("    {}", w);
                }
            }
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(String::new()))
    }
}

fn check(a: &CheckArgs) -> Result<(), Failure> {
    match a.kind {
        CheckKind::Laws => {
            let m = load_monad(&a.monad, a.dim)?;
            let n = a.max_size.unwrap_or(4);
            let cfg = LawConfig {
                exhaustive_size: n,
                random_size: n + 2,
                trials: a.trials,
                seed: a.seed,
            };
            let r = check_monad_laws(m.as_ref(), &cfg);
            print_report(&r, &r, a.format)
        }
        CheckKind::Cartesian => {
            let m = load_monad(&a.monad, a.dim)?;
            let n = a.max_size.unwrap_or(2);
            let cfg = CartesianConfig {
                op_bound: n,
                inner_bound: n,
                trials: a.trials,
                seed: a.seed,
                ..CartesianConfig::default()
            };
            let r = check_cartesian(m.as_ref(), &cfg);
            print_report(&r, &r, a.format)
        }
        CheckKind::Suitable => {
            let m = load_monad(&a.monad, a.dim)?;
            let cfg = SuitableConfig {
                op_bound: a.max_size.unwrap_or(3),
                trials: a.trials,
                seed: a.seed,
                ..SuitableConfig::default()
            };
            let r = check_suitable(m.as_ref(), &cfg);
            print_report(&r, &r, a.format)
        }
        CheckKind::Axioms => {
            let base = load_presentation(&a.input).map_err(Failure::Usage)?;
            let q = iterated_slice(base, a.dim).map_err(internal)?;
            let cfg = AxiomCheckConfig {
                exhaustive_size: a.max_size.unwrap_or(4),
                trials: a.trials,
                seed: a.seed,
                ..AxiomCheckConfig::default()
            };
            let r = check_axioms(q.as_ref(), &cfg);
            print_report(&r, &r, a.format)
        }
        CheckKind::Iso => {
            let base = load_presentation(&a.input).map_err(Failure::Usage)?;
            let q = iterated_slice(base, a.dim).map_err(internal)?;
            let r = comparison_iso(q, a.max_size.unwrap_or(6));
            print_report(&r, &r, a.format)
        }
        CheckKind::Equiv => {
            let e = check_opetope_equivalence(a.dim, a.max_size.unwrap_or(6));
            print_report(&e, &e.report, a.format)
        }
        CheckKind::Comb => {
            let base = load_presentation(&a.input).map_err(Failure::Usage)?;
            let q = iterated_slice(base, a.dim).map_err(internal)?;
            let mut r = Report::new(&format!("combing in {}", q.name()));
            r.push(check_comb(q.as_ref(), a.trials, a.max_size.unwrap_or(5), 2, a.seed));
            print_report(&r, &r, a.format)
        }
    }
}

#[derive(Serialize)]
struct Listing {
    name: String,
    objects: Vec<String>,
    arrows: Vec<ListedArrow>,
}

#[derive(Serialize)]
struct ListedArrow {
    code: String,
    source: Vec<String>,
    target: String,
    size: usize,
}

fn slice_cmd(a: &SliceArgs) -> Result<(), Failure> {
    let base = load_presentation(&a.input).map_err(|e| Failure::Check(format!("error: {}", e)))?;
    if let Some((f, perm)) = base.free_action_witness() {
        return Err(Failure::Check(format!(
            "error: {} is not tidy: {} is fixed by {}",
            base.name(),
            f,
            perm
        )));
    }
    let cfg = AxiomCheckConfig {
        exhaustive_size: 3,
        random_size: 4,
        trials: 100,
        seed: 0,
    };
    let axioms = check_axioms(base.as_ref(), &cfg);
    if !axioms.passed() {
        let first = axioms
            .failures()
            .next()
            .map(|c| format!("{}: {:?}", c.name, c.counterexamples))
            .unwrap_or_default();
        return Err(Failure::Check(format!(
            "error: {} fails the axioms: {}",
            base.name(),
            first
        )));
    }
    let mut q = base;
    for _ in 0..a.dim {
        q = Arc::new(slice(q).map_err(internal)?);
    }
    let listing = listing(q.as_ref(), a.max_size).map_err(internal)?;
    match a.format {
        Format::Json => print!("{}", json(&listing)),
        Format::Ascii => {
            println!("# objects");
            for o in &listing.objects {
                println!("{}", o);
            }
            println!("# arrows");
            for f in &listing.arrows {
                let source = if f.source.is_empty() {
                    "()".to_string()
                } else {
                    f.source.join(", ")
                };
                println!("{} : {} -> {} (size {})", f.code, source, f.target, f.size);
            }
        }
    }
    Ok(())
}

fn listing(q: &dyn SymMulticat, max_size: usize) -> Result<Listing, opetope::symcat::SymcatError> {
    let mut objects = Vec::new();
    for x in q.objects(max_size)? {
        objects.push(q.encode_object(&x)?);
    }
    objects.sort_by(|a, b| a.canonical_cmp(b));
    let mut arrows = Vec::new();
    for f in q.planar_arrows(max_size)? {
        let code = q.encode_arrow(&f)?;
        let source = q
            .source(&f)?
            .iter()
            .map(|s| q.encode_object(s).map(|c| c.to_string()))
            .collect::<Result<_, _>>()?;
        arrows.push((
            code.clone(),
            ListedArrow {
                code: code.to_string(),
                source,
                target: q.encode_object(&q.target(&f)?)?.to_string(),
                size: q.size(&f)?,
            },
        ));
    }
    arrows.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Listing {
        name: q.name(),
        objects: objects.iter().map(|c| c.to_string()).collect(),
        arrows: arrows.into_iter().map(|(_, a)| a).collect(),
    })
}
