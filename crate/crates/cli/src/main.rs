//! `ggroup`: load, generate, construct, classify and verify finite
//! generalized groups from the command line.
//!
//! Exit codes: 0 success, 1 the computation ran and the property is false or
//! a counterexample was found, 2 usage or input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Parser, Subcommand};
use ggroup::ledger::{verify_enumerate, verify_on};
use ggroup::{
    bol_product, certify, check_property, classify_bol, direct_product, enumerate_gg, enumerate_gsubgroups,
    enumerate_homomorphisms, find_isomorphism, gen_group, gen_rees, gen_zero, internal_dp, is_monomorphism, kernel_at,
    parse_magma, quotient, search_counterexample, subgroup_test, Criterion, Error, Family, GGCertificate, Morphism,
    Property, ReesSpec, Side, Subset, TheoremId, VerificationReport,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ggroup", version, about = "Finite generalized groups as Cayley tables")]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sampling order (currently every command is exhaustive).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Abort with exit code 2 after this many seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    time_limit: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a structure and certify it, or check one table property.
    Check {
        file: PathBuf,
        #[arg(long)]
        property: Option<String>,
    },
    /// Generate structures.
    Generate {
        #[command(subcommand)]
        what: Generate,
        /// Output file (a directory for `enumerate`).
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Build a new structure from existing ones.
    Construct {
        #[command(subcommand)]
        what: Construct,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Classify a table on the groupoid / quasigroup / Bol lattice.
    Classify { file: PathBuf },
    /// List generalized subgroups.
    Subgroups {
        file: PathBuf,
        /// Only those stable under conjugation.
        #[arg(long)]
        normal: bool,
    },
    /// List homomorphisms G → H.
    Homs {
        g: PathBuf,
        h: PathBuf,
        /// Only injective ones.
        #[arg(long)]
        mono: bool,
        #[command(subcommand)]
        action: Option<HomsAction>,
    },
    /// Evaluate a theorem on given structures or on the whole enumeration.
    Verify {
        theorem: String,
        #[arg(long, num_args = 1.., conflicts_with = "enumerate", required_unless_present = "enumerate")]
        on: Vec<PathBuf>,
        #[arg(long, value_name = "MAX_ORDER")]
        enumerate: Option<usize>,
    },
    /// Exhaustive counterexample search.
    Search {
        theorem: String,
        #[arg(long)]
        max_order: usize,
    },
    /// Find an isomorphism A → B.
    Iso { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum Generate {
    /// A classical group: cyclic, dihedral, symmetric or klein.
    Group { family: String, n: usize },
    /// Left or right zero semigroup.
    Zero { side: String, n: usize },
    /// Rees matrix structure over a group.
    Rees {
        /// A structure file or `family:n`.
        #[arg(long)]
        group: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        l: usize,
        /// Rows separated by `/`, entries by `,`, e.g. `0,0/0,1`.
        #[arg(long)]
        sandwich: String,
    },
    /// Every structure up to the given order.
    Enumerate { max_order: usize },
}

#[derive(Subcommand)]
enum Construct {
    Product {
        a: PathBuf,
        b: PathBuf,
    },
    Quotient {
        g: PathBuf,
        #[arg(long)]
        subgroup: String,
    },
    InternalDp {
        g: PathBuf,
        #[arg(long)]
        n: String,
        #[arg(long)]
        h: String,
    },
    Bol {
        g: PathBuf,
        #[arg(long)]
        subgroup: String,
    },
}

#[derive(Subcommand)]
enum HomsAction {
    /// The kernel at a point of every listed homomorphism.
    Kernel {
        #[arg(long)]
        at: usize,
    },
}

/// A finished command: everything it prints, and its exit code.
struct Outcome {
    stdout: String,
    stderr: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn with_code(mut self, false_or_counterexample: bool) -> Self {
        if false_or_counterexample {
            self.code = 1;
        }
        self
    }

    fn note(mut self, line: impl AsRef<str>) -> Self {
        self.stderr.push_str(line.as_ref());
        self.stderr.push('\n');
        self
    }
}

/// Mathematical failures exit with 1, everything else with 2.
fn failure(e: &Error) -> Outcome {
    let code = match e {
        Error::NotHomomorphism(_)
        | Error::NotNormal(_)
        | Error::IllDefined(_)
        | Error::CertificationFailed(_)
        | Error::NotSubgroup(_)
        | Error::NotGroupSubset(_)
        | Error::HypothesisFailed { .. }
        | Error::ConclusionFailed(_) => 1,
        _ => 2,
    };
    Outcome { stdout: String::new(), stderr: format!("ggroup: {e}\n"), code }
}

type Run = Result<Outcome, Error>;

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::MalformedDocument(format!("{}: {e}", path.display())))
}

/// Loads and certifies a structure; a table that is not a generalized group
/// is an input error here.
fn load(path: &Path) -> Result<GGCertificate, Error> {
    let m = parse_magma(&read(path)?)?;
    certify(m).map_err(|d| Error::UnsupportedParameter(format!("{} is not a generalized group: {d}", path.display())))
}

fn parse_indices(order: usize, text: &str) -> Result<Subset, Error> {
    let members = text
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::UnsupportedParameter(format!("bad index {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Subset::with_order(order, members)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn theorem(id: &str) -> Result<TheoremId, Error> {
    id.parse()
}

fn write_or_print(output: Option<&Path>, document: String) -> Run {
    match output {
        None => Ok(Outcome::ok(document)),
        Some(path) => {
            std::fs::write(path, document)
                .map_err(|e| Error::UnsupportedParameter(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()).note(format!("wrote {}", path.display())))
        }
    }
}

fn run(cli: Cli) -> Run {
    let json = cli.json;
    match cli.command {
        Command::Check { file, property } => check(&file, property.as_deref(), json),
        Command::Generate { what, output } => generate(what, output.as_deref(), json),
        Command::Construct { what, output } => construct(what, output.as_deref()),
        Command::Classify { file } => classify(&file, json),
        Command::Subgroups { file, normal } => subgroups(&file, normal, json),
        Command::Homs { g, h, mono, action } => homs(&g, &h, mono, action, json),
        Command::Verify { theorem: id, on, enumerate } => verify(theorem(&id)?, &on, enumerate, json),
        Command::Search { theorem: id, max_order } => search(theorem(&id)?, max_order, json),
        Command::Iso { a, b } => iso(&a, &b, json),
    }
}

fn check(file: &Path, property: Option<&str>, json: bool) -> Run {
    let m = parse_magma(&read(file)?)?;
    if let Some(p) = property {
        let p: Property = p.parse()?;
        let r = check_property(&m, p);
        let out = if json {
            pretty(&json!({ "property": p.as_str(), "result": r }))
        } else {
            match &r.witness {
                Some(w) if !r.holds => format!("{}: fails ({w})\n", p.as_str()),
                Some(w) => format!("{}: holds ({w})\n", p.as_str()),
                None => format!("{}: holds\n", p.as_str()),
            }
        };
        return Ok(Outcome::ok(out).with_code(!r.holds));
    }
    match certify(m) {
        Ok(c) => Ok(Outcome::ok(if json { c.to_document() } else { describe(&c) })),
        Err(d) => {
            let out = if json {
                pretty(&json!({ "certified": false, "diagnostic": d }))
            } else {
                format!("not a generalized group: {d}\n")
            };
            Ok(Outcome::ok(out).with_code(true))
        }
    }
}

fn describe(c: &GGCertificate) -> String {
    let f = c.flags();
    let flags: Vec<&str> = [
        (f.normal, "normal"),
        (f.idempotent, "idempotent"),
        (f.abelian, "abelian"),
        (f.cancellative, "cancellative"),
        (c.is_group(), "group"),
    ]
    .into_iter()
    .filter_map(|(b, s)| b.then_some(s))
    .collect();
    let labels = |v: &[usize]| v.iter().map(|&x| c.base().label(x)).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    writeln!(s, "{}: generalized group of order {}", c.name(), c.order()).unwrap();
    writeln!(s, "flags: {}", if flags.is_empty() { "none".into() } else { flags.join(" ") }).unwrap();
    writeln!(s, "elements: {}", c.base().elements().join(" ")).unwrap();
    writeln!(s, "e: {}", labels(c.e_map())).unwrap();
    writeln!(s, "inv: {}", labels(c.inv_map())).unwrap();
    s
}

fn generate(what: Generate, output: Option<&Path>, json: bool) -> Run {
    let cert = match what {
        Generate::Group { family, n } => gen_group(family.parse()?, n)?,
        Generate::Zero { side, n } => gen_zero(side.parse::<Side>()?, n)?,
        Generate::Rees { group, i, l, sandwich } => {
            let g = match group.split_once(':') {
                Some((family, n)) if !Path::new(&group).exists() => {
                    let n = n.parse().map_err(|_| Error::UnsupportedParameter(format!("bad order in {group:?}")))?;
                    gen_group(family.parse::<Family>()?, n)?
                }
                _ => load(Path::new(&group))?,
            };
            let rows = sandwich
                .split('/')
                .map(|row| {
                    row.split(',')
                        .map(|t| {
                            t.trim()
                                .parse()
                                .map_err(|_| Error::UnsupportedParameter(format!("bad sandwich entry {t:?}")))
                        })
                        .collect()
                })
                .collect::<Result<Vec<Vec<usize>>, Error>>()?;
            gen_rees(&ReesSpec::new(g, i, l, rows)?)?
        }
        Generate::Enumerate { max_order } => return enumerate(max_order, output, json),
    };
    write_or_print(output, cert.to_document())
}

fn enumerate(max_order: usize, output: Option<&Path>, json: bool) -> Run {
    let all = enumerate_gg(max_order)?;
    if let Some(dir) = output {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::UnsupportedParameter(format!("cannot create {}: {e}", dir.display())))?;
        let mut listing = String::new();
        for (k, c) in all.iter().enumerate() {
            let path = dir.join(format!("{k:03}.json"));
            std::fs::write(&path, c.to_document())
                .map_err(|e| Error::UnsupportedParameter(format!("cannot write {}: {e}", path.display())))?;
            writeln!(listing, "{}\t{}", path.display(), c.name()).unwrap();
        }
        return Ok(Outcome::ok(listing));
    }
    if json {
        let docs: Vec<Value> = all.iter().map(|c| serde_json::from_str(&c.to_document()).unwrap()).collect();
        return Ok(Outcome::ok(pretty(&Value::Array(docs))));
    }
    let mut s = String::new();
    for c in &all {
        let f = c.flags();
        writeln!(
            s,
            "{}\torder {}\tabelian={} normal={} idempotent={}",
            c.name(),
            c.order(),
            f.abelian,
            f.normal,
            f.idempotent
        )
        .unwrap();
    }
    Ok(Outcome::ok(s))
}

fn construct(what: Construct, output: Option<&Path>) -> Run {
    match what {
        Construct::Product { a, b } => {
            let (a, b) = (load(&a)?, load(&b)?);
            write_or_print(output, direct_product(&a, &b)?.to_document())
        }
        Construct::Quotient { g, subgroup } => {
            let g = load(&g)?;
            let s = parse_indices(g.order(), &subgroup)?;
            let (q, family) = quotient(&g, &s)?;
            let out = write_or_print(output, q.to_document())?;
            Ok(out.note(format!("cosets partition G: {}", family.partition)))
        }
        Construct::InternalDp { g, n, h } => {
            let g = load(&g)?;
            let (n, h) = (parse_indices(g.order(), &n)?, parse_indices(g.order(), &h)?);
            let dp = internal_dp(&g, &n, &h)?;
            let map: Vec<String> = dp.map.iter().map(usize::to_string).collect();
            let out = write_or_print(output, dp.product.to_document())?;
            Ok(out.note(format!("isomorphism G -> NxH: [{}]", map.join(","))))
        }
        Construct::Bol { g, subgroup } => {
            let g = load(&g)?;
            let s = parse_indices(g.order(), &subgroup)?;
            write_or_print(output, bol_product(&g, &s)?.to_document())
        }
    }
}

fn classify(file: &Path, json: bool) -> Run {
    let m = parse_magma(&read(file)?)?;
    let r = classify_bol(&m)?;
    if json {
        return Ok(Outcome::ok(r.to_document()));
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut s = String::new();
    writeln!(s, "{} (order {}): {}", r.name, r.order, r.classification).unwrap();
    writeln!(s, "associative: {}", yes(r.associative.holds)).unwrap();
    writeln!(s, "right Bol: {}", yes(r.right_bol.holds)).unwrap();
    writeln!(s, "latin square: {}", yes(r.latin_square.holds)).unwrap();
    let left: Vec<&str> = r.left_identities.iter().map(|&x| m.label(x)).collect();
    writeln!(s, "left identities: {}", if left.is_empty() { "none".into() } else { left.join(" ") }).unwrap();
    writeln!(s, "two-sided identity: {}", r.two_sided_identity.map_or("none", |x| m.label(x))).unwrap();
    for w in [&r.associative, &r.right_bol, &r.latin_square]
        .into_iter()
        .filter(|p| !p.holds)
        .filter_map(|p| p.witness.as_ref())
    {
        writeln!(s, "witness: {w}").unwrap();
    }
    Ok(Outcome::ok(s))
}

fn subgroups(file: &Path, normal: bool, json: bool) -> Run {
    let g = load(file)?;
    let mut list = enumerate_gsubgroups(&g, None)?;
    if normal {
        let mut kept = Vec::new();
        for s in list {
            if subgroup_test(&g, &s, Criterion::Normal)?.holds {
                kept.push(s);
            }
        }
        list = kept;
    }
    if json {
        let v: Vec<&[usize]> = list.iter().map(Subset::members).collect();
        return Ok(Outcome::ok(pretty(&json!(v))));
    }
    let mut s = String::new();
    for sub in &list {
        writeln!(s, "{}\t{}", sub.indices(), sub.describe(g.base())).unwrap();
    }
    Ok(Outcome::ok(s))
}

fn homs(g: &Path, h: &Path, mono: bool, action: Option<HomsAction>, json: bool) -> Run {
    let (g, h) = (load(g)?, load(h)?);
    let mut list: Vec<Morphism<'_>> = Vec::new();
    for f in enumerate_homomorphisms(&g, &h)? {
        if !mono || is_monomorphism(&f)?.holds {
            list.push(f);
        }
    }
    let fmt_map = |f: &Morphism<'_>| f.map().iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    match action {
        None if json => {
            let docs: Vec<_> = list.iter().map(Morphism::to_doc).collect();
            Ok(Outcome::ok(pretty(&json!(docs))))
        }
        None => {
            let mut s = String::new();
            for f in &list {
                let m = if is_monomorphism(f)?.holds { "\tmono" } else { "" };
                writeln!(s, "{}{m}", fmt_map(f)).unwrap();
            }
            Ok(Outcome::ok(s))
        }
        Some(HomsAction::Kernel { at }) => {
            if at >= g.order() {
                return Err(Error::IndexOutOfRange { index: at as i64, order: g.order() });
            }
            let mut rows = Vec::new();
            let mut s = String::new();
            for f in &list {
                let k = kernel_at(f, at)?;
                writeln!(s, "{}\t{}", fmt_map(f), k).unwrap();
                rows.push(json!({ "map": f.map(), "kernel": k.members() }));
            }
            Ok(Outcome::ok(if json { pretty(&json!(rows)) } else { s }))
        }
    }
}

fn report_line(r: &VerificationReport) -> String {
    let verdict = match (r.vacuous, r.conclusion_holds) {
        (true, _) => "vacuous".to_string(),
        (false, Some(true)) => "holds".to_string(),
        _ => "FAILS".to_string(),
    };
    let witness =
        r.witness.as_ref().map(|w| format!(" ({:?} on {:?}: {})", w.stage, w.on, w.witness)).unwrap_or_default();
    format!("{} [{}] {verdict}{witness}", r.theorem_id, r.inputs.join(" "))
}

fn verify(id: TheoremId, on: &[PathBuf], enumerate: Option<usize>, json: bool) -> Run {
    let reports = match enumerate {
        Some(max) => verify_enumerate(id, max)?,
        None => {
            let certs = on.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
            verify_on(id, &certs)?
        }
    };
    let failed = reports.iter().any(VerificationReport::is_counterexample);
    let out = if json {
        let docs: Vec<Value> = reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect();
        pretty(&Value::Array(docs))
    } else {
        let mut s = String::new();
        for r in &reports {
            writeln!(s, "{}", report_line(r)).unwrap();
        }
        let non_vacuous = reports.iter().filter(|r| !r.vacuous).count();
        writeln!(
            s,
            "{} instances, {non_vacuous} non-vacuous, {} failing",
            reports.len(),
            reports.iter().filter(|r| r.is_counterexample()).count()
        )
        .unwrap();
        s
    };
    Ok(Outcome::ok(out).with_code(failed))
}

fn search(id: TheoremId, max_order: usize, json: bool) -> Run {
    let s = search_counterexample(id, max_order)?;
    let out = if json {
        s.to_document()
    } else {
        let mut t = String::new();
        writeln!(t, "{id}: {}", id.statement()).unwrap();
        writeln!(
            t,
            "{} structures up to order {}, {} instances, {} non-vacuous ({:.1}%), {} failing",
            s.structures,
            s.structure_order_bound,
            s.instances,
            s.non_vacuous,
            100.0 * s.non_vacuity_rate,
            s.failures
        )
        .unwrap();
        match &s.counterexample {
            Some(r) => writeln!(t, "counterexample: {}", report_line(r)).unwrap(),
            None => writeln!(t, "none found").unwrap(),
        }
        for (note, count) in &s.note_counts {
            writeln!(t, "note: {note} ({count})").unwrap();
        }
        t
    };
    Ok(Outcome::ok(out).with_code(!s.none_found()))
}

fn iso(a: &Path, b: &Path, json: bool) -> Run {
    let (a, b) = (load(a)?, load(b)?);
    let f = find_isomorphism(&a, &b)?;
    let out = match (&f, json) {
        (Some(f), true) => f.to_doc().to_document(),
        (None, true) => "null\n".to_string(),
        (Some(f), false) => {
            let pairs: Vec<String> =
                (0..a.order()).map(|x| format!("{}->{}", a.base().label(x), b.base().label(f.apply(x)))).collect();
            format!("isomorphic: {}\n", pairs.join(" "))
        }
        (None, false) => "not isomorphic\n".to_string(),
    };
    Ok(Outcome::ok(out).with_code(f.is_none()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limit = cli.time_limit;
    let outcome = match limit {
        None => run(cli).unwrap_or_else(|e| failure(&e)),
        Some(secs) if !(secs.is_finite() && secs > 0.0) => failure(&Error::UnsupportedParameter(format!(
            "--time-limit must be a positive number of seconds, got {secs}"
        ))),
        Some(secs) => {
            let (tx, rx) = mpsc::channel();
            std::thread::spawn(move || {
                let _ = tx.send(run(cli).unwrap_or_else(|e| failure(&e)));
            });
            rx.recv_timeout(Duration::from_secs_f64(secs)).unwrap_or_else(|_| Outcome {
                stdout: String::new(),
                stderr: format!("ggroup: time limit of {secs}s exceeded\n"),
                code: 2,
            })
        }
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code)
}
