//! The `qalg` command line.
//!
//! Exit codes: 0 positive verdict, 1 negative, 2 unknown within budget,
//! 3 input error. With `--json` every run prints one envelope
//! `{verdict, certificate, stats, diagnostics}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::AtomStructure;
use crate::catalog;
use crate::equations::{self, herd, Validity, ValidityOptions};
use crate::error::{Error, Result};
use crate::format::{self, Context};
use crate::network::{Network, Refinement};
use crate::reductions::{self, ThreeColouringReduction, TriangleReduction};
use crate::report::ValidationReport;
use crate::representation::{RepKind, Representation};
use crate::solver::{self, NetVerdict, SearchBudget, SearchStats, SearchStatus};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qalg", version, about = "Finite non-associative relation algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Omit timings so that repeated runs print identical reports.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Largest base searched by `solve` and `eq check`.
    #[arg(long, global = true, value_name = "N")]
    max_base: Option<usize>,
    /// Seed for randomised search.
    #[arg(long, global = true, value_name = "S", default_value_t = 0)]
    seed: u64,
    /// Close consistent triples under Peircean transforms when loading.
    #[arg(long, global = true)]
    close: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Built-in algebras and their known representations.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Algebra checks.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Constraint networks.
    #[command(subcommand)]
    Net(NetCmd),
    /// Representations.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Representation search and network satisfaction.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Equations over herds.
    #[command(subcommand)]
    Eq(EqCmd),
    /// Reduction instances.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Debug, Subcommand)]
enum CatalogCmd {
    List,
    /// Print an algebra file, or with `--rep I` its I-th known representation.
    Export {
        key: String,
        #[arg(long)]
        rep: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum AlgCmd {
    /// Validate an atom structure and report its algebraic properties.
    Check { algebra: String },
}

#[derive(Debug, Subcommand)]
enum NetCmd {
    Check { network: PathBuf },
    /// Path consistency, with a violating triple if there is one.
    Pc { network: PathBuf },
    /// Refine to the path-consistent closure.
    Refine { network: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyKind {
    Feeble,
    Qualitative,
    Strong,
    Star,
}

#[derive(Debug, Subcommand)]
enum RepCmd {
    Verify {
        #[arg(long, value_enum)]
        kind: VerifyKind,
        representation: PathBuf,
    },
    /// Embed a network into a representation.
    Embed { representation: PathBuf, network: PathBuf },
}

#[derive(Debug, Args)]
struct Limits {
    /// Search nodes before giving up.
    #[arg(long, value_name = "N")]
    node_limit: Option<u64>,
    /// Seconds before giving up.
    #[arg(long, value_name = "SECS")]
    time_limit: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum SolveCmd {
    Qrep {
        algebra: String,
        #[command(flatten)]
        limits: Limits,
    },
    Frep {
        algebra: String,
        #[command(flatten)]
        limits: Limits,
    },
    Net {
        algebra: String,
        network: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Debug, Subcommand)]
enum EqCmd {
    Check {
        #[arg(allow_hyphen_values = true)]
        equation: String,
    },
}

#[derive(Debug, Subcommand)]
enum GenCmd {
    #[command(name = "3col")]
    ThreeCol { graph: PathBuf },
    Mt { graph: PathBuf },
    Monk {
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Default, Serialize)]
struct Diagnostic {
    rule: String,
    subject: Vec<String>,
    message: String,
}

/// A verdict with its exit code, machine-readable certificate and an
/// optional certificate in file format for text output.
#[derive(Debug, Default)]
struct Report {
    code: i32,
    verdict: String,
    certificate: Option<Value>,
    text: Option<String>,
    /// Text output is a file: it alone goes to standard output and the
    /// verdict goes to standard error.
    raw: bool,
    stats: Map<String, Value>,
    diagnostics: Vec<Diagnostic>,
}

impl Report {
    fn new(code: i32, verdict: impl Into<String>) -> Self {
        Report {
            code,
            verdict: verdict.into(),
            ..Default::default()
        }
    }

    fn with_validation(mut self, r: &ValidationReport) -> Self {
        self.diagnostics.extend(r.violations.iter().map(|v| Diagnostic {
            rule: v.rule.to_string(),
            subject: v.subject.clone(),
            message: v.message.clone(),
        }));
        self
    }

    fn note(mut self, rule: &str, subject: Vec<String>, message: impl Into<String>) -> Self {
        self.diagnostics.push(Diagnostic {
            rule: rule.into(),
            subject,
            message: message.into(),
        });
        self
    }

    fn stat(mut self, key: &str, v: impl Serialize) -> Self {
        self.stats.insert(key.into(), serde_json::to_value(v).expect("serialisable"));
        self
    }

    fn emit(&self, json_out: bool, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<()> {
        if json_out {
            let v = json!({
                "verdict": self.verdict,
                "certificate": self.certificate,
                "stats": self.stats,
                "diagnostics": self.diagnostics,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serialisable"))
        } else {
            let summary: &mut dyn Write = if self.raw { err } else { &mut *out };
            writeln!(summary, "{}", self.verdict)?;
            for d in &self.diagnostics {
                if d.subject.is_empty() {
                    writeln!(summary, "  [{}] {}", d.rule, d.message)?;
                } else {
                    writeln!(summary, "  [{}] {} ({})", d.rule, d.message, d.subject.join(", "))?;
                }
            }
            for (k, v) in &self.stats {
                writeln!(summary, "  {k}: {v}")?;
            }
            if let Some(t) = &self.text {
                write!(out, "{t}")?;
            }
            Ok(())
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// writes the report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_POSITIVE
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_INPUT
                }
            };
        }
    };
    let json_out = cli.global.json;
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            let r = Report::new(EXIT_INPUT, "INPUT_ERROR").note("input", Vec::new(), e.to_string());
            if !json_out {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INPUT;
            }
            r
        }
    };
    let _ = report.emit(json_out, out, err);
    report.code
}

/// Loads an algebra from a file path, a `catalog:` reference or a bare
/// catalog key. Returns the structure and the reference to write into
/// certificates.
fn load_algebra(arg: &str, close: bool) -> Result<(Arc<AtomStructure>, String)> {
    if let Some(key) = arg.strip_prefix("catalog:") {
        return Ok((catalog::get(key)?.structure, arg.to_string()));
    }
    let path = Path::new(arg);
    if !path.exists() && catalog::KEYS.contains(&arg) {
        return Ok((catalog::get(arg)?.structure, format!("catalog:{arg}")));
    }
    Ok((Arc::new(format::read_algebra(path, close)?), arg.to_string()))
}

fn validated(s: &AtomStructure) -> Result<()> {
    let r = s.validate();
    if r.ok() {
        Ok(())
    } else {
        Err(Error::MalformedStructure(r.to_string()))
    }
}

fn budget(g: &Global, l: &Limits) -> SearchBudget {
    let d = SearchBudget::default();
    SearchBudget {
        max_base: g.max_base,
        node_limit: l.node_limit.or(d.node_limit),
        time_limit: l.time_limit.map(Duration::from_secs_f64),
        ..d
    }
}

fn search_stats(r: Report, st: &SearchStats, deterministic: bool) -> Report {
    let r = r
        .stat("nodes", st.nodes)
        .stat("max_base", st.max_base)
        .stat("sound_bound", st.sound_bound)
        .stat("exhausted", st.exhausted);
    if deterministic {
        r
    } else {
        r.stat("elapsed_ms", st.elapsed.as_millis() as u64)
    }
}

fn rep_json(rep: &Representation) -> Value {
    let s = rep.structure();
    let matrix: Vec<Vec<&str>> = (0..rep.len())
        .map(|x| (0..rep.len()).map(|y| s.name(rep.atom_at(x, y))).collect())
        .collect();
    json!({ "base": rep.base(), "matrix": matrix })
}

fn names(s: &AtomStructure, atoms: &[usize]) -> Vec<String> {
    atoms.iter().map(|&a| s.name(a).to_string()).collect()
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    let ctx_for = |p: &Path| Context {
        close: g.close,
        ..Context::for_file(p)
    };
    Ok(match &cli.command {
        Command::Catalog(CatalogCmd::List) => {
            let mut text = String::new();
            let mut list = Vec::new();
            for e in catalog::all() {
                let kinds: Vec<&str> = e.representations.iter().map(|(k, _)| k.as_str()).collect();
                text.push_str(&format!(
                    "{:<9} {:>3} atoms  {}  [{}]\n",
                    e.key,
                    e.structure.len(),
                    e.description,
                    kinds.join(", ")
                ));
                list.push(json!({
                    "key": e.key,
                    "atoms": e.structure.len(),
                    "description": e.description,
                    "representations": kinds,
                }));
            }
            Report {
                text: Some(text),
                certificate: Some(Value::Array(list)),
                ..Report::new(EXIT_POSITIVE, "CATALOG")
            }
        }
        Command::Catalog(CatalogCmd::Export { key, rep }) => {
            let e = catalog::get(key)?;
            match rep {
                None => Report {
                    text: Some(format::write_algebra(&e.structure, Some(e.key))),
                    raw: true,
                    certificate: Some(json!({ "key": e.key })),
                    ..Report::new(EXIT_POSITIVE, "EXPORTED")
                },
                Some(i) => {
                    let (kind, r) = e.representations.get(*i).ok_or_else(|| Error::Format {
                        message: format!("`{key}` has {} known representations", e.representations.len()),
                        location: None,
                    })?;
                    Report {
                        text: Some(format::write_representation(r, &format!("catalog:{}", e.key))),
                        raw: true,
                        certificate: Some(json!({ "key": e.key, "kind": kind.as_str(), "representation": rep_json(r) })),
                        ..Report::new(EXIT_POSITIVE, "EXPORTED")
                    }
                }
            }
        }
        Command::Alg(AlgCmd::Check { algebra }) => {
            let (s, _) = load_algebra(algebra, g.close)?;
            let v = s.validate();
            if !v.ok() {
                return Ok(Report::new(EXIT_NEGATIVE, "INVALID").with_validation(&v));
            }
            let assoc = s.non_associative_witness();
            let mut r = Report::new(EXIT_POSITIVE, "VALID")
                .stat("atoms", s.len())
                .stat("consistent_triples", s.triple_count())
                .stat("associative", assoc.is_none())
                .stat("semi_associative", s.is_semi_associative())
                .stat("weakly_associative", s.is_weakly_associative())
                .stat("integral", s.is_integral())
                .stat("identity_is_atom", s.identity_is_atom());
            if let Some(w) = assoc {
                r = r.note(
                    "associativity",
                    names(&s, &[w.a, w.b, w.c, w.d]),
                    {
                        let (a, b, c, d) = (s.name(w.a), s.name(w.b), s.name(w.c), s.name(w.d));
                        let (l, r) = (format!("({a};{b});{c}"), format!("{a};({b};{c})"));
                        let (yes, no) = if w.d_in_left { (l, r) } else { (r, l) };
                        format!("{d} lies below {yes} but not below {no}")
                    },
                );
            }
            if let Some(x) = s.semi_associativity_witness() {
                r = r.note("semi-associativity", names(&s, &[x]), "x;(1;1) differs from (x;1);1 at this x");
            }
            if let Some((a, b)) = s.integrality_witness() {
                r = r.note("integrality", names(&s, &[a, b]), "the composition of these two non-zero elements is zero");
            }
            r
        }
        Command::Net(cmd) => {
            let path = match cmd {
                NetCmd::Check { network } | NetCmd::Pc { network } | NetCmd::Refine { network } => network,
            };
            let net = format::parse_network(&read(path)?, &ctx_for(path))?;
            let s = net.structure().clone();
            match cmd {
                NetCmd::Check { .. } => {
                    let v = net.check_consistent();
                    let code = if v.ok() { EXIT_POSITIVE } else { EXIT_NEGATIVE };
                    Report::new(code, if v.ok() { "CONSISTENT" } else { "INCONSISTENT" }).with_validation(&v)
                }
                NetCmd::Pc { .. } => match net.path_consistency_witness() {
                    None => Report::new(EXIT_POSITIVE, "PATH_CONSISTENT"),
                    Some((x, y, z)) => {
                        let nm = |i: usize| net.nodes()[i].clone();
                        Report::new(EXIT_NEGATIVE, "NOT_PATH_CONSISTENT").note(
                            "path-consistency",
                            vec![nm(x), nm(y), nm(z)],
                            format!(
                                "label {} of ({}, {}) is not below {} ; {}",
                                s.fmt_set(net.label(x, z)),
                                nm(x),
                                nm(z),
                                s.fmt_set(net.label(x, y)),
                                s.fmt_set(net.label(y, z))
                            ),
                        )
                    }
                },
                NetCmd::Refine { .. } => match net.refine_path_consistent() {
                    Refinement::Refined(r) => Report {
                        text: Some(format::write_network(&r, &algebra_ref_of(path)?)),
                        certificate: Some(net_json(&r)),
                        ..Report::new(EXIT_POSITIVE, "REFINED")
                    },
                    Refinement::Inconsistent(w) => {
                        let nm = |i: usize| net.nodes()[i].clone();
                        Report::new(EXIT_NEGATIVE, "INCONSISTENT").note(
                            "path-consistency",
                            vec![nm(w.x), nm(w.y), nm(w.z)],
                            format!("label of ({}, {}) became empty", nm(w.x), nm(w.z)),
                        )
                    }
                },
            }
        }
        Command::Rep(RepCmd::Verify { kind, representation }) => {
            let rep = format::parse_representation(&read(representation)?, &ctx_for(representation))?;
            let s = rep.structure().clone();
            match kind {
                VerifyKind::Star => match rep.check_star()? {
                    None => Report::new(EXIT_POSITIVE, "STAR_HOLDS"),
                    Some(w) => Report::new(EXIT_NEGATIVE, "STAR_FAILS").note(
                        "star",
                        names(&s, &[w.a, w.b, w.c, w.d]),
                        if w.concrete_empty {
                            "(a;b)·(c;d) is non-zero but the relations a∘b and c∘d are disjoint"
                        } else {
                            "(a;b)·(c;d) is zero but the relations a∘b and c∘d meet"
                        },
                    ),
                },
                k => {
                    let kind = match k {
                        VerifyKind::Feeble => RepKind::Feeble,
                        VerifyKind::Qualitative => RepKind::Qualitative,
                        _ => RepKind::Strong,
                    };
                    let v = rep.verify(kind);
                    let code = if v.ok() { EXIT_POSITIVE } else { EXIT_NEGATIVE };
                    Report::new(code, if v.ok() { "OK" } else { "FAILED" })
                        .stat("kind", kind.as_str())
                        .with_validation(&v)
                }
            }
        }
        Command::Rep(RepCmd::Embed { representation, network }) => {
            let rep = format::parse_representation(&read(representation)?, &ctx_for(representation))?;
            let net = format::parse_network(&read(network)?, &ctx_for(network))?;
            if **net.structure() != **rep.structure() {
                return Err(Error::StructureMismatch);
            }
            match rep.embed_network(&net)? {
                None => Report::new(EXIT_NEGATIVE, "NONE"),
                Some(f) => {
                    let pairs: Map<String, Value> = f
                        .iter()
                        .enumerate()
                        .map(|(i, &p)| (net.nodes()[i].clone(), Value::String(rep.base()[p].clone())))
                        .collect();
                    let text: String = pairs.iter().map(|(k, v)| format!("{k} -> {}\n", v.as_str().unwrap_or(""))).collect();
                    Report {
                        text: Some(text),
                        certificate: Some(Value::Object(pairs)),
                        ..Report::new(EXIT_POSITIVE, "EMBEDDED")
                    }
                }
            }
        }
        Command::Solve(SolveCmd::Qrep { algebra, limits } | SolveCmd::Frep { algebra, limits }) => {
            let (s, reference) = load_algebra(algebra, g.close)?;
            validated(&s)?;
            let qualitative = matches!(cli.command, Command::Solve(SolveCmd::Qrep { .. }));
            let (kind, out) = if qualitative {
                (RepKind::Qualitative, solver::find_qualitative_rep(&s, budget(g, limits)))
            } else {
                (RepKind::Feeble, solver::find_feeble_rep(&s, budget(g, limits)))
            };
            let r = match &out.status {
                SearchStatus::Found(rep) => {
                    if !rep.verify(kind).ok() {
                        return Err(Error::MalformedRepresentation("certificate failed re-verification".into()));
                    }
                    Report {
                        text: Some(format::write_representation(rep, &reference)),
                        certificate: Some(rep_json(rep)),
                        ..Report::new(EXIT_POSITIVE, "FOUND")
                    }
                    .stat("base", rep.len())
                }
                SearchStatus::NoneExhaustive => Report::new(EXIT_NEGATIVE, "NONE_EXHAUSTIVE"),
                SearchStatus::Obstructed(t) => Report {
                    certificate: Some(json!({ "triple": s.triple_names(*t) })),
                    ..Report::new(EXIT_NEGATIVE, format!("OBSTRUCTED({})", s.fmt_triple(*t)))
                }
                .note(
                    "obstruction",
                    s.triple_names(*t),
                    "no consistent labelling of three points realises this triple",
                ),
                SearchStatus::NoneWithinBudget => Report::new(EXIT_UNKNOWN, "NONE_WITHIN_BUDGET"),
            };
            search_stats(r.stat("kind", kind.as_str()), &out.stats, g.deterministic)
        }
        Command::Solve(SolveCmd::Net { algebra, network, limits }) => {
            let (s, _) = load_algebra(algebra, g.close)?;
            validated(&s)?;
            let net = format::parse_network(&read(network)?, &ctx_for(network))?;
            if **net.structure() != *s {
                return Err(Error::StructureMismatch);
            }
            let net = Network::from_labels(s.clone(), net.nodes().to_vec(), net.labels().to_vec())?;
            let out = solver::decide_qual_sat(&s, &net, budget(g, limits));
            let r = match &out.verdict {
                NetVerdict::Sat { representation, embedding } => {
                    if !representation.verify_qualitative().ok() {
                        return Err(Error::MalformedRepresentation("certificate failed re-verification".into()));
                    }
                    let emb: Map<String, Value> = embedding
                        .iter()
                        .enumerate()
                        .map(|(i, &p)| (net.nodes()[i].clone(), Value::String(representation.base()[p].clone())))
                        .collect();
                    let mut text: String = emb
                        .iter()
                        .map(|(k, v)| format!("{k} -> {}\n", v.as_str().unwrap_or("")))
                        .collect();
                    text.push_str(&format::write_representation(representation, algebra));
                    Report {
                        text: Some(text),
                        certificate: Some(json!({ "embedding": emb, "representation": rep_json(representation) })),
                        ..Report::new(EXIT_POSITIVE, "SAT")
                    }
                }
                NetVerdict::Unsat => Report::new(EXIT_NEGATIVE, "UNSAT"),
                NetVerdict::Unknown => Report::new(EXIT_UNKNOWN, "UNKNOWN"),
            };
            search_stats(r, &out.stats, g.deterministic)
        }
        Command::Eq(EqCmd::Check { equation }) => {
            let eq = equations::parse_equation(equation)?;
            let opts = ValidityOptions {
                max_base: g.max_base.unwrap_or(ValidityOptions::default().max_base),
                seed: g.seed,
                ..Default::default()
            };
            match equations::check_validity(&eq, opts) {
                Validity::ValidUpTo { exhaustive, sampled, samples, certified } => {
                    Report::new(EXIT_POSITIVE, format!("VALID_UP_TO({exhaustive})"))
                        .stat("equation", eq.to_string())
                        .stat("length", eq.size())
                        .stat("exhaustive_base", exhaustive)
                        .stat("sampled_base", sampled)
                        .stat("samples", samples)
                        .stat("certified", certified)
                }
                Validity::Counterexample(c) => {
                    if !equations::validity::reverify(&eq, &c) {
                        return Err(Error::Format {
                            message: "counterexample failed re-evaluation".into(),
                            location: None,
                        });
                    }
                    let k = c.herd.base();
                    let rel = |r: herd::Relation| -> Value {
                        json!(herd::pairs(k, r).into_iter().map(|(x, y)| [x, y]).collect::<Vec<_>>())
                    };
                    let assignment: Map<String, Value> =
                        c.herd.assignment().iter().map(|(v, &r)| (v.clone(), rel(r))).collect();
                    let cert = json!({
                        "base": k,
                        "blocks": c.herd.blocks().iter().map(|&b| rel(b)).collect::<Vec<_>>(),
                        "assignment": assignment,
                        "lhs": rel(c.lhs),
                        "rhs": rel(c.rhs),
                    });
                    let mut text = format!("base: {k} points\n");
                    for (v, r) in &assignment {
                        text.push_str(&format!("{v} = {r}\n"));
                    }
                    text.push_str(&format!("lhs = {}\nrhs = {}\n", cert["lhs"], cert["rhs"]));
                    Report {
                        text: Some(text),
                        certificate: Some(cert),
                        ..Report::new(EXIT_NEGATIVE, "COUNTEREXAMPLE")
                    }
                    .stat("equation", eq.to_string())
                }
            }
        }
        Command::Gen(GenCmd::ThreeCol { graph }) => {
            let gr = format::read_graph(graph)?;
            match reductions::reduce_three_colouring(&gr) {
                ThreeColouringReduction::TriviallyColourable => Report::new(EXIT_POSITIVE, "TRIVIALLY_COLOURABLE"),
                ThreeColouringReduction::Instance(i) => generated(i.structure()).stat("padding", i.padding()),
            }
        }
        Command::Gen(GenCmd::Mt { graph }) => {
            let gr = format::read_graph(graph)?;
            match reductions::reduce_monochromatic_triangle(&gr)? {
                TriangleReduction::KnownNo => Report::new(EXIT_NEGATIVE, "KNOWN_NO").note(
                    "complete-graph",
                    Vec::new(),
                    "every red/blue colouring of six or more mutually adjacent vertices has a monochromatic triangle",
                ),
                TriangleReduction::Instance(i) => generated(i.structure()).stat("padding", i.padding()),
            }
        }
        Command::Gen(GenCmd::Monk { n, k }) => {
            let s = reductions::monk_algebra(*n, *k)?;
            generated(&s)
        }
    })
}

fn generated(s: &AtomStructure) -> Report {
    let v = s.validate();
    Report {
        text: Some(format::write_algebra(s, None)),
        raw: true,
        ..Report::new(if v.ok() { EXIT_POSITIVE } else { EXIT_NEGATIVE }, "GENERATED")
    }
    .stat("atoms", s.len())
    .stat("consistent_triples", s.triple_count())
    .with_validation(&v)
}

fn net_json(net: &Network) -> Value {
    let s = net.structure();
    let k = net.len();
    let labels: Vec<Vec<Vec<String>>> = (0..k)
        .map(|x| (0..k).map(|y| s.set_names(net.label(x, y))).collect())
        .collect();
    json!({ "nodes": net.nodes(), "labels": labels })
}

/// The `algebra` reference of a network file, reused when writing the
/// refined network next to it.
fn algebra_ref_of(path: &Path) -> Result<String> {
    let text = read(path)?;
    let body: String = text
        .lines()
        .filter(|l| l.trim() != format::HEADER)
        .collect::<Vec<_>>()
        .join("\n");
    let t: toml::Table = toml::from_str(&body).map_err(|e| Error::Format {
        message: e.message().to_string(),
        location: None,
    })?;
    match t.get("algebra") {
        Some(toml::Value::String(s)) => Ok(s.clone()),
        _ => Err(Error::Format {
            message: "refined networks need an algebra reference, not an inline algebra".into(),
            location: None,
        }),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format {
        message: format!("cannot read `{}`: {e}", path.display()),
        location: None,
    })
}
