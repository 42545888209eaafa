//! Text file formats for algebras, networks, representations and graphs.
//!
//! Every file starts with the line `qalg-format 1`, followed by a TOML
//! document whose `kind` field names the file type:
//!
//! ```text
//! qalg-format 1
//! kind = "algebra"
//! atoms = ["1'", "<", ">"]
//! identity = ["1'"]
//! converse = [["<", ">"]]
//! table = [["<", "<", ["<"]], ["<", ">", ["1'", "<", ">"]]]
//! ```
//!
//! An algebra lists exactly one of `consistent_triples`, `forbidden_triples`
//! (the complement) or `table` (rows `[a, b, [c, ...]]` meaning
//! `a ; b = c + ...`). Networks and representations name their algebra
//! either as `algebra = "catalog:<key>"`, as a path relative to the file,
//! or inline as an `[algebra]` table.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use crate::algebra::{Atom, AtomStructure, Triple};
use crate::atomset::AtomSet;
use crate::catalog;
use crate::error::{Error, Location, Result};
use crate::network::Network;
use crate::reductions::SimpleGraph;
use crate::representation::Representation;

pub const HEADER: &str = "qalg-format 1";

/// Resolves `algebra = "..."` references; paths are relative to `dir`.
#[derive(Debug, Clone, Default)]
pub struct Context {
    pub dir: Option<PathBuf>,
    /// Close consistent triples under Peircean transforms while loading.
    pub close: bool,
}

impl Context {
    pub fn for_file(path: &Path) -> Self {
        Context {
            dir: path.parent().map(Path::to_path_buf),
            close: false,
        }
    }

    fn resolve(&self, reference: &str) -> Result<AtomStructure> {
        if let Some(key) = reference.strip_prefix("catalog:") {
            return Ok((*catalog::get(key)?.structure).clone());
        }
        let path = match &self.dir {
            Some(d) => d.join(reference),
            None => PathBuf::from(reference),
        };
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Format {
            message: format!("cannot read algebra `{}`: {e}", path.display()),
            location: None,
        })?;
        parse_algebra(&text, self.close)
    }
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn location(&self, offset: usize) -> Location {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Location { line, column }
    }

    fn err<T>(&self, span: std::ops::Range<usize>, message: impl Into<String>) -> Result<T> {
        Err(Error::Format {
            message: message.into(),
            location: Some(self.location(span.start)),
        })
    }
}

/// Checks the header and returns the body with the header blanked out, so
/// that byte offsets still refer to the original text.
fn body(text: &str) -> Result<String> {
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            offset += line.len();
            continue;
        }
        if trimmed != HEADER {
            return Err(Error::Format {
                message: format!("expected header `{HEADER}`"),
                location: Some(Source { text }.location(offset)),
            });
        }
        let mut out = text.to_string();
        out.replace_range(offset..offset + 1, "#");
        return Ok(out);
    }
    Err(Error::Format {
        message: format!("missing header `{HEADER}`"),
        location: None,
    })
}

fn from_toml<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    toml::from_str(text).map_err(|e| Error::Format {
        message: e.message().to_string(),
        location: e.span().map(|s| Source { text }.location(s.start)),
    })
}

fn check_kind(src: &Source, kind: &Spanned<String>, want: &str) -> Result<()> {
    if kind.get_ref() != want {
        return src.err(kind.span(), format!("expected kind \"{want}\", found \"{}\"", kind.get_ref()));
    }
    Ok(())
}

type Name = Spanned<String>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraBody {
    kind: Option<Spanned<String>>,
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
    atoms: Vec<Name>,
    #[serde(default)]
    identity: Vec<Name>,
    #[serde(default)]
    converse: Vec<(Name, Name)>,
    consistent_triples: Option<Spanned<Vec<(Name, Name, Name)>>>,
    forbidden_triples: Option<Spanned<Vec<(Name, Name, Name)>>>,
    table: Option<Spanned<Vec<TableRow>>>,
}

/// One composition entry: `a ; b` contains the listed atoms.
type TableRow = (Name, Name, Vec<Name>);

struct Names<'a> {
    src: &'a Source<'a>,
    index: HashMap<&'a str, Atom>,
}

impl Names<'_> {
    fn atom(&self, n: &Name) -> Result<Atom> {
        self.index.get(n.get_ref().as_str()).copied().ok_or_else(|| Error::UnknownAtom {
            name: n.get_ref().clone(),
            location: Some(self.src.location(n.span().start)),
        })
    }
}

fn build_algebra(src: &Source, b: &AlgebraBody, close: bool) -> Result<AtomStructure> {
    let mut index = HashMap::new();
    for (i, n) in b.atoms.iter().enumerate() {
        if index.insert(n.get_ref().as_str(), i).is_some() {
            return src.err(n.span(), format!("duplicate atom `{}`", n.get_ref()));
        }
    }
    let names = Names { src, index };
    let k = b.atoms.len();
    let mut conv: Vec<Atom> = (0..k).collect();
    let mut declared = vec![false; k];
    for (x, y) in &b.converse {
        let (a, c) = (names.atom(x)?, names.atom(y)?);
        for (p, q, n) in [(a, c, x), (c, a, y)] {
            if declared[p] && conv[p] != q {
                return src.err(n.span(), format!("conflicting converse for `{}`", n.get_ref()));
            }
            declared[p] = true;
            conv[p] = q;
        }
    }
    let identity = b.identity.iter().map(|n| names.atom(n)).collect::<Result<Vec<_>>>()?;
    let given = [
        b.consistent_triples.is_some(),
        b.forbidden_triples.is_some(),
        b.table.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Error::Format {
            message: "give exactly one of `consistent_triples`, `forbidden_triples`, `table`".into(),
            location: None,
        });
    }
    let triple = |(a, b, c): &(Name, Name, Name)| -> Result<Triple> {
        Ok((names.atom(a)?, names.atom(b)?, names.atom(c)?))
    };
    let triples: Vec<Triple> = if let Some(ts) = &b.consistent_triples {
        ts.get_ref().iter().map(triple).collect::<Result<_>>()?
    } else if let Some(ts) = &b.forbidden_triples {
        let mut bad: std::collections::BTreeSet<Triple> =
            ts.get_ref().iter().map(triple).collect::<Result<_>>()?;
        if close {
            // Closing a forbidden list removes whole orbits.
            let v = |x: Atom| conv[x];
            bad = bad
                .iter()
                .flat_map(|&(a, b, c)| {
                    [
                        (a, b, c),
                        (b, v(c), v(a)),
                        (c, v(b), a),
                        (v(a), c, b),
                        (v(b), v(a), v(c)),
                        (v(c), a, v(b)),
                    ]
                })
                .collect();
        }
        (0..k * k * k)
            .map(|i| (i / (k * k), i / k % k, i % k))
            .filter(|t| !bad.contains(t))
            .collect()
    } else {
        let mut out = Vec::new();
        for (a, b, cs) in b.table.as_ref().expect("checked").get_ref() {
            let (a, b) = (names.atom(a)?, names.atom(b)?);
            for c in cs {
                out.push((a, b, names.atom(c)?));
            }
        }
        out
    };
    let names = b.atoms.iter().map(|n| n.get_ref().clone()).collect();
    let mut s = AtomStructure::new(names, identity, conv, triples)?;
    if close {
        s.close_peircean();
    }
    Ok(s)
}

pub fn parse_algebra(text: &str, close: bool) -> Result<AtomStructure> {
    let body = body(text)?;
    let src = Source { text };
    let f: AlgebraBody = from_toml(&body)?;
    match &f.kind {
        Some(k) => check_kind(&src, k, "algebra")?,
        None => {
            return Err(Error::Format {
                message: "missing field `kind`".into(),
                location: None,
            })
        }
    }
    build_algebra(&src, &f, close)
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn list<'a>(items: impl IntoIterator<Item = &'a str>) -> String {
    let inner: Vec<String> = items.into_iter().map(quote).collect();
    format!("[{}]", inner.join(", "))
}

/// Writes an algebra in table form, one row per non-empty composition.
pub fn write_algebra(s: &AtomStructure, name: Option<&str>) -> String {
    let mut out = format!("{HEADER}\nkind = \"algebra\"\n");
    if let Some(n) = name {
        let _ = writeln!(out, "name = {}", quote(n));
    }
    let _ = writeln!(out, "atoms = {}", list(s.names().iter().map(String::as_str)));
    let _ = writeln!(out, "identity = {}", list(s.identity().iter().map(|a| s.name(a))));
    let pairs: Vec<String> = s
        .atoms()
        .filter(|&a| s.converse_atom(a) > a)
        .map(|a| list([s.name(a), s.name(s.converse_atom(a))]))
        .collect();
    let _ = writeln!(out, "converse = [{}]", pairs.join(", "));
    out.push_str("table = [\n");
    for a in s.atoms() {
        for b in s.atoms() {
            let c = s.compose_atoms(a, b);
            if !c.is_empty() {
                let _ = writeln!(
                    out,
                    "  [{}, {}, {}],",
                    quote(s.name(a)),
                    quote(s.name(b)),
                    list(c.iter().map(|x| s.name(x)))
                );
            }
        }
    }
    out.push_str("]\n");
    out
}

/// The `algebra` field: a reference or an inline table.
fn load_algebra_field(
    src: &Source,
    body: &str,
    ctx: &Context,
) -> Result<Arc<AtomStructure>> {
    #[derive(Deserialize)]
    struct ByRef {
        algebra: Name,
    }
    #[derive(Deserialize)]
    struct Inline {
        algebra: AlgebraBody,
    }
    let raw: toml::Table = from_toml(body)?;
    match raw.get("algebra") {
        None => Err(Error::Format {
            message: "missing field `algebra`".into(),
            location: None,
        }),
        Some(toml::Value::String(_)) => {
            let r: ByRef = from_toml(body)?;
            ctx.resolve(r.algebra.get_ref()).map(Arc::new).map_err(|e| match e {
                Error::Format { message, location: None } => Error::Format {
                    message,
                    location: Some(src.location(r.algebra.span().start)),
                },
                other => other,
            })
        }
        Some(_) => {
            let i: Inline = from_toml(body)?;
            build_algebra(src, &i.algebra, ctx.close).map(Arc::new)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    kind: Spanned<String>,
    #[allow(dead_code)]
    algebra: toml::Value,
    nodes: Vec<Name>,
    #[serde(default)]
    edges: Vec<(Name, Name, Vec<Name>)>,
}

fn atom_set(src: &Source, s: &AtomStructure, names: &[Name]) -> Result<AtomSet> {
    let mut out = s.empty_set();
    for n in names {
        let a = s.atom(n.get_ref()).ok_or_else(|| Error::UnknownAtom {
            name: n.get_ref().clone(),
            location: Some(src.location(n.span().start)),
        })?;
        out.insert(a);
    }
    Ok(out)
}

fn node_index(src: &Source, index: &HashMap<&str, usize>, n: &Name) -> Result<usize> {
    index.get(n.get_ref().as_str()).copied().ok_or_else(|| Error::UnknownNode {
        name: n.get_ref().clone(),
        location: Some(src.location(n.span().start)),
    })
}

pub fn parse_network(text: &str, ctx: &Context) -> Result<Network> {
    let body = body(text)?;
    let src = Source { text };
    let f: NetworkFile = from_toml(&body)?;
    check_kind(&src, &f.kind, "network")?;
    let s = load_algebra_field(&src, &body, ctx)?;
    let mut index = HashMap::new();
    for (i, n) in f.nodes.iter().enumerate() {
        if index.insert(n.get_ref().as_str(), i).is_some() {
            return src.err(n.span(), format!("duplicate node `{}`", n.get_ref()));
        }
    }
    let names: Vec<&str> = f.nodes.iter().map(|n| n.get_ref().as_str()).collect();
    let mut net = Network::new(s.clone(), &names)?;
    let mut explicit = BTreeMap::new();
    for (x, y, labels) in &f.edges {
        let (x, y) = (node_index(&src, &index, x)?, node_index(&src, &index, y)?);
        explicit.insert((x, y), atom_set(&src, &s, labels)?);
    }
    for (&(x, y), l) in &explicit {
        net.set_label(x, y, l.clone());
        if x != y && !explicit.contains_key(&(y, x)) {
            net.set_label(y, x, s.converse_set(l));
        }
    }
    Ok(net)
}

/// Writes every non-default edge label `(x, y)` with `x < y`, plus any
/// loop or reverse edge that is not implied.
pub fn write_network(net: &Network, algebra_ref: &str) -> String {
    let s = net.structure();
    let mut out = format!("{HEADER}\nkind = \"network\"\nalgebra = {}\n", quote(algebra_ref));
    let _ = writeln!(out, "nodes = {}", list(net.nodes().iter().map(String::as_str)));
    out.push_str("edges = [\n");
    let k = net.len();
    for x in 0..k {
        for y in 0..k {
            let l = net.label(x, y);
            let default = if x == y {
                l == s.identity()
            } else if x < y {
                *l == s.full_set() && *net.label(y, x) == s.full_set()
            } else {
                *l == s.converse_set(net.label(y, x))
            };
            if !default {
                let _ = writeln!(
                    out,
                    "  [{}, {}, {}],",
                    quote(&net.nodes()[x]),
                    quote(&net.nodes()[y]),
                    list(l.iter().map(|a| s.name(a)))
                );
            }
        }
    }
    out.push_str("]\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepresentationFile {
    kind: Spanned<String>,
    #[allow(dead_code)]
    algebra: toml::Value,
    base: Vec<Name>,
    matrix: Spanned<Vec<Spanned<Vec<Name>>>>,
}

pub fn parse_representation(text: &str, ctx: &Context) -> Result<Representation> {
    let body = body(text)?;
    let src = Source { text };
    let f: RepresentationFile = from_toml(&body)?;
    check_kind(&src, &f.kind, "representation")?;
    let s = load_algebra_field(&src, &body, ctx)?;
    let k = f.base.len();
    if f.matrix.get_ref().len() != k {
        return src.err(f.matrix.span(), format!("matrix needs {k} rows"));
    }
    let mut atoms = Vec::with_capacity(k * k);
    for row in f.matrix.get_ref() {
        if row.get_ref().len() != k {
            return src.err(row.span(), format!("row needs {k} entries"));
        }
        for n in row.get_ref() {
            atoms.push(s.atom(n.get_ref()).ok_or_else(|| Error::UnknownAtom {
                name: n.get_ref().clone(),
                location: Some(src.location(n.span().start)),
            })?);
        }
    }
    let base = f.base.iter().map(|n| n.get_ref().clone()).collect();
    Representation::new(s, base, atoms)
}

pub fn write_representation(rep: &Representation, algebra_ref: &str) -> String {
    let s = rep.structure();
    let mut out = format!(
        "{HEADER}\nkind = \"representation\"\nalgebra = {}\n",
        quote(algebra_ref)
    );
    let _ = writeln!(out, "base = {}", list(rep.base().iter().map(String::as_str)));
    out.push_str("matrix = [\n");
    for x in 0..rep.len() {
        let row = (0..rep.len()).map(|y| s.name(rep.atom_at(x, y)));
        let _ = writeln!(out, "  {},", list(row));
    }
    out.push_str("]\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    kind: Spanned<String>,
    vertices: Vec<Name>,
    #[serde(default)]
    edges: Vec<(Name, Name)>,
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let body = body(text)?;
    let src = Source { text };
    let f: GraphFile = from_toml(&body)?;
    check_kind(&src, &f.kind, "graph")?;
    let mut index = HashMap::new();
    for (i, n) in f.vertices.iter().enumerate() {
        if index.insert(n.get_ref().as_str(), i).is_some() {
            return src.err(n.span(), format!("duplicate vertex `{}`", n.get_ref()));
        }
    }
    let mut edges = Vec::new();
    for (u, v) in &f.edges {
        let (a, b) = (node_index(&src, &index, u)?, node_index(&src, &index, v)?);
        if a == b {
            return src.err(u.span(), "graphs may not have loops");
        }
        edges.push((a, b));
    }
    let names: Vec<&str> = f.vertices.iter().map(|n| n.get_ref().as_str()).collect();
    let mut g = SimpleGraph::from_edges(names.len(), &edges)?;
    // Rebuild with the declared names; validation of names happens there.
    let pairs: Vec<(&str, &str)> = g.edges().iter().map(|&(u, v)| (names[u], names[v])).collect();
    g = SimpleGraph::new(&names, &pairs)?;
    Ok(g)
}

pub fn write_graph(g: &SimpleGraph) -> String {
    let mut out = format!("{HEADER}\nkind = \"graph\"\n");
    let _ = writeln!(out, "vertices = {}", list(g.names().iter().map(String::as_str)));
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|&(u, v)| list([g.names()[u].as_str(), g.names()[v].as_str()]))
        .collect();
    let _ = writeln!(out, "edges = [{}]", edges.join(", "));
    out
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format {
        message: format!("cannot read `{}`: {e}", path.display()),
        location: None,
    })
}

pub fn read_algebra(path: &Path, close: bool) -> Result<AtomStructure> {
    parse_algebra(&read(path)?, close)
}

pub fn read_network(path: &Path, close: bool) -> Result<Network> {
    let ctx = Context {
        close,
        ..Context::for_file(path)
    };
    parse_network(&read(path)?, &ctx)
}

pub fn read_representation(path: &Path, close: bool) -> Result<Representation> {
    let ctx = Context {
        close,
        ..Context::for_file(path)
    };
    parse_representation(&read(path)?, &ctx)
}

pub fn read_graph(path: &Path) -> Result<SimpleGraph> {
    parse_graph(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_round_trip() {
        for e in catalog::all() {
            let text = write_algebra(&e.structure, Some(e.key));
            let back = parse_algebra(&text, false).unwrap();
            assert_eq!(back, *e.structure, "{}", e.key);
        }
    }

    #[test]
    fn forms_agree() {
        let triples = "qalg-format 1\nkind = \"algebra\"\natoms = [\"e\", \"a\"]\nidentity = [\"e\"]\n\
            consistent_triples = [[\"e\",\"e\",\"e\"],[\"e\",\"a\",\"a\"],[\"a\",\"e\",\"a\"],[\"a\",\"a\",\"e\"]]\n";
        let table = "qalg-format 1\nkind = \"algebra\"\natoms = [\"e\", \"a\"]\nidentity = [\"e\"]\n\
            table = [[\"e\",\"e\",[\"e\"]],[\"e\",\"a\",[\"a\"]],[\"a\",\"e\",[\"a\"]],[\"a\",\"a\",[\"e\"]]]\n";
        let forbidden = "qalg-format 1\nkind = \"algebra\"\natoms = [\"e\", \"a\"]\nidentity = [\"e\"]\n\
            forbidden_triples = [[\"e\",\"e\",\"a\"],[\"e\",\"a\",\"e\"],[\"a\",\"e\",\"e\"],[\"a\",\"a\",\"a\"]]\n";
        let a = parse_algebra(triples, false).unwrap();
        assert_eq!(a, parse_algebra(table, false).unwrap());
        assert_eq!(a, parse_algebra(forbidden, false).unwrap());
        assert!(a.validate().ok());
    }

    #[test]
    fn unknown_atom_has_location() {
        let text = "qalg-format 1\nkind = \"algebra\"\natoms = [\"e\"]\nidentity = [\"e\"]\n\
            consistent_triples = [[\"e\", \"q\", \"e\"]]\n";
        match parse_algebra(text, false) {
            Err(Error::UnknownAtom { name, location: Some(l) }) => {
                assert_eq!(name, "q");
                assert_eq!((l.line, l.column), (5, 29));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn header_is_required() {
        assert!(matches!(
            parse_algebra("kind = \"algebra\"\n", false),
            Err(Error::Format { location: Some(Location { line: 1, .. }), .. })
        ));
        let e = parse_algebra("qalg-format 1\nkind = \"network\"\natoms=[\"e\"]\nidentity=[\"e\"]\ntable=[]\n", false);
        assert!(matches!(e, Err(Error::Format { location: Some(Location { line: 2, .. }), .. })));
    }

    #[test]
    fn close_flag_completes_orbits() {
        let text = "qalg-format 1\nkind = \"algebra\"\natoms = [\"e\", \"a\"]\nidentity = [\"e\"]\n\
            consistent_triples = [[\"e\",\"e\",\"e\"],[\"e\",\"a\",\"a\"],[\"a\",\"a\",\"e\"]]\n";
        assert!(!parse_algebra(text, false).unwrap().validate().ok());
        assert!(parse_algebra(text, true).unwrap().validate().ok());
    }

    #[test]
    fn closing_a_forbidden_list_removes_orbits() {
        let text = "qalg-format 1\nkind = \"algebra\"\natoms = [\"e\", \"a\"]\nidentity = [\"e\"]\n\
            forbidden_triples = [[\"e\",\"e\",\"a\"],[\"a\",\"a\",\"a\"]]\n";
        assert!(!parse_algebra(text, false).unwrap().validate().ok());
        let s = parse_algebra(text, true).unwrap();
        assert!(s.validate().ok());
        assert_eq!(s.triple_count(), 4);
    }

    #[test]
    fn network_defaults_and_round_trip() {
        let text = "qalg-format 1\nkind = \"network\"\nalgebra = \"catalog:point\"\n\
            nodes = [\"a\", \"b\", \"c\"]\nedges = [[\"a\", \"b\", [\"<\"]]]\n";
        let net = parse_network(text, &Context::default()).unwrap();
        let s = net.structure().clone();
        assert_eq!(s.set_names(net.label(1, 0)), vec![">"]);
        assert_eq!(*net.label(0, 2), s.full_set());
        assert_eq!(net.label(2, 2), s.identity());
        let back = parse_network(&write_network(&net, "catalog:point"), &Context::default()).unwrap();
        assert_eq!(back.labels(), net.labels());
    }

    #[test]
    fn inline_algebra() {
        let text = "qalg-format 1\nkind = \"representation\"\nbase = [\"0\"]\nmatrix = [[\"e\"]]\n\
            [algebra]\natoms = [\"e\"]\nidentity = [\"e\"]\ntable = [[\"e\", \"e\", [\"e\"]]]\n";
        let r = parse_representation(text, &Context::default()).unwrap();
        assert!(r.verify_strong().ok());
    }

    #[test]
    fn representation_round_trip() {
        let e = catalog::get("rcc5").unwrap();
        let rep = &e.representations[0].1;
        let text = write_representation(rep, "catalog:rcc5");
        let back = parse_representation(&text, &Context::default()).unwrap();
        assert_eq!(back.atoms(), rep.atoms());
        assert_eq!(back.base(), rep.base());
    }

    #[test]
    fn graph_round_trip_and_errors() {
        let g = SimpleGraph::new(&["u", "v", "w"], &[("u", "v"), ("v", "w")]).unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let bad = "qalg-format 1\nkind = \"graph\"\nvertices = [\"u\"]\nedges = [[\"u\", \"z\"]]\n";
        match parse_graph(bad) {
            Err(Error::UnknownNode { name, location: Some(l) }) => {
                assert_eq!(name, "z");
                assert_eq!(l.line, 4);
            }
            other => panic!("{other:?}"),
        }
    }
}
