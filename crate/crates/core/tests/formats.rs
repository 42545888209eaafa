use std::path::{Path, PathBuf};

use qalg::error::Error;
use qalg::format::{self, Context};
use qalg::{catalog, RepKind};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

#[test]
fn every_data_file_loads() {
    let dir = data("");
    let mut kinds = Vec::new();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let kind = text
            .lines()
            .find_map(|l| l.strip_prefix("kind = "))
            .unwrap()
            .trim_matches('"')
            .to_string();
        match kind.as_str() {
            "algebra" => assert!(format::read_algebra(&path, false).unwrap().validate().ok()),
            "network" => assert!(!format::read_network(&path, false).unwrap().is_empty()),
            "representation" => {
                let rep = format::read_representation(&path, false).unwrap();
                assert!(rep.verify(RepKind::Feeble).ok());
            }
            "graph" => {
                format::read_graph(&path).unwrap();
            }
            other => panic!("{}: unknown kind {other}", path.display()),
        }
        kinds.push(kind);
    }
    for k in ["algebra", "network", "representation", "graph"] {
        assert!(kinds.iter().any(|x| x == k), "no {k} file");
    }
}

#[test]
fn data_algebras_match_the_catalog() {
    for key in ["point", "rcc5", "ex4", "mckenzie", "ra2565"] {
        let file = format::read_algebra(&data(&format!("{key}.qalg")), false).unwrap();
        assert_eq!(file, *catalog::get(key).unwrap().structure, "{key}");
    }
}

#[test]
fn relative_algebra_references_resolve_against_the_file() {
    let rep = format::read_representation(&data("rcc5_regions.qalg"), false).unwrap();
    assert_eq!(rep.len(), 11);
    let text = std::fs::read_to_string(data("rcc5_regions.qalg")).unwrap();
    let e = format::parse_representation(&text, &Context::default()).unwrap_err();
    assert!(e.to_string().contains("rcc5.qalg"), "{e}");
}

#[test]
fn errors_carry_locations() {
    let text = "qalg-format 1\nkind = \"network\"\nalgebra = \"catalog:point\"\n\
        nodes = [\"a\", \"b\"]\nedges = [\n  [\"a\", \"b\", [\"<\"]],\n  [\"a\", \"c\", [\"<\"]],\n]\n";
    match format::parse_network(text, &Context::default()) {
        Err(Error::UnknownNode { name, location: Some(l) }) => {
            assert_eq!(name, "c");
            assert_eq!(l.line, 7);
        }
        other => panic!("{other:?}"),
    }
    let bad_toml = "qalg-format 1\nkind = \"graph\"\nvertices = [\"a\"\n";
    match format::parse_graph(bad_toml) {
        Err(Error::Format { location: Some(l), .. }) => assert!(l.line >= 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn wrong_kind_and_header_are_rejected() {
    let graph = std::fs::read_to_string(data("triangle.qalg")).unwrap();
    assert!(format::parse_algebra(&graph, false).is_err());
    let no_header = graph.replacen("qalg-format 1\n", "", 1);
    assert!(format::parse_graph(&no_header).is_err());
    let future = graph.replacen("qalg-format 1", "qalg-format 2", 1);
    assert!(format::parse_graph(&future).is_err());
}

#[test]
fn unknown_fields_are_rejected() {
    let text = "qalg-format 1\nkind = \"algebra\"\natoms = [\"e\"]\nidentity = [\"e\"]\n\
        table = [[\"e\", \"e\", [\"e\"]]]\ncolour = \"blue\"\n";
    assert!(format::parse_algebra(text, false).is_err());
}

#[test]
fn representations_must_be_well_formed() {
    let text = "qalg-format 1\nkind = \"representation\"\nalgebra = \"catalog:point\"\n\
        base = [\"0\", \"1\"]\nmatrix = [[\"=\", \"<\"], [\"<\", \"=\"]]\n";
    assert!(format::parse_representation(text, &Context::default()).is_err());
    let short = "qalg-format 1\nkind = \"representation\"\nalgebra = \"catalog:point\"\n\
        base = [\"0\", \"1\"]\nmatrix = [[\"=\", \"<\"]]\n";
    assert!(format::parse_representation(short, &Context::default()).is_err());
}

#[test]
fn graph_round_trip_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = format::read_graph(&data("k4.qalg")).unwrap();
    let path = dir.path().join("g.qalg");
    std::fs::write(&path, format::write_graph(&g)).unwrap();
    assert_eq!(format::read_graph(&path).unwrap(), g);
}

#[test]
fn closing_on_load_repairs_missing_partners() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("partial.qalg");
    // Only one triple of the `<` orbit is listed.
    let text = "qalg-format 1\nkind = \"algebra\"\natoms = [\"=\", \"<\", \">\"]\nidentity = [\"=\"]\n\
        converse = [[\"<\", \">\"]]\nconsistent_triples = [\n  [\"=\", \"=\", \"=\"], [\"=\", \"<\", \"<\"], [\"=\", \">\", \">\"],\n  \
        [\"<\", \"<\", \"<\"],\n  [\"<\", \">\", \"=\"], [\"<\", \">\", \"<\"], [\"<\", \">\", \">\"],\n]\n";
    std::fs::write(&path, text).unwrap();
    let raw = format::read_algebra(Path::new(&path), false).unwrap();
    assert!(!raw.validate().ok());
    let closed = format::read_algebra(Path::new(&path), true).unwrap();
    assert!(closed.validate().ok());
    assert_eq!(closed, *catalog::get("point").unwrap().structure);
}
