//! Built-in examples with their expected records, used by the CLI
//! `catalog` subcommand and by golden tests.

use crate::braid::{word_seifert_graph, BraidWord};
use crate::codec::{serialize_braid, serialize_diagram, serialize_graph};
use crate::diagram::{CrossingType::*, TheoryName};
use crate::graph::testgraphs;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    Diagram,
    Braid,
    Graph,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Diagram => "diagram",
            EntryKind::Braid => "braid",
            EntryKind::Graph => "graph",
        }
    }
}

/// One catalog entry: its input text in the matching codec format and
/// the expected `key=value` records.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub text: String,
    pub expected: Vec<(&'static str, String)>,
}

fn braid_entry(
    name: &'static str,
    n: usize,
    letters: Vec<(crate::diagram::CrossingType, usize)>,
    extra: Vec<(&'static str, String)>,
) -> CatalogEntry {
    let w = BraidWord::new(n, letters).unwrap();
    let g = word_seifert_graph(&w);
    let mut expected = vec![
        ("strands", n.to_string()),
        ("length", w.len().to_string()),
        ("seifert_circles", n.to_string()),
        ("gamma_vertices", g.vertex_count().to_string()),
        ("gamma_edges", g.edge_count().to_string()),
        ("curves", w.permutation_cycles().to_string()),
    ];
    expected.extend(extra);
    CatalogEntry { name, kind: EntryKind::Braid, text: serialize_braid(&w), expected }
}

pub fn entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();

    let kink = crate::codec::parse_diagram("X c1 R+ -a -b +b +a\n").unwrap();
    out.push(CatalogEntry {
        name: "kink",
        kind: EntryKind::Diagram,
        text: serialize_diagram(&kink),
        expected: vec![
            ("crossings", "1".into()),
            ("seifert_circles", "2".into()),
            ("curves", "1".into()),
            ("nugatory", "c1".into()),
        ],
    });

    out.push(braid_entry(
        "trefoil",
        2,
        vec![(RealPos, 1), (RealPos, 1), (RealPos, 1)],
        vec![("ind_all", "0".into()), ("gb_upper", "2".into())],
    ));

    let mut vs = braid_entry(
        "vs_knot",
        2,
        vec![(RealPos, 1), (Virtual, 1), (Singular, 1)],
        vec![("ind_0", "0".into()), ("gb_upper", "2".into())],
    );
    vs.expected.push(("theory", TheoryName::VirtualSingular.as_str().into()));
    out.push(vs);

    out.push(CatalogEntry {
        name: "c4",
        kind: EntryKind::Graph,
        text: serialize_graph(&testgraphs::cycle(4)),
        expected: vec![
            ("vertices", "4".into()),
            ("edges", "4".into()),
            ("ind_all", "1".into()),
            ("blocks", "1".into()),
            ("edge_bound", "HOLDS".into()),
        ],
    });

    out.push(CatalogEntry {
        name: "p3",
        kind: EntryKind::Graph,
        text: serialize_graph(&testgraphs::path(3)),
        expected: vec![
            ("vertices", "3".into()),
            ("edges", "2".into()),
            ("ind_all", "1".into()),
            ("edge_bound", "PRECONDITION_FAILED".into()),
        ],
    });

    out.push(CatalogEntry {
        name: "triple_parallel",
        kind: EntryKind::Graph,
        text: serialize_graph(&testgraphs::parallel(3)),
        expected: vec![
            ("vertices", "2".into()),
            ("edges", "3".into()),
            ("ind_all", "0".into()),
            ("edge_bound", "HOLDS".into()),
        ],
    });

    out.push(CatalogEntry {
        name: "glued_c4s",
        kind: EntryKind::Graph,
        text: serialize_graph(&testgraphs::glued_c4s()),
        expected: vec![
            ("vertices", "7".into()),
            ("edges", "8".into()),
            ("ind_all", "2".into()),
            ("blocks", "2".into()),
        ],
    });

    out.push(CatalogEntry {
        name: "k5",
        kind: EntryKind::Graph,
        text: serialize_graph(&testgraphs::complete(5)),
        expected: vec![("planar", "false".into())],
    });

    out.push(CatalogEntry {
        name: "k33",
        kind: EntryKind::Graph,
        text: serialize_graph(&testgraphs::complete_bipartite(3, 3)),
        expected: vec![("planar", "false".into())],
    });

    out
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{parse_braid, parse_diagram, parse_graph};
    use crate::graph::planarity::{is_planar, Planarity};
    use crate::index::{ind, TypeFilter};

    #[test]
    fn all_entries_parse() {
        for e in entries() {
            match e.kind {
                EntryKind::Diagram => {
                    parse_diagram(&e.text).unwrap_or_else(|err| panic!("{}: {err}", e.name));
                }
                EntryKind::Braid => {
                    parse_braid(&e.text).unwrap_or_else(|err| panic!("{}: {err}", e.name));
                }
                EntryKind::Graph => {
                    parse_graph(&e.text).unwrap_or_else(|err| panic!("{}: {err}", e.name));
                }
            }
        }
    }

    #[test]
    fn expected_graph_records_hold() {
        for e in entries() {
            if e.kind != EntryKind::Graph {
                continue;
            }
            let g = parse_graph(&e.text).unwrap();
            for (key, value) in &e.expected {
                match *key {
                    "vertices" => assert_eq!(g.vertex_count().to_string(), *value, "{}", e.name),
                    "edges" => assert_eq!(g.edge_count().to_string(), *value, "{}", e.name),
                    "ind_all" => {
                        let (i, _) = ind(&g, &TypeFilter::All);
                        assert_eq!(i.to_string(), *value, "{}", e.name);
                    }
                    "planar" => {
                        let p = matches!(is_planar(&g), Planarity::Planar);
                        assert_eq!(p.to_string(), *value, "{}", e.name);
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn lookup_by_name() {
        assert!(entry("trefoil").is_some());
        assert!(entry("nope").is_none());
    }
}
