//! Line-oriented text formats: diagrams, braid words and edge-list
//! graphs, with canonical serializers.
//!
//! All three formats are UTF-8, whitespace-insensitive within lines, and
//! treat `#` to end of line as a comment.

use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::diagram::{validate, Crossing, CrossingType, Diagram, Dir, Port, TheoryName, ValidationReport};
use crate::graph::{EdgeLabel, LabeledMultigraph};

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
    #[error("line {line}: {source}")]
    Braid { line: usize, source: BraidError },
}

fn syntax(line: usize, message: impl Into<String>) -> CodecError {
    CodecError::Syntax { line, message: message.into() }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn name_ok(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses DiagramText and validates the result.
///
/// Lines: `theory <name>`, `loops <n>`, and one
/// `X <cid> <type> <port0> <port1> <port2> <port3>` per crossing, ports
/// in counterclockwise order, `+<arc>` for a tail and `-<arc>` for a
/// head.
pub fn parse_diagram(text: &str) -> Result<Diagram, CodecError> {
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut free_loops = 0usize;
    let mut theory = None;
    for (lno, raw) in text.lines().enumerate() {
        let lno = lno + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "theory" => {
                if tokens.len() != 2 {
                    return Err(syntax(lno, "expected: theory <name>"));
                }
                theory = Some(TheoryName::parse(tokens[1]).ok_or_else(|| {
                    syntax(lno, format!("unknown theory {}", tokens[1]))
                })?);
            }
            "loops" => {
                if tokens.len() != 2 {
                    return Err(syntax(lno, "expected: loops <n>"));
                }
                free_loops = tokens[1]
                    .parse()
                    .map_err(|_| syntax(lno, format!("bad loop count {}", tokens[1])))?;
            }
            "X" => {
                if tokens.len() != 7 {
                    return Err(syntax(
                        lno,
                        "expected: X <cid> <type> <port0> <port1> <port2> <port3>",
                    ));
                }
                let id = tokens[1];
                if !name_ok(id) {
                    return Err(syntax(lno, format!("bad crossing id {id}")));
                }
                if crossings.iter().any(|c| c.id == id) {
                    return Err(syntax(lno, format!("duplicate crossing id {id}")));
                }
                let ctype = CrossingType::from_token(tokens[2])
                    .ok_or_else(|| syntax(lno, format!("unknown crossing type {}", tokens[2])))?;
                let mut ports = Vec::with_capacity(4);
                for t in &tokens[3..7] {
                    let (dir, arc) = match t.split_at(1) {
                        ("+", rest) => (Dir::Out, rest),
                        ("-", rest) => (Dir::In, rest),
                        _ => return Err(syntax(lno, format!("bad port token {t}"))),
                    };
                    if !name_ok(arc) {
                        return Err(syntax(lno, format!("bad arc name {arc}")));
                    }
                    ports.push(Port::new(arc, dir));
                }
                crossings.push(Crossing {
                    id: id.to_string(),
                    ctype,
                    ports: ports.try_into().unwrap(),
                });
            }
            other => return Err(syntax(lno, format!("unknown directive {other}"))),
        }
    }
    let d = Diagram { crossings, free_loops, theory };
    let report = validate(&d);
    if !report.is_valid() {
        return Err(CodecError::Invalid(report));
    }
    Ok(d)
}

/// Canonical DiagramText: crossings sorted by id, each port list rotated
/// to its lexicographically least rotation.
pub fn serialize_diagram(d: &Diagram) -> String {
    let mut out = String::new();
    if let Some(t) = d.theory {
        out.push_str(&format!("theory {t}\n"));
    }
    if d.free_loops > 0 {
        out.push_str(&format!("loops {}\n", d.free_loops));
    }
    let mut crossings: Vec<&Crossing> = d.crossings.iter().collect();
    crossings.sort_by(|a, b| a.id.cmp(&b.id));
    for c in crossings {
        let toks: Vec<String> = c
            .ports
            .iter()
            .map(|p| {
                let sign = match p.dir {
                    Dir::Out => '+',
                    Dir::In => '-',
                };
                format!("{sign}{}", p.arc)
            })
            .collect();
        let best = (0..4)
            .map(|r| {
                let mut rot = toks.clone();
                rot.rotate_left(r);
                rot
            })
            .min()
            .unwrap();
        out.push_str(&format!("X {} {} {}\n", c.id, c.ctype, best.join(" ")));
    }
    out
}

/// Parses BraidText: a `braid n=<k> :` header followed by
/// whitespace-separated letters `a<i>` (RealPos), `A<i>` (RealNeg),
/// `v<i>` (Virtual), `f<i>` (Flat), `s<i>` (Singular).
pub fn parse_braid(text: &str) -> Result<BraidWord, CodecError> {
    let mut header: Option<(usize, usize)> = None; // (n, header line)
    let mut letters: Vec<(CrossingType, usize)> = Vec::new();
    for (lno, raw) in text.lines().enumerate() {
        let lno = lno + 1;
        let mut line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if header.is_none() {
            let rest = line
                .strip_prefix("braid")
                .ok_or_else(|| syntax(lno, "missing header: braid n=<k> :"))?
                .trim_start();
            let rest = rest
                .strip_prefix("n=")
                .ok_or_else(|| syntax(lno, "missing strand count: braid n=<k> :"))?;
            let colon = rest
                .find(':')
                .ok_or_else(|| syntax(lno, "missing ':' in braid header"))?;
            let n: usize = rest[..colon]
                .trim()
                .parse()
                .map_err(|_| syntax(lno, format!("bad strand count {}", rest[..colon].trim())))?;
            header = Some((n, lno));
            line = rest[colon + 1..].trim();
            if line.is_empty() {
                continue;
            }
        }
        let (n, _) = header.unwrap();
        for tok in line.split_whitespace() {
            let (letter, digits) = tok.split_at(1);
            let ctype = match letter {
                "a" => CrossingType::RealPos,
                "A" => CrossingType::RealNeg,
                "v" => CrossingType::Virtual,
                "f" => CrossingType::Flat,
                "s" => CrossingType::Singular,
                _ => return Err(syntax(lno, format!("bad letter {tok}"))),
            };
            let i: usize = digits
                .parse()
                .map_err(|_| syntax(lno, format!("bad letter {tok}")))?;
            if i < 1 || i >= n {
                return Err(syntax(lno, format!("position {i} out of range for n={n}")));
            }
            letters.push((ctype, i));
        }
    }
    let (n, line) = header.ok_or_else(|| syntax(1, "missing header: braid n=<k> :"))?;
    BraidWord::new(n, letters).map_err(|source| CodecError::Braid { line, source })
}

pub fn serialize_braid(w: &BraidWord) -> String {
    let mut out = format!("braid n={} :", w.strands());
    for &(t, i) in w.letters() {
        let letter = match t {
            CrossingType::RealPos => 'a',
            CrossingType::RealNeg => 'A',
            CrossingType::Virtual => 'v',
            CrossingType::Flat => 'f',
            CrossingType::Singular => 's',
        };
        out.push_str(&format!(" {letter}{i}"));
    }
    out.push('\n');
    out
}

/// Parses GraphText: `edge <u> <v> <type>` lines (type `R+ R- V F S
/// plain`) and optional `vertex <u>` lines for isolated vertices. Edge
/// ids are assigned `e1, e2, ...` in line order. Self-loops are
/// rejected.
pub fn parse_graph(text: &str) -> Result<LabeledMultigraph, CodecError> {
    let mut g = LabeledMultigraph::new();
    let mut edge_no = 0usize;
    for (lno, raw) in text.lines().enumerate() {
        let lno = lno + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "edge" => {
                if tokens.len() != 4 {
                    return Err(syntax(lno, "expected: edge <u> <v> <type>"));
                }
                let (u, v) = (tokens[1], tokens[2]);
                if !name_ok(u) || !name_ok(v) {
                    return Err(syntax(lno, "bad vertex name"));
                }
                if u == v {
                    return Err(syntax(lno, "self-loop not allowed in input"));
                }
                let label = EdgeLabel::from_token(tokens[3])
                    .ok_or_else(|| syntax(lno, format!("bad edge type {}", tokens[3])))?;
                edge_no += 1;
                g.add_edge(format!("e{edge_no}"), u, v, label)
                    .expect("generated ids are unique");
            }
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(syntax(lno, "expected: vertex <u>"));
                }
                if !name_ok(tokens[1]) {
                    return Err(syntax(lno, "bad vertex name"));
                }
                g.add_vertex(tokens[1]);
            }
            other => return Err(syntax(lno, format!("unknown directive {other}"))),
        }
    }
    Ok(g)
}

pub fn serialize_graph(g: &LabeledMultigraph) -> String {
    let mut out = String::new();
    let mut isolated: Vec<&str> = g
        .vertices()
        .filter(|v| g.incident(v).next().is_none())
        .collect();
    isolated.sort_unstable();
    for v in isolated {
        out.push_str(&format!("vertex {v}\n"));
    }
    for e in g.edges() {
        out.push_str(&format!("edge {} {} {}\n", e.u, e.v, e.label));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::curve_components;

    const KINK: &str = "X c1 R+ -a -b +b +a\n";

    #[test]
    fn parse_kink() {
        let d = parse_diagram(KINK).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.arcs().len(), 2);
        assert_eq!(curve_components(&d).unwrap(), 1);
    }

    #[test]
    fn unknown_type_rejected() {
        let err = parse_diagram("X c1 Q+ -a -b +b +a\n").unwrap_err();
        assert!(err.to_string().contains("unknown crossing type Q+"), "{err}");
    }

    #[test]
    fn dangling_arc_rejected() {
        // arc b has a head but no tail
        let err = parse_diagram("X c1 R+ -a -b +c +a\nX c2 R+ -c -d +d +b2\n").unwrap_err();
        match err {
            CodecError::Invalid(report) => {
                assert!(report.violations.iter().any(|v| v.location == "b"), "{report}");
            }
            other => panic!("expected validation failure, got {other}"),
        }
    }

    #[test]
    fn diagram_round_trip() {
        let text = "theory virtual_singular\nloops 2\nX c1 R+ -a -b +b +a\n";
        let d = parse_diagram(text).unwrap();
        let s = serialize_diagram(&d);
        assert!(s.contains("loops 2"));
        assert!(s.contains("theory virtual_singular"));
        let d2 = parse_diagram(&s).unwrap();
        assert_eq!(serialize_diagram(&d2), s);
        assert_eq!(d2.free_loops, 2);
        assert_eq!(d2.crossing_count(), 1);
    }

    #[test]
    fn serialization_is_rotation_canonical() {
        let a = parse_diagram("X c1 R+ -a -b +b +a\n").unwrap();
        let b = parse_diagram("X c1 R+ +b +a -a -b\n").unwrap();
        assert_eq!(serialize_diagram(&a), serialize_diagram(&b));
    }

    #[test]
    fn parse_braid_words() {
        let w = parse_braid("braid n=2 : a1 a1 a1\n").unwrap();
        assert_eq!(w.strands(), 2);
        assert_eq!(w.len(), 3);

        let w = parse_braid("braid n=2 : a1 v1 s1\n").unwrap();
        assert_eq!(
            w.letters(),
            &[
                (CrossingType::RealPos, 1),
                (CrossingType::Virtual, 1),
                (CrossingType::Singular, 1)
            ]
        );

        let err = parse_braid("braid n=2 : a5\n").unwrap_err();
        assert!(err.to_string().contains("position 5 out of range for n=2"));

        assert!(parse_braid("a1 a2\n").is_err());
    }

    #[test]
    fn braid_round_trip() {
        let text = "braid n=4 : a1 A2 v3 f1 s2\n";
        let w = parse_braid(text).unwrap();
        assert_eq!(serialize_braid(&w), text);
    }

    #[test]
    fn parse_graph_examples() {
        let g = parse_graph("edge u w R+\nedge u w V\nedge u w S\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);

        let err = parse_graph("edge u u plain\n").unwrap_err();
        assert!(err.to_string().contains("self-loop not allowed in input"));

        let c4 = parse_graph("edge a b plain\nedge b c plain\nedge c d plain\nedge d a plain\n")
            .unwrap();
        assert_eq!(c4.vertex_count(), 4);
        assert_eq!(c4.edge_count(), 4);
    }

    #[test]
    fn graph_round_trip() {
        let text = "vertex z\nedge u w R+\nedge u w V\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(serialize_graph(&g), text);
    }

    #[test]
    fn comments_and_whitespace() {
        let d = parse_diagram("# a kink\n\n  X c1 R+ -a -b +b +a  # crossing\n").unwrap();
        assert_eq!(d.crossing_count(), 1);
    }
}
