//! Oriented smoothing: Seifert circles, the Seifert graph, nugatory
//! crossings, separating circles and the block (star-product)
//! decomposition.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::diagram::{
    arc_map, classicalize, shadow_components, validate, Crossing, Diagram, DiagramError, Dir,
};
use crate::graph::{self, EdgeLabel, LabeledMultigraph};

/// One circle of the fully smoothed diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertCircle {
    pub id: String,
    /// Arcs in traversal order; empty for a free loop.
    pub traversal: Vec<String>,
    /// Crossings met, in traversal order.
    pub attachments: Vec<String>,
}

#[derive(Debug, Error)]
pub enum SeifertError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("smoothing at crossing {0} joins a circle to itself")]
    SelfLoop(String),
}

fn require_valid(d: &Diagram) -> Result<(), DiagramError> {
    let report = validate(d);
    if report.is_valid() {
        Ok(())
    } else {
        Err(DiagramError::Invalid(report))
    }
}

/// Seifert successor of an arc: at its head crossing, the `Out` port
/// cyclically adjacent to the head port.
fn seifert_next(c: &Crossing, head_port: usize) -> &str {
    let j = if c.ports[(head_port + 1) % 4].dir == Dir::Out {
        (head_port + 1) % 4
    } else {
        (head_port + 3) % 4
    };
    debug_assert_eq!(c.ports[j].dir, Dir::Out);
    &c.ports[j].arc
}

/// The circles obtained by smoothing every crossing; S(D) is the length
/// of the result. Free loops come last.
pub fn seifert_circles(d: &Diagram) -> Result<Vec<SeifertCircle>, DiagramError> {
    require_valid(d)?;
    let arcs = arc_map(d).expect("validated");
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut circles = Vec::new();
    for start in arcs.tail.keys() {
        if seen.contains(start.as_str()) {
            continue;
        }
        let mut traversal = Vec::new();
        let mut attachments = Vec::new();
        let mut cur = start.as_str();
        while seen.insert(cur) {
            traversal.push(cur.to_string());
            let (ci, pi) = arcs.head[cur];
            attachments.push(d.crossings[ci].id.clone());
            cur = seifert_next(&d.crossings[ci], pi);
        }
        circles.push(SeifertCircle {
            id: format!("s{}", circles.len()),
            traversal,
            attachments,
        });
    }
    for _ in 0..d.free_loops {
        circles.push(SeifertCircle {
            id: format!("s{}", circles.len()),
            traversal: Vec::new(),
            attachments: Vec::new(),
        });
    }
    Ok(circles)
}

/// Number of Seifert circles.
pub fn circle_count(d: &Diagram) -> Result<usize, DiagramError> {
    Ok(seifert_circles(d)?.len())
}

/// The Seifert graph: one vertex per circle, one typed edge per crossing,
/// joining the two circles whose strands meet at that crossing.
pub fn seifert_graph(d: &Diagram) -> Result<LabeledMultigraph, SeifertError> {
    let circles = seifert_circles(d)?;
    let mut circle_of: BTreeMap<&str, &str> = BTreeMap::new();
    for c in &circles {
        for arc in &c.traversal {
            circle_of.insert(arc, &c.id);
        }
    }
    let mut g = LabeledMultigraph::new();
    for c in &circles {
        g.add_vertex(c.id.clone());
    }
    for c in &d.crossings {
        // the two In arcs lie on the two smoothed strands
        let ins: Vec<&str> = c
            .ports
            .iter()
            .filter(|p| p.dir == Dir::In)
            .map(|p| p.arc.as_str())
            .collect();
        let (u, v) = (circle_of[ins[0]], circle_of[ins[1]]);
        if u == v {
            return Err(SeifertError::SelfLoop(c.id.clone()));
        }
        g.add_edge(c.id.clone(), u, v, EdgeLabel::Typed(c.ctype))
            .expect("crossing ids are unique");
    }
    Ok(g)
}

/// Removes crossing `c` and reconnects its four ports by Seifert pairing,
/// merging arcs; strands that close up with no remaining crossings become
/// free loops.
pub fn smooth_at(d: &Diagram, crossing_id: &str) -> Result<Diagram, DiagramError> {
    require_valid(d)?;
    let idx = d
        .crossings
        .iter()
        .position(|c| c.id == crossing_id)
        .ok_or_else(|| DiagramError::UnknownCrossing(crossing_id.to_string()))?;
    let c = &d.crossings[idx];

    // in-arc -> out-arc along the two smoothed strands
    let mut next: BTreeMap<&str, &str> = BTreeMap::new();
    for (pi, p) in c.ports.iter().enumerate() {
        if p.dir == Dir::In {
            next.insert(&p.arc, seifert_next(c, pi));
        }
    }

    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    let mut new_loops = 0usize;
    let mut processed: BTreeSet<&str> = BTreeSet::new();
    let out_arcs: BTreeSet<&str> = next.values().copied().collect();

    // open chains start at an in-arc that is not also an out-arc of c
    for &start in next.keys() {
        if out_arcs.contains(start) {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(&o) = next.get(cur) {
            chain.push(o);
            cur = o;
        }
        // chain = in-arc, intermediates, final out-arc: merged into one arc
        let keep = chain[0].to_string();
        for &a in &chain {
            processed.insert(a);
            rename.insert(a.to_string(), keep.clone());
        }
    }
    // whatever remains closes onto itself: a free loop per cycle
    for &start in next.keys() {
        if processed.contains(start) {
            continue;
        }
        let mut cur = start;
        loop {
            processed.insert(cur);
            rename.insert(cur.to_string(), String::new());
            cur = next[cur];
            if cur == start {
                break;
            }
        }
        new_loops += 1;
    }

    let mut crossings = Vec::new();
    for (ci, cr) in d.crossings.iter().enumerate() {
        if ci == idx {
            continue;
        }
        let mut cr = cr.clone();
        for p in &mut cr.ports {
            if let Some(n) = rename.get(&p.arc) {
                debug_assert!(!n.is_empty(), "looped arc referenced by a crossing");
                p.arc = n.clone();
            }
        }
        crossings.push(cr);
    }
    Ok(Diagram {
        crossings,
        free_loops: d.free_loops + new_loops,
        theory: d.theory,
    })
}

/// A crossing is nugatory iff smoothing it disconnects the diagram: the
/// smoothed shadow has more connected components than the original. (The
/// closed-curve count is the wrong measure here — smoothing any crossing
/// of a knot diagram splits its single curve in two, but the two halves
/// usually still cross each other.)
pub fn is_nugatory(d: &Diagram, crossing_id: &str) -> Result<bool, DiagramError> {
    if d.crossing(crossing_id).is_none() {
        return Err(DiagramError::UnknownCrossing(crossing_id.to_string()));
    }
    let before = shadow_components(d);
    let after = shadow_components(&smooth_at(d, crossing_id)?);
    Ok(after > before)
}

/// All nugatory crossings; an empty result certifies tc(D) = c(D).
pub fn nugatory_set(d: &Diagram) -> Result<Vec<String>, DiagramError> {
    let mut out = Vec::new();
    for c in &d.crossings {
        if is_nugatory(d, &c.id)? {
            out.push(c.id.clone());
        }
    }
    Ok(out)
}

/// Seifert circles that are cut vertices of the Seifert graph; these are
/// the circles along which the diagram decomposes as a star-product.
pub fn separating_circles(d: &Diagram) -> Result<Vec<String>, SeifertError> {
    let g = seifert_graph(d)?;
    let mut cuts: Vec<String> = graph::blocks(&g).cut_vertices.into_iter().collect();
    cuts.sort();
    Ok(cuts)
}

/// The blocks of the Seifert graph, one per special factor of the
/// star-product decomposition.
pub fn star_decompose(d: &Diagram) -> Result<Vec<LabeledMultigraph>, SeifertError> {
    let g = seifert_graph(d)?;
    Ok(graph::blocks(&g).blocks)
}

/// True iff the diagram has no separating Seifert circle.
pub fn is_special(d: &Diagram) -> Result<bool, SeifertError> {
    let g = seifert_graph(d)?;
    let dec = graph::blocks(&g);
    Ok(dec.blocks.len() == 1 && dec.cut_vertices.is_empty())
}

/// Type-forgetting view of a Seifert graph (all labels made plain); used
/// to compare a diagram with its classicalization.
pub fn forget_types(g: &LabeledMultigraph) -> LabeledMultigraph {
    let mut out = LabeledMultigraph::new();
    for v in g.vertices() {
        out.add_vertex(v);
    }
    for e in g.edges() {
        out.add_edge(e.id.clone(), e.u.clone(), e.v.clone(), EdgeLabel::Plain)
            .unwrap();
    }
    out
}

/// Convenience: the Seifert graph of the classicalized diagram.
pub fn classicalized_seifert_graph(d: &Diagram) -> Result<LabeledMultigraph, SeifertError> {
    seifert_graph(&classicalize(d))
}
