//! Labeled multigraphs and the algorithms the index computation needs:
//! bipartiteness, blocks and cut vertices, bridges, singular edges and
//! star contraction. Planarity lives in [`planarity`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::diagram::CrossingType;

pub mod planarity;

/// Edge label: either a crossing type or a plain (untyped) edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeLabel {
    Typed(CrossingType),
    Plain,
}

impl EdgeLabel {
    pub fn token(self) -> &'static str {
        match self {
            EdgeLabel::Typed(t) => t.token(),
            EdgeLabel::Plain => "plain",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        if s == "plain" {
            Some(EdgeLabel::Plain)
        } else {
            CrossingType::from_token(s).map(EdgeLabel::Typed)
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MgEdge {
    pub id: String,
    pub u: String,
    pub v: String,
    pub label: EdgeLabel,
}

impl MgEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, end: &str) -> &str {
        if self.u == end {
            &self.v
        } else {
            &self.u
        }
    }

    pub fn touches(&self, v: &str) -> bool {
        self.u == v || self.v == v
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
}

/// A multigraph with typed edges. Loops are permitted internally (they
/// arise from star contraction) but are rejected by the parser.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabeledMultigraph {
    vertices: BTreeSet<String>,
    edges: Vec<MgEdge>,
}

impl LabeledMultigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<String>) {
        self.vertices.insert(v.into());
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        u: impl Into<String>,
        v: impl Into<String>,
        label: EdgeLabel,
    ) -> Result<(), GraphError> {
        let (id, u, v) = (id.into(), u.into(), v.into());
        if self.edges.iter().any(|e| e.id == id) {
            return Err(GraphError::DuplicateEdge(id));
        }
        self.vertices.insert(u.clone());
        self.vertices.insert(v.clone());
        self.edges.push(MgEdge { id, u, v, label });
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(|v| v.as_str())
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[MgEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: &str) -> Option<&MgEdge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn incident<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a MgEdge> + 'a {
        self.edges.iter().filter(move |e| e.touches(v))
    }

    pub fn neighbors<'a>(&'a self, v: &'a str) -> BTreeSet<&'a str> {
        self.incident(v)
            .filter(|e| !e.is_loop())
            .map(|e| e.other(v))
            .collect()
    }

    /// Exact-state key: sorted vertices plus sorted edge records. Not an
    /// isomorphism invariant, only a deterministic serialization.
    pub fn state_key(&self) -> String {
        let mut parts: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = if e.u <= e.v { (&e.u, &e.v) } else { (&e.v, &e.u) };
                format!("{}:{}:{}:{}", e.id, a, b, e.label)
            })
            .collect();
        parts.sort();
        let vs: Vec<&str> = self.vertices.iter().map(|v| v.as_str()).collect();
        format!("{}|{}", vs.join(","), parts.join(";"))
    }

    pub fn connected_components(&self) -> Vec<BTreeSet<String>> {
        let mut remaining: BTreeSet<&str> = self.vertices.iter().map(|v| v.as_str()).collect();
        let mut components = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !remaining.remove(v) {
                    continue;
                }
                comp.insert(v.to_string());
                for e in self.incident(v) {
                    let w = e.other(v);
                    if remaining.contains(w) {
                        stack.push(w);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Sub-multigraph induced by a vertex set (keeps edges with both
    /// endpoints inside).
    pub fn induced(&self, verts: &BTreeSet<String>) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new();
        for v in verts {
            g.add_vertex(v.clone());
        }
        for e in &self.edges {
            if verts.contains(&e.u) && verts.contains(&e.v) {
                g.edges.push(e.clone());
            }
        }
        g
    }
}

/// Result of the 2-coloring check: either bipartite or an odd cycle,
/// given as a vertex sequence (a loop yields a length-1 witness).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    Bipartite,
    OddCycle(Vec<String>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite)
    }
}

pub fn is_bipartite(g: &LabeledMultigraph) -> Bipartiteness {
    if let Some(e) = g.edges().iter().find(|e| e.is_loop()) {
        return Bipartiteness::OddCycle(vec![e.u.clone()]);
    }
    let mut color: BTreeMap<&str, bool> = BTreeMap::new();
    let mut parent: BTreeMap<&str, &str> = BTreeMap::new();
    for start in g.vertices() {
        if color.contains_key(start) {
            continue;
        }
        color.insert(start, false);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let cv = color[v];
            for e in g.incident(v) {
                let w = e.other(v);
                match color.get(w) {
                    None => {
                        color.insert(w, !cv);
                        parent.insert(w, v);
                        queue.push_back(w);
                    }
                    Some(&cw) if cw == cv => {
                        return Bipartiteness::OddCycle(odd_cycle_witness(&parent, v, w));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Bipartiteness::Bipartite
}

/// Joins the tree paths from `v` and `w` up to their common ancestor.
fn odd_cycle_witness<'a>(parent: &BTreeMap<&'a str, &'a str>, v: &'a str, w: &'a str) -> Vec<String> {
    let path_to_root = |mut x: &'a str| -> Vec<&'a str> {
        let mut p = vec![x];
        while let Some(&y) = parent.get(x) {
            p.push(y);
            x = y;
        }
        p
    };
    let pv = path_to_root(v);
    let pw = path_to_root(w);
    let av: BTreeMap<&str, usize> = pv.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let (mut j, mut meet) = (0, pw[0]);
    for (i, &x) in pw.iter().enumerate() {
        if av.contains_key(x) {
            j = i;
            meet = x;
            break;
        }
    }
    let mut cycle: Vec<String> = pv[..=av[meet]].iter().map(|s| s.to_string()).collect();
    for &x in pw[..j].iter().rev() {
        cycle.push(x.to_string());
    }
    cycle
}

/// Maximal non-separable connected subgraphs plus the cut vertices.
/// Loops belong to no block; isolated vertices (and vertices carrying
/// only loops) appear as trivial single-vertex blocks.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub blocks: Vec<LabeledMultigraph>,
    pub cut_vertices: BTreeSet<String>,
}

pub fn blocks(g: &LabeledMultigraph) -> BlockDecomposition {
    struct State<'a> {
        g: &'a LabeledMultigraph,
        num: BTreeMap<&'a str, usize>,
        low: BTreeMap<&'a str, usize>,
        timer: usize,
        edge_stack: Vec<usize>,
        blocks: Vec<Vec<usize>>,
        cut_vertices: BTreeSet<String>,
    }

    fn dfs(st: &mut State<'_>, v: &str, parent_edge: Option<usize>) {
        let v = st.g.vertices().find(|&x| x == v).unwrap();
        st.timer += 1;
        st.num.insert(v, st.timer);
        st.low.insert(v, st.timer);
        let mut children = 0;
        let edge_ids: Vec<usize> = st
            .g
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, e)| e.touches(v) && !e.is_loop() && Some(*i) != parent_edge)
            .map(|(i, _)| i)
            .collect();
        for ei in edge_ids {
            let w = st.g.edges()[ei].other(v).to_string();
            if let Some(&nw) = st.num.get(w.as_str()) {
                // back edge (or parallel edge)
                if nw < st.num[v] {
                    st.edge_stack.push(ei);
                    let lv = st.low[v].min(nw);
                    st.low.insert(v, lv);
                }
            } else {
                st.edge_stack.push(ei);
                let mark = st.edge_stack.len() - 1;
                dfs(st, &w, Some(ei));
                let (lw, lv) = (st.low[w.as_str()], st.low[v]);
                st.low.insert(v, lv.min(lw));
                children += 1;
                if lw >= st.num[v] {
                    // v separates the subtree at w: pop a block
                    let block: Vec<usize> = st.edge_stack.split_off(mark);
                    st.blocks.push(block);
                    if parent_edge.is_some() || children > 1 {
                        st.cut_vertices.insert(v.to_string());
                    }
                }
            }
        }
    }

    let mut st = State {
        g,
        num: BTreeMap::new(),
        low: BTreeMap::new(),
        timer: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
        cut_vertices: BTreeSet::new(),
    };
    let roots: Vec<String> = g.vertices().map(|v| v.to_string()).collect();
    for v in &roots {
        if !st.num.contains_key(v.as_str()) {
            dfs(&mut st, v, None);
        }
    }

    let mut result = Vec::new();
    let mut covered: BTreeSet<&str> = BTreeSet::new();
    for block_edges in &st.blocks {
        let mut b = LabeledMultigraph::new();
        for &ei in block_edges {
            let e = &g.edges()[ei];
            b.add_edge(e.id.clone(), e.u.clone(), e.v.clone(), e.label).unwrap();
        }
        result.push(b);
    }
    for b in &result {
        for v in b.vertices() {
            covered.insert(g.vertices().find(|&x| x == v).unwrap());
        }
    }
    // Vertices in no block (isolated, or only loops) become trivial blocks.
    for v in g.vertices() {
        if !covered.contains(v) {
            let mut b = LabeledMultigraph::new();
            b.add_vertex(v);
            result.push(b);
        }
    }

    BlockDecomposition { blocks: result, cut_vertices: st.cut_vertices }
}

/// The bridges of `g`: non-loop edges alone in their block.
pub fn cut_edges(g: &LabeledMultigraph) -> Vec<String> {
    let mut bridges: Vec<String> = blocks(g)
        .blocks
        .iter()
        .filter(|b| b.edge_count() == 1)
        .map(|b| b.edges()[0].id.clone())
        .collect();
    bridges.sort();
    bridges
}

/// True iff `e` is a non-loop edge and the only edge between its endpoints.
pub fn is_singular_edge(g: &LabeledMultigraph, edge_id: &str) -> Result<bool, GraphError> {
    let e = g
        .edge(edge_id)
        .ok_or_else(|| GraphError::UnknownEdge(edge_id.to_string()))?;
    if e.is_loop() {
        return Ok(false);
    }
    let parallel = g.edges().iter().any(|f| {
        f.id != e.id
            && ((f.u == e.u && f.v == e.v) || (f.u == e.v && f.v == e.u))
    });
    Ok(!parallel)
}

/// Contracts star(v): identifies `v` and all its neighbors to one vertex,
/// deleting the edges incident to `v`. Other edges inside the identified
/// set become loops and are retained; labels are preserved.
///
/// The merged vertex is named by joining the `+`-separated parts of the
/// identified vertices in sorted order, so contracting the same region in
/// any order yields the same graph.
pub fn contract_star(g: &LabeledMultigraph, v: &str) -> Result<LabeledMultigraph, GraphError> {
    if !g.has_vertex(v) {
        return Err(GraphError::UnknownVertex(v.to_string()));
    }
    let mut merged: BTreeSet<String> = g.neighbors(v).iter().map(|s| s.to_string()).collect();
    merged.insert(v.to_string());

    let mut parts: BTreeSet<&str> = BTreeSet::new();
    for m in &merged {
        parts.extend(m.split('+'));
    }
    let w: String = parts.into_iter().collect::<Vec<_>>().join("+");

    let mut out = LabeledMultigraph::new();
    for x in g.vertices() {
        if !merged.contains(x) {
            out.add_vertex(x);
        }
    }
    out.add_vertex(w.clone());
    for e in g.edges() {
        if e.touches(v) {
            continue; // the star's own edges are deleted
        }
        let map = |x: &str| {
            if merged.contains(x) {
                w.clone()
            } else {
                x.to_string()
            }
        };
        out.add_edge(e.id.clone(), map(&e.u), map(&e.v), e.label).unwrap();
    }
    Ok(out)
}

/// Typed-multigraph isomorphism by backtracking over vertex bijections.
/// Intended for small graphs (cross-validation of Seifert graphs).
pub fn isomorphic(a: &LabeledMultigraph, b: &LabeledMultigraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let va: Vec<&str> = a.vertices().collect();
    let vb: Vec<&str> = b.vertices().collect();

    // multiset of labeled edges between a mapped pair must agree
    let sig = |g: &LabeledMultigraph, x: &str, y: &str| -> Vec<EdgeLabel> {
        let mut labels: Vec<EdgeLabel> = g
            .edges()
            .iter()
            .filter(|e| (e.u == x && e.v == y) || (e.u == y && e.v == x))
            .map(|e| e.label)
            .collect();
        labels.sort();
        labels
    };

    fn extend(
        va: &[&str],
        vb: &[&str],
        a: &LabeledMultigraph,
        b: &LabeledMultigraph,
        sig: &dyn Fn(&LabeledMultigraph, &str, &str) -> Vec<EdgeLabel>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = map.len();
        if i == va.len() {
            return true;
        }
        for j in 0..vb.len() {
            if used[j] {
                continue;
            }
            let consistent = (0..i).all(|k| sig(a, va[i], va[k]) == sig(b, vb[j], vb[map[k]]))
                && sig(a, va[i], va[i]) == sig(b, vb[j], vb[j]);
            if consistent {
                map.push(j);
                used[j] = true;
                if extend(va, vb, a, b, sig, map, used) {
                    return true;
                }
                used[j] = false;
                map.pop();
            }
        }
        false
    }

    let mut map = Vec::new();
    let mut used = vec![false; vb.len()];
    extend(&va, &vb, a, b, &sig, &mut map, &mut used)
}

/// Small named graphs used by the catalog and throughout the test suites.
pub mod testgraphs {
    use super::*;

    pub fn cycle(n: usize) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new();
        for i in 0..n {
            g.add_edge(
                format!("e{}", i + 1),
                format!("v{}", i + 1),
                format!("v{}", (i + 1) % n + 1),
                EdgeLabel::Plain,
            )
            .unwrap();
        }
        g
    }

    pub fn path(n: usize) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new();
        for i in 1..n {
            g.add_edge(
                format!("e{i}"),
                format!("v{i}"),
                format!("v{}", i + 1),
                EdgeLabel::Plain,
            )
            .unwrap();
        }
        g
    }

    pub fn parallel(k: usize) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new();
        for i in 0..k {
            g.add_edge(format!("e{}", i + 1), "u", "w", EdgeLabel::Plain).unwrap();
        }
        g
    }

    pub fn complete(n: usize) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new();
        let mut k = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                k += 1;
                g.add_edge(format!("e{k}"), format!("v{i}"), format!("v{j}"), EdgeLabel::Plain)
                    .unwrap();
            }
        }
        g
    }

    pub fn complete_bipartite(m: usize, n: usize) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new();
        let mut k = 0;
        for i in 1..=m {
            for j in 1..=n {
                k += 1;
                g.add_edge(format!("e{k}"), format!("a{i}"), format!("b{j}"), EdgeLabel::Plain)
                    .unwrap();
            }
        }
        g
    }

    /// Two C4's sharing the vertex `v1`.
    pub fn glued_c4s() -> LabeledMultigraph {
        let mut g = cycle(4);
        g.add_edge("f1", "v1", "w2", EdgeLabel::Plain).unwrap();
        g.add_edge("f2", "w2", "w3", EdgeLabel::Plain).unwrap();
        g.add_edge("f3", "w3", "w4", EdgeLabel::Plain).unwrap();
        g.add_edge("f4", "w4", "v1", EdgeLabel::Plain).unwrap();
        g
    }
}
