//! Exact planarity testing via the left-right criterion
//! (de Fraysseix-Rosenstiehl, in the formulation of Brandes).
//!
//! Parallel edges and loops never change planarity, so the test runs on
//! the underlying simple graph.

use std::collections::HashMap;

use super::LabeledMultigraph;

/// Planarity verdict. The non-planar certificate names either the edge
/// density violation or the pair of back edges whose nesting constraints
/// clash in the left-right test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planarity {
    Planar,
    NonPlanar(NonPlanarCert),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonPlanarCert {
    /// |E| > 3|V| - 6 on the underlying simple graph.
    TooManyEdges { vertices: usize, edges: usize },
    /// Two back edges forced to the same side but interleaved.
    Conflict { edge_a: (String, String), edge_b: (String, String) },
}

pub fn is_planar(g: &LabeledMultigraph) -> Planarity {
    // underlying simple graph
    let verts: Vec<&str> = g.vertices().collect();
    let index: HashMap<&str, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| {
            let (a, b) = (index[e.u.as_str()], index[e.v.as_str()]);
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();

    let n = verts.len();
    if n > 2 && pairs.len() > 3 * n - 6 {
        return Planarity::NonPlanar(NonPlanarCert::TooManyEdges {
            vertices: n,
            edges: pairs.len(),
        });
    }

    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &pairs {
        adj[a].push(b);
        adj[b].push(a);
    }

    match LrState::new(n, adj).run() {
        Ok(()) => Planarity::Planar,
        Err((ea, eb)) => {
            let name = |e: Edge| (verts[e.0].to_string(), verts[e.1].to_string());
            Planarity::NonPlanar(NonPlanarCert::Conflict { edge_a: name(ea), edge_b: name(eb) })
        }
    }
}

type Edge = (usize, usize);
const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Interval {
    low: Option<Edge>,
    high: Option<Edge>,
}

impl Interval {
    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState {
    adj: Vec<Vec<usize>>,
    height: Vec<usize>,
    parent_edge: Vec<Option<Edge>>,
    oriented: HashMap<Edge, ()>,
    lowpt: HashMap<Edge, usize>,
    lowpt2: HashMap<Edge, usize>,
    nesting_depth: HashMap<Edge, usize>,
    ordered_adj: Vec<Vec<usize>>,
    ref_edge: HashMap<Edge, Option<Edge>>,
    lowpt_edge: HashMap<Edge, Edge>,
    stack: Vec<ConflictPair>,
    stack_bottom: HashMap<Edge, usize>,
}

impl LrState {
    fn new(n: usize, adj: Vec<Vec<usize>>) -> Self {
        LrState {
            adj,
            height: vec![NONE; n],
            parent_edge: vec![None; n],
            oriented: HashMap::new(),
            lowpt: HashMap::new(),
            lowpt2: HashMap::new(),
            nesting_depth: HashMap::new(),
            ordered_adj: vec![Vec::new(); n],
            ref_edge: HashMap::new(),
            lowpt_edge: HashMap::new(),
            stack: Vec::new(),
            stack_bottom: HashMap::new(),
        }
    }

    fn run(&mut self) -> Result<(), (Edge, Edge)> {
        let n = self.adj.len();
        let mut roots = Vec::new();
        for v in 0..n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                roots.push(v);
                self.dfs_orientation(v);
            }
        }
        for v in 0..n {
            let mut out: Vec<usize> = self.adj[v]
                .iter()
                .copied()
                .filter(|&w| self.oriented.contains_key(&(v, w)))
                .collect();
            out.sort_by_key(|&w| self.nesting_depth[&(v, w)]);
            self.ordered_adj[v] = out;
        }
        for v in roots {
            self.dfs_testing(v)?;
        }
        Ok(())
    }

    fn dfs_orientation(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if self.oriented.contains_key(&(v, w)) || self.oriented.contains_key(&(w, v)) {
                continue;
            }
            let vw = (v, w);
            self.oriented.insert(vw, ());
            self.lowpt.insert(vw, self.height[v]);
            self.lowpt2.insert(vw, self.height[v]);
            if self.height[w] == NONE {
                self.parent_edge[w] = Some(vw);
                self.height[w] = self.height[v] + 1;
                self.dfs_orientation(w);
            } else {
                self.lowpt.insert(vw, self.height[w]);
            }
            let mut depth = 2 * self.lowpt[&vw];
            if self.lowpt2[&vw] < self.height[v] {
                depth += 1; // chordal
            }
            self.nesting_depth.insert(vw, depth);
            if let Some(e) = e {
                if self.lowpt[&vw] < self.lowpt[&e] {
                    let m = self.lowpt[&e].min(self.lowpt2[&vw]);
                    self.lowpt2.insert(e, m);
                    self.lowpt.insert(e, self.lowpt[&vw]);
                } else if self.lowpt[&vw] > self.lowpt[&e] {
                    let m = self.lowpt2[&e].min(self.lowpt[&vw]);
                    self.lowpt2.insert(e, m);
                } else {
                    let m = self.lowpt2[&e].min(self.lowpt2[&vw]);
                    self.lowpt2.insert(e, m);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: Edge) -> bool {
        match i.high {
            Some(h) => self.lowpt[&h] > self.lowpt[&b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[&r],
            (Some(l), None) => self.lowpt[&l],
            (Some(l), Some(r)) => self.lowpt[&l].min(self.lowpt[&r]),
            (None, None) => unreachable!("empty conflict pair on stack"),
        }
    }

    fn dfs_testing(&mut self, v: usize) -> Result<(), (Edge, Edge)> {
        let e = self.parent_edge[v];
        let order = self.ordered_adj[v].clone();
        for (idx, &w) in order.iter().enumerate() {
            let ei = (v, w);
            self.stack_bottom.insert(ei, self.stack.len());
            if self.parent_edge[w] == Some(ei) {
                self.dfs_testing(w)?;
            } else {
                // back edge
                self.lowpt_edge.insert(ei, ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval { low: Some(ei), high: Some(ei) },
                });
            }
            if self.lowpt[&ei] < self.height[v] {
                // ei has a return edge
                if idx == 0 {
                    if let Some(e) = e {
                        let le = self.lowpt_edge[&ei];
                        self.lowpt_edge.insert(e, le);
                    }
                } else {
                    self.add_constraints(ei, e.expect("non-first edge implies parent"))?;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        Ok(())
    }

    fn add_constraints(&mut self, ei: Edge, e: Edge) -> Result<(), (Edge, Edge)> {
        let mut p = ConflictPair::default();
        // merge the return edges of ei into p.right
        loop {
            let mut q = self.stack.pop().expect("stack bottom reached unexpectedly");
            if !q.left.empty() {
                q.swap();
            }
            if !q.left.empty() {
                // interleaved on both sides: not planar
                let a = q.left.low.unwrap();
                let b = q.right.low.unwrap_or(ei);
                return Err((a, b));
            }
            let q_low = q.right.low.expect("nonempty interval");
            if self.lowpt[&q_low] > self.lowpt[&e] {
                // merge intervals
                match p.right.low {
                    None => p.right.high = q.right.high,
                    Some(pl) => {
                        self.ref_edge.insert(pl, q.right.high);
                    }
                }
                p.right.low = q.right.low;
            } else {
                // align
                self.ref_edge.insert(q_low, Some(self.lowpt_edge[&e]));
            }
            if self.stack.len() == self.stack_bottom[&ei] {
                break;
            }
        }
        // merge conflicting return edges of e1..e_{i-1} into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                let a = q.right.high.unwrap();
                return Err((a, ei));
            }
            // merge interval below lowpt(ei) into p.right
            if let Some(pl) = p.right.low {
                self.ref_edge.insert(pl, q.right.high);
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            match p.left.low {
                None => p.left.high = q.left.high,
                Some(pl) => {
                    self.ref_edge.insert(pl, q.left.high);
                }
            }
            p.left.low = q.left.low;
        }
        if !(p.left.empty() && p.right.empty()) {
            self.stack.push(p);
        }
        Ok(())
    }

    fn remove_back_edges(&mut self, e: Edge) {
        let u = e.0;
        // drop entire conflict pairs returning to u
        while let Some(top) = self.stack.last() {
            if self.lowest(top) == self.height[u] {
                self.stack.pop();
            } else {
                break;
            }
        }
        // trim the remaining topmost pair
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if h.1 == u {
                    p.left.high = self.ref_edge.get(&h).copied().flatten();
                } else {
                    break;
                }
            }
            if p.left.high.is_none() && p.left.low.is_some() {
                let pl = p.left.low.unwrap();
                self.ref_edge.insert(pl, p.right.low);
                p.left.low = None;
            }
            while let Some(h) = p.right.high {
                if h.1 == u {
                    p.right.high = self.ref_edge.get(&h).copied().flatten();
                } else {
                    break;
                }
            }
            if p.right.high.is_none() && p.right.low.is_some() {
                let pr = p.right.low.unwrap();
                self.ref_edge.insert(pr, p.left.low);
                p.right.low = None;
            }
            self.stack.push(p);
        }
        // e keeps the side of its highest surviving return edge
        if self.lowpt[&e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                let pick = match (hl, hr) {
                    (Some(l), Some(r)) => {
                        if self.lowpt[&l] > self.lowpt[&r] {
                            Some(l)
                        } else {
                            Some(r)
                        }
                    }
                    (Some(l), None) => Some(l),
                    (None, r) => r,
                };
                self.ref_edge.insert(e, pick);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::testgraphs::*;
    use super::super::{EdgeLabel, LabeledMultigraph};
    use super::*;

    #[test]
    fn small_classics() {
        assert!(is_planar(&complete(4)).is_planar());
        assert!(!is_planar(&complete(5)).is_planar());
        assert!(!is_planar(&complete_bipartite(3, 3)).is_planar());
        assert!(is_planar(&complete_bipartite(2, 3)).is_planar());
        assert!(is_planar(&cycle(7)).is_planar());
        assert!(is_planar(&glued_c4s()).is_planar());
    }

    #[test]
    fn parallel_edges_and_loops_ignored() {
        let mut g = complete(4);
        g.add_edge("p1", "v1", "v2", EdgeLabel::Plain).unwrap();
        g.add_edge("p2", "v1", "v2", EdgeLabel::Plain).unwrap();
        assert!(is_planar(&g).is_planar());
    }

    #[test]
    fn k5_subdivision_nonplanar() {
        // subdivide one K5 edge: still contains a K5 subdivision
        let mut g = LabeledMultigraph::new();
        let mut k = 0;
        for i in 1..=5 {
            for j in i + 1..=5 {
                k += 1;
                if (i, j) == (1, 2) {
                    g.add_edge("s1", "v1", "m", EdgeLabel::Plain).unwrap();
                    g.add_edge("s2", "m", "v2", EdgeLabel::Plain).unwrap();
                } else {
                    g.add_edge(format!("e{k}"), format!("v{i}"), format!("v{j}"), EdgeLabel::Plain)
                        .unwrap();
                }
            }
        }
        assert!(!is_planar(&g).is_planar());
    }

    #[test]
    fn petersen_nonplanar() {
        let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
        let inner = [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)];
        let mut g = LabeledMultigraph::new();
        for (k, (a, b)) in outer.iter().chain(&spokes).chain(&inner).enumerate() {
            g.add_edge(format!("e{k}"), format!("v{a}"), format!("v{b}"), EdgeLabel::Plain)
                .unwrap();
        }
        assert!(!is_planar(&g).is_planar());
    }

    #[test]
    fn grid_planar() {
        let mut g = LabeledMultigraph::new();
        let n = 8;
        let mut k = 0;
        for i in 0..n {
            for j in 0..n {
                if i + 1 < n {
                    k += 1;
                    g.add_edge(format!("e{k}"), format!("v{i}_{j}"), format!("v{}_{j}", i + 1), EdgeLabel::Plain).unwrap();
                }
                if j + 1 < n {
                    k += 1;
                    g.add_edge(format!("e{k}"), format!("v{i}_{j}"), format!("v{i}_{}", j + 1), EdgeLabel::Plain).unwrap();
                }
            }
        }
        assert!(is_planar(&g).is_planar());
    }

    #[test]
    fn disconnected_components() {
        let mut g = complete(4);
        g.add_edge("x1", "w1", "w2", EdgeLabel::Plain).unwrap();
        g.add_edge("x2", "w2", "w3", EdgeLabel::Plain).unwrap();
        g.add_edge("x3", "w3", "w1", EdgeLabel::Plain).unwrap();
        assert!(is_planar(&g).is_planar());
    }

    #[test]
    fn goldner_harary_maximal_planar() {
        let edges = [
            (1, 2), (1, 3), (1, 4), (1, 5), (1, 7), (1, 8), (1, 10), (1, 11),
            (2, 3), (2, 4), (2, 6), (2, 7), (2, 9), (2, 10), (2, 11),
            (3, 4), (4, 5), (4, 6), (4, 7), (5, 7), (6, 7),
            (7, 8), (7, 9), (7, 10), (8, 10), (9, 10), (10, 11),
        ];
        let mut g = LabeledMultigraph::new();
        for (k, (a, b)) in edges.iter().enumerate() {
            g.add_edge(format!("e{k}"), format!("v{a}"), format!("v{b}"), EdgeLabel::Plain)
                .unwrap();
        }
        assert!(is_planar(&g).is_planar());
        // adding any edge must break planarity (maximal planar graph)
        let mut h = g.clone();
        h.add_edge("extra", "v3", "v11", EdgeLabel::Plain).unwrap();
        assert!(!is_planar(&h).is_planar());
    }
}
