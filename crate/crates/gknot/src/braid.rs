//! Generalized braid words, their annular closure, and a word-level
//! Seifert-graph model used as an independent oracle.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{Crossing, CrossingType, Diagram, Dir, Port};
use crate::graph::{EdgeLabel, LabeledMultigraph};

/// A braid word on `n` strands: typed letters at positions `1..=n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    n: usize,
    letters: Vec<(CrossingType, usize)>,
}

#[derive(Debug, Error)]
pub enum BraidError {
    #[error("strand count must be at least 1")]
    NoStrands,
    #[error("position {position} out of range for n={n}")]
    PositionOutOfRange { position: usize, n: usize },
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<(CrossingType, usize)>) -> Result<Self, BraidError> {
        if n < 1 {
            return Err(BraidError::NoStrands);
        }
        for &(_, i) in &letters {
            if i < 1 || i >= n {
                return Err(BraidError::PositionOutOfRange { position: i, n });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[(CrossingType, usize)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Permutation of strand positions induced by through-pairing: one
    /// transposition `(i, i+1)` per letter, composed in word order.
    /// Returns the image of each starting position (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        for &(_, i) in &self.letters {
            perm.swap(i - 1, i);
        }
        perm
    }

    /// Cycle count of [`Self::permutation`]; equals the closed-curve
    /// count of the closure.
    pub fn permutation_cycles(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.n];
        let mut cycles = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = perm[cur];
            }
            cycles += 1;
        }
        cycles
    }
}

/// Standard annular closure of a braid word. Strands run coherently
/// downward; each letter becomes one crossing between columns `i` and
/// `i+1`. Columns that meet no crossing close up as free loops.
///
/// Arc names are deterministic: `a<row>_<column>` for the arc emitted at
/// a crossing, with the closure identifying each column's last arc with
/// its first.
pub fn closure(w: &BraidWord) -> Diagram {
    let n = w.strands();
    // placeholder names for the arcs entering the first crossing per column
    let mut cur: Vec<String> = (1..=n).map(|j| format!("t{j}")).collect();
    let mut crossings = Vec::new();
    for (row, &(ctype, i)) in w.letters().iter().enumerate() {
        let row = row + 1;
        let (l, r) = (i - 1, i);
        let out_l = format!("a{row}_{i}");
        let out_r = format!("a{row}_{}", i + 1);
        // counterclockwise from the upper-right port: the two incoming
        // arcs then the two outgoing ones
        crossings.push(Crossing {
            id: format!("x{row}"),
            ctype,
            ports: [
                Port::new(cur[r].clone(), Dir::In),
                Port::new(cur[l].clone(), Dir::In),
                Port::new(out_l.clone(), Dir::Out),
                Port::new(out_r.clone(), Dir::Out),
            ],
        });
        cur[l] = out_l;
        cur[r] = out_r;
    }
    // close up: each column's final arc is its initial arc
    let mut free_loops = 0;
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    for j in 1..=n {
        let placeholder = format!("t{j}");
        if cur[j - 1] == placeholder {
            free_loops += 1; // column never crossed
        } else {
            rename.insert(placeholder, cur[j - 1].clone());
        }
    }
    for c in &mut crossings {
        for p in &mut c.ports {
            if let Some(name) = rename.get(&p.arc) {
                p.arc = name.clone();
            }
        }
    }
    Diagram { crossings, free_loops, theory: None }
}

/// Word-level Seifert graph: coherent smoothing keeps every strand in its
/// column, so circles are exactly the strands and each letter contributes
/// one edge between neighboring columns.
pub fn word_seifert_graph(w: &BraidWord) -> LabeledMultigraph {
    let mut g = LabeledMultigraph::new();
    for j in 1..=w.strands() {
        g.add_vertex(format!("s{j}"));
    }
    for (k, &(ctype, i)) in w.letters().iter().enumerate() {
        g.add_edge(
            format!("x{}", k + 1),
            format!("s{i}"),
            format!("s{}", i + 1),
            EdgeLabel::Typed(ctype),
        )
        .expect("letter ids are unique");
    }
    g
}

/// Word length, strand count and crossing-type histogram.
pub fn word_stats(w: &BraidWord) -> (usize, usize, BTreeMap<CrossingType, usize>) {
    let mut histogram = BTreeMap::new();
    for &(t, _) in w.letters() {
        *histogram.entry(t).or_insert(0) += 1;
    }
    (w.len(), w.strands(), histogram)
}
