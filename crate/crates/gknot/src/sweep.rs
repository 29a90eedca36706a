//! Seeded randomized falsification sweeps: generate braid words, take
//! their closures, and check every invariant and inequality the library
//! claims. Any violation is a bug, reported with a reproducer word.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::braid::{closure, word_seifert_graph, BraidWord};
use crate::bounds::{crossing_bound, edge_bound_check, Verdict};
use crate::codec::{parse_braid, parse_diagram, serialize_braid, serialize_diagram};
use crate::diagram::{curve_components, validate, CrossingType};
use crate::graph::planarity::{is_planar, Planarity};
use crate::graph::{cut_edges, is_bipartite, isomorphic, Bipartiteness};
use crate::index::{ind, ind_by_blocks, TypeFilter};
use crate::seifert::{circle_count, is_nugatory, seifert_graph};

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub seed: u64,
    pub count: usize,
    pub max_strands: usize,
    pub max_length: usize,
    pub types: Vec<CrossingType>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 1,
            count: 1000,
            max_strands: 6,
            max_length: 12,
            types: CrossingType::ALL.to_vec(),
        }
    }
}

/// One failed check: the property name, a human-readable detail, and the
/// word that reproduces it (in BraidText).
#[derive(Debug, Clone)]
pub struct SweepViolation {
    pub property: &'static str,
    pub detail: String,
    pub reproducer: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    pub words: usize,
    pub checks: usize,
    pub thm1_checked: usize,
    pub thm1_skipped: usize,
    pub additivity_skipped: usize,
    pub violations: Vec<SweepViolation>,
    pub notes: Vec<String>,
}

impl SweepOutcome {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Deterministic word generator: strand count in `1..=max_strands`,
/// length in `0..=max_length`, letters drawn uniformly from the
/// configured types and positions.
pub fn random_word(rng: &mut ChaCha8Rng, cfg: &SweepConfig) -> BraidWord {
    let n = rng.gen_range(1..=cfg.max_strands.max(1));
    let len = if n == 1 { 0 } else { rng.gen_range(0..=cfg.max_length) };
    let letters = (0..len)
        .map(|_| {
            let t = cfg.types[rng.gen_range(0..cfg.types.len())];
            (t, rng.gen_range(1..n))
        })
        .collect();
    BraidWord::new(n, letters).expect("generated letters are in range")
}

pub fn generate_corpus(cfg: &SweepConfig) -> Vec<BraidWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.count).map(|_| random_word(&mut rng, cfg)).collect()
}

/// Runs the full property suite over `cfg.count` random words. Checks:
/// closure validity, Seifert-graph bipartiteness and planarity, the
/// word-level oracle isomorphism, `S = n`, `tc = |w|`, curve count =
/// permutation cycle count, the crossing bound on nugatory-free
/// connected-Γ closures, block additivity of the index, the edge bound,
/// nugatory agreement with the word-level oracle, `S − ind ≤ n`, and
/// codec round-trips.
pub fn run_sweep(cfg: &SweepConfig) -> SweepOutcome {
    let mut out = SweepOutcome::default();
    let filters = [TypeFilter::All, TypeFilter::only([CrossingType::Virtual])];
    for w in generate_corpus(cfg) {
        out.words += 1;
        let reproducer = serialize_braid(&w);
        let fail = |property: &'static str, detail: String, out: &mut SweepOutcome| {
            out.violations.push(SweepViolation {
                property,
                detail,
                reproducer: reproducer.clone(),
            });
        };

        let d = closure(&w);
        out.checks += 1;
        let report = validate(&d);
        if !report.is_valid() {
            fail("closure_valid", report.to_string(), &mut out);
            continue;
        }

        let gamma = match seifert_graph(&d) {
            Ok(g) => g,
            Err(e) => {
                fail("seifert_graph", e.to_string(), &mut out);
                continue;
            }
        };

        out.checks += 1;
        if let Bipartiteness::OddCycle(c) = is_bipartite(&gamma) {
            fail("gamma_bipartite", format!("odd cycle {c:?}"), &mut out);
        }
        out.checks += 1;
        if let Planarity::NonPlanar(cert) = is_planar(&gamma) {
            fail("gamma_planar", format!("{cert:?}"), &mut out);
        }

        out.checks += 1;
        let oracle = word_seifert_graph(&w);
        if !isomorphic(&gamma, &oracle) {
            fail("word_oracle_isomorphic", "engine and word-level graphs differ".into(), &mut out);
        }

        out.checks += 1;
        let s = circle_count(&d).unwrap();
        if s != w.strands() {
            fail("circles_equal_strands", format!("S={s}, n={}", w.strands()), &mut out);
        }
        out.checks += 1;
        if d.crossing_count() != w.len() {
            fail(
                "crossings_equal_length",
                format!("tc={}, |w|={}", d.crossing_count(), w.len()),
                &mut out,
            );
        }
        out.checks += 1;
        let curves = curve_components(&d).unwrap();
        if curves != w.permutation_cycles() {
            fail(
                "curves_equal_cycles",
                format!("curves={curves}, cycles={}", w.permutation_cycles()),
                &mut out,
            );
        }

        // nugatory verdicts vs a word-level oracle: smoothing letter k is
        // the closure of the word without it, and the closure's shadow
        // components are the components of the column graph with one edge
        // {i, i+1} per letter
        let column_components = |letters: &[(CrossingType, usize)]| {
            let n = w.strands();
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            for &(_, i) in letters {
                let (a, b) = (find(&mut parent, i - 1), find(&mut parent, i));
                parent[a] = b;
            }
            (0..n).map(|x| find(&mut parent, x)).collect::<std::collections::BTreeSet<_>>().len()
        };
        out.checks += 1;
        let comps = column_components(w.letters());
        for (k, _) in w.letters().iter().enumerate() {
            let id = format!("x{}", k + 1);
            let engine = is_nugatory(&d, &id).unwrap();
            let mut rest = w.letters().to_vec();
            rest.remove(k);
            let oracle = column_components(&rest) > comps;
            if engine != oracle {
                fail(
                    "nugatory_oracle",
                    format!("crossing {id}: engine={engine}, word oracle={oracle}"),
                    &mut out,
                );
            }
        }

        // the crossing bound is a theorem on nugatory-free diagrams with
        // connected Seifert graph; skips are counted, not silently dropped
        let report = crossing_bound(&d, &TypeFilter::All).unwrap();
        match report.thm1_ok {
            Verdict::Holds => out.thm1_checked += 1,
            Verdict::Violated => {
                out.thm1_checked += 1;
                fail(
                    "crossing_bound",
                    format!("tc={} < 2(S - ind - 1), S={}, ind={}", report.tc, report.s, report.ind_value),
                    &mut out,
                );
            }
            Verdict::PreconditionFailed(_) => out.thm1_skipped += 1,
        }

        // a crossing is nugatory exactly when its edge is a cut edge of
        // the Seifert graph; check the two computations agree
        out.checks += 1;
        let bridges = cut_edges(&gamma);
        let mut nugatory: Vec<String> = d
            .crossings
            .iter()
            .filter(|c| is_nugatory(&d, &c.id).unwrap())
            .map(|c| c.id.clone())
            .collect();
        nugatory.sort();
        if nugatory != bridges {
            fail(
                "nugatory_is_gamma_cut_edge",
                format!("nugatory={nugatory:?}, cut edges={bridges:?}"),
                &mut out,
            );
        }

        // block additivity is checked on cut-edge-free graphs; single-edge
        // blocks each claim index 1, which overshoots the pairwise
        // non-adjacency constraint across a bridge
        if bridges.is_empty() {
            out.checks += 1;
            for f in &filters {
                let (direct, _) = ind(&gamma, f);
                match ind_by_blocks(&gamma, f) {
                    Ok(by_blocks) if by_blocks == direct => {}
                    Ok(by_blocks) => fail(
                        "block_additivity",
                        format!("filter {f}: direct={direct}, blocks={by_blocks}"),
                        &mut out,
                    ),
                    Err(e) => fail("block_additivity", e.to_string(), &mut out),
                }
            }
        } else {
            out.additivity_skipped += 1;
        }

        out.checks += 1;
        if edge_bound_check(&gamma) == Verdict::Violated {
            fail("edge_bound", "Seifert graph violates the edge bound".into(), &mut out);
        }

        out.checks += 1;
        let (i, _) = ind(&gamma, &TypeFilter::All);
        if s - i > w.strands() {
            fail("gb_upper_le_strands", format!("S - ind = {} > n", s - i), &mut out);
        }

        out.checks += 1;
        match parse_braid(&reproducer) {
            Ok(back) if back == w => {}
            Ok(_) => fail("braid_round_trip", "re-parsed word differs".into(), &mut out),
            Err(e) => fail("braid_round_trip", e.to_string(), &mut out),
        }
        let text = serialize_diagram(&d);
        match parse_diagram(&text) {
            Ok(back) if serialize_diagram(&back) == text => {}
            Ok(_) => fail("diagram_round_trip", "serialization not stable".into(), &mut out),
            Err(e) => fail("diagram_round_trip", e.to_string(), &mut out),
        }
    }
    if out.thm1_skipped > 0 {
        out.notes.push(format!(
            "crossing bound skipped on {} words (nugatory crossings or split Seifert graph)",
            out.thm1_skipped
        ));
    }
    if out.additivity_skipped > 0 {
        out.notes.push(format!(
            "block additivity skipped on {} words (Seifert graph has cut edges)",
            out.additivity_skipped
        ));
    }
    out
}
