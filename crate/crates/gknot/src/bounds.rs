//! Verdict reports for the index-based inequalities: the graph edge
//! bound, the crossing-number bound, and the braid-index upper bound.

use thiserror::Error;

use crate::diagram::{theory_check, Diagram, TheoryFamily};
use crate::graph::planarity::{is_planar, Planarity};
use crate::graph::{cut_edges, is_bipartite, Bipartiteness, LabeledMultigraph};
use crate::index::{ind, IndCertificate, TypeFilter};
use crate::seifert::{circle_count, nugatory_set, seifert_graph, SeifertError};

/// Outcome of one inequality check. `PreconditionFailed` lists the
/// hypotheses that did not hold, in which case the inequality was not
/// evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    PreconditionFailed(Vec<String>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Holds => f.write_str("HOLDS"),
            Verdict::Violated => f.write_str("VIOLATED"),
            Verdict::PreconditionFailed(reasons) => {
                write!(f, "PRECONDITION_FAILED({})", reasons.join("; "))
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum BoundError {
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error("diagram has no theory tag; gb bounds need one")]
    NoTheory,
    #[error("{0} is not GR-compatible in {1}")]
    NotGrCompatible(String, String),
}

impl From<crate::diagram::DiagramError> for BoundError {
    fn from(e: crate::diagram::DiagramError) -> Self {
        BoundError::Seifert(SeifertError::Diagram(e))
    }
}

/// Full verdict report for one diagram. `gb_upper` and `thm2_rhs` are
/// present only when the filter is licensed by the diagram's theory, and
/// `gb_upper` is always an upper bound on the braid index, never its
/// value.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub s: usize,
    pub tc: usize,
    pub ind_value: usize,
    pub filter: TypeFilter,
    pub certificate: IndCertificate,
    pub nugatory: Vec<String>,
    pub edge_bound_ok: Verdict,
    pub thm1_ok: Verdict,
    pub thm2_ok: Verdict,
    pub gb_upper: Option<usize>,
    pub thm2_rhs: Option<i64>,
    pub assumptions: Vec<String>,
}

impl BoundReport {
    /// True when every verdict that was evaluated holds and none is
    /// violated; precondition failures make it false.
    pub fn all_hold(&self) -> bool {
        [&self.edge_bound_ok, &self.thm1_ok, &self.thm2_ok]
            .iter()
            .all(|v| v.holds())
    }

    pub fn any_violated(&self) -> bool {
        [&self.edge_bound_ok, &self.thm1_ok, &self.thm2_ok]
            .iter()
            .any(|v| matches!(v, Verdict::Violated))
    }
}

/// Checks `|E| ≥ 2(|V| − ind − 1)` with the unrestricted index, after
/// verifying the hypotheses: connected, planar, bipartite, no cut edge.
pub fn edge_bound_check(g: &LabeledMultigraph) -> Verdict {
    let mut failed = Vec::new();
    if !g.is_connected() {
        failed.push("graph is not connected".to_string());
    }
    if let Planarity::NonPlanar(_) = is_planar(g) {
        failed.push("graph is not planar".to_string());
    }
    if let Bipartiteness::OddCycle(_) = is_bipartite(g) {
        failed.push("graph is not bipartite".to_string());
    }
    let cuts = cut_edges(g);
    if !cuts.is_empty() {
        failed.push(format!("cut edges: {}", cuts.join(", ")));
    }
    if !failed.is_empty() {
        return Verdict::PreconditionFailed(failed);
    }
    let (i, _) = ind(g, &TypeFilter::All);
    let rhs = 2 * (g.vertex_count() as i64 - i as i64 - 1);
    if g.edge_count() as i64 >= rhs {
        Verdict::Holds
    } else {
        Verdict::Violated
    }
}

/// Checks the crossing-number bound `tc ≥ 2(S − ind − 1)` on a diagram.
/// Requires no nugatory crossings (so that every crossing counts towards
/// tc) and a connected Seifert graph; failures of either are reported,
/// not assumed away.
pub fn crossing_bound(d: &Diagram, filter: &TypeFilter) -> Result<BoundReport, BoundError> {
    let gamma = seifert_graph(d)?;
    let s = circle_count(d)?;
    let tc = d.crossing_count();
    let nugatory = nugatory_set(d)?;
    let (ind_value, certificate) = ind(&gamma, filter);

    let mut assumptions = Vec::new();
    let mut failed = Vec::new();
    if nugatory.is_empty() {
        assumptions.push("no nugatory crossings: ok".to_string());
    } else {
        let note = format!("nugatory crossings present: {}", nugatory.join(", "));
        assumptions.push(note.clone());
        failed.push(note);
    }
    if gamma.is_connected() {
        assumptions.push("Seifert graph connected: ok".to_string());
    } else {
        let note = "Seifert graph is disconnected (split diagram); the bound applies per component"
            .to_string();
        assumptions.push(note.clone());
        failed.push(note);
    }
    assumptions.push(format!("index filter: {filter}"));

    let thm1_rhs = 2 * (s as i64 - ind_value as i64 - 1);
    let thm1_ok = if !failed.is_empty() {
        Verdict::PreconditionFailed(failed)
    } else if tc as i64 >= thm1_rhs {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    let edge_bound_ok = edge_bound_check(&gamma);

    Ok(BoundReport {
        s,
        tc,
        ind_value,
        filter: filter.clone(),
        certificate,
        nugatory,
        edge_bound_ok,
        thm1_ok,
        thm2_ok: Verdict::PreconditionFailed(vec![
            "braid-index chain not evaluated; use braid_index_report".to_string(),
        ]),
        gb_upper: None,
        thm2_rhs: None,
        assumptions,
    })
}

fn check_gr_compatible(filter: &TypeFilter, theory: &TheoryFamily) -> Result<(), BoundError> {
    for t in filter.crossing_types() {
        if !theory.gr_compatible.contains(&t) {
            return Err(BoundError::NotGrCompatible(
                format!("{t:?}"),
                theory.name.as_str().to_string(),
            ));
        }
    }
    Ok(())
}

/// Upper bound `S − ind` on the braid index, together with the
/// contraction certificate realizing it: each step merges two Seifert
/// circles, so `ind` steps take the diagram to one with `S − ind`
/// circles.
///
/// The filter must be a subset of the theory's GR-compatible types,
/// otherwise the circle merges are not available and the bound is not
/// licensed.
pub fn gb_upper_bound(
    d: &Diagram,
    filter: &TypeFilter,
) -> Result<(usize, IndCertificate), BoundError> {
    let theory = TheoryFamily::of(d.theory.ok_or(BoundError::NoTheory)?);
    check_gr_compatible(filter, &theory)?;
    let gamma = seifert_graph(d)?;
    let s = circle_count(d)?;
    let (i, cert) = ind(&gamma, filter);
    Ok((s - i, cert))
}

/// Full chain report with the theory's own GR-compatible filter:
/// `tc ≥ 2(S − ind − 1) = 2(gb_upper − 1) ≥ 2(gb − 1)`. The first
/// inequality is verified; the rest is reported as an upper bound on the
/// braid index.
pub fn braid_index_report(d: &Diagram, theory: &TheoryFamily) -> Result<BoundReport, BoundError> {
    let filter = TypeFilter::only(theory.gr_compatible.iter().copied());
    let mut report = crossing_bound(d, &filter)?;
    let mut failed = Vec::new();
    if theory_check(d, theory) {
        report
            .assumptions
            .push(format!("crossing types allowed in {}: ok", theory.name));
    } else {
        let note = format!("diagram uses crossings outside {}", theory.name);
        report.assumptions.push(note.clone());
        failed.push(note);
    }
    if !report.nugatory.is_empty() {
        failed.push(format!(
            "nugatory crossings present: {}",
            report.nugatory.join(", ")
        ));
    }
    if !failed.is_empty() {
        report.thm2_ok = Verdict::PreconditionFailed(failed);
        return Ok(report);
    }
    let gb_upper = report.s - report.ind_value;
    let rhs = 2 * (gb_upper as i64 - 1);
    report.gb_upper = Some(gb_upper);
    report.thm2_rhs = Some(rhs);
    report.thm2_ok = if matches!(report.thm1_ok, Verdict::PreconditionFailed(_)) {
        report.thm1_ok.clone()
    } else if report.tc as i64 >= rhs {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    Ok(report)
}
