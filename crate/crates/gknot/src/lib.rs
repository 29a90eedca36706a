//! Generalized link diagrams, Seifert circles and graphs, the graph
//! index and its type-restricted variants, and the crossing-number and
//! braid-index bounds they imply.
//!
//! Diagrams are purely combinatorial: crossings with counterclockwise
//! port rotations, validated to be realizable on a sphere. Braid words
//! close up to diagrams; the Seifert engine smooths diagrams into circles
//! and builds the typed Seifert graph; the index machinery computes
//! certified independence numbers; the bound checker turns them into
//! verdicts.

pub mod bounds;
pub mod braid;
pub mod catalog;
pub mod codec;
pub mod diagram;
pub mod graph;
pub mod index;
pub mod seifert;
pub mod sweep;

pub use bounds::{braid_index_report, crossing_bound, edge_bound_check, BoundReport, Verdict};
pub use braid::{closure, word_seifert_graph, BraidWord};
pub use diagram::{validate, Crossing, CrossingType, Diagram, TheoryFamily, TheoryName};
pub use graph::LabeledMultigraph;
pub use index::{ind, ind_by_blocks, IndCertificate, TypeFilter};
pub use seifert::{circle_count, nugatory_set, seifert_circles, seifert_graph};
