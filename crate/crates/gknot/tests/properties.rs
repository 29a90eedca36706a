//! Property tests over randomly generated words and graphs.

use proptest::prelude::*;

use gknot::braid::{closure, BraidWord};
use gknot::codec::{parse_braid, parse_diagram, serialize_braid, serialize_diagram};
use gknot::diagram::{validate, CrossingType};
use gknot::graph::{EdgeLabel, LabeledMultigraph};
use gknot::index::{ind, TypeFilter};
use gknot::seifert::circle_count;

fn arb_type() -> impl Strategy<Value = CrossingType> {
    prop_oneof![
        Just(CrossingType::RealPos),
        Just(CrossingType::RealNeg),
        Just(CrossingType::Virtual),
        Just(CrossingType::Flat),
        Just(CrossingType::Singular),
    ]
}

fn arb_word() -> impl Strategy<Value = BraidWord> {
    (2usize..=5)
        .prop_flat_map(|n| {
            prop::collection::vec((arb_type(), 1..n), 0..=10)
                .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
        })
}

fn arb_graph() -> impl Strategy<Value = LabeledMultigraph> {
    (2usize..=5)
        .prop_flat_map(|n| prop::collection::vec((0..n, 0..n, arb_type()), 0..=8))
        .prop_map(|edges| {
            let mut g = LabeledMultigraph::new();
            for (k, (u, v, t)) in edges.into_iter().enumerate() {
                if u == v {
                    continue;
                }
                g.add_edge(format!("e{k}"), format!("v{u}"), format!("v{v}"), EdgeLabel::Typed(t))
                    .unwrap();
            }
            g
        })
}

proptest! {
    #[test]
    fn closures_validate_with_n_circles(w in arb_word()) {
        let d = closure(&w);
        prop_assert!(validate(&d).is_valid());
        prop_assert_eq!(circle_count(&d).unwrap(), w.strands());
        prop_assert_eq!(gknot::diagram::curve_components(&d).unwrap(), w.permutation_cycles());
    }

    #[test]
    fn braid_text_round_trips(w in arb_word()) {
        prop_assert_eq!(&parse_braid(&serialize_braid(&w)).unwrap(), &w);
    }

    #[test]
    fn diagram_serialization_is_stable(w in arb_word()) {
        let text = serialize_diagram(&closure(&w));
        let back = parse_diagram(&text).unwrap();
        prop_assert_eq!(serialize_diagram(&back), text);
    }

    #[test]
    fn ind_bounded_by_matching_and_monotone(g in arb_graph()) {
        let (all, cert) = ind(&g, &TypeFilter::All);
        prop_assert_eq!(cert.len(), all);
        // a filter can only shrink the candidate set
        for f in ["0", "+", "-", "0-", "+-"] {
            let f = TypeFilter::parse_variant(f).unwrap();
            prop_assert!(ind(&g, &f).0 <= all);
        }
        // conditions 1-2 are a matching constraint on singular edges
        let singular = g
            .edges()
            .iter()
            .filter(|e| gknot::graph::is_singular_edge(&g, &e.id).unwrap())
            .count();
        prop_assert!(all <= singular);
    }
}
