mod common;

use common::*;
use proptest::prelude::*;
use tricolour::domination::{at_most_two_everywhere, min_cover, CoverOutcome, DominationRelation};
use tricolour::search::{ColourCount, EnumerationSpec};
use tricolour::vertex_set::VertexSet;
use tricolour::{dominated_by_all, dominating_vertices, find_rainbow_triangle, Colour};

proptest! {
    #[test]
    fn closure_matches_bfs(t in arb_tournament(2, 9)) {
        let rel = DominationRelation::new(&t);
        for x in 0..t.order() {
            for y in 0..t.order() {
                if x != y {
                    prop_assert_eq!(rel.dominates(x, y).unwrap(), bfs_colours(&t, x, y));
                }
            }
        }
        let expected: VertexSet = bfs_dominating(&t).into_iter().collect();
        prop_assert_eq!(dominating_vertices(&t), expected);
    }

    #[test]
    fn reversal_swaps_direction(t in arb_tournament(2, 8)) {
        let (a, b) = (DominationRelation::new(&t), DominationRelation::new(&t.reverse()));
        for x in 0..t.order() {
            for y in 0..t.order() {
                if x != y {
                    prop_assert_eq!(a.colours(x, y), b.colours(y, x));
                }
            }
        }
        prop_assert_eq!(dominating_vertices(&t), dominated_by_all(&t.reverse()));
    }

    #[test]
    fn subtournament_closure_only_uses_its_vertices(t in arb_tournament(3, 8), mask in any::<u32>()) {
        let scope = VertexSet::from_bits(mask).intersection(t.vertices());
        let rel = DominationRelation::within(&t, scope);
        let keep: Vec<usize> = scope.iter().collect();
        for &x in &keep {
            for &y in &keep {
                for c in Colour::ALL {
                    // reachability inside the induced subtournament, by DFS
                    let mut seen = VertexSet::EMPTY;
                    let mut stack = vec![x];
                    while let Some(u) = stack.pop() {
                        for &v in &keep {
                            if !seen.contains(v) && t.arc(u, v) == Some(c) {
                                seen.insert(v);
                                stack.push(v);
                            }
                        }
                    }
                    prop_assert_eq!(rel.reaches(c, x, y), seen.contains(y));
                }
            }
        }
    }

    #[test]
    fn two_coloured_tournaments_have_a_dominating_vertex(t in arb_two_coloured(1, 10)) {
        prop_assert!(!dominating_vertices(&t).is_empty());
    }

    #[test]
    fn min_cover_is_minimal(t in arb_tournament(1, 6)) {
        let cover = min_cover(&t, 4).unwrap().cover().unwrap();
        let n = t.order();
        let covers = |s: u32| (0..n).all(|y| (0..n).any(|x| s >> x & 1 == 1 && (x == y || !bfs_colours(&t, x, y).is_empty())));
        prop_assert!(covers(cover.members.bits()));
        prop_assert_eq!(cover.members.len(), cover.order);
        for s in 0u32..1 << n {
            if (s.count_ones() as usize) < cover.order {
                prop_assert!(!covers(s));
            }
        }
    }

    #[test]
    fn rainbow_witnesses_hold(t in arb_tournament(3, 8), cyclic in any::<bool>()) {
        if let Some(w) = find_rainbow_triangle(&t, cyclic) {
            prop_assert!(w.holds_in(&t));
            prop_assert!(!cyclic || w.cyclic);
        }
    }
}

#[test]
fn t3_has_cover_order_two() {
    assert_eq!(
        min_cover(&t3(), 4).unwrap().cover().unwrap().members,
        [0, 1].into_iter().collect()
    );
    assert_eq!(min_cover(&t3(), 1).unwrap(), CoverOutcome::NoneWithin(1));
}

#[test]
fn sampled_class_instances_use_two_colours_per_vertex() {
    let spec = EnumerationSpec::sampled(7, ColourCount::Three, 9, 500)
        .with_filter(tricolour::search::Filter::TwoColourVertices);
    for i in 0..500 {
        assert!(at_most_two_everywhere(&spec.instance(i).unwrap()));
    }
}
