mod common;

use common::*;
use proptest::prelude::*;
use tricolour::auditor::hamilton::certificate_holds;
use tricolour::auditor::partition::{descent_start, ObstructionKind, ProfileClass};
use tricolour::auditor::*;
use tricolour::domination::{dominates, DominationRelation};
use tricolour::search::{ColourCount, EnumerationSpec};
use tricolour::vertex_set::VertexSet;
use tricolour::{Colour, ColouredTournament};

/// Qualifying iff every vertex misses exactly one vertex and following
/// "missed by" from 0 visits everything.
fn qualifies_by_characterization(t: &ColouredTournament) -> bool {
    let n = t.order();
    if n < 3 {
        return false;
    }
    let missed = |v: usize| -> Vec<usize> { (0..n).filter(|&w| w != v && bfs_colours(t, v, w).is_empty()).collect() };
    let mut by = vec![0; n];
    for v in 0..n {
        match missed(v).as_slice() {
            [m] => by[v] = *m,
            _ => return false,
        }
    }
    let (mut v, mut steps) = (by[0], 1);
    while v != 0 && steps <= n {
        v = by[v];
        steps += 1;
    }
    v == 0 && steps == n
}

proptest! {
    #[test]
    fn non_domination_cycle_misses_predecessors(t in arb_tournament(3, 9)) {
        match non_domination_cycle(&t) {
            Ok(c) => {
                for &v in c.vertices() {
                    prop_assert!(dominates(&t, v, c.pred(v)).unwrap().is_empty());
                }
            }
            Err(AuditError::HasDominatingVertex(v)) => prop_assert_eq!(bfs_dominating(&t).contains(&v), true),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn backtracking_agrees_with_characterization(t in arb_tournament(1, 7)) {
        let g = genhamilton_check(&t).unwrap();
        prop_assert_eq!(g.holds, qualifies_by_characterization(&t));
        if let Some(cert) = &g.certificate {
            prop_assert!(certificate_holds(&t, cert));
        }
        if g.holds {
            prop_assert!(tricolour::dominating_vertices(&t).is_empty());
            let c = g.cycle.unwrap();
            for &v in c.vertices() {
                let missed: VertexSet = (0..t.order()).filter(|&w| w != v && bfs_colours(&t, v, w).is_empty()).collect();
                prop_assert_eq!(missed, VertexSet::single(c.pred(v)));
            }
        }
    }

    #[test]
    fn elimination_order_on_two_colours(t in arb_two_coloured(1, 9)) {
        let order = elimination_order(&t).unwrap();
        prop_assert_eq!(order.len(), t.order());
        let last = *order.last().unwrap();
        let mut remaining = t.vertices();
        for &x in &order {
            let rel = DominationRelation::within(&t, remaining);
            prop_assert!(rel.dominating_vertices().contains(x));
            // every earlier pick reaches the last vertex inside its own subtournament
            if x != last {
                prop_assert!(!rel.colours(x, last).is_empty());
            }
            remaining.remove(x);
        }
    }

    #[test]
    fn failed_checks_carry_rechecking_witnesses(t in arb_tournament(3, 8)) {
        let r = audit(&t).unwrap();
        prop_assert_eq!(r.verdict, Verdict::CannotBeMinimal);
        for f in &r.findings {
            prop_assert_eq!(f.holds, f.witness.is_none());
        }
        prop_assert!(r.witnesses_recheck());
    }
}

#[test]
fn t3_audit() {
    let r = audit(&t3()).unwrap();
    let t3f = r.finding(Check::T3).unwrap();
    assert!(!t3f.holds);
    assert!(!r.finding(Check::Prop1in).unwrap().holds);
    assert_eq!(r.verdict.to_string(), "cannot be a minimal counterexample");
    assert_eq!(r.findings.len(), 12);
    assert!(r.witnesses_recheck());
}

#[test]
fn every_qualifying_three_vertex_instance_is_audited_soundly() {
    let mut qualifying = 0;
    for idx in 0..216u32 {
        let digits: Vec<u8> = (0..3).map(|k| (idx / 6u32.pow(k) % 6) as u8).collect();
        let t = from_digits(3, &digits);
        let r = audit(&t).unwrap();
        assert!(r.witnesses_recheck(), "{}", t.serialize());
        if r.cycle.is_some() {
            qualifying += 1;
            assert!(!r.finding(Check::T3).unwrap().holds);
            assert_eq!(r.findings.len(), 12);
        }
    }
    assert_eq!(qualifying, 12);
}

#[test]
fn partition_of_t3() {
    let t = t3();
    let c = genhamilton_check(&t).unwrap().cycle.unwrap();
    for x in 0..3 {
        let p = colour_profile_partition(&t, x, &c).unwrap();
        let all = [p.r_plus, p.r_minus, p.b_plus, p.b_minus];
        let union = all.iter().fold(VertexSet::single(x), |a, s| a.union(*s));
        assert_eq!(union, t.vertices());
        assert_eq!(all.iter().map(|s| s.len()).sum::<usize>(), 2);
        assert_eq!(p.r_plus.len() + p.b_plus.len(), 1);
        assert_eq!(p.b_b_plus, VertexSet::EMPTY);
        assert!(!p.lemma_m.holds());
        assert_eq!(descent_check(&t, x, &c), Err(AuditError::DescentPrecondition(x)));
    }
}

/// Six vertices, every vertex meeting at most two colours, found by a seeded
/// search and frozen. The Hamilton cycle is not a qualifying one: none exists
/// on six vertices.
const SIX: &str = "6\n.br.b.\n..b..r\n...rbr\nrr...r\n.b.r.b\nb.....\n";

#[test]
fn six_vertex_descent_stalls() {
    let t = ColouredTournament::parse(SIX).unwrap();
    let c = CycleView::new(&t, vec![0, 1, 2, 4, 3, 5]).unwrap();
    assert!(!genhamilton_check(&t).unwrap().holds);
    assert_eq!(colour_profile_partition(&t, 0, &c), Err(AuditError::NotQualifying));
    let p = profile_on_cycle(&t, 0, &c).unwrap();
    // 0 meets red and blue; x⁻ = 5 sends a blue arc, so blue is renamed red
    assert_eq!(p.renaming.to_internal(Colour::Blue), Colour::Red);
    assert_eq!(p.renaming.to_internal(Colour::Red), Colour::Blue);

    // classes straight from the definitions, in original colours
    let (red, blue) = (Colour::Blue, Colour::Red);
    let arcs_out = |c: Colour| -> VertexSet { (1..6).filter(|&v| t.arc(0, v) == Some(c)).collect() };
    let arcs_in = |c: Colour| -> VertexSet { (1..6).filter(|&v| t.arc(v, 0) == Some(c)).collect() };
    assert_eq!(p.r_plus, arcs_out(red));
    assert_eq!(p.b_plus, arcs_out(blue));
    assert_eq!(p.r_minus, arcs_in(red));
    assert_eq!(p.b_minus, arcs_in(blue));
    let bb_plus: VertexSet = arcs_out(blue).iter().filter(|&v| bfs_colours(&t, v, 0).contains(blue)).collect();
    let rr_minus: VertexSet = arcs_in(red).iter().filter(|&v| bfs_colours(&t, 0, v).contains(red)).collect();
    assert_eq!(p.class(ProfileClass::BbPlus), bb_plus);
    assert_eq!(p.class(ProfileClass::RrMinus), rr_minus);

    assert_eq!(descent_start(&p, &c), Some((2, 5)));
    let trace = descent_from(&p, &c).unwrap();
    assert_eq!(trace.rounds.len(), 1);
    let r = &trace.rounds[0];
    assert_eq!((r.segment, r.entry, r.exit), ((2, 5), 4, 3));
    assert!(p.r_r_plus.contains(4) && p.b_b_minus.contains(3));
    // the segment 2 4 3 5 meets R⁺ at 4 before any B⁻, and B⁻ last at 3
    assert_eq!(c.segment(2, 5), vec![2, 4, 3, 5]);
    assert_eq!(trace.obstruction.segment, (4, 3));
    assert!(trace.obstruction.roles_swapped);
    assert_eq!(trace.obstruction.kind, ObstructionKind::NoEntry);
    assert!(trace.rounds.len() <= t.order() / 2);
}

#[test]
fn descent_never_runs_long_at_six() {
    let spec = EnumerationSpec::sampled(6, ColourCount::Three, 21, 20_000)
        .with_filter(tricolour::search::Filter::TwoColourVertices);
    for (_, t) in tricolour::search::enumerate(&spec).unwrap() {
        let Some(c) = any_hamilton_cycle(&t) else { continue };
        let Ok(p) = profile_on_cycle(&t, 0, &c) else { continue };
        if let Ok(trace) = descent_from(&p, &c) {
            assert!(trace.rounds.len() <= t.order() / 2);
        }
    }
}

fn any_hamilton_cycle(t: &ColouredTournament) -> Option<CycleView> {
    fn extend(t: &ColouredTournament, path: &mut Vec<usize>) -> bool {
        let v = *path.last().unwrap();
        if path.len() == t.order() {
            return t.beats(v, path[0]);
        }
        for w in 0..t.order() {
            if !path.contains(&w) && t.beats(v, w) {
                path.push(w);
                if extend(t, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    let mut path = vec![0];
    extend(t, &mut path).then(|| CycleView::new(t, path).unwrap())
}

#[test]
fn audit_refuses_large_orders() {
    let spec = EnumerationSpec::sampled(13, ColourCount::Three, 1, 1);
    let t = spec.instance(0).unwrap();
    assert_eq!(audit(&t).unwrap_err(), AuditError::OrderLimit { n: 13, max: 12 });
}
