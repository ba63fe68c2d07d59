//! Re-verification of audit witnesses from the raw arcs, using breadth-first
//! search instead of the closure tables the checks themselves consult.

use std::collections::VecDeque;

use super::cycle::CycleView;
use super::hamilton::certificate_holds;
use super::partition::{roles, DescentTrace, ObstructionKind, PartitionWitness, ProfileClass, Renaming};
use super::report::{Check, Witness};
use crate::colour::{Colour, ColourSet};
use crate::tournament::ColouredTournament;
use crate::vertex_set::VertexSet;

/// Vertices reachable from `x` by a nonempty `colour` path inside `scope`.
fn bfs(t: &ColouredTournament, scope: VertexSet, colour: Colour, x: usize) -> VertexSet {
    let mut seen = VertexSet::EMPTY;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for v in scope.iter() {
            if !seen.contains(v) && t.arc(u, v) == Some(colour) {
                seen.insert(v);
                queue.push_back(v);
            }
        }
    }
    seen
}

fn colours_within(t: &ColouredTournament, scope: VertexSet, x: usize, y: usize) -> ColourSet {
    Colour::ALL
        .into_iter()
        .filter(|&c| bfs(t, scope, c, x).contains(y))
        .collect()
}

fn colours(t: &ColouredTournament, x: usize, y: usize) -> ColourSet {
    colours_within(t, t.vertices(), x, y)
}

pub(crate) fn witness_holds(t: &ColouredTournament, cycle: Option<&CycleView>, check: Check, w: &Witness) -> bool {
    let n = t.order();
    match (check, w) {
        (Check::T3, Witness::RainbowTriangle { triangle }) => triangle.cyclic && triangle.holds_in(t),
        (Check::DominatingVertex, Witness::DominatingVertex { vertex }) => {
            *vertex < n && (0..n).filter(|&y| y != *vertex).all(|y| !colours(t, *vertex, y).is_empty())
        }
        (Check::Genhamilton, Witness::NoQualifyingCycle { certificate }) => certificate_holds(t, certificate),
        (Check::Prop1in, Witness::MonochromaticSide { vertex, incoming, colour }) => {
            let v = *vertex;
            let side: Vec<Colour> = (0..n)
                .filter(|&w| w != v)
                .filter_map(|w| if *incoming { t.arc(w, v) } else { t.arc(v, w) })
                .collect();
            v < n && !side.is_empty() && side.iter().all(|c| c == colour)
        }
        (_, Witness::Profile { pivot, renaming, witness }) => {
            let Some(c) = cycle else { return false };
            let fits = match witness {
                PartitionWitness::EmptyClass { class } => match check {
                    Check::Prop1in => matches!(
                        class,
                        ProfileClass::RPlus | ProfileClass::RMinus | ProfileClass::BPlus | ProfileClass::BMinus
                    ),
                    Check::LemmaM => matches!(class, ProfileClass::BbPlus | ProfileClass::BbMinus),
                    Check::LemmaN => matches!(class, ProfileClass::RrPlus | ProfileClass::RrMinus),
                    _ => false,
                },
                PartitionWitness::DominatesPivotTwice { .. } | PartitionWitness::DominatedTwice { .. } => {
                    check == Check::LemmaDisjoint
                }
                PartitionWitness::SuccessorsInBluePlus => check == Check::LemmaN,
            };
            fits && renaming_valid(t, c, *pivot, renaming) && profile_witness_holds(t, c, *pivot, renaming, witness)
        }
        (Check::LemmaXCy, Witness::SegmentDomination { x, y, in_segment, in_whole }) => {
            let Some(c) = cycle else { return false };
            let (x, y) = (*x, *y);
            if x == y || x >= n || y >= n || !c.contains(x) || !c.contains(y) || y == c.pred(x) {
                return false;
            }
            let seg = c.segment(x, y).into_iter().collect();
            let seg_colours = colours_within(t, seg, x, y);
            let whole = colours(t, x, y);
            let refined_ok = whole.only().is_none_or(|only| seg_colours == ColourSet::single(only));
            seg_colours == *in_segment && whole == *in_whole && (seg_colours.is_empty() || !refined_ok)
        }
        (Check::ObsXxplus, Witness::SharedColour { x, y, colour }) => {
            let Some(c) = cycle else { return false };
            let (x, y) = (*x, *y);
            if x >= n || y >= n || !c.contains(x) {
                return false;
            }
            let xp = c.succ(x);
            y != x && y != xp && colours(t, xp, y).contains(*colour) && colours(t, y, x).contains(*colour)
        }
        (Check::LemmaTwoCedges, Witness::ColourChange { vertex, forward_arc, successor_to_predecessor }) => {
            let Some(c) = cycle else { return false };
            if *vertex >= n || !c.contains(*vertex) {
                return false;
            }
            let (pred, succ) = (c.pred(*vertex), c.succ(*vertex));
            let (Some(cin), Some(cout)) = (t.arc(pred, *vertex), t.arc(*vertex, succ)) else {
                return false;
            };
            let Some(third) = cin.third(cout) else { return false };
            let s2p = colours(t, succ, pred);
            *forward_arc == t.beats(pred, succ)
                && s2p == *successor_to_predecessor
                && (!forward_arc || s2p != ColourSet::single(third))
        }
        (Check::PropAlternate, Witness::Alternation { colours: [a, b] }) => {
            let Some(c) = cycle else { return false };
            let k = c.len();
            let vs = c.vertices();
            a != b
                && k % 2 == 0
                && (0..k).all(|i| t.arc(vs[i], vs[(i + 1) % k]) == Some(if i % 2 == 0 { *a } else { *b }))
        }
        (Check::Descent, Witness::Descent { trace }) => {
            let Some(c) = cycle else { return false };
            renaming_valid(t, c, trace.pivot, &trace.renaming) && trace_holds(t, c, trace)
        }
        (Check::Descent, Witness::DescentPrecondition { pivot, renaming }) => {
            let Some(c) = cycle else { return false };
            if !renaming_valid(t, c, *pivot, renaming) {
                return false;
            }
            let bb_plus = direct_class(t, *pivot, renaming, ProfileClass::BbPlus);
            let rr_minus = direct_class(t, *pivot, renaming, ProfileClass::RrMinus);
            bb_plus.iter().all(|m| rr_minus.iter().all(|v| m == c.succ(v)))
        }
        _ => false,
    }
}

/// The renaming sends a colour absent at the pivot to green and the colour
/// of the arc from its cycle predecessor to red.
fn renaming_valid(t: &ColouredTournament, c: &CycleView, pivot: usize, r: &Renaming) -> bool {
    let mut seen = ColourSet::EMPTY;
    r.internal.iter().for_each(|&col| seen.insert(col));
    if seen != ColourSet::FULL || pivot >= t.order() || !c.contains(pivot) {
        return false;
    }
    let at_pivot: ColourSet = (0..t.order())
        .filter(|&v| v != pivot)
        .filter_map(|v| t.arc(v, pivot).or(t.arc(pivot, v)))
        .collect();
    !at_pivot.contains(r.to_original(Colour::Green))
        && t.arc(c.pred(pivot), pivot) == Some(r.to_original(Colour::Red))
}

/// Profile class membership read off the definitions, in original colours.
fn direct_class(t: &ColouredTournament, x: usize, r: &Renaming, class: ProfileClass) -> VertexSet {
    let (internal, leaves) = class.arc_class();
    let arc_colour = r.to_original(internal);
    (0..t.order())
        .filter(|&v| v != x)
        .filter(|&v| if leaves { t.arc(x, v) } else { t.arc(v, x) } == Some(arc_colour))
        .filter(|&v| match class.refinement() {
            None => true,
            Some(i) => {
                let i = r.to_original(i);
                if leaves {
                    colours(t, v, x).contains(i)
                } else {
                    colours(t, x, v).contains(i)
                }
            }
        })
        .collect()
}

fn profile_witness_holds(
    t: &ColouredTournament,
    c: &CycleView,
    x: usize,
    r: &Renaming,
    w: &PartitionWitness,
) -> bool {
    let (red, blue) = (r.to_original(Colour::Red), r.to_original(Colour::Blue));
    let n = t.order();
    match *w {
        PartitionWitness::EmptyClass { class } => direct_class(t, x, r, class).is_empty(),
        PartitionWitness::DominatesPivotTwice { vertex } => {
            vertex < n && vertex != x && {
                let s = colours(t, vertex, x);
                s.contains(red) && s.contains(blue)
            }
        }
        PartitionWitness::DominatedTwice { vertex } => {
            vertex < n && vertex != x && {
                let s = colours(t, x, vertex);
                s.contains(red) && s.contains(blue)
            }
        }
        PartitionWitness::SuccessorsInBluePlus => {
            let b_plus = direct_class(t, x, r, ProfileClass::BPlus);
            direct_class(t, x, r, ProfileClass::RrMinus)
                .iter()
                .all(|v| b_plus.contains(c.succ(v)))
        }
    }
}

fn trace_holds(t: &ColouredTournament, c: &CycleView, trace: &DescentTrace) -> bool {
    let x = trace.pivot;
    let cls = |k| direct_class(t, x, &trace.renaming, k);
    let (m, v) = trace.start;
    if !cls(ProfileClass::BbPlus).contains(m) || !cls(ProfileClass::RrMinus).contains(v) || m == c.succ(v) {
        return false;
    }
    let mut seg = (m, v);
    let mut swapped = false;
    let mut last_len = usize::MAX;
    for round in &trace.rounds {
        let len = c.segment(seg.0, seg.1).len();
        if round.segment != seg || round.roles_swapped != swapped || len >= last_len {
            return false;
        }
        last_len = len;
        match round_outcome(c, seg, roles(swapped).map(cls)) {
            Ok((p, q)) if (p, q) == (round.entry, round.exit) => {}
            _ => return false,
        }
        seg = (round.entry, round.exit);
        swapped = !swapped;
    }
    let o = &trace.obstruction;
    o.round == trace.rounds.len()
        && o.segment == seg
        && o.roles_swapped == swapped
        && round_outcome(c, seg, roles(swapped).map(cls)).err().as_ref() == Some(&o.kind)
}

/// One descent round over `seg`, with role sets `[plus, minus, plus_refined, minus_refined]`.
fn round_outcome(
    c: &CycleView,
    seg: (usize, usize),
    [plus, minus, plus_refined, minus_refined]: [VertexSet; 4],
) -> Result<(usize, usize), ObstructionKind> {
    let path = c.segment(seg.0, seg.1);
    let role = |v: &&usize| plus.contains(**v) || minus.contains(**v);
    let Some(&entry) = path.iter().find(role) else {
        return Err(ObstructionKind::NoEntry);
    };
    if minus.contains(entry) {
        return Err(ObstructionKind::EntryBlocked { vertex: entry });
    }
    if !plus_refined.contains(entry) {
        return Err(ObstructionKind::EntryOutsideClass { vertex: entry });
    }
    let &exit = path.iter().rev().find(role).unwrap();
    if plus.contains(exit) {
        return Err(ObstructionKind::ExitBlocked { vertex: exit });
    }
    if !minus_refined.contains(exit) {
        return Err(ObstructionKind::ExitOutsideClass { vertex: exit });
    }
    Ok((entry, exit))
}
