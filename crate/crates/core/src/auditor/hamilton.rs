//! Cycles on which no vertex dominates its predecessor, qualifying Hamilton
//! cycles, and elimination orders.

use serde::Serialize;

use super::cycle::CycleView;
use super::AuditError;
use crate::domination::DominationRelation;
use crate::tournament::ColouredTournament;
use crate::vertex_set::VertexSet;

/// Largest order accepted by [`genhamilton_check`].
pub const MAX_GENHAMILTON_ORDER: usize = 12;

/// Walks `v_{i+1} :=` least vertex not dominated by `v_i`, starting at 0,
/// until a vertex repeats; the repeated stretch read backwards is a directed
/// cycle on which no vertex dominates its predecessor.
pub fn non_domination_cycle(t: &ColouredTournament) -> Result<CycleView, AuditError> {
    non_domination_cycle_with(t, &DominationRelation::new(t))
}

pub fn non_domination_cycle_with(
    t: &ColouredTournament,
    rel: &DominationRelation,
) -> Result<CycleView, AuditError> {
    let n = t.order();
    let mut walk = vec![0usize];
    let mut seen_at = vec![usize::MAX; n];
    seen_at[0] = 0;
    loop {
        let v = *walk.last().unwrap();
        let missed = t.vertices().without(v).difference(rel.dominated_from(v));
        let Some(next) = missed.first() else {
            return Err(AuditError::HasDominatingVertex(v));
        };
        if seen_at[next] != usize::MAX {
            // v_i = v_j = next; the cycle is v_i, v_{i-1}, ..., v_{j+1}
            return CycleView::new(t, reverse_walk(&walk, seen_at[next]));
        }
        seen_at[next] = walk.len();
        walk.push(next);
    }
}

/// `walk[j], walk[len-1], walk[len-2], …, walk[j+1]`: the closed stretch read
/// backwards, starting at the repeated vertex.
fn reverse_walk(walk: &[usize], j: usize) -> Vec<usize> {
    let mut order = Vec::with_capacity(walk.len() - j);
    order.push(walk[j]);
    order.extend(walk[j + 1..].iter().rev());
    order
}

/// Why a tournament has no qualifying Hamilton cycle.
///
/// A qualifying cycle forces each vertex to miss exactly one other vertex
/// (its predecessor), and the "missed by" map to be a single cycle through
/// all vertices; each variant names the first way this breaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NoQualifyingCycle {
    TooSmall { n: usize },
    /// `vertex` fails to dominate some number of vertices other than one.
    MissCount { vertex: usize, missed: VertexSet },
    /// Two vertices miss the same single vertex.
    SharedMiss { first: usize, second: usize, missed: usize },
    /// Following "missed by" from vertex 0 closes after fewer than `n` steps.
    ShortCycle { cycle: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenHamilton {
    pub holds: bool,
    /// The qualifying cycle, rotated to start at vertex 0.
    pub cycle: Option<CycleView>,
    /// Rotation-distinct qualifying cycles found; more than one is flagged.
    pub qualifying_cycles: usize,
    pub certificate: Option<NoQualifyingCycle>,
}

impl GenHamilton {
    pub fn multiple(&self) -> bool {
        self.qualifying_cycles > 1
    }
}

/// Searches for a directed Hamilton cycle on which every vertex dominates
/// every vertex except its predecessor and does not dominate the
/// predecessor.
pub fn genhamilton_check(t: &ColouredTournament) -> Result<GenHamilton, AuditError> {
    genhamilton_check_with(t, &DominationRelation::new(t))
}

pub fn genhamilton_check_with(
    t: &ColouredTournament,
    rel: &DominationRelation,
) -> Result<GenHamilton, AuditError> {
    let n = t.order();
    if n > MAX_GENHAMILTON_ORDER {
        return Err(AuditError::OrderLimit {
            n,
            max: MAX_GENHAMILTON_ORDER,
        });
    }
    let mut search = Backtrack {
        t,
        rel,
        all: t.vertices(),
        path: Vec::with_capacity(n),
        found: 0,
        first: None,
    };
    if n >= 3 {
        search.path.push(0);
        search.extend(VertexSet::single(0));
    }
    let holds = search.found > 0;
    let cycle = search
        .first
        .take()
        .map(|order| CycleView::new(t, order).expect("backtracking follows arcs"));
    let certificate = if holds { None } else { no_cycle_certificate(t, rel) };
    debug_assert!(holds || certificate.is_some());
    Ok(GenHamilton {
        holds,
        cycle,
        qualifying_cycles: search.found,
        certificate,
    })
}

struct Backtrack<'a> {
    t: &'a ColouredTournament,
    rel: &'a DominationRelation,
    all: VertexSet,
    path: Vec<usize>,
    found: usize,
    first: Option<Vec<usize>>,
}

impl Backtrack<'_> {
    /// `v` (the new last vertex) has predecessor `pred`; it must miss
    /// exactly `pred`.
    #[inline]
    fn misses_only(&self, v: usize, pred: usize) -> bool {
        self.all.without(v).difference(self.rel.dominated_from(v)) == VertexSet::single(pred)
    }

    fn extend(&mut self, used: VertexSet) {
        let v = *self.path.last().unwrap();
        if used == self.all {
            let head = self.path[0];
            if self.t.beats(v, head) && self.misses_only(head, v) {
                self.found += 1;
                if self.first.is_none() {
                    self.first = Some(self.path.clone());
                }
            }
            return;
        }
        let candidates = self.t.out_set(v).difference(used);
        for w in candidates {
            if !self.misses_only(w, v) {
                continue;
            }
            self.path.push(w);
            self.extend(used.with(w));
            self.path.pop();
        }
    }
}

fn no_cycle_certificate(t: &ColouredTournament, rel: &DominationRelation) -> Option<NoQualifyingCycle> {
    let n = t.order();
    if n < 3 {
        return Some(NoQualifyingCycle::TooSmall { n });
    }
    let all = t.vertices();
    for v in 0..n {
        let missed = all.without(v).difference(rel.dominated_from(v));
        if missed.len() != 1 {
            return Some(NoQualifyingCycle::MissCount { vertex: v, missed });
        }
    }
    // every vertex misses exactly one
    let missed_by = |v: usize| all.without(v).difference(rel.dominated_from(v)).first().unwrap();
    let mut owner = vec![usize::MAX; n];
    for v in 0..n {
        let m = missed_by(v);
        if owner[m] != usize::MAX {
            return Some(NoQualifyingCycle::SharedMiss {
                first: owner[m],
                second: v,
                missed: m,
            });
        }
        owner[m] = v;
    }
    // a permutation now; follow it backwards from 0
    let mut cycle = vec![0];
    let mut v = missed_by(0);
    while v != 0 {
        cycle.push(v);
        v = missed_by(v);
    }
    if cycle.len() < n {
        cycle.reverse();
        cycle.rotate_right(1);
        return Some(NoQualifyingCycle::ShortCycle { cycle });
    }
    None
}

/// Re-derives the certificate claim from scratch.
pub fn certificate_holds(t: &ColouredTournament, cert: &NoQualifyingCycle) -> bool {
    let n = t.order();
    let rel = DominationRelation::new(t);
    let missed = |v: usize| -> VertexSet {
        (0..n)
            .filter(|&w| w != v && rel.colours(v, w).is_empty())
            .collect()
    };
    match cert {
        NoQualifyingCycle::TooSmall { n: m } => *m == n && n < 3,
        NoQualifyingCycle::MissCount { vertex, missed: set } => {
            *vertex < n && missed(*vertex) == *set && set.len() != 1
        }
        NoQualifyingCycle::SharedMiss {
            first,
            second,
            missed: m,
        } => {
            first != second
                && *first < n
                && *second < n
                && missed(*first) == VertexSet::single(*m)
                && missed(*second) == VertexSet::single(*m)
        }
        NoQualifyingCycle::ShortCycle { cycle } => {
            let k = cycle.len();
            k < n
                && k > 0
                && (0..k).all(|i| missed(cycle[(i + 1) % k]) == VertexSet::single(cycle[i]))
        }
    }
}

/// `x_1, …, x_n` with each `x_i` the least vertex dominating
/// `D_{i-1} = D − {x_1, …, x_{i-1}}`.
pub fn elimination_order(t: &ColouredTournament) -> Result<Vec<usize>, AuditError> {
    let mut remaining = t.vertices();
    let mut order = Vec::with_capacity(t.order());
    while !remaining.is_empty() {
        let rel = DominationRelation::within(t, remaining);
        let Some(x) = rel.dominating_vertices().first() else {
            return Err(AuditError::NoDominatingVertexIn(remaining));
        };
        order.push(x);
        remaining.remove(x);
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::Colour;
    use crate::domination::dominates;
    use crate::tournament::fixtures::*;

    #[test]
    fn t3_non_domination_cycle() {
        let c = non_domination_cycle(&t3()).unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2]);
    }

    #[test]
    fn non_domination_cycle_needs_no_dominating_vertex() {
        assert_eq!(
            non_domination_cycle(&transitive(3, Colour::Red)),
            Err(AuditError::HasDominatingVertex(0))
        );
    }

    #[test]
    fn t3_qualifies() {
        let g = genhamilton_check(&t3()).unwrap();
        assert!(g.holds);
        assert_eq!(g.cycle.unwrap().vertices(), &[0, 1, 2]);
        assert_eq!(g.qualifying_cycles, 1);
        for v in 0..3 {
            assert!(!dominates(&t3(), v, (v + 1) % 3).unwrap().is_empty());
            assert!(dominates(&t3(), v, (v + 2) % 3).unwrap().is_empty());
        }
    }

    #[test]
    fn transitive_does_not_qualify() {
        let t = transitive(3, Colour::Red);
        let g = genhamilton_check(&t).unwrap();
        assert!(!g.holds && g.cycle.is_none());
        let cert = g.certificate.unwrap();
        assert!(certificate_holds(&t, &cert));
        assert_eq!(
            cert,
            NoQualifyingCycle::MissCount {
                vertex: 0,
                missed: VertexSet::EMPTY
            }
        );
    }

    #[test]
    fn tiny_orders() {
        for n in [1, 2] {
            let t = transitive(n, Colour::Blue);
            let g = genhamilton_check(&t).unwrap();
            assert_eq!(g.certificate, Some(NoQualifyingCycle::TooSmall { n }));
        }
    }

    #[test]
    fn order_limit() {
        assert_eq!(
            genhamilton_check(&transitive(13, Colour::Red)),
            Err(AuditError::OrderLimit { n: 13, max: 12 })
        );
    }

    #[test]
    fn elimination_orders() {
        assert_eq!(elimination_order(&transitive(3, Colour::Red)).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            elimination_order(&t3()),
            Err(AuditError::NoDominatingVertexIn(VertexSet::full(3)))
        );
    }
}
