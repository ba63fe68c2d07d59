//! Monochromatic reachability and the queries built on it.
//!
//! `x` dominates `y` in colour `c` when a directed path of length at least
//! one, all of whose arcs have colour `c`, runs from `x` to `y`. The relation
//! is irreflexive by default: `x` reaches itself only around a monochromatic
//! cycle. Covers use the reflexive convention (a vertex covers itself).

use serde::Serialize;
use thiserror::Error;

use crate::colour::{Colour, ColourSet};
use crate::tournament::ColouredTournament;
use crate::vertex_set::{VertexSet, MAX_ORDER};

/// Largest order accepted by [`min_cover`].
pub const MAX_COVER_ORDER: usize = 16;

/// Default subset-size cap for [`min_cover`].
pub const DEFAULT_K_MAX: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("domination query needs distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("cover size cap must be at least 1")]
    ZeroKMax,
    #[error("cover search supports order at most {max}, got {n}")]
    CoverOrderTooLarge { n: usize, max: usize },
}

/// Per-colour transitive closure of a tournament, or of the subtournament
/// induced on a vertex subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationRelation {
    n: usize,
    scope: VertexSet,
    reach: [[u32; MAX_ORDER]; 3],
}

impl DominationRelation {
    pub fn new(t: &ColouredTournament) -> Self {
        Self::within(t, t.vertices())
    }

    /// Closure of the subtournament `D[scope]`; vertices outside `scope`
    /// reach nothing and are reached by nothing.
    pub fn within(t: &ColouredTournament, scope: VertexSet) -> Self {
        let n = t.order();
        let keep = scope.bits();
        let mut reach = [[0u32; MAX_ORDER]; 3];
        for (c, r) in reach.iter_mut().enumerate() {
            let rows = t.rows(c);
            for v in scope {
                r[v] = rows[v] & keep;
            }
            // Warshall over bit rows: after step k, r[i] holds everything
            // reachable through intermediate vertices < k + 1.
            for k in scope {
                let rk = r[k];
                let bk = 1u32 << k;
                for row in r[..n].iter_mut() {
                    if *row & bk != 0 {
                        *row |= rk;
                    }
                }
            }
        }
        DominationRelation { n, scope, reach }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn scope(&self) -> VertexSet {
        self.scope
    }

    /// `x ↦_colour y`.
    #[inline]
    pub fn reaches(&self, colour: Colour, x: usize, y: usize) -> bool {
        self.reach[colour.index()][x] >> y & 1 == 1
    }

    /// Every `y` with `x ↦_colour y`.
    #[inline]
    pub fn reach_set(&self, colour: Colour, x: usize) -> VertexSet {
        VertexSet::from_bits(self.reach[colour.index()][x])
    }

    /// Every `y` that `x` dominates in some colour.
    #[inline]
    pub fn dominated_from(&self, x: usize) -> VertexSet {
        VertexSet::from_bits(self.reach[0][x] | self.reach[1][x] | self.reach[2][x])
    }

    /// Colours in which `x` dominates `y`, without argument checks.
    #[inline]
    pub fn colours(&self, x: usize, y: usize) -> ColourSet {
        ColourSet::from_bits(
            (self.reach[0][x] >> y & 1) as u8
                | ((self.reach[1][x] >> y & 1) as u8) << 1
                | ((self.reach[2][x] >> y & 1) as u8) << 2,
        )
    }

    /// Colours in which `x` dominates `y`; empty when it does not.
    pub fn dominates(&self, x: usize, y: usize) -> Result<ColourSet, EngineError> {
        for v in [x, y] {
            if v >= self.n {
                return Err(EngineError::VertexOutOfRange { v, n: self.n });
            }
        }
        if x == y {
            return Err(EngineError::SameVertex(x));
        }
        Ok(self.colours(x, y))
    }

    /// Vertices in scope dominating every other vertex in scope.
    pub fn dominating_vertices(&self) -> VertexSet {
        self.scope
            .iter()
            .filter(|&x| self.scope.without(x).is_subset(self.dominated_from(x)))
            .collect()
    }

    /// Vertices in scope dominated by every other vertex in scope.
    pub fn dominated_by_all(&self) -> VertexSet {
        let mut acc = self.scope;
        for x in self.scope {
            acc = acc.intersection(self.dominated_from(x).with(x));
        }
        acc
    }

    /// Whether some vertex dominates the whole scope.
    #[inline]
    pub fn has_dominating_vertex(&self) -> bool {
        let all = self.scope.bits();
        self.scope
            .iter()
            .any(|x| (self.reach[0][x] | self.reach[1][x] | self.reach[2][x] | 1 << x) & all == all)
    }
}

pub fn domination_relation(t: &ColouredTournament) -> DominationRelation {
    DominationRelation::new(t)
}

/// Colours in which `x` monochromatically dominates `y`.
pub fn dominates(t: &ColouredTournament, x: usize, y: usize) -> Result<ColourSet, EngineError> {
    DominationRelation::new(t).dominates(x, y)
}

pub fn dominating_vertices(t: &ColouredTournament) -> VertexSet {
    DominationRelation::new(t).dominating_vertices()
}

pub fn dominated_by_all(t: &ColouredTournament) -> VertexSet {
    DominationRelation::new(t).dominated_by_all()
}

/// A vertex set such that every vertex is in it or dominated from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DominationCover {
    pub members: VertexSet,
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverOutcome {
    Found(DominationCover),
    /// No cover with at most this many members.
    NoneWithin(usize),
}

impl CoverOutcome {
    pub fn cover(&self) -> Option<DominationCover> {
        match self {
            CoverOutcome::Found(c) => Some(*c),
            CoverOutcome::NoneWithin(_) => None,
        }
    }
}

/// Minimum cover of order at most `k_max`, ties broken by the
/// lexicographically least member list.
pub fn min_cover(t: &ColouredTournament, k_max: usize) -> Result<CoverOutcome, EngineError> {
    min_cover_with(&DominationRelation::new(t), k_max)
}

pub fn min_cover_with(rel: &DominationRelation, k_max: usize) -> Result<CoverOutcome, EngineError> {
    let n = rel.order();
    if k_max == 0 {
        return Err(EngineError::ZeroKMax);
    }
    if n > MAX_COVER_ORDER {
        return Err(EngineError::CoverOrderTooLarge {
            n,
            max: MAX_COVER_ORDER,
        });
    }
    let all = rel.scope().bits();
    let mut covers = [0u32; MAX_COVER_ORDER];
    for (v, c) in covers[..n].iter_mut().enumerate() {
        *c = rel.dominated_from(v).with(v).bits();
    }
    let mut idx = [0usize; MAX_COVER_ORDER];
    for k in 1..=k_max.min(n) {
        let idx = &mut idx[..k];
        for (i, slot) in idx.iter_mut().enumerate() {
            *slot = i;
        }
        loop {
            let union = idx.iter().fold(0u32, |acc, &v| acc | covers[v]);
            if union & all == all {
                return Ok(CoverOutcome::Found(DominationCover {
                    members: idx.iter().copied().collect(),
                    order: k,
                }));
            }
            // advance to the next k-combination of 0..n in lex order
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(CoverOutcome::NoneWithin(k_max))
}

/// Three vertices whose arcs carry three distinct colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RainbowTriangle {
    /// For a cyclic triangle, cycle order starting at its least vertex;
    /// otherwise ascending.
    pub vertices: [usize; 3],
    /// The three arcs as `(from, to, colour)`.
    pub arcs: [(usize, usize, Colour); 3],
    pub cyclic: bool,
}

impl RainbowTriangle {
    /// Re-checks the witness against `t`.
    pub fn holds_in(&self, t: &ColouredTournament) -> bool {
        let colours: ColourSet = self.arcs.iter().map(|a| a.2).collect();
        let arcs_ok = self.arcs.iter().all(|&(u, v, c)| t.arc(u, v) == Some(c));
        let mut vs = self.vertices;
        vs.sort_unstable();
        let distinct = vs[0] != vs[1] && vs[1] != vs[2];
        let on_triangle = self
            .arcs
            .iter()
            .all(|&(u, v, _)| self.vertices.contains(&u) && self.vertices.contains(&v) && u != v);
        let is_cycle = {
            let [a, b, c] = self.vertices;
            t.beats(a, b) && t.beats(b, c) && t.beats(c, a)
        };
        colours.len() == 3 && arcs_ok && distinct && on_triangle && (!self.cyclic || is_cycle)
    }
}

/// Lexicographically least (by sorted vertex triple) rainbow triangle,
/// restricted to cyclic ones when `require_cyclic` is set.
pub fn find_rainbow_triangle(t: &ColouredTournament, require_cyclic: bool) -> Option<RainbowTriangle> {
    let n = t.order();
    for a in 0..n {
        for b in a + 1..n {
            let ab = t.pair(a, b);
            for c in b + 1..n {
                let bc = t.pair(b, c);
                let ac = t.pair(a, c);
                if ab.2 == bc.2 || ab.2 == ac.2 || bc.2 == ac.2 {
                    continue;
                }
                // a 3-cycle iff every vertex wins exactly once
                let cyclic = t.beats(a, b) == t.beats(b, c) && t.beats(b, c) == t.beats(c, a);
                if require_cyclic && !cyclic {
                    continue;
                }
                if cyclic {
                    let (x, y) = if t.beats(a, b) { (b, c) } else { (c, b) };
                    let verts = [a, x, y];
                    let arcs = [
                        (a, x, t.arc(a, x).unwrap()),
                        (x, y, t.arc(x, y).unwrap()),
                        (y, a, t.arc(y, a).unwrap()),
                    ];
                    return Some(RainbowTriangle {
                        vertices: verts,
                        arcs,
                        cyclic: true,
                    });
                }
                return Some(RainbowTriangle {
                    vertices: [a, b, c],
                    arcs: [ab, bc, ac],
                    cyclic: false,
                });
            }
        }
    }
    None
}

/// Colours on arcs touching `x`.
pub fn vertex_colour_profile(t: &ColouredTournament, x: usize) -> ColourSet {
    t.colours_at(x)
}

/// Whether every vertex meets at most two colours.
pub fn at_most_two_everywhere(t: &ColouredTournament) -> bool {
    (0..t.order()).all(|v| t.colours_at(v).len() <= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::fixtures::*;
    use Colour::*;

    #[test]
    fn t3_reach_is_single_arcs() {
        let rel = domination_relation(&t3());
        for (c, pairs) in [(Red, [(0, 1)]), (Blue, [(1, 2)]), (Green, [(2, 0)])] {
            for x in 0..3 {
                for y in 0..3 {
                    assert_eq!(rel.reaches(c, x, y), pairs.contains(&(x, y)), "{c} {x}->{y}");
                }
            }
        }
        assert_eq!(rel.dominates(0, 2).unwrap(), ColourSet::EMPTY);
        assert_eq!(rel.dominates(0, 1).unwrap(), ColourSet::single(Red));
    }

    #[test]
    fn monochromatic_transitive_triangle() {
        let t = transitive(3, Red);
        assert_eq!(dominates(&t, 0, 2).unwrap(), ColourSet::single(Red));
        assert_eq!(dominates(&t, 1, 2).unwrap(), ColourSet::single(Red));
        assert_eq!(dominating_vertices(&t), VertexSet::single(0));
        assert_eq!(dominated_by_all(&t), VertexSet::single(2));
    }

    #[test]
    fn reflexive_only_on_cycles() {
        let rel = domination_relation(&t3());
        assert!((0..3).all(|v| rel.colours(v, v).is_empty()));
        let mono = ColouredTournament::parse("3\n.r.\n..r\nr..").unwrap();
        let rel = domination_relation(&mono);
        assert!((0..3).all(|v| rel.reaches(Red, v, v)));
    }

    #[test]
    fn same_vertex_rejected() {
        assert_eq!(dominates(&t3(), 1, 1), Err(EngineError::SameVertex(1)));
        assert_eq!(
            dominates(&t3(), 0, 3),
            Err(EngineError::VertexOutOfRange { v: 3, n: 3 })
        );
    }

    #[test]
    fn t3_has_no_dominating_vertex() {
        assert!(dominating_vertices(&t3()).is_empty());
        assert!(dominated_by_all(&t3()).is_empty());
    }

    #[test]
    fn covers() {
        let c = min_cover(&t3(), 4).unwrap().cover().unwrap();
        assert_eq!(c.order, 2);
        assert_eq!(c.members, [0, 1].into_iter().collect());
        assert_eq!(min_cover(&t3(), 1).unwrap(), CoverOutcome::NoneWithin(1));
        let c = min_cover(&transitive(4, Blue), 4).unwrap().cover().unwrap();
        assert_eq!((c.order, c.members), (1, VertexSet::single(0)));
        assert_eq!(min_cover(&t3(), 0), Err(EngineError::ZeroKMax));
        assert!(matches!(
            min_cover(&transitive(17, Red), 2),
            Err(EngineError::CoverOrderTooLarge { .. })
        ));
    }

    #[test]
    fn rainbow_triangles() {
        let tri = find_rainbow_triangle(&t3(), true).unwrap();
        assert_eq!(tri.vertices, [0, 1, 2]);
        assert!(tri.cyclic && tri.holds_in(&t3()));

        for flag in [true, false] {
            assert_eq!(find_rainbow_triangle(&transitive(5, Green), flag), None);
        }

        let tr = transitive_rainbow();
        assert_eq!(find_rainbow_triangle(&tr, true), None);
        let w = find_rainbow_triangle(&tr, false).unwrap();
        assert_eq!(w.vertices, [0, 1, 2]);
        assert!(!w.cyclic && w.holds_in(&tr));
    }

    #[test]
    fn cyclic_orientation_from_least_vertex() {
        // 0 → 2 → 1 → 0 in three colours
        let t = ColouredTournament::parse("3\n..r\nb..\n.g.").unwrap();
        let tri = find_rainbow_triangle(&t, true).unwrap();
        assert_eq!(tri.vertices, [0, 2, 1]);
        assert!(tri.holds_in(&t));
    }

    #[test]
    fn colour_profiles() {
        let t = t3();
        assert_eq!(vertex_colour_profile(&t, 0), [Red, Green].into_iter().collect());
        assert_eq!(vertex_colour_profile(&transitive(4, Red), 2), ColourSet::single(Red));
        assert!(at_most_two_everywhere(&t));
        let hub = ColouredTournament::parse("4\n.rbg\n..rr\n...r\n....").unwrap();
        assert!(!at_most_two_everywhere(&hub));
    }
}
