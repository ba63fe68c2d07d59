//! The red/blue profile of a vertex that misses one colour, and the nested
//! segment descent run on it.
//!
//! Colours are renamed so the pivot's missing colour is green and the arc
//! from its cycle predecessor is red. With that naming, `R⁺`/`R⁻` are the
//! vertices the pivot sends a red arc to / receives one from, `B⁺`/`B⁻`
//! likewise for blue, and the refinements are
//!
//! * `R_i⁻ = {v ∈ R⁻ : x ↦_i v}`, `B_i⁻ = {v ∈ B⁻ : x ↦_i v}`
//! * `R_i⁺ = {v ∈ R⁺ : v ↦_i x}`, `B_i⁺ = {v ∈ B⁺ : v ↦_i x}`
//!
//! for `i ∈ {r, b}`.

use serde::Serialize;

use super::cycle::CycleView;
use super::AuditError;
use crate::colour::Colour;
use crate::domination::DominationRelation;
use crate::tournament::ColouredTournament;
use crate::vertex_set::VertexSet;

/// Names of the profile classes, as written in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProfileClass {
    #[serde(rename = "R+")]
    RPlus,
    #[serde(rename = "R-")]
    RMinus,
    #[serde(rename = "B+")]
    BPlus,
    #[serde(rename = "B-")]
    BMinus,
    #[serde(rename = "R_r+")]
    RrPlus,
    #[serde(rename = "R_b+")]
    RbPlus,
    #[serde(rename = "R_r-")]
    RrMinus,
    #[serde(rename = "R_b-")]
    RbMinus,
    #[serde(rename = "B_r+")]
    BrPlus,
    #[serde(rename = "B_b+")]
    BbPlus,
    #[serde(rename = "B_r-")]
    BrMinus,
    #[serde(rename = "B_b-")]
    BbMinus,
}

impl ProfileClass {
    /// Arc class: `(colour of the arc, arc leaves the pivot)`.
    pub fn arc_class(self) -> (Colour, bool) {
        use ProfileClass::*;
        match self {
            RPlus | RrPlus | RbPlus => (Colour::Red, true),
            RMinus | RrMinus | RbMinus => (Colour::Red, false),
            BPlus | BrPlus | BbPlus => (Colour::Blue, true),
            BMinus | BrMinus | BbMinus => (Colour::Blue, false),
        }
    }

    /// For refined classes, the domination colour.
    pub fn refinement(self) -> Option<Colour> {
        use ProfileClass::*;
        match self {
            RrPlus | RrMinus | BrPlus | BrMinus => Some(Colour::Red),
            RbPlus | RbMinus | BbPlus | BbMinus => Some(Colour::Blue),
            _ => None,
        }
    }

    /// The class under the red/blue name swap.
    pub fn swapped(self) -> ProfileClass {
        use ProfileClass::*;
        match self {
            RPlus => BPlus,
            RMinus => BMinus,
            BPlus => RPlus,
            BMinus => RMinus,
            RrPlus => BbPlus,
            RbPlus => BrPlus,
            RrMinus => BbMinus,
            RbMinus => BrMinus,
            BrPlus => RbPlus,
            BbPlus => RrPlus,
            BrMinus => RbMinus,
            BbMinus => RrMinus,
        }
    }
}

/// How original colours map onto the internal red/blue/green naming.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Renaming {
    /// `internal[c]` is the internal name of original colour `c`.
    pub internal: [Colour; 3],
}

impl Renaming {
    pub fn to_internal(&self, original: Colour) -> Colour {
        self.internal[original.index()]
    }

    pub fn to_original(&self, internal: Colour) -> Colour {
        let i = self.internal.iter().position(|&c| c == internal).unwrap();
        Colour::from_index(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartitionWitness {
    EmptyClass { class: ProfileClass },
    /// `vertex` dominates the pivot in both red and blue.
    DominatesPivotTwice { vertex: usize },
    /// The pivot dominates `vertex` in both red and blue.
    DominatedTwice { vertex: usize },
    /// Every vertex of `R_r⁻` has its cycle successor in `B⁺`.
    SuccessorsInBluePlus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum LemmaOutcome {
    Holds,
    Fails(PartitionWitness),
}

impl LemmaOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, LemmaOutcome::Holds)
    }

    pub fn witness(&self) -> Option<&PartitionWitness> {
        match self {
            LemmaOutcome::Holds => None,
            LemmaOutcome::Fails(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColourProfilePartition {
    pub pivot: usize,
    pub renaming: Renaming,
    pub r_plus: VertexSet,
    pub r_minus: VertexSet,
    pub b_plus: VertexSet,
    pub b_minus: VertexSet,
    pub r_r_plus: VertexSet,
    pub r_b_plus: VertexSet,
    pub r_r_minus: VertexSet,
    pub r_b_minus: VertexSet,
    pub b_r_plus: VertexSet,
    pub b_b_plus: VertexSet,
    pub b_r_minus: VertexSet,
    pub b_b_minus: VertexSet,
    /// `R⁺, R⁻, B⁺, B⁻` all nonempty.
    pub nonempty: LemmaOutcome,
    /// No vertex dominates the pivot, or is dominated by it, in both red and blue.
    pub disjoint: LemmaOutcome,
    /// `B_b⁺` and `B_b⁻` nonempty.
    pub lemma_m: LemmaOutcome,
    /// `R_r⁺`, `R_r⁻` nonempty and some `v ∈ R_r⁻` has `v⁺ ∉ B⁺`.
    pub lemma_n: LemmaOutcome,
}

impl ColourProfilePartition {
    pub fn class(&self, class: ProfileClass) -> VertexSet {
        use ProfileClass::*;
        match class {
            RPlus => self.r_plus,
            RMinus => self.r_minus,
            BPlus => self.b_plus,
            BMinus => self.b_minus,
            RrPlus => self.r_r_plus,
            RbPlus => self.r_b_plus,
            RrMinus => self.r_r_minus,
            RbMinus => self.r_b_minus,
            BrPlus => self.b_r_plus,
            BbPlus => self.b_b_plus,
            BrMinus => self.b_r_minus,
            BbMinus => self.b_b_minus,
        }
    }
}

/// Picks the renaming: the largest absent colour becomes green, the other
/// two keep their relative order as red/blue, then red and blue swap if
/// needed so the arc `x⁻ → x` is red.
pub fn pivot_renaming(t: &ColouredTournament, x: usize, cycle: &CycleView) -> Result<Renaming, AuditError> {
    let present = t.colours_at(x);
    if present.len() == 3 {
        return Err(AuditError::PivotMeetsAllColours(x));
    }
    let missing = *Colour::ALL
        .iter()
        .rev()
        .find(|c| !present.contains(**c))
        .unwrap();
    let mut rest = Colour::ALL.into_iter().filter(|&c| c != missing);
    let (mut first, mut second) = (rest.next().unwrap(), rest.next().unwrap());
    let into_pivot = t.arc(cycle.pred(x), x).expect("cycle arc");
    if into_pivot == second {
        std::mem::swap(&mut first, &mut second);
    }
    let mut internal = [Colour::Green; 3];
    internal[first.index()] = Colour::Red;
    internal[second.index()] = Colour::Blue;
    internal[missing.index()] = Colour::Green;
    Ok(Renaming { internal })
}

/// Whether `cycle` is a qualifying Hamilton cycle of `t`.
pub fn is_qualifying(t: &ColouredTournament, rel: &DominationRelation, cycle: &CycleView) -> bool {
    let all = t.vertices();
    cycle.is_hamiltonian(t)
        && cycle.vertices().iter().all(|&v| {
            all.without(v).difference(rel.dominated_from(v)) == VertexSet::single(cycle.pred(v))
        })
}

pub fn colour_profile_partition(
    t: &ColouredTournament,
    x: usize,
    cycle: &CycleView,
) -> Result<ColourProfilePartition, AuditError> {
    if x >= t.order() {
        return Err(AuditError::InvalidCycle(format!("pivot {x} out of range")));
    }
    if !is_qualifying(t, &DominationRelation::new(t), cycle) {
        return Err(AuditError::NotQualifying);
    }
    profile_on_cycle(t, x, cycle)
}

/// As [`colour_profile_partition`] but along any Hamilton cycle, qualifying
/// or not. The sets follow the same definitions; the lemma outcomes only
/// carry their usual meaning on a qualifying cycle.
pub fn profile_on_cycle(
    t: &ColouredTournament,
    x: usize,
    cycle: &CycleView,
) -> Result<ColourProfilePartition, AuditError> {
    if x >= t.order() {
        return Err(AuditError::InvalidCycle(format!("pivot {x} out of range")));
    }
    if !cycle.is_hamiltonian(t) {
        return Err(AuditError::InvalidCycle("cycle is not Hamiltonian".into()));
    }
    let renaming = pivot_renaming(t, x, cycle)?;
    let internal = t.recolour(renaming.internal);
    let rel = DominationRelation::new(&internal);
    Ok(build_partition(&internal, &rel, x, cycle, renaming))
}

fn build_partition(
    t: &ColouredTournament,
    rel: &DominationRelation,
    x: usize,
    cycle: &CycleView,
    renaming: Renaming,
) -> ColourProfilePartition {
    use Colour::{Blue, Red};
    let r_plus = t.out_neighbours(x, Red);
    let r_minus = t.in_neighbours(x, Red);
    let b_plus = t.out_neighbours(x, Blue);
    let b_minus = t.in_neighbours(x, Blue);

    // v ↦_i x, as a set of v
    let reaches_pivot = |c: Colour| -> VertexSet {
        t.vertices().iter().filter(|&v| rel.reaches(c, v, x)).collect()
    };
    let into_red = reaches_pivot(Red);
    let into_blue = reaches_pivot(Blue);
    let from_red = rel.reach_set(Red, x);
    let from_blue = rel.reach_set(Blue, x);

    let nonempty = [
        (r_plus, ProfileClass::RPlus),
        (r_minus, ProfileClass::RMinus),
        (b_plus, ProfileClass::BPlus),
        (b_minus, ProfileClass::BMinus),
    ]
    .into_iter()
    .find(|(s, _)| s.is_empty())
    .map_or(LemmaOutcome::Holds, |(_, class)| {
        LemmaOutcome::Fails(PartitionWitness::EmptyClass { class })
    });

    let others = t.vertices().without(x);
    let disjoint = if let Some(v) = into_red.intersection(into_blue).intersection(others).first() {
        LemmaOutcome::Fails(PartitionWitness::DominatesPivotTwice { vertex: v })
    } else if let Some(v) = from_red.intersection(from_blue).intersection(others).first() {
        LemmaOutcome::Fails(PartitionWitness::DominatedTwice { vertex: v })
    } else {
        LemmaOutcome::Holds
    };

    let b_b_plus = b_plus.intersection(into_blue);
    let b_b_minus = b_minus.intersection(from_blue);
    let r_r_plus = r_plus.intersection(into_red);
    let r_r_minus = r_minus.intersection(from_red);

    let first_empty = |sets: &[(VertexSet, ProfileClass)]| {
        sets.iter()
            .find(|(s, _)| s.is_empty())
            .map(|&(_, class)| PartitionWitness::EmptyClass { class })
    };
    let lemma_m = first_empty(&[(b_b_plus, ProfileClass::BbPlus), (b_b_minus, ProfileClass::BbMinus)])
        .map_or(LemmaOutcome::Holds, LemmaOutcome::Fails);
    let lemma_n = match first_empty(&[(r_r_plus, ProfileClass::RrPlus), (r_r_minus, ProfileClass::RrMinus)]) {
        Some(w) => LemmaOutcome::Fails(w),
        None if r_r_minus.iter().all(|v| b_plus.contains(cycle.succ(v))) => {
            LemmaOutcome::Fails(PartitionWitness::SuccessorsInBluePlus)
        }
        None => LemmaOutcome::Holds,
    };

    ColourProfilePartition {
        pivot: x,
        renaming,
        r_plus,
        r_minus,
        b_plus,
        b_minus,
        r_r_plus,
        r_b_plus: r_plus.intersection(into_blue),
        r_r_minus,
        r_b_minus: r_minus.intersection(from_blue),
        b_r_plus: b_plus.intersection(into_red),
        b_b_plus,
        b_r_minus: b_minus.intersection(from_red),
        b_b_minus,
        nonempty,
        disjoint,
        lemma_m,
        lemma_n,
    }
}

/// Why a descent round could not continue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObstructionKind {
    /// The segment meets the role-`B⁻` vertex `vertex` before any role-`R⁺` vertex.
    EntryBlocked { vertex: usize },
    /// The segment meets neither role-`R⁺` nor role-`B⁻`.
    NoEntry,
    /// The first role-`R⁺` vertex is outside role-`R_r⁺`.
    EntryOutsideClass { vertex: usize },
    /// Read backwards, the segment meets role-`R⁺` vertex `vertex` before any role-`B⁻` vertex.
    ExitBlocked { vertex: usize },
    /// The last role-`B⁻` vertex is outside role-`B_b⁻`.
    ExitOutsideClass { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentRound {
    /// Red and blue roles exchanged in this round.
    pub roles_swapped: bool,
    pub segment: (usize, usize),
    pub entry: usize,
    pub exit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub round: usize,
    pub roles_swapped: bool,
    pub segment: (usize, usize),
    pub kind: ObstructionKind,
}

/// The nested segments `mCn ⊋ pCt ⊋ …` visited by the descent, ending in the
/// round where no entry/exit pair exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentTrace {
    pub pivot: usize,
    pub renaming: Renaming,
    /// `(m, n)` with `m ∈ B_b⁺`, `n ∈ R_r⁻`, `m ≠ n⁺`.
    pub start: (usize, usize),
    pub rounds: Vec<DescentRound>,
    pub obstruction: Obstruction,
}

/// Role classes `(R⁺, B⁻, R_r⁺, B_b⁻)` for a round.
pub(crate) fn roles(swapped: bool) -> [ProfileClass; 4] {
    use ProfileClass::*;
    let base = [RPlus, BMinus, RrPlus, BbMinus];
    if swapped {
        base.map(ProfileClass::swapped)
    } else {
        base
    }
}

/// Lexicographically least `(m, n)` with `m ∈ B_b⁺`, `n ∈ R_r⁻`, `m ≠ n⁺`.
pub fn descent_start(p: &ColourProfilePartition, cycle: &CycleView) -> Option<(usize, usize)> {
    p.b_b_plus
        .iter()
        .flat_map(|m| p.r_r_minus.iter().map(move |n| (m, n)))
        .find(|&(m, n)| m != cycle.succ(n))
}

pub fn descent_check(t: &ColouredTournament, x: usize, cycle: &CycleView) -> Result<DescentTrace, AuditError> {
    let partition = colour_profile_partition(t, x, cycle)?;
    descent_from(&partition, cycle)
}

pub fn descent_from(p: &ColourProfilePartition, cycle: &CycleView) -> Result<DescentTrace, AuditError> {
    let start = descent_start(p, cycle).ok_or(AuditError::DescentPrecondition(p.pivot))?;
    let mut rounds = Vec::new();
    let (mut a, mut b) = start;
    let mut swapped = false;
    loop {
        let [plus, minus, plus_cls, minus_cls] = roles(swapped).map(|c| p.class(c));
        let seg = cycle.segment(a, b);
        let stall = |kind| Obstruction {
            round: rounds.len(),
            roles_swapped: swapped,
            segment: (a, b),
            kind,
        };

        let entry = seg.iter().copied().find(|&v| plus.contains(v) || minus.contains(v));
        let entry = match entry {
            None => break Ok(stall(ObstructionKind::NoEntry)),
            Some(v) if minus.contains(v) => break Ok(stall(ObstructionKind::EntryBlocked { vertex: v })),
            Some(v) if !plus_cls.contains(v) => {
                break Ok(stall(ObstructionKind::EntryOutsideClass { vertex: v }))
            }
            Some(v) => v,
        };
        // an entry exists, so reading backwards finds some role vertex
        let exit = seg
            .iter()
            .rev()
            .copied()
            .find(|&v| plus.contains(v) || minus.contains(v))
            .unwrap();
        if plus.contains(exit) {
            break Ok(stall(ObstructionKind::ExitBlocked { vertex: exit }));
        }
        if !minus_cls.contains(exit) {
            break Ok(stall(ObstructionKind::ExitOutsideClass { vertex: exit }));
        }
        rounds.push(DescentRound {
            roles_swapped: swapped,
            segment: (a, b),
            entry,
            exit,
        });
        // entry ∉ role-B⁺ ∋ a and exit ∉ role-R⁻ ∋ b, so the segment shrinks
        assert!(rounds.len() <= cycle.len(), "descent failed to shrink");
        (a, b) = (entry, exit);
        swapped = !swapped;
    }
    .map(|obstruction| DescentTrace {
        pivot: p.pivot,
        renaming: p.renaming,
        start,
        rounds,
        obstruction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auditor::hamilton::genhamilton_check;
    use crate::tournament::fixtures::t3;

    #[test]
    fn t3_partition_at_zero() {
        let t = t3();
        let c = genhamilton_check(&t).unwrap().cycle.unwrap();
        let p = colour_profile_partition(&t, 0, &c).unwrap();
        // 0 meets red and green; green → blue after renaming, then swapped
        // so the arc from 2 (green) is red
        assert_eq!(p.renaming.to_internal(Colour::Green), Colour::Red);
        assert_eq!(p.renaming.to_internal(Colour::Red), Colour::Blue);
        assert_eq!(p.renaming.to_internal(Colour::Blue), Colour::Green);
        assert_eq!(p.r_minus, VertexSet::single(2));
        assert_eq!(p.b_plus, VertexSet::single(1));
        assert!(p.r_plus.is_empty() && p.b_minus.is_empty());
        assert_eq!(p.r_plus.len() + p.b_plus.len(), 1);
        assert_eq!(p.r_minus.len() + p.b_minus.len(), 1);
        assert_eq!(p.nonempty, LemmaOutcome::Fails(PartitionWitness::EmptyClass { class: ProfileClass::RPlus }));
        assert!(p.disjoint.holds());
    }

    #[test]
    fn three_colour_pivot_rejected() {
        let t = ColouredTournament::parse("4\n.rbg\n..rr\n...r\n....").unwrap();
        let c = CycleView::new(&t3(), vec![0, 1, 2]).unwrap();
        assert!(colour_profile_partition(&t, 0, &c).is_err());
    }

    #[test]
    fn non_qualifying_cycle_rejected() {
        // 4-cycle 0→1→2→3→0 all red plus chords: every vertex dominates all
        let t = ColouredTournament::parse("4\n.rr.\n..rr\n...r\nr...").unwrap();
        let c = CycleView::new(&t, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(colour_profile_partition(&t, 0, &c), Err(AuditError::NotQualifying));
    }

    #[test]
    fn swapped_roles_are_an_involution() {
        use ProfileClass::*;
        for c in [RPlus, RMinus, BPlus, BMinus, RrPlus, RbPlus, RrMinus, RbMinus, BrPlus, BbPlus, BrMinus, BbMinus] {
            assert_eq!(c.swapped().swapped(), c);
            let (col, out) = c.arc_class();
            let (scol, sout) = c.swapped().arc_class();
            assert_eq!(out, sout);
            assert_ne!(col, scol);
        }
    }
}
