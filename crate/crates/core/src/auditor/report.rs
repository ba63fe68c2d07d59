use std::fmt;

use serde::{Serialize, Serializer};

use super::cycle::CycleView;
use super::hamilton::{genhamilton_check_with, NoQualifyingCycle};
use super::partition::{
    profile_on_cycle, descent_from, ColourProfilePartition, DescentTrace, PartitionWitness,
    Renaming,
};
use super::recheck;
use super::AuditError;
use crate::colour::{Colour, ColourSet};
use crate::domination::{find_rainbow_triangle, DominationRelation, RainbowTriangle};
use crate::tournament::ColouredTournament;

/// Stable check identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    T3,
    DominatingVertex,
    Genhamilton,
    Prop1in,
    LemmaXCy,
    ObsXxplus,
    LemmaTwoCedges,
    PropAlternate,
    LemmaDisjoint,
    LemmaM,
    LemmaN,
    Descent,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::T3,
        Check::DominatingVertex,
        Check::Genhamilton,
        Check::Prop1in,
        Check::LemmaXCy,
        Check::ObsXxplus,
        Check::LemmaTwoCedges,
        Check::PropAlternate,
        Check::LemmaDisjoint,
        Check::LemmaM,
        Check::LemmaN,
        Check::Descent,
    ];

    pub const fn as_str(self) -> &'static str {
        match self {
            Check::T3 => "t3",
            Check::DominatingVertex => "dominating_vertex",
            Check::Genhamilton => "genhamilton",
            Check::Prop1in => "prop_1in",
            Check::LemmaXCy => "lemma_xCy",
            Check::ObsXxplus => "obs_xxplus",
            Check::LemmaTwoCedges => "lemma_twoCedges",
            Check::PropAlternate => "prop_alternate",
            Check::LemmaDisjoint => "lemma_disjoint",
            Check::LemmaM => "lemma_m",
            Check::LemmaN => "lemma_n",
            Check::Descent => "descent",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Evidence attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    RainbowTriangle { triangle: RainbowTriangle },
    DominatingVertex { vertex: usize },
    NoQualifyingCycle { certificate: NoQualifyingCycle },
    /// Every incoming (or outgoing) arc of `vertex` has `colour`.
    MonochromaticSide { vertex: usize, incoming: bool, colour: Colour },
    /// `x` fails to dominate `y` inside `D[xCy]`, or only-colour domination
    /// does not survive the restriction.
    SegmentDomination {
        x: usize,
        y: usize,
        in_segment: ColourSet,
        in_whole: ColourSet,
    },
    /// `y` dominates `x` in `colour`, and `x⁺` dominates `y` in `colour`.
    SharedColour { x: usize, y: usize, colour: Colour },
    /// The cycle changes colour at `vertex` but `x⁻ → x⁺` is missing or
    /// `x⁺` does not dominate `x⁻` in exactly the third colour.
    ColourChange {
        vertex: usize,
        forward_arc: bool,
        successor_to_predecessor: ColourSet,
    },
    /// The cycle alternates between two colours starting at its first vertex.
    Alternation { colours: [Colour; 2] },
    Profile {
        pivot: usize,
        renaming: Renaming,
        witness: PartitionWitness,
    },
    Descent { trace: DescentTrace },
    DescentPrecondition { pivot: usize, renaming: Renaming },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: Check,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Finding {
    fn pass(check: Check) -> Finding {
        Finding {
            check,
            holds: true,
            witness: None,
        }
    }

    fn from_witness(check: Check, witness: Option<Witness>) -> Finding {
        Finding {
            check,
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Some necessary condition fails (which includes a T3 or a dominating
    /// vertex being present).
    CannotBeMinimal,
    /// Every necessary condition holds. This is an alarm state.
    AllNecessaryConditionsPass,
}

impl Verdict {
    pub const fn as_str(self) -> &'static str {
        match self {
            Verdict::CannotBeMinimal => "cannot be a minimal counterexample",
            Verdict::AllNecessaryConditionsPass => "ALL NECESSARY CONDITIONS PASS",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PivotSummary {
    pub pivot: usize,
    pub renaming: Renaming,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    #[serde(serialize_with = "serialize_instance")]
    pub instance: ColouredTournament,
    pub findings: Vec<Finding>,
    pub verdict: Verdict,
    pub cycle: Option<CycleView>,
    pub qualifying_cycles: usize,
    pub pivots: Vec<PivotSummary>,
}

pub(crate) fn serialize_instance<S: Serializer>(
    t: &ColouredTournament,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&t.serialize())
}

impl AuditReport {
    pub fn finding(&self, check: Check) -> Option<&Finding> {
        self.findings.iter().find(|f| f.check == check)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| !f.holds)
    }

    /// Every failed check carries a witness that re-verifies from scratch.
    pub fn witnesses_recheck(&self) -> bool {
        self.failed().all(|f| {
            f.witness
                .as_ref()
                .is_some_and(|w| recheck::witness_holds(&self.instance, self.cycle.as_ref(), f.check, w))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Runs every check in order: cyclic rainbow triangle, dominating vertex,
/// qualifying Hamilton cycle, and, when such a cycle exists, the per-vertex
/// cycle conditions followed by the colour-profile conditions at every
/// vertex meeting at most two colours.
pub fn audit(t: &ColouredTournament) -> Result<AuditReport, AuditError> {
    let rel = DominationRelation::new(t);
    let mut findings = Vec::with_capacity(Check::ALL.len());

    findings.push(Finding::from_witness(
        Check::T3,
        find_rainbow_triangle(t, true).map(|triangle| Witness::RainbowTriangle { triangle }),
    ));
    findings.push(Finding::from_witness(
        Check::DominatingVertex,
        rel.dominating_vertices()
            .first()
            .map(|vertex| Witness::DominatingVertex { vertex }),
    ));
    let gh = genhamilton_check_with(t, &rel)?;
    findings.push(Finding::from_witness(
        Check::Genhamilton,
        gh.certificate
            .clone()
            .map(|certificate| Witness::NoQualifyingCycle { certificate }),
    ));

    let mut pivots = Vec::new();
    if let Some(cycle) = &gh.cycle {
        cycle_checks(t, &rel, cycle, &mut findings);
        profile_checks(t, cycle, &mut findings, &mut pivots);
    }

    let verdict = if findings.iter().all(|f| f.holds) {
        Verdict::AllNecessaryConditionsPass
    } else {
        Verdict::CannotBeMinimal
    };
    Ok(AuditReport {
        n: t.order(),
        instance: t.clone(),
        findings,
        verdict,
        cycle: gh.cycle,
        qualifying_cycles: gh.qualifying_cycles,
        pivots,
    })
}

fn cycle_checks(t: &ColouredTournament, rel: &DominationRelation, c: &CycleView, out: &mut Vec<Finding>) {
    let n = t.order();

    let one_sided = (0..n).find_map(|v| {
        if let Some(colour) = t.in_colours(v).only() {
            return Some(Witness::MonochromaticSide { vertex: v, incoming: true, colour });
        }
        t.out_colours(v)
            .only()
            .map(|colour| Witness::MonochromaticSide { vertex: v, incoming: false, colour })
    });
    out.push(Finding::from_witness(Check::Prop1in, one_sided));

    let segment = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y && y != c.pred(x))
        .find_map(|(x, y)| {
            let in_segment = DominationRelation::within(t, c.segment_set(x, y)).colours(x, y);
            let in_whole = rel.colours(x, y);
            let refined_ok = in_whole.only().is_none_or(|only| in_segment == ColourSet::single(only));
            (in_segment.is_empty() || !refined_ok).then_some(Witness::SegmentDomination {
                x,
                y,
                in_segment,
                in_whole,
            })
        });
    out.push(Finding::from_witness(Check::LemmaXCy, segment));

    let shared = (0..n).find_map(|x| {
        let xp = c.succ(x);
        (0..n).filter(|&y| y != x && y != xp).find_map(|y| {
            rel.colours(xp, y)
                .intersection(rel.colours(y, x))
                .iter()
                .next()
                .map(|colour| Witness::SharedColour { x, y, colour })
        })
    });
    out.push(Finding::from_witness(Check::ObsXxplus, shared));

    let change = c.vertices().iter().find_map(|&x| {
        let (pred, succ) = (c.pred(x), c.succ(x));
        let cin = t.arc(pred, x).unwrap();
        let cout = t.arc(x, succ).unwrap();
        let third = cin.third(cout)?;
        let forward_arc = t.beats(pred, succ);
        let successor_to_predecessor = rel.colours(succ, pred);
        (!forward_arc || successor_to_predecessor != ColourSet::single(third)).then_some(
            Witness::ColourChange {
                vertex: x,
                forward_arc,
                successor_to_predecessor,
            },
        )
    });
    out.push(Finding::from_witness(Check::LemmaTwoCedges, change));

    out.push(Finding::from_witness(Check::PropAlternate, alternation(t, c)));
}

/// `Some` when the cycle has even length and its arcs alternate between two
/// distinct colours.
pub(crate) fn alternation(t: &ColouredTournament, c: &CycleView) -> Option<Witness> {
    let k = c.len();
    let (c0, c1) = (c.arc_colour(t, 0), c.arc_colour(t, 1));
    let alternates = k % 2 == 0 && c0 != c1 && (0..k).all(|i| c.arc_colour(t, i) == if i % 2 == 0 { c0 } else { c1 });
    alternates.then_some(Witness::Alternation { colours: [c0, c1] })
}

fn profile_checks(
    t: &ColouredTournament,
    c: &CycleView,
    out: &mut Vec<Finding>,
    pivots: &mut Vec<PivotSummary>,
) {
    let mut disjoint = None;
    let mut lemma_m = None;
    let mut lemma_n = None;
    let mut descent = None;
    let mut nonempty = None;
    for x in (0..t.order()).filter(|&x| t.colours_at(x).len() <= 2) {
        let p: ColourProfilePartition = profile_on_cycle(t, x, c).expect("pivot meets at most two colours");
        pivots.push(PivotSummary {
            pivot: x,
            renaming: p.renaming,
        });
        let wrap = |w: &PartitionWitness| Witness::Profile {
            pivot: x,
            renaming: p.renaming,
            witness: w.clone(),
        };
        nonempty = nonempty.or_else(|| p.nonempty.witness().map(wrap));
        disjoint = disjoint.or_else(|| p.disjoint.witness().map(wrap));
        lemma_m = lemma_m.or_else(|| p.lemma_m.witness().map(wrap));
        lemma_n = lemma_n.or_else(|| p.lemma_n.witness().map(wrap));
        if descent.is_none() {
            descent = Some(match descent_from(&p, c) {
                Ok(trace) => Witness::Descent { trace },
                Err(_) => Witness::DescentPrecondition {
                    pivot: x,
                    renaming: p.renaming,
                },
            });
        }
    }
    // empty arc classes at a pivot also break the one-sided-vertex condition
    if let (Some(w), Some(f)) = (nonempty, out.iter_mut().find(|f| f.check == Check::Prop1in)) {
        if f.holds {
            *f = Finding::from_witness(Check::Prop1in, Some(w));
        }
    }
    out.push(Finding::from_witness(Check::LemmaDisjoint, disjoint));
    out.push(Finding::from_witness(Check::LemmaM, lemma_m));
    out.push(Finding::from_witness(Check::LemmaN, lemma_n));
    out.push(match descent {
        Some(w) => Finding::from_witness(Check::Descent, Some(w)),
        None => Finding::pass(Check::Descent),
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::fixtures::*;

    #[test]
    fn t3_report() {
        let r = audit(&t3()).unwrap();
        assert_eq!(r.verdict, Verdict::CannotBeMinimal);
        let t3f = r.finding(Check::T3).unwrap();
        assert!(!t3f.holds);
        match &t3f.witness {
            Some(Witness::RainbowTriangle { triangle }) => assert_eq!(triangle.vertices, [0, 1, 2]),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(r.finding(Check::Genhamilton).unwrap().holds);
        let p = r.finding(Check::Prop1in).unwrap();
        assert_eq!(
            p.witness,
            Some(Witness::MonochromaticSide {
                vertex: 0,
                incoming: true,
                colour: Colour::Green
            })
        );
        assert_eq!(r.findings.len(), Check::ALL.len());
        assert!(r.witnesses_recheck());
    }

    #[test]
    fn transitive_report_stops_after_hamilton() {
        let r = audit(&transitive(3, Colour::Red)).unwrap();
        assert_eq!(r.verdict, Verdict::CannotBeMinimal);
        assert_eq!(
            r.finding(Check::DominatingVertex).unwrap().witness,
            Some(Witness::DominatingVertex { vertex: 0 })
        );
        assert!(r.finding(Check::T3).unwrap().holds);
        assert_eq!(r.findings.len(), 3);
        assert!(r.witnesses_recheck());
    }

    #[test]
    fn check_names_are_stable() {
        let names: Vec<_> = Check::ALL.iter().map(|c| c.as_str()).collect();
        assert_eq!(
            names,
            [
                "t3", "dominating_vertex", "genhamilton", "prop_1in", "lemma_xCy", "obs_xxplus",
                "lemma_twoCedges", "prop_alternate", "lemma_disjoint", "lemma_m", "lemma_n", "descent"
            ]
        );
    }

    #[test]
    fn json_field_order() {
        let json = audit(&t3()).unwrap().to_json();
        assert!(json.starts_with(r#"{"n":3,"instance":"3\n.r.\n..b\ng..\n","findings":[{"check":"t3","holds":false"#));
    }
}
