//! The verification campaigns.

use super::campaign::{run, Campaign, CampaignResult, RunOptions};
use super::spec::{ColourCount, EnumerationSpec, Filter};
use super::SearchError;
use crate::auditor::hamilton::{genhamilton_check_with, MAX_GENHAMILTON_ORDER};
use crate::auditor::report::{audit, Check, Verdict, Witness};
use crate::auditor::AuditError;
use crate::colour::Colour;
use crate::domination::{find_rainbow_triangle, min_cover_with, CoverOutcome, DominationRelation};

/// Instances with neither a rainbow triangle (cyclic only, if
/// `require_cyclic`) nor a dominating vertex are violators.
pub fn verify_conjecture(
    spec: &EnumerationSpec,
    require_cyclic: bool,
    opts: &RunOptions,
) -> Result<CampaignResult, SearchError> {
    if spec.colours != ColourCount::Three {
        return Err(SearchError::WrongColourCount { expected: 3 });
    }
    run(Campaign::Conjecture, spec, opts, |tally, i, t| {
        let dominated = DominationRelation::new(t).has_dominating_vertex();
        let triangle = find_rainbow_triangle(t, require_cyclic).is_some();
        if dominated {
            tally.bump("dominating_vertex");
        }
        if triangle {
            tally.bump(if require_cyclic { "t3" } else { "rainbow_triangle" });
        }
        if !dominated && !triangle {
            tally.violator(i, t);
        }
    })
}

/// Two-coloured instances without a dominating vertex are violators.
pub fn verify_ssw2(spec: &EnumerationSpec, opts: &RunOptions) -> Result<CampaignResult, SearchError> {
    if spec.colours != ColourCount::Two {
        return Err(SearchError::WrongColourCount { expected: 2 });
    }
    run(Campaign::Ssw2, spec, opts, |tally, i, t| {
        if !DominationRelation::new(t).has_dominating_vertex() {
            tally.violator(i, t);
        }
    })
}

/// Minimum cover order of every instance: a histogram under
/// `cover_order_<k>`, the least-index witness per order, and instances with
/// no cover of at most `k_max` vertices as violators.
pub fn estimate_f(spec: &EnumerationSpec, k_max: usize, opts: &RunOptions) -> Result<CampaignResult, SearchError> {
    if k_max == 0 {
        return Err(SearchError::ZeroKMax);
    }
    if spec.order > crate::domination::MAX_COVER_ORDER {
        return Err(SearchError::BadOrder(spec.order));
    }
    run(Campaign::Cover, spec, opts, |tally, i, t| {
        let rel = DominationRelation::new(t);
        match min_cover_with(&rel, k_max).expect("arguments checked") {
            CoverOutcome::Found(c) => {
                tally.bump(&format!("cover_order_{}", c.order));
                tally.extremal(c.order.to_string(), i, t);
            }
            CoverOutcome::NoneWithin(_) => tally.violator(i, t),
        }
    })
}

/// Fixes the Hamilton cycle `0 → 1 → … → n-1 → 0` coloured by repeating
/// `pattern` and scans completions of the other pairs. Violators are
/// completions the audit passes in full; the tally
/// `genhamilton_no_t3_no_dominating` counts completions with a qualifying
/// Hamilton cycle and neither a T3 nor a dominating vertex.
pub fn search_pattern(
    base: &EnumerationSpec,
    pattern: &[Colour],
    opts: &RunOptions,
) -> Result<CampaignResult, SearchError> {
    if base.order > MAX_GENHAMILTON_ORDER {
        return Err(AuditError::OrderLimit { n: base.order, max: MAX_GENHAMILTON_ORDER }.into());
    }
    let spec = base.clone().with_filter(Filter::CyclePattern(pattern.to_vec()));
    run(Campaign::Pattern, &spec, opts, |tally, i, t| {
        let rel = DominationRelation::new(t);
        if rel.has_dominating_vertex() {
            tally.bump("dominating_vertex");
            return;
        }
        if find_rainbow_triangle(t, true).is_some() {
            tally.bump("t3");
            return;
        }
        let gh = genhamilton_check_with(t, &rel).expect("order checked");
        if !gh.holds {
            return;
        }
        tally.bump("genhamilton_no_t3_no_dominating");
        tally.extremal("genhamilton_no_t3_no_dominating".into(), i, t);
        let report = audit(t).expect("order checked");
        if report.verdict == Verdict::AllNecessaryConditionsPass {
            tally.violator(i, t);
        }
    })
}

/// Audits every instance. Violators are instances passing every check;
/// `check_failures` counts instances failing each check.
pub fn audit_campaign(spec: &EnumerationSpec, opts: &RunOptions) -> Result<CampaignResult, SearchError> {
    if spec.order > MAX_GENHAMILTON_ORDER {
        return Err(AuditError::OrderLimit { n: spec.order, max: MAX_GENHAMILTON_ORDER }.into());
    }
    run(Campaign::Audit, spec, opts, |tally, i, t| {
        let report = audit(t).expect("order checked");
        for f in report.failed() {
            tally.check_failed(f.check.as_str());
        }
        if report.qualifying_cycles > 0 {
            tally.bump("qualifying_cycle");
        }
        if report.qualifying_cycles > 1 {
            tally.bump("multiple_qualifying_cycles");
        }
        if !report.pivots.is_empty() {
            tally.bump("two_colour_pivot");
        }
        if let Some(f) = report.finding(Check::Descent) {
            if matches!(f.witness, Some(Witness::Descent { .. })) {
                tally.bump("descent_obstruction");
            }
        }
        if report.verdict == Verdict::AllNecessaryConditionsPass {
            tally.violator(i, t);
        }
    })
}
