//! Campaign results, their merge, and the sharded parallel scan.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::spec::{enumerate, EnumerationSpec, Mode};
use super::SearchError;
use crate::tournament::ColouredTournament;

/// Violators kept verbatim per result; the count is always exact.
pub const MAX_KEPT_VIOLATORS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Campaign {
    Conjecture,
    Ssw2,
    Cover,
    Pattern,
    Audit,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    /// Indices visited.
    pub scanned: u64,
    /// Instances that passed the filter and de-duplication.
    pub examined: u64,
    pub violators: u64,
}

/// An instance with its position in the enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Found {
    pub index: u64,
    #[serde(serialize_with = "crate::auditor::report::serialize_instance")]
    pub instance: ColouredTournament,
}

/// What one or more shards observed; merging is exact, associative and
/// commutative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub counts: Counts,
    /// Lowest-index violators.
    pub violators: Vec<Found>,
    /// Least-index witness for each value of the campaign's statistic.
    pub extremal: BTreeMap<String, Found>,
    /// Named counters, such as how many instances hold a T3.
    pub tallies: BTreeMap<String, u64>,
    /// Instances failing each audit check.
    pub check_failures: BTreeMap<String, u64>,
}

impl Tally {
    pub fn violator(&mut self, index: u64, t: &ColouredTournament) {
        self.counts.violators += 1;
        if self.violators.len() < MAX_KEPT_VIOLATORS {
            self.violators.push(Found {
                index,
                instance: t.clone(),
            });
        }
    }

    pub fn bump(&mut self, name: &str) {
        *self.tallies.entry(name.to_string()).or_default() += 1;
    }

    pub fn check_failed(&mut self, name: &str) {
        *self.check_failures.entry(name.to_string()).or_default() += 1;
    }

    /// Records `t` as a witness for `value` unless a lower index already is.
    pub fn extremal(&mut self, value: String, index: u64, t: &ColouredTournament) {
        match self.extremal.get(&value) {
            Some(f) if f.index <= index => {}
            _ => {
                self.extremal.insert(value, Found { index, instance: t.clone() });
            }
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.counts.scanned += other.counts.scanned;
        self.counts.examined += other.counts.examined;
        self.counts.violators += other.counts.violators;
        self.violators.extend(other.violators);
        self.violators.sort_by_key(|f| f.index);
        self.violators.dedup_by_key(|f| f.index);
        self.violators.truncate(MAX_KEPT_VIOLATORS);
        for (k, f) in other.extremal {
            self.extremal(k, f.index, &f.instance);
        }
        for (k, v) in other.tallies {
            *self.tallies.entry(k).or_default() += v;
        }
        for (k, v) in other.check_failures {
            *self.check_failures.entry(k).or_default() += v;
        }
        self
    }
}

/// Timing; never part of the serialized result.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Telemetry {
    /// Summed over workers.
    pub elapsed: Duration,
    pub scanned: u64,
}

impl Telemetry {
    /// Indices per second of worker time.
    pub fn throughput(&self) -> f64 {
        let secs = self.elapsed.as_secs_f64();
        if secs > 0.0 {
            self.scanned as f64 / secs
        } else {
            0.0
        }
    }

    fn merge(self, other: Telemetry) -> Telemetry {
        Telemetry {
            elapsed: self.elapsed + other.elapsed,
            scanned: self.scanned + other.scanned,
        }
    }
}

/// Residues mod `count` this result covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShardCover {
    pub count: u64,
    pub covered: Vec<u64>,
}

impl ShardCover {
    pub fn is_complete(&self) -> bool {
        self.covered.len() as u64 == self.count
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignResult {
    pub campaign: Campaign,
    #[serde(serialize_with = "echo_spec")]
    pub spec: EnumerationSpec,
    pub shards: ShardCover,
    #[serde(flatten)]
    pub tally: Tally,
    pub seed: Option<u64>,
    #[serde(skip)]
    pub telemetry: Telemetry,
}

/// Equality ignores telemetry.
impl PartialEq for CampaignResult {
    fn eq(&self, other: &Self) -> bool {
        self.campaign == other.campaign
            && self.spec == other.spec
            && self.shards == other.shards
            && self.tally == other.tally
            && self.seed == other.seed
    }
}

#[derive(Serialize)]
struct SpecEcho<'a> {
    order: usize,
    colours: super::spec::ColourCount,
    #[serde(flatten)]
    mode: &'a Mode,
    filter: &'a super::spec::Filter,
    budget: u64,
}

fn echo_spec<S: Serializer>(spec: &EnumerationSpec, s: S) -> Result<S::Ok, S::Error> {
    SpecEcho {
        order: spec.order,
        colours: spec.colours,
        mode: &spec.mode,
        filter: &spec.filter,
        budget: spec.budget,
    }
    .serialize(s)
}

impl CampaignResult {
    pub fn violators(&self) -> u64 {
        self.tally.counts.violators
    }

    pub fn examined(&self) -> u64 {
        self.tally.counts.examined
    }

    pub fn tally(&self, name: &str) -> u64 {
        self.tally.tallies.get(name).copied().unwrap_or(0)
    }

    /// Largest integer key among the extremal witnesses.
    pub fn max_extremal(&self) -> Option<usize> {
        self.tally.extremal.keys().filter_map(|k| k.parse().ok()).max()
    }

    /// Pretty JSON; byte-identical for equal results.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("campaign result serializes")
    }

    /// Combines results of disjoint shards of the same campaign. Once every
    /// residue is covered the result is indistinguishable from an unsharded
    /// run.
    pub fn merge(self, other: CampaignResult) -> Result<CampaignResult, SearchError> {
        let mut a_spec = self.spec.clone();
        a_spec.shard = other.spec.shard;
        if self.campaign != other.campaign || a_spec != other.spec || self.shards.count != other.shards.count {
            return Err(SearchError::IncompatibleMerge);
        }
        if self.shards.covered.iter().any(|k| other.shards.covered.contains(k)) {
            return Err(SearchError::IncompatibleMerge);
        }
        let mut covered = self.shards.covered;
        covered.extend(other.shards.covered);
        covered.sort_unstable();
        let mut shards = ShardCover {
            count: self.shards.count,
            covered,
        };
        let mut spec = other.spec;
        spec.shard.index = shards.covered[0];
        if shards.is_complete() {
            shards = ShardCover { count: 1, covered: vec![0] };
            spec.shard = super::spec::Shard::WHOLE;
        }
        Ok(CampaignResult {
            campaign: self.campaign,
            spec,
            shards,
            tally: self.tally.merge(other.tally),
            seed: self.seed,
            telemetry: self.telemetry.merge(other.telemetry),
        })
    }
}

/// Merges shard results in any order.
pub fn merge_shards(results: Vec<CampaignResult>) -> Result<CampaignResult, SearchError> {
    let mut it = results.into_iter();
    let first = it.next().ok_or(SearchError::IncompatibleMerge)?;
    it.try_fold(first, CampaignResult::merge)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; `0` uses the machine's parallelism.
    pub workers: usize,
    /// Print a progress line to standard error every this many indices.
    pub progress: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: 1,
            progress: None,
        }
    }
}

impl RunOptions {
    pub fn workers(workers: usize) -> Self {
        RunOptions { workers, progress: None }
    }

    fn worker_count(&self) -> usize {
        if self.workers == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            self.workers
        }
    }
}

/// Scans `spec`'s shard, calling `observe` on every instance kept by the
/// filter. Work is split into sub-shards that run independently and are
/// merged at the end, so the result does not depend on the worker count.
pub fn run<F>(
    campaign: Campaign,
    spec: &EnumerationSpec,
    opts: &RunOptions,
    observe: F,
) -> Result<CampaignResult, SearchError>
where
    F: Fn(&mut Tally, u64, &ColouredTournament) + Sync,
{
    spec.validate()?;
    let workers = opts.worker_count();
    let parts: u64 = if workers <= 1 { 1 } else { 4 * workers as u64 };
    let total = spec.total()?;
    let scan = |j: u64| -> Result<(Tally, Telemetry), SearchError> {
        let sub = spec.clone().with_shard(spec.shard.split(j, parts));
        let size = sub.shard.size_of(total);
        let start = Instant::now();
        let mut tally = Tally::default();
        let mut examined = 0u64;
        for (i, t) in enumerate(&sub)? {
            examined += 1;
            observe(&mut tally, i, &t);
            if let Some(every) = opts.progress {
                if every > 0 && examined % every == 0 {
                    let done = sub.shard.size_of(i + 1);
                    let _ = writeln!(std::io::stderr(), "shard {}: {done} of {size}", sub.shard);
                }
            }
        }
        tally.counts.scanned = size;
        tally.counts.examined = examined;
        let telemetry = Telemetry {
            elapsed: start.elapsed(),
            scanned: size,
        };
        Ok((tally, telemetry))
    };
    let combine = |a: (Tally, Telemetry), b: (Tally, Telemetry)| (a.0.merge(b.0), a.1.merge(b.1));
    let (tally, telemetry) = if parts == 1 {
        scan(0)?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
        pool.install(|| {
            (0..parts)
                .into_par_iter()
                .map(scan)
                .try_reduce(|| (Tally::default(), Telemetry::default()), |a, b| Ok(combine(a, b)))
        })?
    };
    Ok(CampaignResult {
        campaign,
        spec: spec.clone(),
        shards: ShardCover {
            count: spec.shard.count,
            covered: vec![spec.shard.index],
        },
        tally,
        seed: spec.seed(),
        telemetry,
    })
}
