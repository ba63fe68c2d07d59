//! What a campaign scans and how instances are numbered.
//!
//! Every free vertex pair `(i, j)`, `i < j`, taken in lexicographic order,
//! is one digit of a mixed-radix index, the first pair least significant.
//! With three colours a digit `d ∈ 0..6` means orientation `d / 3` (`0` is
//! `i → j`) and colour `d % 3` (red, blue, green); with two colours
//! `d ∈ 0..4` means orientation `d / 2` and colour `d % 2` (red, blue).
//! Shard `k` of `m` takes the indices congruent to `k` mod `m`.
//!
//! Sampled mode draws instance `s` from `ChaCha8Rng::seed_from_u64(seed)`
//! switched to stream `s`, taking one `random_range(0..options)` digit per
//! free pair in order. With the two-colours-per-vertex filter each vertex
//! first draws the colour it avoids (`random_range(0..3)`), then each pair
//! in order draws a colour from the ones neither endpoint avoids and an
//! orientation (`random_range(0..2)`, `0` is `i → j`).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SearchError;
use crate::canonical::is_canonical;
use crate::colour::Colour;
use crate::domination::at_most_two_everywhere;
use crate::tournament::ColouredTournament;

/// Exhaustive-mode limit on the size of the instance space.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Canonical de-duplication is only offered up to this order.
pub const MAX_CANONICAL_ORDER: usize = 6;

/// Seed used whenever none is given.
pub const DEFAULT_SEED: u64 = 0x5357_5733;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColourCount {
    Two,
    Three,
}

impl ColourCount {
    pub fn from_count(k: usize) -> Option<Self> {
        match k {
            2 => Some(ColourCount::Two),
            3 => Some(ColourCount::Three),
            _ => None,
        }
    }

    pub fn count(self) -> usize {
        match self {
            ColourCount::Two => 2,
            ColourCount::Three => 3,
        }
    }

    /// Options per free pair: two orientations times the colours.
    pub fn options(self) -> u64 {
        2 * self.count() as u64
    }
}

impl Serialize for ColourCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(self.count() as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    /// Exhaustive, keeping one labelled representative per isomorphism class.
    Canonical,
    Sampled { seed: u64, samples: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filter {
    None,
    /// Every vertex meets at most two colours.
    TwoColourVertices,
    /// The Hamilton cycle `0 → 1 → … → n-1 → 0` is fixed, its `i`-th arc
    /// coloured `pattern[i % pattern.len()]`; only the other pairs vary.
    CyclePattern(Vec<Colour>),
}

impl Filter {
    pub fn name(&self) -> &'static str {
        match self {
            Filter::None => "none",
            Filter::TwoColourVertices => "two-colour-vertices",
            Filter::CyclePattern(_) => "cycle-pattern",
        }
    }
}

impl Serialize for Filter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Filter::CyclePattern(p) => s.serialize_str(&format!("cycle-pattern:{}", pattern_string(p))),
            other => s.serialize_str(other.name()),
        }
    }
}

pub fn pattern_string(p: &[Colour]) -> String {
    p.iter().map(|c| c.symbol()).collect()
}

/// Parses a colour pattern such as `"rb"` or `"rgb"`.
pub fn parse_pattern(s: &str) -> Result<Vec<Colour>, SearchError> {
    let p: Option<Vec<Colour>> = s.chars().map(Colour::from_symbol).collect();
    match p {
        Some(p) if !p.is_empty() => Ok(p),
        _ => Err(SearchError::BadPattern(s.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Shard {
    pub index: u64,
    pub count: u64,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, count: 1 };

    pub fn new(index: u64, count: u64) -> Result<Self, SearchError> {
        if count == 0 || index >= count {
            return Err(SearchError::InvalidShard { index, count });
        }
        Ok(Shard { index, count })
    }

    #[inline]
    pub fn contains(&self, i: u64) -> bool {
        i % self.count == self.index
    }

    /// Number of indices in `0..total` that fall in this shard.
    pub fn size_of(&self, total: u64) -> u64 {
        if total <= self.index {
            0
        } else {
            (total - self.index - 1) / self.count + 1
        }
    }

    /// Sub-shard `j` of `parts` inside this one.
    pub fn split(&self, j: u64, parts: u64) -> Shard {
        Shard {
            index: self.index + j * self.count,
            count: self.count * parts,
        }
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

/// `"K/M"`.
impl FromStr for Shard {
    type Err = SearchError;
    fn from_str(s: &str) -> Result<Self, SearchError> {
        let bad = || SearchError::BadShard(s.to_string());
        let (k, m) = s.split_once('/').ok_or_else(bad)?;
        let k = k.trim().parse().map_err(|_| bad())?;
        let m = m.trim().parse().map_err(|_| bad())?;
        Shard::new(k, m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationSpec {
    pub order: usize,
    pub colours: ColourCount,
    #[serde(flatten)]
    pub mode: Mode,
    pub filter: Filter,
    pub shard: Shard,
    pub budget: u64,
}

impl EnumerationSpec {
    pub fn exhaustive(order: usize, colours: ColourCount) -> Self {
        EnumerationSpec {
            order,
            colours,
            mode: Mode::Exhaustive,
            filter: Filter::None,
            shard: Shard::WHOLE,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn sampled(order: usize, colours: ColourCount, seed: u64, samples: u64) -> Self {
        EnumerationSpec {
            mode: Mode::Sampled { seed, samples },
            ..Self::exhaustive(order, colours)
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_filter(mut self, filter: Filter) -> Self {
        self.filter = filter;
        self
    }

    pub fn with_shard(mut self, shard: Shard) -> Self {
        self.shard = shard;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn seed(&self) -> Option<u64> {
        match self.mode {
            Mode::Sampled { seed, .. } => Some(seed),
            _ => None,
        }
    }

    /// The free pairs, in lexicographic order.
    pub fn free_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.order;
        let fixed = |i: usize, j: usize| {
            matches!(self.filter, Filter::CyclePattern(_)) && (j == i + 1 || (i == 0 && j == n - 1))
        };
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !fixed(i, j))
            .collect()
    }

    /// Size of the labelled space, if it fits in a `u64`.
    pub fn space(&self) -> Option<u64> {
        self.colours.options().checked_pow(self.free_pairs().len() as u32)
    }

    /// Indices the scan visits (before filtering) across all shards.
    pub fn total(&self) -> Result<u64, SearchError> {
        match self.mode {
            Mode::Sampled { samples, .. } => Ok(samples),
            Mode::Exhaustive | Mode::Canonical => self.space().ok_or(SearchError::BudgetExceeded {
                space: None,
                budget: self.budget,
            }),
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let n = self.order;
        if n == 0 || n > crate::vertex_set::MAX_ORDER {
            return Err(SearchError::BadOrder(n));
        }
        Shard::new(self.shard.index, self.shard.count)?;
        if let Filter::CyclePattern(p) = &self.filter {
            if p.is_empty() || n < 3 || n % p.len() != 0 {
                return Err(SearchError::PatternPeriod { order: n, period: p.len() });
            }
            if self.colours == ColourCount::Two && p.contains(&Colour::Green) {
                return Err(SearchError::BadPattern(pattern_string(p)));
            }
            if self.mode == Mode::Canonical {
                return Err(SearchError::CanonicalWithPattern);
            }
        }
        match self.mode {
            Mode::Canonical if n > MAX_CANONICAL_ORDER => {
                return Err(SearchError::CanonicalOrder { n, max: MAX_CANONICAL_ORDER })
            }
            Mode::Exhaustive | Mode::Canonical => match self.space() {
                Some(space) if space <= self.budget => {}
                space => return Err(SearchError::BudgetExceeded { space, budget: self.budget }),
            },
            Mode::Sampled { .. } => {}
        }
        Ok(())
    }

    /// Tournament number `index`: the index's digits in exhaustive and
    /// canonical modes, the index-th sample in sampled mode. `None` when the
    /// instance is dropped by the filter or by canonical de-duplication.
    pub fn instance(&self, index: u64) -> Option<ColouredTournament> {
        self.instance_with(&self.free_pairs(), index)
    }

    pub(crate) fn instance_with(&self, free: &[(usize, usize)], index: u64) -> Option<ColouredTournament> {
        let t = match self.mode {
            Mode::Sampled { seed, .. } => self.sample(free, seed, index),
            Mode::Exhaustive | Mode::Canonical => self.decode(free, index),
        };
        let keep = match self.filter {
            Filter::TwoColourVertices => at_most_two_everywhere(&t),
            _ => true,
        } && (self.mode != Mode::Canonical
            || is_canonical(&t, false, MAX_CANONICAL_ORDER).expect("order checked by validate"));
        keep.then_some(t)
    }

    fn base(&self) -> ColouredTournament {
        let mut t = ColouredTournament::blank(self.order);
        if let Filter::CyclePattern(p) = &self.filter {
            let n = self.order;
            for i in 0..n {
                t.put_arc(i, (i + 1) % n, p[i % p.len()]);
            }
        }
        t
    }

    fn decode(&self, free: &[(usize, usize)], mut index: u64) -> ColouredTournament {
        let mut t = self.base();
        let (opts, k) = (self.colours.options(), self.colours.count() as u64);
        for &(i, j) in free {
            let d = index % opts;
            index /= opts;
            put(&mut t, i, j, d / k == 0, Colour::from_index((d % k) as usize));
        }
        t
    }

    fn sample(&self, free: &[(usize, usize)], seed: u64, index: u64) -> ColouredTournament {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let mut t = self.base();
        let k = self.colours.count() as u64;
        if self.filter == Filter::TwoColourVertices && self.colours == ColourCount::Three {
            let avoid: Vec<Colour> = (0..self.order)
                .map(|_| Colour::from_index(rng.random_range(0..3)))
                .collect();
            for &(i, j) in free {
                let allowed: Vec<Colour> = Colour::ALL
                    .into_iter()
                    .filter(|&c| c != avoid[i] && c != avoid[j])
                    .collect();
                let c = allowed[rng.random_range(0..allowed.len())];
                put(&mut t, i, j, rng.random_range(0..2u32) == 0, c);
            }
        } else {
            for &(i, j) in free {
                let d = rng.random_range(0..2 * k);
                put(&mut t, i, j, d / k == 0, Colour::from_index((d % k) as usize));
            }
        }
        t
    }

    /// Inverse of the exhaustive numbering; `None` when `t` does not belong
    /// to this space.
    pub fn index_of(&self, t: &ColouredTournament) -> Option<u64> {
        if t.order() != self.order {
            return None;
        }
        if let Filter::CyclePattern(p) = &self.filter {
            let n = self.order;
            if (0..n).any(|i| t.arc(i, (i + 1) % n) != Some(p[i % p.len()])) {
                return None;
            }
        }
        let (opts, k) = (self.colours.options(), self.colours.count() as u64);
        let mut index = 0u64;
        for &(i, j) in self.free_pairs().iter().rev() {
            let (forward, c) = match (t.arc(i, j), t.arc(j, i)) {
                (Some(c), _) => (0, c),
                (_, Some(c)) => (1, c),
                _ => return None,
            };
            if c.index() as u64 >= k {
                return None;
            }
            index = index * opts + forward * k + c.index() as u64;
        }
        Some(index)
    }
}

#[inline]
fn put(t: &mut ColouredTournament, i: usize, j: usize, forward: bool, c: Colour) {
    if forward {
        t.put_arc(i, j, c)
    } else {
        t.put_arc(j, i, c)
    }
}

/// Instances of one shard, in increasing index order.
pub struct Instances {
    spec: EnumerationSpec,
    free: Vec<(usize, usize)>,
    next: u64,
    total: u64,
}

impl Iterator for Instances {
    type Item = (u64, ColouredTournament);

    fn next(&mut self) -> Option<Self::Item> {
        while self.next < self.total {
            let i = self.next;
            self.next += self.spec.shard.count;
            if let Some(t) = self.spec.instance_with(&self.free, i) {
                return Some((i, t));
            }
        }
        None
    }
}

/// Streams the instances of `spec`'s shard together with their indices.
pub fn enumerate(spec: &EnumerationSpec) -> Result<Instances, SearchError> {
    spec.validate()?;
    Ok(Instances {
        spec: spec.clone(),
        free: spec.free_pairs(),
        next: spec.shard.index,
        total: spec.total()?,
    })
}
