//! The edge-coloured tournament data model and its text format.
//!
//! A tournament file is a header line holding the order `n`, followed by `n`
//! rows of `n` characters. The character at row `i`, column `j` is `.` when
//! there is no arc `i → j`, and `r`, `b` or `g` when the arc `i → j` exists in
//! that colour. The diagonal is always `.` and exactly one of `(i, j)`,
//! `(j, i)` is non-`.` for every pair.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::colour::{Colour, ColourSet};
use crate::vertex_set::{VertexSet, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("line 1: expected a positive vertex count, found {found:?}")]
    MalformedHeader { found: String },
    #[error("order {n} exceeds the supported maximum of {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("expected {expected} matrix rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row}: expected {expected} characters, found {found}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("row {row}, column {col}: unknown colour character {found:?}")]
    UnknownColour { row: usize, col: usize, found: char },
    #[error("row {row}, column {row}: diagonal entry must be '.'")]
    Diagonal { row: usize },
    #[error("row {row}, column {col}: pair {{{row}, {col}}} has no arc in either direction")]
    MissingArc { row: usize, col: usize },
    #[error("row {row}, column {col}: pair {{{row}, {col}}} has arcs in both directions")]
    DoubleArc { row: usize, col: usize },
    #[error("arc {from} -> {to} is out of range for order {n}")]
    ArcOutOfRange { from: usize, to: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
}

/// A tournament on vertices `0..n` with one of three colours on every arc.
///
/// Stored as per-colour out- and in-neighbour bit rows, so arc lookups and
/// the reachability closure work on whole rows at a time. Immutable once
/// built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColouredTournament {
    n: usize,
    out: [[u32; MAX_ORDER]; 3],
    inc: [[u32; MAX_ORDER]; 3],
}

impl ColouredTournament {
    /// An order-`n` arc set with no arcs yet; only valid for `n == 1` until
    /// every pair has been assigned.
    pub(crate) fn blank(n: usize) -> Self {
        debug_assert!((1..=MAX_ORDER).contains(&n));
        ColouredTournament {
            n,
            out: [[0; MAX_ORDER]; 3],
            inc: [[0; MAX_ORDER]; 3],
        }
    }

    /// Sets the arc `from → to` without validating the pair.
    #[inline]
    pub(crate) fn put_arc(&mut self, from: usize, to: usize, colour: Colour) {
        let c = colour.index();
        self.out[c][from] |= 1 << to;
        self.inc[c][to] |= 1 << from;
    }

    /// Builds a tournament from a list of coloured arcs.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, TournamentError>
    where
        I: IntoIterator<Item = (usize, usize, Colour)>,
    {
        if n == 0 {
            return Err(TournamentError::MalformedHeader { found: "0".into() });
        }
        if n > MAX_ORDER {
            return Err(TournamentError::OrderTooLarge { n, max: MAX_ORDER });
        }
        let mut t = ColouredTournament::blank(n);
        for (from, to, colour) in arcs {
            if from >= n || to >= n {
                return Err(TournamentError::ArcOutOfRange { from, to, n });
            }
            if from == to {
                return Err(TournamentError::Loop(from));
            }
            if t.joined(from, to) {
                let (row, col) = (from.min(to), from.max(to));
                return Err(TournamentError::DoubleArc { row, col });
            }
            t.put_arc(from, to, colour);
        }
        for i in 0..n {
            for j in i + 1..n {
                if !t.joined(i, j) {
                    return Err(TournamentError::MissingArc { row: i, col: j });
                }
            }
        }
        Ok(t)
    }

    #[inline]
    fn joined(&self, a: usize, b: usize) -> bool {
        (0..3).any(|c| (self.out[c][a] | self.inc[c][a]) >> b & 1 == 1)
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Colour of the arc `from → to`, or `None` if the arc points the other
    /// way (or `from == to`).
    #[inline]
    pub fn arc(&self, from: usize, to: usize) -> Option<Colour> {
        Colour::ALL
            .into_iter()
            .find(|c| self.out[c.index()][from] >> to & 1 == 1)
    }

    /// `from → to`.
    #[inline]
    pub fn beats(&self, from: usize, to: usize) -> bool {
        (self.out[0][from] | self.out[1][from] | self.out[2][from]) >> to & 1 == 1
    }

    /// The arc joining `a` and `b` as `(winner, loser, colour)`.
    pub fn pair(&self, a: usize, b: usize) -> (usize, usize, Colour) {
        match self.arc(a, b) {
            Some(c) => (a, b, c),
            None => (b, a, self.arc(b, a).expect("tournament is complete")),
        }
    }

    /// Vertices `w` with `v → w` in colour `colour`.
    #[inline]
    pub fn out_neighbours(&self, v: usize, colour: Colour) -> VertexSet {
        VertexSet::from_bits(self.out[colour.index()][v])
    }

    /// Vertices `w` with `w → v` in colour `colour`.
    #[inline]
    pub fn in_neighbours(&self, v: usize, colour: Colour) -> VertexSet {
        VertexSet::from_bits(self.inc[colour.index()][v])
    }

    /// All vertices `v` beats.
    #[inline]
    pub fn out_set(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.out[0][v] | self.out[1][v] | self.out[2][v])
    }

    /// Raw colour-`c` adjacency rows.
    #[inline]
    pub(crate) fn rows(&self, colour: usize) -> &[u32; MAX_ORDER] {
        &self.out[colour]
    }

    /// Colours on incoming arcs of `v`.
    pub fn in_colours(&self, v: usize) -> ColourSet {
        Colour::ALL
            .into_iter()
            .filter(|c| self.inc[c.index()][v] != 0)
            .collect()
    }

    /// Colours on outgoing arcs of `v`.
    pub fn out_colours(&self, v: usize) -> ColourSet {
        Colour::ALL
            .into_iter()
            .filter(|c| self.out[c.index()][v] != 0)
            .collect()
    }

    /// Colours on all arcs touching `v`.
    pub fn colours_at(&self, v: usize) -> ColourSet {
        self.in_colours(v).union(self.out_colours(v))
    }

    /// Every arc as `(from, to, colour)`, row-major.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, Colour)> + '_ {
        (0..self.n).flat_map(move |i| {
            (0..self.n).filter_map(move |j| self.arc(i, j).map(|c| (i, j, c)))
        })
    }

    /// The same tournament with every arc flipped.
    pub fn reverse(&self) -> Self {
        ColouredTournament {
            n: self.n,
            out: self.inc,
            inc: self.out,
        }
    }

    /// Recolours every arc: an arc of colour `c` gets colour `map[c]`.
    /// `map` must be a permutation.
    pub fn recolour(&self, map: [Colour; 3]) -> Self {
        let mut t = ColouredTournament::blank(self.n);
        for c in 0..3 {
            t.out[map[c].index()] = self.out[c];
            t.inc[map[c].index()] = self.inc[c];
        }
        t
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of
    /// `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length must equal the order");
        let mut t = ColouredTournament::blank(self.n);
        for (from, to, c) in self.arcs() {
            t.put_arc(perm[from], perm[to], c);
        }
        t
    }

    /// Parses the character-matrix format. See the module docs.
    pub fn parse(text: &str) -> Result<Self, TournamentError> {
        let mut lines: Vec<&str> = text.split('\n').collect();
        while lines.len() > 1 && lines.last().is_some_and(|l| l.is_empty()) {
            lines.pop();
        }
        let header = lines.first().copied().unwrap_or("");
        let n: usize = header
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| TournamentError::MalformedHeader {
                found: header.to_string(),
            })?;
        if n > MAX_ORDER {
            return Err(TournamentError::OrderTooLarge { n, max: MAX_ORDER });
        }
        let rows = &lines[1..];
        if rows.len() != n {
            return Err(TournamentError::RowCount {
                expected: n,
                found: rows.len(),
            });
        }

        let mut cells = vec![None; n * n];
        for (i, row) in rows.iter().enumerate() {
            let chars: Vec<char> = row.chars().collect();
            if chars.len() != n {
                return Err(TournamentError::RowLength {
                    row: i,
                    expected: n,
                    found: chars.len(),
                });
            }
            for (j, &ch) in chars.iter().enumerate() {
                cells[i * n + j] = match ch {
                    '.' => None,
                    other => Some(Colour::from_symbol(other).ok_or(
                        TournamentError::UnknownColour {
                            row: i,
                            col: j,
                            found: other,
                        },
                    )?),
                };
            }
        }

        let mut t = ColouredTournament::blank(n);
        for i in 0..n {
            for j in i + 1..n {
                match (cells[i * n + j], cells[j * n + i]) {
                    (Some(c), None) => t.put_arc(i, j, c),
                    (None, Some(c)) => t.put_arc(j, i, c),
                    (None, None) => return Err(TournamentError::MissingArc { row: i, col: j }),
                    (Some(_), Some(_)) => {
                        return Err(TournamentError::DoubleArc { row: i, col: j })
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| cells[i * n + i].is_some()) {
            return Err(TournamentError::Diagonal { row: i });
        }
        Ok(t)
    }

    /// Writes the character-matrix format, newline-terminated.
    pub fn serialize(&self) -> String {
        let mut s = String::with_capacity((self.n + 1) * (self.n + 1) + 4);
        s.push_str(&self.n.to_string());
        s.push('\n');
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(self.arc(i, j).map_or('.', Colour::symbol));
            }
            s.push('\n');
        }
        s
    }
}

impl FromStr for ColouredTournament {
    type Err = TournamentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ColouredTournament::parse(s)
    }
}

impl fmt::Display for ColouredTournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl fmt::Debug for ColouredTournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColouredTournament({:?})", self.serialize())
    }
}

/// Small named instances used across tests and docs.
pub mod fixtures {
    use super::*;

    /// The cyclic rainbow triangle `0 →r 1 →b 2 →g 0`.
    pub fn t3() -> ColouredTournament {
        ColouredTournament::from_arcs(
            3,
            [
                (0, 1, Colour::Red),
                (1, 2, Colour::Blue),
                (2, 0, Colour::Green),
            ],
        )
        .unwrap()
    }

    /// The transitive tournament `i → j` for all `i < j`, every arc in `colour`.
    pub fn transitive(n: usize, colour: Colour) -> ColouredTournament {
        ColouredTournament::from_arcs(
            n,
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, colour))),
        )
        .unwrap()
    }

    /// The transitive triangle `0 →r 1`, `1 →b 2`, `0 →g 2`.
    pub fn transitive_rainbow() -> ColouredTournament {
        ColouredTournament::from_arcs(
            3,
            [
                (0, 1, Colour::Red),
                (1, 2, Colour::Blue),
                (0, 2, Colour::Green),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn parses_t3() {
        let t = ColouredTournament::parse("3\n.r.\n..b\ng..").unwrap();
        assert_eq!(t, t3());
        assert_eq!(t.arc(0, 1), Some(Colour::Red));
        assert_eq!(t.arc(1, 2), Some(Colour::Blue));
        assert_eq!(t.arc(2, 0), Some(Colour::Green));
        assert_eq!(t.arc(1, 0), None);
    }

    #[test]
    fn parses_single_vertex() {
        let t = ColouredTournament::parse("1\n.").unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.arcs().count(), 0);
        assert_eq!(t.serialize(), "1\n.\n");
    }

    #[test]
    fn serializes_t3() {
        assert_eq!(t3().serialize(), "3\n.r.\n..b\ng..\n");
    }

    #[test]
    fn one_sided_pair_is_legal() {
        assert!(ColouredTournament::parse("3\n.rr\n..b\n...").is_ok());
    }

    #[test]
    fn rejects_double_arc() {
        assert_eq!(
            ColouredTournament::parse("3\n.rr\n..b\ng.r"),
            Err(TournamentError::DoubleArc { row: 0, col: 2 })
        );
    }

    #[test]
    fn rejects_malformed_inputs() {
        use TournamentError::*;
        let cases = [
            ("", MalformedHeader { found: "".into() }),
            ("x\n.", MalformedHeader { found: "x".into() }),
            ("0\n", MalformedHeader { found: "0".into() }),
            ("2\n.r", RowCount { expected: 2, found: 1 }),
            ("2\n.r\n.", RowLength { row: 1, expected: 2, found: 1 }),
            ("2\n.x\n..", UnknownColour { row: 0, col: 1, found: 'x' }),
            ("2\n..\n..", MissingArc { row: 0, col: 1 }),
            ("2\nrr\n..", Diagonal { row: 0 }),
            ("33\n", OrderTooLarge { n: 33, max: 32 }),
        ];
        for (text, expected) in cases {
            assert_eq!(ColouredTournament::parse(text), Err(expected), "input {text:?}");
        }
    }

    #[test]
    fn reverse_flips_every_arc() {
        let r = t3().reverse();
        assert_eq!(r.arc(1, 0), Some(Colour::Red));
        assert_eq!(r.arc(0, 2), Some(Colour::Green));
        assert_eq!(r.reverse(), t3());
    }

    #[test]
    fn from_arcs_validates() {
        assert_eq!(
            ColouredTournament::from_arcs(2, [(0, 0, Colour::Red)]),
            Err(TournamentError::Loop(0))
        );
        assert_eq!(
            ColouredTournament::from_arcs(2, [(0, 1, Colour::Red), (1, 0, Colour::Red)]),
            Err(TournamentError::DoubleArc { row: 0, col: 1 })
        );
        assert_eq!(
            ColouredTournament::from_arcs(3, [(0, 1, Colour::Red)]),
            Err(TournamentError::MissingArc { row: 0, col: 2 })
        );
    }

    #[test]
    fn colour_profiles() {
        let t = t3();
        let expected: ColourSet = [Colour::Red, Colour::Green].into_iter().collect();
        assert_eq!(t.colours_at(0), expected);
        assert_eq!(t.in_colours(0), ColourSet::single(Colour::Green));
    }
}
