#![allow(dead_code)]

use std::collections::VecDeque;

use proptest::prelude::*;
use tricolour::{Colour, ColourSet, ColouredTournament};

/// Builds a tournament from one digit per pair `(i, j)`, `i < j`, in
/// lexicographic order: `d / 3 == 0` means `i → j`, colour `d % 3`.
pub fn from_digits(n: usize, digits: &[u8]) -> ColouredTournament {
    let mut arcs = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            let d = digits[k];
            k += 1;
            let c = Colour::from_index((d % 3) as usize);
            arcs.push(if d / 3 == 0 { (i, j, c) } else { (j, i, c) });
        }
    }
    ColouredTournament::from_arcs(n, arcs).unwrap()
}

pub fn arb_tournament(min: usize, max: usize) -> impl Strategy<Value = ColouredTournament> {
    (min..=max).prop_flat_map(|n| {
        proptest::collection::vec(0u8..6, n * (n - 1) / 2).prop_map(move |d| from_digits(n, &d))
    })
}

/// Two colours only: digits restricted to red and blue.
pub fn arb_two_coloured(min: usize, max: usize) -> impl Strategy<Value = ColouredTournament> {
    (min..=max).prop_flat_map(|n| {
        proptest::collection::vec(prop_oneof![Just(0u8), Just(1), Just(3), Just(4)], n * (n - 1) / 2)
            .prop_map(move |d| from_digits(n, &d))
    })
}

/// Colours in which a nonempty monochromatic path runs from `x` to `y`, by
/// breadth-first search over the arc list.
pub fn bfs_colours(t: &ColouredTournament, x: usize, y: usize) -> ColourSet {
    let n = t.order();
    let mut out = ColourSet::EMPTY;
    for c in Colour::ALL {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if !seen[v] && t.arc(u, v) == Some(c) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        if seen[y] {
            out.insert(c);
        }
    }
    out
}

/// Vertices that reach every other vertex, by BFS.
pub fn bfs_dominating(t: &ColouredTournament) -> Vec<usize> {
    let n = t.order();
    (0..n)
        .filter(|&x| (0..n).filter(|&y| y != x).all(|y| !bfs_colours(t, x, y).is_empty()))
        .collect()
}

pub fn t3() -> ColouredTournament {
    ColouredTournament::parse("3\n.r.\n..b\ng..").unwrap()
}
