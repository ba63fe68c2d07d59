//! Brute-force canonical forms for isomorphism reduction.
//!
//! The encoding of a tournament is its order followed by the off-diagonal
//! cells of its matrix in row-major order, each cell being `0` (no arc) or
//! `1 + colour`. The canonical key is the lexicographically least encoding
//! over all vertex relabellings, optionally also over all colour
//! permutations.

use serde::Serialize;
use thiserror::Error;

use crate::colour::Colour;
use crate::tournament::ColouredTournament;

/// Default order limit; every one of the `n!` relabellings is tried.
pub const DEFAULT_CANONICAL_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("canonical form requested for order {n}, limit is {limit}")]
pub struct CanonicalLimitExceeded {
    pub n: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

const COLOUR_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Advances `p` to the next permutation in lexicographic order; returns
/// `false` (leaving `p` sorted descending) when `p` was the last one.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let pivot = i - 1;
    let j = (i..p.len()).rev().find(|&j| p[j] > p[pivot]).unwrap();
    p.swap(pivot, j);
    p[i..].reverse();
    true
}

/// Cell matrix: `cells[i * n + j]` is `0` or `1 + colour` of the arc `i → j`.
fn cells(t: &ColouredTournament) -> Vec<u8> {
    let n = t.order();
    let mut out = vec![0u8; n * n];
    for (i, j, c) in t.arcs() {
        out[i * n + j] = 1 + c as u8;
    }
    out
}

/// Encoding of `t` after relabelling through `inv` (new vertex `a` is old
/// vertex `inv[a]`) and recolouring through `cperm`.
fn encode_into(cells: &[u8], n: usize, inv: &[usize], cperm: &[usize; 3], buf: &mut Vec<u8>) {
    buf.clear();
    buf.push(n as u8);
    for a in 0..n {
        for b in 0..n {
            if a != b {
                buf.push(recolour_cell(cells[inv[a] * n + inv[b]], cperm));
            }
        }
    }
}

#[inline]
fn recolour_cell(cell: u8, cperm: &[usize; 3]) -> u8 {
    if cell == 0 {
        0
    } else {
        1 + cperm[cell as usize - 1] as u8
    }
}

fn colour_perms(include: bool) -> &'static [[usize; 3]] {
    if include {
        &COLOUR_PERMS
    } else {
        &COLOUR_PERMS[..1]
    }
}

/// Canonical key with the default order limit.
pub fn canonical_key(
    t: &ColouredTournament,
    include_colour_perms: bool,
) -> Result<CanonicalKey, CanonicalLimitExceeded> {
    canonical_key_with_limit(t, include_colour_perms, DEFAULT_CANONICAL_LIMIT)
}

pub fn canonical_key_with_limit(
    t: &ColouredTournament,
    include_colour_perms: bool,
    limit: usize,
) -> Result<CanonicalKey, CanonicalLimitExceeded> {
    let n = t.order();
    if n > limit {
        return Err(CanonicalLimitExceeded { n, limit });
    }
    let cells = cells(t);
    let mut inv: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u8>> = None;
    let mut buf = Vec::with_capacity(n * n);
    loop {
        for cperm in colour_perms(include_colour_perms) {
            encode_into(&cells, n, &inv, cperm, &mut buf);
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        if !next_permutation(&mut inv) {
            break;
        }
    }
    Ok(CanonicalKey(best.expect("at least one permutation")))
}

/// Whether `t`'s own labelling is the canonical (least) one.
///
/// Exactly one labelled tournament per isomorphism class satisfies this, so
/// it selects orbit representatives without any shared state. Aborts each
/// comparison at the first differing cell.
pub fn is_canonical(
    t: &ColouredTournament,
    include_colour_perms: bool,
    limit: usize,
) -> Result<bool, CanonicalLimitExceeded> {
    let n = t.order();
    if n > limit {
        return Err(CanonicalLimitExceeded { n, limit });
    }
    let cells = cells(t);
    let mut inv: Vec<usize> = (0..n).collect();
    loop {
        for cperm in colour_perms(include_colour_perms) {
            'compare: for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    let mine = cells[a * n + b];
                    let theirs = recolour_cell(cells[inv[a] * n + inv[b]], cperm);
                    if theirs < mine {
                        return Ok(false);
                    }
                    if theirs > mine {
                        break 'compare;
                    }
                }
            }
        }
        if !next_permutation(&mut inv) {
            return Ok(true);
        }
    }
}

/// Brute-force isomorphism test; used to cross-check canonical keys.
pub fn isomorphic(a: &ColouredTournament, b: &ColouredTournament, include_colour_perms: bool) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for cperm in colour_perms(include_colour_perms) {
            let map = [
                Colour::from_index(cperm[0]),
                Colour::from_index(cperm[1]),
                Colour::from_index(cperm[2]),
            ];
            if a.arcs().all(|(i, j, c)| b.arc(perm[i], perm[j]) == Some(map[c.index()])) {
                return true;
            }
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::fixtures::t3;

    #[test]
    fn next_permutation_visits_all() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn relabelled_t3_has_equal_key() {
        let t = t3();
        let k = canonical_key(&t, false).unwrap();
        for perm in [[1, 2, 0], [2, 1, 0], [0, 2, 1]] {
            assert_eq!(canonical_key(&t.relabel(&perm), false).unwrap(), k);
        }
    }

    #[test]
    fn colour_flag_controls_colour_symmetry() {
        let t = t3();
        let cyc = t.recolour([Colour::Blue, Colour::Green, Colour::Red]);
        assert_eq!(
            canonical_key(&t, true).unwrap(),
            canonical_key(&cyc, true).unwrap()
        );
        // A cyclic colour shift of T3 is a rotation of T3, so only a
        // transposition separates the keys without colour symmetry.
        assert_eq!(
            canonical_key(&t, false).unwrap(),
            canonical_key(&cyc, false).unwrap()
        );
        let swapped = t.recolour([Colour::Blue, Colour::Red, Colour::Green]);
        assert_ne!(
            canonical_key(&t, false).unwrap(),
            canonical_key(&swapped, false).unwrap()
        );
        assert_eq!(
            canonical_key(&t, true).unwrap(),
            canonical_key(&swapped, true).unwrap()
        );
    }

    #[test]
    fn limit_is_enforced() {
        let t = crate::tournament::fixtures::transitive(9, Colour::Red);
        assert_eq!(
            canonical_key(&t, false),
            Err(CanonicalLimitExceeded { n: 9, limit: 8 })
        );
    }
}
