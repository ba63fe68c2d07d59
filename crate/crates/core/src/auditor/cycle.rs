use serde::{Serialize, Serializer};

use super::AuditError;
use crate::colour::Colour;
use crate::tournament::ColouredTournament;
use crate::vertex_set::{VertexSet, MAX_ORDER};

const NOT_ON_CYCLE: u8 = u8::MAX;

/// A directed cycle `v_0 → v_1 → … → v_{k-1} → v_0` with rotation-based
/// successor and predecessor lookup.
#[derive(Clone, PartialEq, Eq)]
pub struct CycleView {
    order: Vec<usize>,
    pos: [u8; MAX_ORDER],
}

impl CycleView {
    /// Checks that `order` lists distinct vertices of `t` and that every
    /// consecutive pair, including the wrap-around, is an arc of `t`.
    pub fn new(t: &ColouredTournament, order: Vec<usize>) -> Result<Self, AuditError> {
        if order.len() < 3 {
            return Err(AuditError::InvalidCycle(format!(
                "a directed cycle needs at least 3 vertices, got {}",
                order.len()
            )));
        }
        let mut pos = [NOT_ON_CYCLE; MAX_ORDER];
        for (i, &v) in order.iter().enumerate() {
            if v >= t.order() {
                return Err(AuditError::InvalidCycle(format!("vertex {v} out of range")));
            }
            if pos[v] != NOT_ON_CYCLE {
                return Err(AuditError::InvalidCycle(format!("vertex {v} repeated")));
            }
            pos[v] = i as u8;
        }
        let k = order.len();
        for i in 0..k {
            let (a, b) = (order[i], order[(i + 1) % k]);
            if !t.beats(a, b) {
                return Err(AuditError::InvalidCycle(format!("{a} -> {b} is not an arc")));
            }
        }
        Ok(CycleView { order, pos })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.order
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.order.iter().copied().collect()
    }

    pub fn is_hamiltonian(&self, t: &ColouredTournament) -> bool {
        self.len() == t.order()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_ORDER && self.pos[v] != NOT_ON_CYCLE
    }

    /// Index of `v` along the cycle. Panics if `v` is not on it.
    #[inline]
    pub fn position(&self, v: usize) -> usize {
        assert!(self.contains(v), "vertex {v} is not on the cycle");
        self.pos[v] as usize
    }

    /// `v^{+steps}`.
    #[inline]
    pub fn succ_by(&self, v: usize, steps: usize) -> usize {
        let k = self.len();
        self.order[(self.position(v) + steps % k) % k]
    }

    /// `v^{-steps}`.
    #[inline]
    pub fn pred_by(&self, v: usize, steps: usize) -> usize {
        let k = self.len();
        self.order[(self.position(v) + k - steps % k) % k]
    }

    #[inline]
    pub fn succ(&self, v: usize) -> usize {
        self.succ_by(v, 1)
    }

    #[inline]
    pub fn pred(&self, v: usize) -> usize {
        self.pred_by(v, 1)
    }

    /// The path `xCy`: `x, x^+, …, y`.
    pub fn segment(&self, x: usize, y: usize) -> Vec<usize> {
        let k = self.len();
        let start = self.position(x);
        let span = (self.position(y) + k - start) % k;
        (0..=span).map(|i| self.order[(start + i) % k]).collect()
    }

    pub fn segment_set(&self, x: usize, y: usize) -> VertexSet {
        let k = self.len();
        let start = self.position(x);
        let span = (self.position(y) + k - start) % k;
        (0..=span).map(|i| self.order[(start + i) % k]).collect()
    }

    /// Colour of the arc `v_i → v_{i+1}`.
    pub fn arc_colour(&self, t: &ColouredTournament, i: usize) -> Colour {
        let k = self.len();
        t.arc(self.order[i % k], self.order[(i + 1) % k])
            .expect("cycle arcs exist")
    }

    /// The same cycle rotated to start at its least vertex.
    pub fn normalized(&self) -> CycleView {
        let start = self.order.iter().enumerate().min_by_key(|(_, v)| **v).unwrap().0;
        let mut order = self.order.clone();
        order.rotate_left(start);
        let mut pos = [NOT_ON_CYCLE; MAX_ORDER];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i as u8;
        }
        CycleView { order, pos }
    }
}

impl std::fmt::Debug for CycleView {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycleView{:?}", self.order)
    }
}

impl Serialize for CycleView {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.order.serialize(serializer)
    }
}
