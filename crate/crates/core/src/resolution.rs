//! States of the cube and the circle systems they resolve to.
//!
//! Smoothing convention for `X[a,b,c,d]`: the 0-smoothing joins `a~b` and
//! `c~d`, the 1-smoothing joins `a~d` and `b~c`. With the sign convention of
//! [`crate::pd`] this is the convention under which the graded Euler
//! characteristic of the cube reproduces the Jones polynomial; the swapped
//! assignment computes the invariants of the mirror with the wrong gradings.

use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pd::LinkDiagram;

/// Default bound on `n` for anything that enumerates all `2^n` states.
pub const DEFAULT_CUBE_CAP: usize = 20;

/// Hard ceiling: cube states are packed into a `u64`.
pub const MAX_CUBE_CAP: usize = 40;

/// A vertex of the cube: one 0/1 label per crossing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    bits: Vec<bool>,
}

impl State {
    pub fn zero(n: usize) -> State {
        State {
            bits: vec![false; n],
        }
    }

    pub fn ones(n: usize) -> State {
        State { bits: vec![true; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> State {
        State { bits }
    }

    /// Bit `k` of `mask` is the label of crossing `k`.
    pub fn from_mask(mask: u64, n: usize) -> State {
        State {
            bits: (0..n).map(|k| mask >> k & 1 == 1).collect(),
        }
    }

    /// State whose 1-labels are exactly `support`.
    pub fn from_support(support: &[usize], n: usize) -> State {
        let mut bits = vec![false; n];
        for &k in support {
            bits[k] = true;
        }
        State { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, k: usize) -> bool {
        self.bits[k]
    }

    /// `|v|`, the number of 1-labels.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.bits[k]).collect()
    }

    pub fn mask(&self) -> u64 {
        assert!(self.len() <= 64);
        self.bits
            .iter()
            .enumerate()
            .fold(0, |m, (k, &b)| m | (b as u64) << k)
    }

    pub fn with(&self, k: usize, value: bool) -> State {
        let mut bits = self.bits.clone();
        bits[k] = value;
        State { bits }
    }

    /// `u <= v` in the cube order (support inclusion).
    pub fn is_below(&self, other: &State) -> bool {
        self.len() == other.len() && self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("()");
        }
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for State {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One end of an edge of the diagram: `side` is 0 at the edge's first
/// occurrence in the PD code (reading crossings, then slots, in order) and 1
/// at the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HalfArc {
    pub label: u32,
    pub side: u8,
}

/// Location of a chord endpoint: a circle and an index into its cyclic
/// half-arc sequence. The endpoint sits between that half-arc and the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChordEnd {
    pub circle: usize,
    pub position: usize,
}

/// The circle system `D(v)`.
#[derive(Debug, Clone, Serialize)]
pub struct Resolution {
    pub state: State,
    /// Circles as cyclic half-arc sequences. Crossing-free circles appear
    /// last, as empty sequences.
    pub circles: Vec<Vec<HalfArc>>,
    /// Chord endpoints per crossing; present for the all-zero state only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chord_endpoints: Option<Vec<[ChordEnd; 2]>>,
    #[serde(skip)]
    slot_circle: Vec<u32>,
    #[serde(skip)]
    rep_slots: Vec<usize>,
}

impl Resolution {
    /// `|D(v)|`.
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    /// Circle containing the half-arc at `slot` (crossing `slot / 4`).
    pub fn circle_of_slot(&self, slot: usize) -> usize {
        self.slot_circle[slot] as usize
    }

    /// Circles that pass through at least one crossing; these come first.
    pub fn crossing_circles(&self) -> usize {
        self.rep_slots.len()
    }

    /// Some slot on circle `c`, for `c < crossing_circles()`.
    pub fn representative_slot(&self, c: usize) -> usize {
        self.rep_slots[c]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("resolution serializes")
    }
}

/// Resolves states of one diagram. Individual crossings can have their
/// smoothing rule swapped, which is only useful for negative controls.
#[derive(Debug, Clone)]
pub struct Resolver<'a> {
    diagram: &'a LinkDiagram,
    other_end: Vec<usize>,
    side: Vec<u8>,
    flipped: Vec<bool>,
}

impl<'a> Resolver<'a> {
    pub fn new(diagram: &'a LinkDiagram) -> Self {
        let n = diagram.n();
        let mut first_slot: std::collections::HashMap<u32, usize> = Default::default();
        let mut other_end = vec![usize::MAX; 4 * n];
        let mut side = vec![0u8; 4 * n];
        for slot in 0..4 * n {
            let label = diagram.crossing(slot / 4)[slot % 4];
            if let Some(&s) = first_slot.get(&label) {
                other_end[s] = slot;
                other_end[slot] = s;
                side[slot] = 1;
            } else {
                first_slot.insert(label, slot);
            }
        }
        Resolver {
            diagram,
            other_end,
            side,
            flipped: vec![false; n],
        }
    }

    /// Swap the smoothing rule at the given crossings.
    pub fn with_flipped(mut self, crossings: &[usize]) -> Self {
        for &k in crossings {
            self.flipped[k] = !self.flipped[k];
        }
        self
    }

    pub fn diagram(&self) -> &LinkDiagram {
        self.diagram
    }

    /// Slot joined to `slot` by the smoothing of its crossing.
    #[inline]
    fn partner(&self, slot: usize, label: bool) -> usize {
        let k = slot / 4;
        let s = slot % 4;
        let t = if label != self.flipped[k] { 3 - s } else { s ^ 1 };
        4 * k + t
    }

    fn half_arc(&self, slot: usize) -> HalfArc {
        HalfArc {
            label: self.diagram.crossing(slot / 4)[slot % 4],
            side: self.side[slot],
        }
    }

    /// Number of circles of `D(v)`, by union-find over half-arcs.
    pub fn circle_count(&self, v: &State) -> usize {
        self.circle_count_bits(|k| v.get(k))
    }

    fn circle_count_mask(&self, mask: u64) -> usize {
        self.circle_count_bits(|k| mask >> k & 1 == 1)
    }

    fn circle_count_bits(&self, bit: impl Fn(usize) -> bool) -> usize {
        let slots = 4 * self.diagram.n();
        let mut uf = UnionFind::<usize>::new(slots);
        let mut components = slots;
        for slot in 0..slots {
            if self.other_end[slot] > slot && uf.union(slot, self.other_end[slot]) {
                components -= 1;
            }
            let p = self.partner(slot, bit(slot / 4));
            if p > slot && uf.union(slot, p) {
                components -= 1;
            }
        }
        components + self.diagram.unknotted_components()
    }

    /// Walk every circle of `D(v)`.
    pub fn resolve(&self, v: &State) -> Resolution {
        let n = self.diagram.n();
        assert_eq!(v.len(), n, "state length must equal the crossing count");
        let mut slot_circle = vec![u32::MAX; 4 * n];
        let mut slot_position = vec![0usize; 4 * n];
        let mut circles = Vec::new();
        let mut rep_slots = Vec::new();
        for start in 0..4 * n {
            if slot_circle[start] != u32::MAX {
                continue;
            }
            rep_slots.push(start);
            let id = circles.len() as u32;
            let mut walk = Vec::new();
            let mut slot = start;
            loop {
                for s in [slot, self.other_end[slot]] {
                    slot_circle[s] = id;
                    slot_position[s] = walk.len();
                    walk.push(self.half_arc(s));
                }
                let end = self.other_end[slot];
                slot = self.partner(end, v.get(end / 4));
                if slot == start {
                    break;
                }
            }
            circles.push(walk);
        }
        circles.extend((0..self.diagram.unknotted_components()).map(|_| Vec::new()));

        let chord_endpoints = (v.weight() == 0).then(|| {
            (0..n)
                .map(|k| {
                    // junctions {a,b} and {c,d}; a walk leaves each junction
                    // from an odd index
                    [[0, 1], [2, 3]].map(|pair| {
                        let (s0, s1) = (4 * k + pair[0], 4 * k + pair[1]);
                        let circle = slot_circle[s0] as usize;
                        let (p0, p1) = (slot_position[s0], slot_position[s1]);
                        let position = if p0 % 2 == 1 { p0 } else { p1 };
                        ChordEnd { circle, position }
                    })
                })
                .collect()
        });

        Resolution {
            state: v.clone(),
            circles,
            chord_endpoints,
            slot_circle,
            rep_slots,
        }
    }
}

/// Resolve `v` with the standard smoothing rule.
pub fn resolve(d: &LinkDiagram, v: &State) -> Resolution {
    Resolver::new(d).resolve(v)
}

/// `|D(v)|` for every state, indexed by state mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleCounts {
    n: usize,
    counts: Vec<u32>,
}

impl CircleCounts {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: &State) -> usize {
        self.counts[v.mask() as usize] as usize
    }

    pub fn by_mask(&self, mask: u64) -> usize {
        self.counts[mask as usize] as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = (State, usize)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(m, &c)| (State::from_mask(m as u64, self.n), c as usize))
    }
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(MAX_CUBE_CAP) {
        Err(Error::CubeTooLarge {
            n,
            cap: cap.min(MAX_CUBE_CAP),
        })
    } else {
        Ok(())
    }
}

/// Circle counts over the whole cube.
pub fn circle_count_all_states(d: &LinkDiagram, cube_cap: usize) -> Result<CircleCounts> {
    circle_counts_with(&Resolver::new(d), cube_cap)
}

pub fn circle_counts_with(resolver: &Resolver<'_>, cube_cap: usize) -> Result<CircleCounts> {
    let n = resolver.diagram().n();
    check_cap(n, cube_cap)?;
    let counts = (0..1u64 << n)
        .into_par_iter()
        .map(|m| resolver.circle_count_mask(m) as u32)
        .collect();
    Ok(CircleCounts { n, counts })
}
