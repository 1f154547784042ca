//! Programmatic construction of planar diagrams.
//!
//! Crossings are placed with four ports in counterclockwise order
//! `SW, SE, NE, NW`; the two strands are the diagonals `SW-NE` and `SE-NW`.
//! Ports are joined by edges, components are oriented by walking them, edges
//! are numbered consecutively along each component and every crossing is
//! emitted as a PD tuple starting at its incoming under-port. Crossing signs
//! are also computed geometrically from the port positions, which gives an
//! independent check on [`crate::pd::derive_signs`].

use crate::error::Result;
use crate::pd::{PdCode, Sign};

/// Port of a placed crossing, counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    SW = 0,
    SE = 1,
    NE = 2,
    NW = 3,
}

impl Port {
    fn from_index(i: usize) -> Port {
        [Port::SW, Port::SE, Port::NE, Port::NW][i % 4]
    }

    fn position(self) -> (i32, i32) {
        match self {
            Port::SW => (-1, -1),
            Port::SE => (1, -1),
            Port::NE => (1, 1),
            Port::NW => (-1, 1),
        }
    }
}

/// Which diagonal passes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Over {
    /// `SW-NE` on top.
    Rising,
    /// `SE-NW` on top.
    Falling,
}

#[derive(Debug, Default, Clone)]
pub struct DiagramBuilder {
    over: Vec<Over>,
    // edges as (crossing, port) pairs; stored direction is a hint for orientation
    edges: Vec<((usize, Port), (usize, Port))>,
    free_loops: usize,
}

/// Output of [`DiagramBuilder::build`].
#[derive(Debug, Clone)]
pub struct Built {
    pub pd: PdCode,
    /// Signs computed from the geometry of the placed crossings.
    pub geometric_signs: Vec<Sign>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn crossing(&mut self, over: Over) -> usize {
        self.over.push(over);
        self.over.len() - 1
    }

    /// Join two ports. The first component walked through an edge follows
    /// the direction `from -> to`.
    pub fn connect(&mut self, from: (usize, Port), to: (usize, Port)) {
        self.edges.push((from, to));
    }

    pub fn free_loop(&mut self) {
        self.free_loops += 1;
    }

    pub fn build(&self) -> Result<Built> {
        let n = self.over.len();
        let mut incident: Vec<Option<usize>> = vec![None; 4 * n];
        for (e, (a, b)) in self.edges.iter().enumerate() {
            for (k, p) in [a, b] {
                let slot = 4 * k + *p as usize;
                assert!(incident[slot].is_none(), "port {p:?} of crossing {k} used twice");
                incident[slot] = Some(e);
            }
        }
        assert!(incident.iter().all(Option::is_some), "every port needs an edge");

        let slot_of = |(k, p): (usize, Port)| 4 * k + p as usize;
        let mut label = vec![0u32; self.edges.len()];
        let mut entry_of_slot = vec![false; 4 * n];
        let mut next_label = 1u32;
        for first in 0..self.edges.len() {
            if label[first] != 0 {
                continue;
            }
            // walk from the stored tail of `first`
            let mut edge = first;
            let mut head = slot_of(self.edges[first].1);
            loop {
                label[edge] = next_label;
                next_label += 1;
                entry_of_slot[head] = true;
                let exit = head ^ 2;
                edge = incident[exit].expect("checked above");
                let (a, b) = self.edges[edge];
                head = if slot_of(a) == exit { slot_of(b) } else { slot_of(a) };
                if edge == first {
                    break;
                }
            }
        }

        let mut crossings = Vec::with_capacity(n);
        let mut geometric_signs = Vec::with_capacity(n);
        for (k, over) in self.over.iter().enumerate() {
            let under_ports: [usize; 2] = match over {
                Over::Rising => [1, 3],
                Over::Falling => [0, 2],
            };
            let under_in = if entry_of_slot[4 * k + under_ports[0]] {
                under_ports[0]
            } else {
                under_ports[1]
            };
            let over_in = if entry_of_slot[4 * k + (under_in + 1) % 4] {
                (under_in + 1) % 4
            } else {
                (under_in + 3) % 4
            };
            let tuple = [0, 1, 2, 3].map(|t| {
                label[incident[4 * k + (under_in + t) % 4].expect("checked above")]
            });
            crossings.push(tuple);

            let dir = |entry: usize| {
                let (x0, y0) = Port::from_index(entry).position();
                let (x1, y1) = Port::from_index(entry + 2).position();
                (x1 - x0, y1 - y0)
            };
            let (ox, oy) = dir(over_in);
            let (ux, uy) = dir(under_in);
            geometric_signs.push(if ox * uy - oy * ux > 0 {
                Sign::Positive
            } else {
                Sign::Negative
            });
        }
        Ok(Built {
            pd: PdCode::new(crossings, self.free_loops)?,
            geometric_signs,
        })
    }
}

/// Closure of a braid on `strands` strands. Letter `+i` crosses strands
/// `i` and `i+1` (1-based) positively, `-i` negatively, with all strands
/// oriented downward.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Built> {
    let mut b = DiagramBuilder::new();
    let mut first: Vec<Option<(usize, Port)>> = vec![None; strands];
    let mut dangling: Vec<Option<(usize, Port)>> = vec![None; strands];
    let attach = |b: &mut DiagramBuilder,
                  first: &mut Vec<Option<(usize, Port)>>,
                  dangling: &[Option<(usize, Port)>],
                  pos: usize,
                  port: (usize, Port)| match dangling[pos] {
        Some(up) => b.connect(up, port),
        None => first[pos] = Some(port),
    };
    for &letter in word {
        let i = letter.unsigned_abs() as usize;
        assert!(i >= 1 && i < strands, "generator {letter} out of range");
        let over = if letter > 0 { Over::Rising } else { Over::Falling };
        let k = b.crossing(over);
        attach(&mut b, &mut first, &dangling, i - 1, (k, Port::NW));
        attach(&mut b, &mut first, &dangling, i, (k, Port::NE));
        dangling[i - 1] = Some((k, Port::SW));
        dangling[i] = Some((k, Port::SE));
    }
    for pos in 0..strands {
        match (dangling[pos], first[pos]) {
            (Some(bottom), Some(top)) => b.connect(bottom, top),
            _ => b.free_loop(),
        }
    }
    b.build()
}

/// Standard pretzel diagram: one vertical twist column per entry, `|t|`
/// crossings each, handedness from the sign of `t`.
pub fn pretzel(twists: &[i32]) -> Result<Built> {
    assert!(!twists.is_empty() && twists.iter().all(|&t| t != 0));
    let mut b = DiagramBuilder::new();
    let mut tops = Vec::new();
    let mut bottoms = Vec::new();
    for &t in twists {
        let over = if t > 0 { Over::Rising } else { Over::Falling };
        let column: Vec<usize> = (0..t.unsigned_abs()).map(|_| b.crossing(over)).collect();
        for pair in column.windows(2) {
            b.connect((pair[0], Port::SW), (pair[1], Port::NW));
            b.connect((pair[1], Port::NE), (pair[0], Port::SE));
        }
        tops.push(column[0]);
        bottoms.push(*column.last().expect("nonempty column"));
    }
    let m = twists.len();
    for j in 0..m {
        let next = (j + 1) % m;
        b.connect((tops[j], Port::NE), (tops[next], Port::NW));
        b.connect((bottoms[next], Port::SW), (bottoms[j], Port::SE));
    }
    b.build()
}
