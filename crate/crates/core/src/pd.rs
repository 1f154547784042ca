//! Planar-diagram codes and the oriented link-diagram model.
//!
//! A crossing is written `X[a,b,c,d]`: the four incident edge labels listed
//! counterclockwise, starting from the incoming under-strand. The under-strand
//! therefore runs `a -> c`; the over-strand joins `b` and `d` and its
//! direction is recovered from the way components close up.
//!
//! Text form: items separated by `;`, an optional leading `O:k` declaring `k`
//! crossing-free unknotted circles, whitespace ignored:
//!
//! ```text
//! X[1,4,2,5]; X[3,6,4,1]; X[5,2,6,3]
//! O:1
//! O:2; X[1,1,2,2]
//! ```
//!
//! A JSON array of 4-element integer arrays is also accepted, as is an object
//! `{"crossings": [[..], ..], "unknotted_components": k}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Validated PD code. Crossing order is the order of appearance and fixes the
/// coordinates of the cube of states.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
    #[serde(default)]
    unknotted_components: usize,
}

impl PdCode {
    pub fn new(crossings: Vec<[u32; 4]>, unknotted_components: usize) -> Result<Self> {
        if crossings.is_empty() && unknotted_components == 0 {
            return Err(Error::EmptyInput);
        }
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &crossings {
            for &label in x {
                if label == 0 {
                    return Err(Error::MalformedSyntax {
                        token: format_tuple(x),
                        reason: "edge labels must be positive integers".into(),
                    });
                }
                *counts.entry(label).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::BadEdgeMultiplicity { label, count });
        }
        Ok(PdCode {
            crossings,
            unknotted_components,
        })
    }

    /// The zero-crossing diagram of `k` disjoint circles.
    pub fn unlink(k: usize) -> Result<Self> {
        Self::new(Vec::new(), k)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn unknotted_components(&self) -> usize {
        self.unknotted_components
    }

    /// Distinct edge labels in ascending order.
    pub fn edge_labels(&self) -> Vec<u32> {
        let mut labels: Vec<u32> = self.crossings.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("PD code serializes")
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Vec::with_capacity(self.crossings.len() + 1);
        if self.unknotted_components > 0 {
            items.push(format!("O:{}", self.unknotted_components));
        }
        items.extend(self.crossings.iter().map(format_tuple));
        f.write_str(&items.join(";"))
    }
}

impl FromStr for PdCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

fn format_tuple(x: &[u32; 4]) -> String {
    format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3])
}

/// Parse PD text (or its JSON form) into a validated code.
pub fn parse_pd(text: &str) -> Result<PdCode> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::EmptyInput);
    }
    if compact.starts_with('[') || compact.starts_with('{') {
        return parse_json(&compact);
    }

    let mut crossings = Vec::new();
    let mut unknotted = 0usize;
    for (pos, item) in compact.split(';').enumerate() {
        if item.is_empty() {
            continue;
        }
        if let Some(count) = item.strip_prefix("O:") {
            if pos != 0 {
                return Err(malformed(item, "`O:k` must come first"));
            }
            unknotted = count
                .parse()
                .map_err(|_| malformed(item, "expected a non-negative circle count"))?;
            continue;
        }
        let body = item
            .strip_prefix("X[")
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| malformed(item, "expected X[a,b,c,d]"))?;
        let labels = body
            .split(',')
            .map(|t| t.parse::<u32>().map_err(|_| malformed(item, "bad edge label")))
            .collect::<Result<Vec<_>>>()?;
        let tuple: [u32; 4] = labels
            .try_into()
            .map_err(|_| malformed(item, "a crossing has exactly four edge labels"))?;
        crossings.push(tuple);
    }
    PdCode::new(crossings, unknotted)
}

fn malformed(token: &str, reason: &str) -> Error {
    Error::MalformedSyntax {
        token: token.to_string(),
        reason: reason.to_string(),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonPd {
    Bare(Vec<Vec<u32>>),
    Object {
        #[serde(alias = "pd")]
        crossings: Vec<Vec<u32>>,
        #[serde(default)]
        unknotted_components: usize,
    },
}

fn parse_json(text: &str) -> Result<PdCode> {
    let parsed: JsonPd = serde_json::from_str(text).map_err(|e| malformed(text, &e.to_string()))?;
    let (raw, unknotted) = match parsed {
        JsonPd::Bare(raw) => (raw, 0),
        JsonPd::Object {
            crossings,
            unknotted_components,
        } => (crossings, unknotted_components),
    };
    let crossings = raw
        .into_iter()
        .map(|x| {
            let token = format!("{x:?}");
            x.try_into()
                .map_err(|_| malformed(&token, "a crossing has exactly four edge labels"))
        })
        .collect::<Result<Vec<[u32; 4]>>>()?;
    PdCode::new(crossings, unknotted)
}

/// Sign of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Oriented link diagram: a PD code plus the crossing signs its orientation
/// determines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    pd: PdCode,
    signs: Vec<Sign>,
    n_plus: usize,
    n_minus: usize,
}

impl LinkDiagram {
    pub fn pd(&self) -> &PdCode {
        &self.pd
    }

    /// Number of crossings.
    pub fn n(&self) -> usize {
        self.pd.len()
    }

    pub fn crossing(&self, k: usize) -> [u32; 4] {
        self.pd.crossings[k]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn unknotted_components(&self) -> usize {
        self.pd.unknotted_components
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    /// Mirror image: over and under swap at every crossing.
    ///
    /// The new tuple starts at the old over-strand's incoming edge, which is
    /// `d` for a positive crossing and `b` for a negative one. Counterclockwise
    /// order is unchanged, so this is a rotation of each tuple.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .pd
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[a, b, c, d], sign)| match sign {
                Sign::Positive => [d, a, b, c],
                Sign::Negative => [b, c, d, a],
            })
            .collect();
        let pd = PdCode {
            crossings,
            unknotted_components: self.pd.unknotted_components,
        };
        // derive_signs could pick a different orientation for a component
        // that only passes over, so the old orientation is carried along
        LinkDiagram {
            pd,
            signs: self.signs.iter().map(|s| s.flip()).collect(),
            n_plus: self.n_minus,
            n_minus: self.n_plus,
        }
    }

    /// Same diagram with crossings listed in a new order: crossing `k` of the
    /// result is crossing `order[k]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> LinkDiagram {
        assert_eq!(order.len(), self.n());
        let crossings = order.iter().map(|&k| self.pd.crossings[k]).collect();
        let pd = PdCode {
            crossings,
            unknotted_components: self.pd.unknotted_components,
        };
        LinkDiagram {
            pd,
            signs: order.iter().map(|&k| self.signs[k]).collect(),
            n_plus: self.n_plus,
            n_minus: self.n_minus,
        }
    }
}

impl FromStr for LinkDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        derive_signs(&parse_pd(s)?)
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.pd.fmt(f)
    }
}

/// Orient every component and classify each crossing.
///
/// A component's direction is forced by any crossing it passes under (it must
/// enter at slot `a`). Components that only pass over fall back to the PD
/// numbering convention: labels increase along the orientation. Labels along
/// every component must form one consecutive cyclic run.
pub fn derive_signs(pd: &PdCode) -> Result<LinkDiagram> {
    let n = pd.len();
    let mut occurrences: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, x) in pd.crossings.iter().enumerate() {
        for (s, &label) in x.iter().enumerate() {
            occurrences.entry(label).or_default().push(4 * k + s);
        }
    }
    let label_at = |slot: usize| pd.crossings[slot / 4][slot % 4];
    let other_end = |slot: usize| {
        let occ = &occurrences[&label_at(slot)];
        if occ[0] == slot {
            occ[1]
        } else {
            occ[0]
        }
    };

    // entry slot of the oriented traversal, per (crossing, strand)
    let mut under_entry: Vec<Option<usize>> = vec![None; n];
    let mut over_entry: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; 4 * n];

    for start in 0..4 * n {
        if visited[start] {
            continue;
        }
        // Walk: enter at `entry`, leave through the opposite slot, follow the edge.
        let mut entries = Vec::new();
        let mut labels = Vec::new();
        let mut entry = start;
        loop {
            let exit = entry ^ 2;
            visited[entry] = true;
            visited[exit] = true;
            entries.push(entry);
            labels.push(label_at(exit));
            entry = other_end(exit);
            if entry == start {
                break;
            }
            if visited[entry] {
                return Err(Error::InconsistentOrientation(format!(
                    "component through edge {} does not close up",
                    label_at(start)
                )));
            }
        }

        let forward = orientation_of(&entries, &labels)?;
        let reversed: Vec<usize>;
        let (entries, labels) = if forward {
            (entries, labels)
        } else {
            reversed = entries.iter().map(|e| e ^ 2).collect();
            let mut ls: Vec<u32> = labels.iter().map(|_| 0).collect();
            // reversed walk traverses the edges in the opposite order
            let m = labels.len();
            for (t, slot) in ls.iter_mut().enumerate() {
                *slot = labels[(2 * m - 2 - t) % m];
            }
            (reversed, ls)
        };
        check_numbering(&labels)?;

        for &e in &entries {
            let (k, s) = (e / 4, e % 4);
            match s {
                0 | 2 => {
                    if s == 2 {
                        return Err(Error::InconsistentOrientation(format!(
                            "under-strand at crossing {} entered from slot c",
                            format_tuple(&pd.crossings[k])
                        )));
                    }
                    under_entry[k] = Some(e);
                }
                _ => over_entry[k] = Some(e),
            }
        }
    }

    let signs: Vec<Sign> = (0..n)
        .map(|k| {
            debug_assert!(under_entry[k].is_some());
            match over_entry[k].map(|e| e % 4) {
                Some(3) => Sign::Positive,
                _ => Sign::Negative,
            }
        })
        .collect();
    let n_plus = signs.iter().filter(|s| **s == Sign::Positive).count();
    Ok(LinkDiagram {
        pd: pd.clone(),
        signs,
        n_plus,
        n_minus: n - n_plus,
    })
}

/// `true` if the walk as recorded is already correctly oriented.
fn orientation_of(entries: &[usize], labels: &[u32]) -> Result<bool> {
    let mut verdict: Option<bool> = None;
    for &e in entries {
        let v = match e % 4 {
            0 => true,
            2 => false,
            _ => continue,
        };
        match verdict {
            None => verdict = Some(v),
            Some(prev) if prev != v => {
                return Err(Error::InconsistentOrientation(format!(
                    "component through edge {} passes under in both directions",
                    labels[0]
                )))
            }
            _ => {}
        }
    }
    if let Some(v) = verdict {
        return Ok(v);
    }
    if labels.len() >= 3 {
        return Ok(is_ascending_run(labels));
    }
    Ok(true)
}

fn is_ascending_run(labels: &[u32]) -> bool {
    let m = labels.len();
    let wraps = (0..m)
        .filter(|&t| labels[(t + 1) % m] != labels[t] + 1)
        .count();
    wraps <= 1
}

fn check_numbering(labels: &[u32]) -> Result<()> {
    let m = labels.len();
    let min = *labels.iter().min().expect("components are nonempty");
    let max = *labels.iter().max().expect("components are nonempty");
    let consecutive = (max - min) as usize + 1 == m;
    let ordered = m <= 2 || is_ascending_run(labels);
    if consecutive && ordered {
        Ok(())
    } else {
        Err(Error::InconsistentOrientation(format!(
            "edge labels {labels:?} of one component are not a consecutive run increasing along the orientation"
        )))
    }
}
