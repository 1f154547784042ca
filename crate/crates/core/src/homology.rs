//! Exact integral cohomology via Smith normal form.
//!
//! Elimination runs in two phases. Unit pivots are cleared sparsely first,
//! with `i64` arithmetic that restarts in `BigInt` on overflow; whatever
//! survives has no unit entries left and is finished densely in `BigInt`,
//! pivoting on the entry of least absolute value.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{BigradedComplex, SparseMatrix};
use crate::error::Result;

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

trait Coeff: Clone + PartialEq + fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_nil(&self) -> bool;
    fn unit(&self) -> Option<i64>;
    /// `a - f * b`, or `None` on overflow.
    fn mul_sub(a: &Self, f: &Self, b: &Self) -> Option<Self>;
    fn mul_unit(&self, u: i64) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn unit(&self) -> Option<i64> {
        (self.abs() == 1).then_some(*self)
    }
    fn mul_sub(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(f.checked_mul(*b)?)
    }
    fn mul_unit(&self, u: i64) -> Self {
        self * u
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit(&self) -> Option<i64> {
        if self.abs().is_one() {
            self.to_i64()
        } else {
            None
        }
    }
    fn mul_sub(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        Some(a - f * b)
    }
    fn mul_unit(&self, u: i64) -> Self {
        if u < 0 {
            -self
        } else {
            self.clone()
        }
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

/// Output of the sparse phase: number of unit pivots and the leftover rows.
struct Reduced {
    unit_pivots: usize,
    remainder: Vec<Vec<(u32, BigInt)>>,
}

fn sparse_unit_phase<T: Coeff>(m: &SparseMatrix) -> std::result::Result<Reduced, Overflow> {
    let mut rows: Vec<Vec<(u32, T)>> = vec![Vec::new(); m.rows()];
    // column lists may hold stale rows; the counts are exact
    let mut cols: Vec<Vec<u32>> = vec![Vec::new(); m.cols()];
    let mut col_count = vec![0usize; m.cols()];
    for (r, c, v) in m.entries() {
        rows[r].push((c as u32, T::from_i64(v)));
        cols[c].push(r as u32);
        col_count[c] += 1;
    }
    let mut active = vec![true; m.rows()];
    let mut row_heap: BinaryHeap<Reverse<(usize, u32)>> = rows
        .iter()
        .enumerate()
        .filter(|(_, row)| !row.is_empty())
        .map(|(r, row)| Reverse((row.len(), r as u32)))
        .collect();
    let mut col_heap: BinaryHeap<Reverse<(usize, u32)>> = col_count
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(c, &n)| Reverse((n, c as u32)))
        .collect();
    let mut unit_pivots = 0;

    // Markowitz cost (row length - 1) * (column count - 1), comparing the
    // best entry of the shortest row with the best entry of the sparsest column
    loop {
        while let Some(&Reverse((len, r))) = row_heap.peek() {
            let r = r as usize;
            if active[r] && rows[r].len() == len && len > 0 {
                break;
            }
            row_heap.pop();
        }
        while let Some(&Reverse((n, c))) = col_heap.peek() {
            if col_count[c as usize] == n && n > 0 {
                break;
            }
            col_heap.pop();
        }
        let by_row = row_heap.peek().map(|&Reverse((len, r))| {
            let best = rows[r as usize]
                .iter()
                .filter_map(|(c, v)| v.unit().map(|u| (*c, u)))
                .min_by_key(|(c, _)| col_count[*c as usize]);
            (len, r as usize, best)
        });
        let by_col = col_heap.peek().map(|&Reverse((n, c))| {
            let best = if by_row.is_none_or(|(len, _, _)| n <= len) {
                cols[c as usize]
                    .iter()
                    .map(|&r| r as usize)
                    .filter(|&r| active[r])
                    .filter_map(|r| {
                        let pos = rows[r].binary_search_by_key(&c, |(cc, _)| *cc).ok()?;
                        rows[r][pos].1.unit().map(|u| (r, u))
                    })
                    .min_by_key(|&(r, _)| rows[r].len())
            } else {
                None
            };
            (n, c, best)
        });
        let row_cost = by_row.and_then(|(len, r, best)| {
            best.map(|(c, u)| ((len - 1) * (col_count[c as usize] - 1), r, c, u))
        });
        let col_cost = by_col.and_then(|(n, c, best)| {
            best.map(|(r, u)| ((rows[r].len() - 1) * (n - 1), r, c, u))
        });
        let choice = match (row_cost, col_cost) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        let Some((_, r, c, p)) = choice else {
            if by_row.is_none() {
                break;
            }
            // the shortest row has no unit entry; it waits until it changes
            row_heap.pop();
            continue;
        };

        unit_pivots += 1;
        active[r] = false;
        let pivot_row = std::mem::take(&mut rows[r]);
        for (cc, _) in &pivot_row {
            let cc = *cc as usize;
            col_count[cc] -= 1;
            col_heap.push(Reverse((col_count[cc], cc as u32)));
        }

        let touched = std::mem::take(&mut cols[c as usize]);
        for r2 in touched {
            let r2 = r2 as usize;
            if !active[r2] {
                continue;
            }
            let Ok(pos) = rows[r2].binary_search_by_key(&c, |(cc, _)| *cc) else {
                continue;
            };
            let factor = rows[r2][pos].1.mul_unit(p);
            let merged = subtract_scaled(&rows[r2], &factor, &pivot_row).ok_or(Overflow)?;
            for (cc, _) in &merged {
                if rows[r2].binary_search_by_key(cc, |(x, _)| *x).is_err() {
                    let cc = *cc as usize;
                    cols[cc].push(r2 as u32);
                    col_count[cc] += 1;
                    col_heap.push(Reverse((col_count[cc], cc as u32)));
                }
            }
            for (cc, _) in &rows[r2] {
                if merged.binary_search_by_key(cc, |(x, _)| *x).is_err() {
                    let cc = *cc as usize;
                    col_count[cc] -= 1;
                    col_heap.push(Reverse((col_count[cc], cc as u32)));
                }
            }
            rows[r2] = merged;
            row_heap.push(Reverse((rows[r2].len(), r2 as u32)));
        }
    }

    let remainder = rows
        .into_iter()
        .zip(active)
        .filter(|(row, a)| *a && !row.is_empty())
        .map(|(row, _)| row.into_iter().map(|(c, v)| (c, v.to_big())).collect())
        .collect();
    Ok(Reduced {
        unit_pivots,
        remainder,
    })
}

fn subtract_scaled<T: Coeff>(a: &[(u32, T)], f: &T, b: &[(u32, T)]) -> Option<Vec<(u32, T)>> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |x| x.0);
        let cb = b.get(j).map_or(u32::MAX, |x| x.0);
        let (c, v) = if ca < cb {
            i += 1;
            (ca, a[i - 1].1.clone())
        } else if cb < ca {
            j += 1;
            (cb, T::mul_sub(&zero, f, &b[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (ca, T::mul_sub(&a[i - 1].1, f, &b[j - 1].1)?)
        };
        if !v.is_nil() {
            out.push((c, v));
        }
    }
    Some(out)
}

/// Dense Smith normal form; returns the nonzero diagonal.
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = min_entry(&a, t) else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_nil() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let delta = &q * &a[t][j];
                        a[i][j] -= delta;
                    }
                    clean &= a[i][t].is_nil();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_nil() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let delta = &q * &a[i][t];
                        a[i][j] -= delta;
                    }
                    clean &= a[t][j].is_nil();
                }
            }
            if !clean {
                let (pr, pc) = min_entry_cross(&a, t);
                a.swap(t, pr);
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_nil()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }
    normalize_divisibility(diagonal)
}

fn min_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_nil() && best.as_ref().is_none_or(|b| v.abs() < b.2) {
                best = Some((i, j, v.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_entry_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    for (i, row) in a.iter().enumerate().skip(t + 1) {
        let v = row[t].abs();
        if !v.is_nil() && v < best.2 {
            best = (i, t, v);
        }
    }
    for j in t + 1..a[t].len() {
        let v = a[t][j].abs();
        if !v.is_nil() && v < best.2 {
            best = (t, j, v);
        }
    }
    (best.0, best.1)
}

/// Turn any diagonal into the divisibility chain with the same cokernel.
fn normalize_divisibility(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let reduced = match sparse_unit_phase::<i64>(m) {
        Ok(r) => r,
        Err(Overflow) => match sparse_unit_phase::<BigInt>(m) {
            Ok(r) => r,
            Err(Overflow) => unreachable!("BigInt arithmetic does not overflow"),
        },
    };
    let mut diagonal = vec![BigInt::one(); reduced.unit_pivots];
    if !reduced.remainder.is_empty() {
        let mut used: Vec<u32> = reduced
            .remainder
            .iter()
            .flat_map(|row| row.iter().map(|(c, _)| *c))
            .collect();
        used.sort_unstable();
        used.dedup();
        let dense = reduced
            .remainder
            .iter()
            .map(|row| {
                let mut out = vec![BigInt::zero(); used.len()];
                for (c, v) in row {
                    out[used.binary_search(c).expect("collected above")] = v.clone();
                }
                out
            })
            .collect();
        diagonal.extend(dense_snf(dense));
    }
    SmithForm {
        diagonal: normalize_divisibility(diagonal),
    }
}

/// Finitely generated abelian group `Z^betti + Z/t_1 + ... + Z/t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianGroup {
    pub betti: usize,
    /// Each > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(betti: usize) -> Self {
        AbelianGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.collect_str(v),
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Torsion<'a>(&'a [BigInt]);
        impl Serialize for Torsion<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_seq(self.0.iter().map(Big))
            }
        }
        struct Big<'a>(&'a BigInt);
        impl Serialize for Big<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        let mut st = s.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("betti", &self.betti)?;
        st.serialize_field("torsion", &Torsion(&self.torsion))?;
        st.end()
    }
}

/// Abelian groups indexed by degree. Zero groups are never stored, so two
/// values are equal exactly when the graded groups are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedAbelianGroup {
    groups: BTreeMap<i64, AbelianGroup>,
}

impl GradedAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `Z` in a single degree.
    pub fn z_at(degree: i64) -> Self {
        let mut g = Self::zero();
        g.insert(degree, AbelianGroup::free(1));
        g
    }

    pub fn insert(&mut self, degree: i64, group: AbelianGroup) {
        if group.is_zero() {
            self.groups.remove(&degree);
        } else {
            self.groups.insert(degree, group);
        }
    }

    pub fn get(&self, degree: i64) -> AbelianGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &AbelianGroup)> {
        self.groups.iter().map(|(&i, g)| (i, g))
    }

    /// Re-index: degree `i` moves to `i + by`.
    pub fn shifted(&self, by: i64) -> Self {
        GradedAbelianGroup {
            groups: self.groups.iter().map(|(&i, g)| (i + by, g.clone())).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|(&i, g)| if i.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// First degree (ascending) where `self` and `other` differ.
    pub fn first_difference(&self, other: &GradedAbelianGroup) -> Option<i64> {
        self.groups
            .keys()
            .chain(other.groups.keys())
            .copied()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .find(|&i| self.get(i) != other.get(i))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graded group serializes")
    }
}

impl Serialize for GradedAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.groups.len()))?;
        for (i, g) in &self.groups {
            map.serialize_entry(&i.to_string(), g)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for GradedAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            betti: usize,
            #[serde(default)]
            torsion: Vec<u64>,
        }
        let raw: BTreeMap<String, Raw> = BTreeMap::deserialize(d)?;
        let mut out = GradedAbelianGroup::zero();
        for (k, g) in raw {
            let i: i64 = k.parse().map_err(serde::de::Error::custom)?;
            out.insert(
                i,
                AbelianGroup {
                    betti: g.betti,
                    torsion: g.torsion.into_iter().map(BigInt::from).collect(),
                },
            );
        }
        Ok(out)
    }
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.groups.iter().map(|(i, g)| format!("[{i}] {g}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// `H^i = ker d^i / im d^{i-1}`; torsion of `H^i` comes from the Smith form
/// of `d^{i-1}`.
pub fn cohomology<G: Sync>(complex: &BigradedComplex<G>) -> Result<GradedAbelianGroup> {
    complex.check_d_squared()?;
    let Some((lo, hi)) = complex.degree_range() else {
        return Ok(GradedAbelianGroup::zero());
    };
    let forms: BTreeMap<i64, SmithForm> = (lo - 1..=hi)
        .into_par_iter()
        .map(|i| (i, smith_normal_form(&complex.differential(i))))
        .collect();
    let mut out = GradedAbelianGroup::zero();
    for i in lo..=hi {
        let outgoing = forms[&i].rank();
        let incoming = &forms[&(i - 1)];
        out.insert(
            i,
            AbelianGroup {
                betti: complex.rank(i) - outgoing - incoming.rank(),
                torsion: incoming.torsion(),
            },
        );
    }
    Ok(out)
}
