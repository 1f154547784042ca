//! Brute-force Khovanov complexes over the full cube of states.
//!
//! Gradings of an enhanced state `(v, x)`:
//! `h = |v| - n_-` and `q = n_+ - 2 n_- + |v| + tau(x)`, where `tau` sums the
//! signs on the circles. The differential merges or splits one circle per cube
//! edge with the usual Frobenius rule over `Z`, and the edge flipping
//! coordinate `k` carries the sign `(-1)^{#1-labels before k}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{BigradedComplex, SparseMatrix};
use crate::error::Result;
use crate::homology::{cohomology, GradedAbelianGroup};
use crate::pd::LinkDiagram;
use crate::poly::LaurentPoly;
use crate::resolution::{
    check_cap, circle_counts_with, Resolution, Resolver, State,
};

/// `(v, x)`: a state and one sign per circle of `D(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedState {
    pub state: State,
    pub enhancement: Vec<i8>,
}

impl EnhancedState {
    /// `(v, x_-)`.
    pub fn all_minus(state: State, circles: usize) -> Self {
        EnhancedState {
            state,
            enhancement: vec![-1; circles],
        }
    }

    pub fn tau(&self) -> i64 {
        self.enhancement.iter().map(|&s| s as i64).sum()
    }

    pub fn is_all_minus(&self) -> bool {
        self.enhancement.iter().all(|&s| s == -1)
    }
}

impl fmt::Display for EnhancedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: String = self
            .enhancement
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        write!(f, "{}:{}", self.state, signs)
    }
}

impl Serialize for EnhancedState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn h_grading(d: &LinkDiagram, v: &State) -> i64 {
    v.weight() as i64 - d.n_minus() as i64
}

pub fn q_grading(d: &LinkDiagram, e: &EnhancedState) -> i64 {
    d.n_plus() as i64 - 2 * d.n_minus() as i64 + e.state.weight() as i64 + e.tau()
}

/// `n_+ - 2 n_- - |D(0)|`. Needs only the all-zero resolution.
pub fn jmin(d: &LinkDiagram) -> i64 {
    let zero_circles = Resolver::new(d).circle_count(&State::zero(d.n()));
    d.n_plus() as i64 - 2 * d.n_minus() as i64 - zero_circles as i64
}

/// `-jmin(D*)`, equivalently `2 n_+ - n_- + |D(1)|`.
pub fn jmax(d: &LinkDiagram) -> i64 {
    -jmin(&d.mirror())
}

/// `(min q, max q)` over every enhanced state, by scanning the cube.
pub fn q_range_by_scan(d: &LinkDiagram, cube_cap: usize) -> Result<(i64, i64)> {
    let counts = circle_counts_with(&Resolver::new(d), cube_cap)?;
    let base = d.n_plus() as i64 - 2 * d.n_minus() as i64;
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for (v, c) in counts.iter() {
        let w = v.weight() as i64;
        lo = lo.min(base + w - c as i64);
        hi = hi.max(base + w + c as i64);
    }
    Ok((lo, hi))
}

/// States `v` with `|D(v)| = |D(0)| + |v|`, by scanning the cube.
pub fn smin_states(d: &LinkDiagram, cube_cap: usize) -> Result<BTreeSet<State>> {
    smin_states_with(&Resolver::new(d), cube_cap)
}

pub fn smin_states_with(resolver: &Resolver<'_>, cube_cap: usize) -> Result<BTreeSet<State>> {
    let counts = circle_counts_with(resolver, cube_cap)?;
    let base = counts.by_mask(0);
    Ok(counts
        .iter()
        .filter(|(v, c)| *c == base + v.weight())
        .map(|(v, _)| v)
        .collect())
}

/// Khovanov complex in quantum grading `j`.
pub fn khovanov_complex(
    d: &LinkDiagram,
    j: i64,
    cube_cap: usize,
) -> Result<BigradedComplex<EnhancedState>> {
    khovanov_complex_with(&Resolver::new(d), j, cube_cap)
}

struct StateData {
    resolution: Resolution,
    /// enhancement masks (bit c set = circle c is `+`) with `q = j`
    enhancements: Vec<u64>,
}

pub fn khovanov_complex_with(
    resolver: &Resolver<'_>,
    j: i64,
    cube_cap: usize,
) -> Result<BigradedComplex<EnhancedState>> {
    let d = resolver.diagram();
    let n = d.n();
    check_cap(n, cube_cap)?;
    let base = d.n_plus() as i64 - 2 * d.n_minus() as i64;

    let data: Vec<Option<StateData>> = (0..1u64 << n)
        .into_par_iter()
        .map(|m| {
            let w = m.count_ones() as i64;
            let need_tau = j - base - w;
            let c = resolver.circle_count(&State::from_mask(m, n)) as i64;
            if need_tau.abs() > c || (need_tau + c) % 2 != 0 {
                return None;
            }
            assert!(c < 64, "too many circles to pack an enhancement");
            let pluses = ((need_tau + c) / 2) as u32;
            let resolution = resolver.resolve(&State::from_mask(m, n));
            let enhancements = (0..1u64 << c).filter(|e| e.count_ones() == pluses).collect();
            Some(StateData {
                resolution,
                enhancements,
            })
        })
        .collect();

    // generators, sorted by (state, enhancement)
    let mut by_degree: BTreeMap<i64, Vec<(State, Vec<i8>, u64, u64)>> = BTreeMap::new();
    for i in -(d.n_minus() as i64)..=d.n_plus() as i64 {
        by_degree.insert(i, Vec::new());
    }
    for (m, sd) in data.iter().enumerate() {
        let Some(sd) = sd else { continue };
        let state = &sd.resolution.state;
        let circles = sd.resolution.circle_count();
        for &e in &sd.enhancements {
            let signs = (0..circles).map(|c| if e >> c & 1 == 1 { 1 } else { -1 }).collect();
            by_degree
                .get_mut(&h_grading(d, state))
                .expect("degree within [-n_-, n_+]")
                .push((state.clone(), signs, m as u64, e));
        }
    }
    for gens in by_degree.values_mut() {
        gens.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    }
    let index: HashMap<(u64, u64), usize> = by_degree
        .values()
        .flat_map(|g| g.iter().enumerate().map(|(ix, (_, _, m, e))| ((*m, *e), ix)))
        .collect();

    let mut differentials = BTreeMap::new();
    for (&i, sources) in &by_degree {
        let Some(targets) = by_degree.get(&(i + 1)) else { continue };
        if sources.is_empty() || targets.is_empty() {
            continue;
        }
        let triplets: Vec<(usize, usize, i64)> = sources
            .par_iter()
            .enumerate()
            .flat_map_iter(|(col, &(_, _, m, e))| {
                let mut out = Vec::new();
                for k in (0..n).filter(|k| m >> k & 1 == 0) {
                    let target_mask = m | 1 << k;
                    let Some(target) = data[target_mask as usize].as_ref() else { continue };
                    let source = data[m as usize].as_ref().expect("source has generators");
                    let sign = if (m & ((1u64 << k) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                    for image in edge_map(&source.resolution, &target.resolution, k, e) {
                        let row = index[&(target_mask, image)];
                        out.push((row, col, sign));
                    }
                }
                out
            })
            .collect();
        differentials.insert(
            i,
            SparseMatrix::from_triplets(targets.len(), sources.len(), triplets),
        );
    }

    let generators = by_degree
        .into_iter()
        .map(|(i, g)| {
            (
                i,
                g.into_iter()
                    .map(|(state, enhancement, _, _)| EnhancedState { state, enhancement })
                    .collect(),
            )
        })
        .collect();
    let complex = BigradedComplex::new(j, generators, differentials);
    complex.check_d_squared()?;
    Ok(complex)
}

/// Images of enhancement `e` of `D(v)` along the edge flipping crossing `k`.
fn edge_map(src: &Resolution, dst: &Resolution, k: usize, e: u64) -> Vec<u64> {
    let a = src.circle_of_slot(4 * k);
    let b = src.circle_of_slot(4 * k + 2);
    let a2 = dst.circle_of_slot(4 * k);
    let b2 = dst.circle_of_slot(4 * k + 1);

    let mut carried = 0u64;
    for c in 0..src.crossing_circles() {
        if c == a || c == b {
            continue;
        }
        if e >> c & 1 == 1 {
            carried |= 1 << dst.circle_of_slot(src.representative_slot(c));
        }
    }
    let free = src.circle_count() - src.crossing_circles();
    for t in 0..free {
        if e >> (src.crossing_circles() + t) & 1 == 1 {
            carried |= 1 << (dst.crossing_circles() + t);
        }
    }

    let plus = |c: usize| e >> c & 1 == 1;
    if a != b {
        debug_assert_eq!(a2, b2, "merge");
        match (plus(a), plus(b)) {
            (true, true) => vec![carried | 1 << a2],
            (true, false) | (false, true) => vec![carried],
            (false, false) => vec![],
        }
    } else {
        debug_assert_ne!(a2, b2, "split");
        if plus(a) {
            vec![carried | 1 << a2, carried | 1 << b2]
        } else {
            vec![carried]
        }
    }
}

pub fn khovanov_homology(d: &LinkDiagram, j: i64, cube_cap: usize) -> Result<GradedAbelianGroup> {
    cohomology(&khovanov_complex(d, j, cube_cap)?)
}

/// `Kh^{*,j}` for every `j` from `jmin` to `jmax` carrying a nonzero group.
pub fn khovanov_table(
    d: &LinkDiagram,
    cube_cap: usize,
) -> Result<BTreeMap<i64, GradedAbelianGroup>> {
    check_cap(d.n(), cube_cap)?;
    let mut table = BTreeMap::new();
    let mut j = jmin(d);
    while j <= jmax(d) {
        let kh = khovanov_homology(d, j, cube_cap)?;
        if !kh.is_zero() {
            table.insert(j, kh);
        }
        j += 2;
    }
    Ok(table)
}

/// `sum_{i,j} (-1)^i q^j rank Kh^{i,j}`.
pub fn graded_euler_characteristic(table: &BTreeMap<i64, GradedAbelianGroup>) -> LaurentPoly {
    LaurentPoly::from_terms(table.iter().map(|(&j, kh)| (j, kh.euler_characteristic())))
}

/// Unnormalized Jones polynomial from the Kauffman state sum
/// `(-1)^{n_-} q^{n_+ - 2 n_-} sum_v (-q)^{|v|} (q + q^{-1})^{|D(v)|}`.
pub fn jones_bracket(d: &LinkDiagram, cube_cap: usize) -> Result<LaurentPoly> {
    let counts = circle_counts_with(&Resolver::new(d), cube_cap)?;
    let circle = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
    let max_circles = counts.iter().map(|(_, c)| c).max().unwrap_or(0);
    let powers: Vec<LaurentPoly> = (0..=max_circles as u32).map(|r| circle.pow(r)).collect();
    let mut sum = LaurentPoly::zero();
    for (v, c) in counts.iter() {
        let w = v.weight() as i64;
        let sign = if w % 2 == 0 { 1 } else { -1 };
        for (e, coef) in powers[c].terms() {
            sum.add_term(e + w, sign * coef);
        }
    }
    let n_minus = d.n_minus() as i64;
    let normal = LaurentPoly::monomial(
        if n_minus % 2 == 0 { 1 } else { -1 },
        d.n_plus() as i64 - 2 * n_minus,
    );
    Ok(&normal * &sum)
}
