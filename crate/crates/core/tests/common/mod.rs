#![allow(dead_code)]

use std::collections::HashMap;

use exkh::builder::braid_closure;
use exkh::corpus::{bundled, CorpusEntry};
use exkh::pd::derive_signs;
use exkh::{LaurentPoly, LinkDiagram};
use rand::Rng;

/// Crossing signs straight from consecutive PD numbering: the over-strand
/// runs `d -> b` exactly when the crossing is positive.
pub fn tracer_signs(crossings: &[[u32; 4]]) -> Vec<i64> {
    crossings
        .iter()
        .map(|&[i, j, k, l]| {
            let positive = i == j || k == l || j == l + 1 || l > j + 1;
            if positive { 1 } else { -1 }
        })
        .collect()
}

/// `|D(v)|` by merging edge labels: the 0-smoothing glues `a~b`, `c~d`,
/// the 1-smoothing `a~d`, `b~c`.
pub fn tracer_circles(crossings: &[[u32; 4]], free: usize, bits: &[bool]) -> usize {
    let mut parent: HashMap<u32, u32> = HashMap::new();
    fn find(p: &mut HashMap<u32, u32>, x: u32) -> u32 {
        let up = *p.entry(x).or_insert(x);
        if up == x {
            return x;
        }
        let root = find(p, up);
        p.insert(x, root);
        root
    }
    for (x, &one) in crossings.iter().zip(bits) {
        let [a, b, c, d] = *x;
        let pairs = if one { [(a, d), (b, c)] } else { [(a, b), (c, d)] };
        for (u, w) in pairs {
            let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
            parent.insert(ru, rw);
        }
    }
    let labels: Vec<u32> = parent.keys().copied().collect();
    let mut roots: Vec<u32> = labels.into_iter().map(|l| find(&mut parent, l)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len() + free
}

pub fn bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|k| mask >> k & 1 == 1).collect()
}

/// Bundled entries small enough for the cube.
pub fn small_corpus() -> Vec<(CorpusEntry, LinkDiagram)> {
    bundled()
        .into_iter()
        .map(|e| {
            let d = e.diagram().unwrap();
            (e, d)
        })
        .filter(|(_, d)| d.n() <= 12)
        .collect()
}

pub fn corpus() -> Vec<(CorpusEntry, LinkDiagram)> {
    bundled()
        .into_iter()
        .map(|e| {
            let d = e.diagram().unwrap();
            (e, d)
        })
        .collect()
}

/// Closure of a random braid word.
pub fn random_diagram(rng: &mut impl Rng, max_crossings: usize) -> LinkDiagram {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(0..=max_crossings);
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) { g } else { -g }
        })
        .collect();
    derive_signs(&braid_closure(strands, &word).unwrap().pd).unwrap()
}

/// Whether some component of the PD code has at most two edges, where the
/// numbering rule in [`tracer_signs`] cannot tell the direction.
pub fn has_short_component(crossings: &[[u32; 4]]) -> bool {
    let mut parent: HashMap<u32, u32> = HashMap::new();
    fn find(p: &mut HashMap<u32, u32>, x: u32) -> u32 {
        let up = *p.entry(x).or_insert(x);
        if up == x {
            return x;
        }
        let root = find(p, up);
        p.insert(x, root);
        root
    }
    for &[a, b, c, d] in crossings {
        for (u, w) in [(a, c), (b, d)] {
            let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
            parent.insert(ru, rw);
        }
    }
    let labels: Vec<u32> = parent.keys().copied().collect();
    let mut sizes: HashMap<u32, usize> = HashMap::new();
    for l in labels {
        *sizes.entry(find(&mut parent, l)).or_default() += 1;
    }
    sizes.values().any(|&s| s <= 2)
}

/// Kauffman state sum over tracer circle counts.
pub fn tracer_jones(d: &LinkDiagram) -> LaurentPoly {
    let n = d.n();
    let circle = LaurentPoly::from_terms([(-1, 1), (1, 1)]);
    let mut sum = LaurentPoly::zero();
    for mask in 0..1u64 << n {
        let c = tracer_circles(d.pd().crossings(), d.unknotted_components(), &bits(mask, n));
        let w = mask.count_ones() as i64;
        let term = &LaurentPoly::monomial(if w % 2 == 0 { 1 } else { -1 }, w) * &circle.pow(c as u32);
        sum = &sum + &term;
    }
    let nm = d.n_minus() as i64;
    &LaurentPoly::monomial(if nm % 2 == 0 { 1 } else { -1 }, d.n_plus() as i64 - 2 * nm) * &sum
}
