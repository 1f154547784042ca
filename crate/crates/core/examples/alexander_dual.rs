//! Combinatorial Alexander duality: `H̃^i(K^∨) = H̃_{N-i-3}(K)` for a complex
//! `K` on `N` vertices.

use exkh::lando::{alexander_dual, DEFAULT_FACE_LIMIT};
use exkh::SimplicialComplex;

fn main() {
    // boundary of a square plus a loose vertex
    let k = SimplicialComplex::from_faces(
        (0..5).collect(),
        vec![vec![], vec![0], vec![1], vec![2], vec![3], vec![4], vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    );
    let dual = alexander_dual(&k, DEFAULT_FACE_LIMIT).unwrap();
    println!("K:   {} faces, H̃_* = {}", k.face_count(), k.reduced_homology());
    println!("K^v: {} faces, H̃^* = {}", dual.face_count(), dual.reduced_cohomology());
    println!("facets of K^v:");
    for f in dual.faces().iter().filter(|f| !dual.faces().iter().any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v)))) {
        println!("  {f:?}");
    }
}
