//! Extreme Khovanov homology without the cube. Works far past the point where
//! `2^n` states would be out of reach.

use exkh::corpus::bundled;
use exkh::lando::{extreme_homology, lando_graph, DEFAULT_FACE_LIMIT};
use exkh::oracle::{jmax, jmin};
use exkh::verify::jmax_from_y;

fn main() {
    for e in bundled() {
        let d = e.diagram().unwrap();
        let start = std::time::Instant::now();
        let lo = extreme_homology(&d, DEFAULT_FACE_LIMIT).unwrap();
        let hi = jmax_from_y(&d, DEFAULT_FACE_LIMIT).unwrap();
        println!(
            "{:<16} n={:<3} lando={:<3} Kh(*,{}) = {:<20} Kh(*,{}) = {:<20} {:?}",
            e.name,
            d.n(),
            lando_graph(&d).vertices.len(),
            jmin(&d),
            lo.to_string(),
            jmax(&d),
            hi.to_string(),
            start.elapsed()
        );
    }
}
