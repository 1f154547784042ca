//! The Lando graph of a diagram and its independence complex `X_D`.

use exkh::corpus::bundled_entry;
use exkh::lando::{independence_complex, lando_graph, DEFAULT_FACE_LIMIT};

fn main() {
    for name in ["kink_negative", "unlink_r2", "random_11", "twisted_38"] {
        let d = bundled_entry(name).unwrap().diagram().unwrap();
        let g = lando_graph(&d);
        let x = independence_complex(&g, DEFAULT_FACE_LIMIT).unwrap();
        println!("{name}: {} vertices, {} edges", g.vertices.len(), g.edges.len());
        print!("{}", g.to_edge_list());
        println!("  X_D: {} faces, dim {:?}, H̃* = {}", x.face_count(), x.dim(), x.reduced_cohomology());
    }
}
