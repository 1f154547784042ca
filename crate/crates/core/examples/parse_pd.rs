//! Parse a PD code, orient it and classify its crossings.
//!
//! ```text
//! cargo run --example parse_pd -- "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]"
//! ```

use exkh::LinkDiagram;

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]".into());
    let d: LinkDiagram = match text.parse() {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("{d}");
    for (k, s) in d.signs().iter().enumerate() {
        println!("  crossing {k} {:?} {:?}", d.crossing(k), s);
    }
    println!("n+ = {}, n- = {}, writhe {}", d.n_plus(), d.n_minus(), d.writhe());
    println!("mirror: {}", d.mirror());
    println!("{}", d.pd().to_json());
}
