//! Full Khovanov homology from the cube, one quantum grading per row.
//!
//! ```text
//! cargo run --release --example khovanov_table -- torus_2_5
//! ```

use exkh::corpus::bundled_entry;
use exkh::oracle::{jmax, jmin, khovanov_complex, khovanov_table};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "trefoil_left".into());
    let Some(entry) = bundled_entry(&name) else {
        eprintln!("no corpus entry named {name}");
        std::process::exit(2);
    };
    let d = entry.diagram().unwrap();
    println!("{name}: jmin {} jmax {}", jmin(&d), jmax(&d));
    let c = khovanov_complex(&d, jmin(&d), 20).unwrap();
    println!("chain groups at jmin: {:?}", c.support().iter().map(|&i| (i, c.rank(i))).collect::<Vec<_>>());
    for (j, kh) in khovanov_table(&d, 20).unwrap() {
        println!("  j = {j:>4}  {kh}");
    }
}
