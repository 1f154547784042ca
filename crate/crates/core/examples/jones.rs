//! Jones polynomial from the Kauffman state sum, next to the graded Euler
//! characteristic of the Khovanov table.

use exkh::corpus::bundled;
use exkh::oracle::{graded_euler_characteristic, jones_bracket, khovanov_table};

fn main() {
    for e in bundled().into_iter().filter(|e| e.diagram().unwrap().n() <= 8) {
        let d = e.diagram().unwrap();
        let jones = jones_bracket(&d, 20).unwrap();
        let chi = graded_euler_characteristic(&khovanov_table(&d, 20).unwrap());
        let mark = if chi == jones { "ok" } else { "MISMATCH" };
        println!("{:<16} {jones}  {mark}", e.name);
    }
}
