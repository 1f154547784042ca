//! Cross-check the two pipelines on every bundled diagram.

use exkh::corpus::bundled;
use exkh::verify::{verify_entry, VerifyOptions};

fn main() {
    let opts = VerifyOptions::default();
    let mut passed = 0;
    let corpus = bundled();
    for e in &corpus {
        let report = verify_entry(e, &opts).unwrap();
        if report.pass {
            passed += 1;
        }
        print!("{}", report.to_table());
    }
    println!("{passed}/{} passed", corpus.len());
}
