//! List the bundled corpus, or parse a corpus file given as an argument.

use exkh::corpus::{bundled, parse_corpus};

fn main() {
    let entries = match std::env::args().nth(1) {
        Some(path) => parse_corpus(&std::fs::read_to_string(path).unwrap()).unwrap_or_else(|e| {
            eprintln!("{e}");
            std::process::exit(2);
        }),
        None => bundled(),
    };
    for e in entries {
        let d = e.diagram().unwrap();
        let source = e.expected.as_ref().map_or("-", |x| x.source.as_str());
        println!("{:<16} {:>3} crossings  {:>2} free circles  {source}", e.name, d.n(), d.unknotted_components());
    }
}
