//! Smith normal form and the cohomology it yields.

use std::collections::BTreeMap;

use exkh::homology::{cohomology, smith_normal_form};
use exkh::{BigradedComplex, SparseMatrix};

fn main() {
    let m = SparseMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&m);
    println!("invariant factors {:?}", s.diagonal.iter().map(|d| d.to_string()).collect::<Vec<_>>());

    // Z --2--> Z: the cokernel is Z/2
    let generators = BTreeMap::from([(0, vec!["a"]), (1, vec!["b"])]);
    let differentials = BTreeMap::from([(0, SparseMatrix::from_dense(&[vec![2]]))]);
    let c = BigradedComplex::new(0, generators, differentials);
    println!("H* = {}", cohomology(&c).unwrap());
}
