//! Fixtures shared by the benchmarks.

use bgg_core::CartanMatrix;

pub fn a2() -> CartanMatrix {
    CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()
}

pub fn b2() -> CartanMatrix {
    CartanMatrix::new(vec![vec![2, -2], vec![-1, 2]]).unwrap()
}

pub fn affine_a1() -> CartanMatrix {
    CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap()
}
