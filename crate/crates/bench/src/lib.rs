//! Fixtures shared by the kernel benchmarks.

use homotope_core::families::{family, MatrixClass, Sampler};
use homotope_core::{Matrix, Ring, TripleSystem};

/// The 1.a system on `M(n, n)` over ℚ with a generic parameter.
pub fn generic_system(n: usize, seed: u64) -> TripleSystem {
    let fam = family("1.a", &[n, n], Some(Ring::Q)).expect("1.a is shipped");
    let params = fam.sample(&mut Sampler::new(seed), 2).expect("sampling a full matrix");
    fam.system(&params).expect("1.a is closed")
}

/// A symmetric `n × n` matrix over ℚ.
pub fn symmetric(n: usize, seed: u64) -> Matrix {
    let space = MatrixClass::sym(n).subspace(Ring::Q).expect("Sym(n) over Q");
    Sampler::new(seed).in_space(&space)
}

/// `count` random `n × n` matrices over `ring`.
pub fn matrices(n: usize, ring: Ring, count: usize, seed: u64) -> Vec<Matrix> {
    let mut s = Sampler::new(seed);
    (0..count).map(|_| s.matrix(n, n, ring)).collect()
}
