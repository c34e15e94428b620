#![allow(dead_code)]

use curvlab::exact::{int, rat, Matrix, Rational};
use curvlab::modelspace::{tensor_from_form, ModelSpace};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random algebraic curvature tensor: `P^T diag(−1..,+1..) P` as metric and
/// a sum of two Gauss-type tensors `c·(A ∧ A)`.
pub fn random_model(seed: u64, n: usize, neg: usize) -> ModelSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut diag = vec![int(1); n];
    for d in diag.iter_mut().take(neg) {
        *d = int(-1);
    }
    let p = loop {
        let p = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-1..=1)));
        if !p.det().unwrap().is_zero() {
            break p;
        }
    };
    let g = &(&p.transpose() * &Matrix::diagonal(&diag)) * &p;
    let mut curv = vec![Rational::zero(); n.pow(4)];
    for _ in 0..2 {
        let b = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-2..=2)));
        let a = &b + &b.transpose();
        let c = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        for (x, y) in curv.iter_mut().zip(tensor_from_form(&a, &c)) {
            *x += y;
        }
    }
    ModelSpace::new(g, curv).unwrap()
}

/// A random invertible `k×k` rational matrix.
pub fn random_invertible(k: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let b = Matrix::from_fn(k, k, |_, _| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
        if !b.det().unwrap().is_zero() {
            return b;
        }
    }
}
