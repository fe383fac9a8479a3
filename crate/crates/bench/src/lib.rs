//! Fixtures shared by the benchmarks.

use hurwitz_core::Polynomial;

/// `(x + 1)(x + 2)...(x + n)`, stable with well separated real roots.
pub fn stable_poly(n: usize) -> Polynomial {
    let mut p = Polynomial::one();
    for i in 1..=n as i64 {
        p = &p * &Polynomial::from_i64s(&[i, 1]).unwrap();
    }
    p
}

/// A quasi-stable polynomial of degree `n + 2` with a pair of roots at `±i`.
pub fn quasi_stable_poly(n: usize) -> Polynomial {
    &stable_poly(n) * &Polynomial::from_i64s(&[1, 0, 1]).unwrap()
}
