//! Exact Hurwitz stability analysis and Hadamard-product idealizers.

pub mod error;
pub mod idealizer;
pub mod poly;
pub mod roots;
pub mod search;
pub mod stability;

pub use error::{Error, Result};
pub use poly::{
    basic_quasistable, even_odd_split, hadamard, identity_poly, recompose, shift_divide,
    EvenOddParts, Polynomial,
};
