//! Exact sign computations in `Q(√r, √s)`.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::rational_to_f64;

/// `a + b√r + c√s + d√(rs)` with rational coefficients and `r, s >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
    pub r: BigRational,
    pub s: BigRational,
}

fn sgn(q: &BigRational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `a + b√r`.
fn sign_quadratic(a: &BigRational, b: &BigRational, r: &BigRational) -> i8 {
    let sa = sgn(a);
    let sb = if r.is_zero() { 0 } else { sgn(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // Opposite signs: compare a^2 against b^2 r.
    sa * sgn(&(a * a - b * b * r))
}

impl Surd {
    pub fn sign(&self) -> i8 {
        // Write the value as P + Q√s with P = a + b√r and Q = c + d√r.
        let sp = sign_quadratic(&self.a, &self.b, &self.r);
        let sq = if self.s.is_zero() {
            0
        } else {
            sign_quadratic(&self.c, &self.d, &self.r)
        };
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // P^2 - s Q^2 = (a^2 + b^2 r - s c^2 - s d^2 r) + 2(ab - s cd)√r.
        let (a, b, c, d, r, s) = (&self.a, &self.b, &self.c, &self.d, &self.r, &self.s);
        let rat_part = a * a + b * b * r - s * c * c - s * d * d * r;
        let two = BigRational::from_integer(2.into());
        let irr_part = two * (a * b - s * c * d);
        sp * sign_quadratic(&rat_part, &irr_part, r)
    }

    /// Compares the surd against a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        let shifted = Surd {
            a: &self.a - q,
            ..self.clone()
        };
        shifted.sign().cmp(&0)
    }

    /// Display-only approximation.
    pub fn to_f64(&self) -> f64 {
        let r = rational_to_f64(&self.r).sqrt();
        let s = rational_to_f64(&self.s).sqrt();
        rational_to_f64(&self.a)
            + rational_to_f64(&self.b) * r
            + rational_to_f64(&self.c) * s
            + rational_to_f64(&self.d) * r * s
    }
}

/// The maximum of finitely many surds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub candidates: Vec<Surd>,
}

impl Endpoint {
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        let mut best = Ordering::Less;
        for c in &self.candidates {
            match c.cmp_rational(q) {
                Ordering::Greater => return Ordering::Greater,
                Ordering::Equal => best = Ordering::Equal,
                Ordering::Less => {}
            }
        }
        best
    }

    pub fn to_f64(&self) -> f64 {
        self.candidates
            .iter()
            .map(Surd::to_f64)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}
