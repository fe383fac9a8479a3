//! Ratio characterisations of quasi-stable quintics and of the two
//! quintic `Y_5` conditions, plus the `φ∓` enclosures.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::surd::{Endpoint, Surd};
use super::{expect_degree, is_nonneg, shifted_product_verdict};
use crate::error::{Error, Result};
use crate::poly::{even_odd_split, rational_string, rational_to_f64, Polynomial};
use crate::stability::{has_only_negative_zeros, hurwitz_minors, poly_gcd, quasi_stability_agt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaClause {
    Ii,
    Iii,
    Iv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioTripleF {
    #[serde(with = "rational_string")]
    pub a: BigRational,
    #[serde(with = "rational_string")]
    pub b: BigRational,
    #[serde(with = "rational_string")]
    pub c: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioTripleG {
    #[serde(with = "rational_string")]
    pub x: BigRational,
    #[serde(with = "rational_string")]
    pub y: BigRational,
    #[serde(with = "rational_string")]
    pub z: BigRational,
}

fn positive_quintic(p: &Polynomial) -> Result<&[BigRational]> {
    expect_degree(p, 5)?;
    if !p.is_positive() {
        return Err(Error::NotPositiveCoefficients);
    }
    Ok(p.coeffs())
}

/// `(q1 q4 / (q2 q3), q1 q5 / q3^2, q0 q4 / q2^2)`.
fn triple(q: &[BigRational]) -> (BigRational, BigRational, BigRational) {
    (
        &q[1] * &q[4] / (&q[2] * &q[3]),
        &q[1] * &q[5] / (&q[3] * &q[3]),
        &q[0] * &q[4] / (&q[2] * &q[2]),
    )
}

/// `A = a1a4/(a2a3)`, `B = a1a5/a3^2`, `C = a0a4/a2^2`.
pub fn ratios_f(f: &Polynomial) -> Result<RatioTripleF> {
    let (a, b, c) = triple(positive_quintic(f)?);
    Ok(RatioTripleF { a, b, c })
}

/// `X = b1b4/(b2b3)`, `Y = b1b5/b3^2`, `Z = b0b4/b2^2`.
pub fn ratios_g(g: &Polynomial) -> Result<RatioTripleG> {
    let (x, y, z) = triple(positive_quintic(g)?);
    Ok(RatioTripleG { x, y, z })
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `scale (1 + σ√r)(1 + τ√s)`.
fn product_surd(
    scale: &BigRational,
    sigma: i64,
    tau: i64,
    r: &BigRational,
    s: &BigRational,
) -> Surd {
    Surd {
        a: scale.clone(),
        b: scale * q(sigma, 1),
        c: scale * q(tau, 1),
        d: scale * q(sigma * tau, 1),
        r: r.clone(),
        s: s.clone(),
    }
}

fn radicands(
    u: &BigRational,
    v: &BigRational,
    k: i64,
    name: &str,
) -> Result<(BigRational, BigRational)> {
    let r = BigRational::one() - q(k, 1) * u;
    let s = BigRational::one() - q(k, 1) * v;
    if r.is_negative() || s.is_negative() {
        return Err(Error::Domain(format!(
            "{name} needs 1 - {k}u and 1 - {k}v nonnegative"
        )));
    }
    Ok((r, s))
}

/// `max{¼(1+√(1-4u))(1-√(1-4v)), ¼(1-√(1-4u))(1+√(1-4v))}`.
pub fn t1(u: &BigRational, v: &BigRational) -> Result<Endpoint> {
    let (r, s) = radicands(u, v, 4, "t1")?;
    let quarter = q(1, 4);
    Ok(Endpoint {
        candidates: vec![
            product_surd(&quarter, 1, -1, &r, &s),
            product_surd(&quarter, -1, 1, &r, &s),
        ],
    })
}

/// `¼(1+√(1-4u))(1+√(1-4v))`.
pub fn s1(u: &BigRational, v: &BigRational) -> Result<Endpoint> {
    let (r, s) = radicands(u, v, 4, "s1")?;
    Ok(Endpoint {
        candidates: vec![product_surd(&q(1, 4), 1, 1, &r, &s)],
    })
}

/// `max{(1+√(1-u))(1-√(1-v)), (1-√(1-u))(1+√(1-v))}`.
pub fn t4(u: &BigRational, v: &BigRational) -> Result<Endpoint> {
    let (r, s) = radicands(u, v, 1, "t4")?;
    let one = BigRational::one();
    Ok(Endpoint {
        candidates: vec![
            product_surd(&one, 1, -1, &r, &s),
            product_surd(&one, -1, 1, &r, &s),
        ],
    })
}

/// Quasi-stability (or, with `strict`, stability) of a positive quintic.
pub fn lemma1_statement(f: &Polynomial, strict: bool) -> Result<bool> {
    positive_quintic(f)?;
    let v = quasi_stability_agt(f)?;
    Ok(if strict {
        v.is_stable()
    } else {
        v.is_quasi_stable()
    })
}

/// Quasi-stability of both `(g * Q^3_1)/x` and `g * Q^5`.
pub fn lemma2_statement(g: &Polynomial) -> Result<bool> {
    positive_quintic(g)?;
    Ok(shifted_product_verdict(g, 3, 1)?.1.is_quasi_stable()
        && shifted_product_verdict(g, 5, 0)?.1.is_quasi_stable())
}

fn in_range(x: &BigRational, hi: &BigRational, strict: bool) -> bool {
    x.is_positive() && if strict { x < hi } else { x <= hi }
}

fn dominates(x: &BigRational, y: &BigRational, strict: bool) -> bool {
    if strict {
        x > y
    } else {
        x >= y
    }
}

/// Shared domain constraints of clauses (iii) and (iv).
fn ratio_domain(
    (x, y, z): (&BigRational, &BigRational, &BigRational),
    y_cap: &BigRational,
    strict: bool,
) -> bool {
    let one = BigRational::one();
    in_range(x, &one, strict)
        && in_range(y, y_cap, strict)
        && in_range(z, y_cap, strict)
        && dominates(x, y, strict)
        && dominates(x, z, strict)
}

/// `(x^2 - yz)^2 <= k x (x-y)(x-z)`, cross-multiplied so that the
/// degenerate cases `x = y` or `x = z` need no division.
fn quotient_bound(x: &BigRational, y: &BigRational, z: &BigRational, k: i64, strict: bool) -> bool {
    let lhs = num_traits::pow(x * x - y * z, 2);
    let rhs = q(k, 1) * x * (x - y) * (x - z);
    if strict {
        lhs < rhs
    } else {
        lhs <= rhs
    }
}

/// The conditions of the quasi-stable quintic characterisation by ratios;
/// `strict` selects the stable variant.
pub fn lemma1_condition(f: &Polynomial, which: LemmaClause, strict: bool) -> Result<bool> {
    let a = positive_quintic(f)?;
    match which {
        LemmaClause::Ii => {
            let m = hurwitz_minors(f)?;
            let (d2, d4) = (m.delta(2), m.delta(4));
            if strict {
                return Ok(d2.is_positive() && d4.is_positive());
            }
            if !is_nonneg(d2) || !is_nonneg(d4) {
                return Ok(false);
            }
            let parts = even_odd_split(f);
            let gcd = poly_gcd(&parts.even, &parts.odd)?;
            Ok(has_only_negative_zeros(&gcd))
        }
        LemmaClause::Iii | LemmaClause::Iv => {
            let (x, y, z) = triple(a);
            if !ratio_domain((&x, &y, &z), &q(1, 4), strict) {
                return Ok(false);
            }
            if which == LemmaClause::Iii {
                return Ok(quotient_bound(&x, &y, &z, 1, strict));
            }
            let lo = t1(&y, &z)?.cmp_rational(&x);
            let hi = s1(&y, &z)?.cmp_rational(&x);
            Ok(if strict {
                lo == Ordering::Less && hi == Ordering::Greater
            } else {
                lo != Ordering::Greater && hi != Ordering::Less
            })
        }
    }
}

/// The conditions of the ratio characterisation of the two `Y_5` tests.
pub fn lemma2_condition(g: &Polynomial, which: LemmaClause) -> Result<bool> {
    let b = positive_quintic(g)?;
    match which {
        LemmaClause::Ii => {
            let c1 = &b[2] * &b[3] - &b[1] * &b[4];
            let c2 = &b[3] * &b[4] - &b[2] * &b[5];
            let c3 = q(4, 1) * &c2 * (&b[1] * &b[2] - &b[0] * &b[3])
                - num_traits::pow(&b[1] * &b[4] - &b[0] * &b[5], 2);
            Ok(is_nonneg(&c1) && is_nonneg(&c2) && is_nonneg(&c3))
        }
        LemmaClause::Iii | LemmaClause::Iv => {
            let (x, y, z) = triple(b);
            if !ratio_domain((&x, &y, &z), &BigRational::one(), false) {
                return Ok(false);
            }
            if which == LemmaClause::Iii {
                return Ok(quotient_bound(&x, &y, &z, 4, false));
            }
            let one = BigRational::one();
            let lo = t4(&y, &z)?;
            Ok(lo.cmp_rational(&one) != Ordering::Greater
                && lo.cmp_rational(&x) != Ordering::Greater)
        }
    }
}

/// A closed rational interval `[lo, hi]` known to contain a real number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    #[serde(with = "rational_string")]
    pub lo: BigRational,
    #[serde(with = "rational_string")]
    pub hi: BigRational,
}

impl Enclosure {
    pub fn exact(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        (rational_to_f64(&self.lo) + rational_to_f64(&self.hi)) / 2.0
    }

    /// Certainly below `other`.
    pub fn lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    fn add_rational(&self, c: &BigRational) -> Self {
        Self {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    fn neg(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// Quotient of two enclosures of positive numbers.
    fn div_positive(&self, other: &Self) -> Result<Self> {
        if !self.lo.is_positive() || !other.lo.is_positive() {
            return Err(Error::Domain("enclosure not bounded away from zero".into()));
        }
        Ok(Self {
            lo: &self.lo / &other.hi,
            hi: &self.hi / &other.lo,
        })
    }
}

fn exact_sqrt(x: &BigRational) -> Option<BigRational> {
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

/// Rational bracket of `√x`, exact when `x` is a rational square.
fn sqrt_enclosure(x: &BigRational) -> Enclosure {
    if let Some(s) = exact_sqrt(x) {
        return Enclosure::exact(s);
    }
    let approx = rational_to_f64(x).sqrt();
    let mut rel = 4.0 * f64::EPSILON;
    loop {
        let lo = BigRational::from_float(approx * (1.0 - rel)).unwrap_or_else(BigRational::zero);
        let hi = BigRational::from_float(approx * (1.0 + rel)).expect("finite square root");
        let lo = if lo.is_negative() {
            BigRational::zero()
        } else {
            lo
        };
        if &(&lo * &lo) <= x && x <= &(&hi * &hi) {
            return Enclosure { lo, hi };
        }
        rel *= 2.0;
    }
}

fn check_unit(t: &BigRational) -> Result<()> {
    if t.is_negative() || t > &BigRational::one() {
        return Err(Error::Domain(format!("t = {t} outside [0, 1]")));
    }
    Ok(())
}

/// Enclosure of `1 - √(1 - t)` for `t ∈ [0, 1]`.
pub fn phi_minus(t: &BigRational) -> Result<Enclosure> {
    check_unit(t)?;
    let one = BigRational::one();
    Ok(sqrt_enclosure(&(&one - t)).neg().add_rational(&one))
}

/// Enclosure of `1 + √(1 - t)` for `t ∈ [0, 1]`.
pub fn phi_plus(t: &BigRational) -> Result<Enclosure> {
    check_unit(t)?;
    let one = BigRational::one();
    Ok(sqrt_enclosure(&(&one - t)).add_rational(&one))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Decreasing,
    Increasing,
}

/// The four quotients `φ_±(at) / φ_±(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma3Ratio {
    MinusOverMinus,
    PlusOverMinus,
    MinusOverPlus,
    PlusOverPlus,
}

impl Lemma3Ratio {
    pub const ALL: [Lemma3Ratio; 4] = [
        Lemma3Ratio::MinusOverMinus,
        Lemma3Ratio::PlusOverMinus,
        Lemma3Ratio::MinusOverPlus,
        Lemma3Ratio::PlusOverPlus,
    ];

    pub fn expected(self) -> Monotonicity {
        match self {
            Lemma3Ratio::MinusOverMinus | Lemma3Ratio::PlusOverMinus => Monotonicity::Decreasing,
            Lemma3Ratio::MinusOverPlus | Lemma3Ratio::PlusOverPlus => Monotonicity::Increasing,
        }
    }
}

/// Enclosure of the chosen quotient at `t ∈ (0, 1]`, `a ∈ (0, 1)`.
pub fn lemma3_ratio(which: Lemma3Ratio, a: &BigRational, t: &BigRational) -> Result<Enclosure> {
    if !t.is_positive() {
        return Err(Error::Domain("t must be positive".into()));
    }
    if !a.is_positive() || a >= &BigRational::one() {
        return Err(Error::Domain(format!("a = {a} outside (0, 1)")));
    }
    let at = a * t;
    let (num, den) = match which {
        Lemma3Ratio::MinusOverMinus => (phi_minus(&at)?, phi_minus(t)?),
        Lemma3Ratio::PlusOverMinus => (phi_plus(&at)?, phi_minus(t)?),
        Lemma3Ratio::MinusOverPlus => (phi_minus(&at)?, phi_plus(t)?),
        Lemma3Ratio::PlusOverPlus => (phi_plus(&at)?, phi_plus(t)?),
    };
    num.div_positive(&den)
}
