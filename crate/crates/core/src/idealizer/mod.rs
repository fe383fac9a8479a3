//! Membership tests for the coefficient families `W_n`, `W̄_n`, `Y_n`, `Y*_n`
//! and the ratio conditions characterising quasi-stable quintics.

mod lemmas;
mod special;
mod surd;

pub use lemmas::{
    lemma1_condition, lemma1_statement, lemma2_condition, lemma2_statement, lemma3_ratio,
    phi_minus, phi_plus, ratios_f, ratios_g, s1, t1, t4, Enclosure, Lemma3Ratio, LemmaClause,
    Monotonicity, RatioTripleF, RatioTripleG,
};
pub use special::{
    in_y_star, is_finite_multiplier_on_hyp, special_case_check, special_case_from_g,
    special_case_hypothesis,
};
pub use surd::{Endpoint, Surd};

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{basic_quasistable, hadamard, rational_string, shift_divide, Polynomial};
use crate::stability::{quasi_stability_agt, StabilityVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    W,
    Wbar,
    Y,
    Y4simplified,
    Y5simplified,
    Ystar,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::W,
        Family::Wbar,
        Family::Y,
        Family::Y4simplified,
        Family::Y5simplified,
        Family::Ystar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::W => "W",
            Family::Wbar => "Wbar",
            Family::Y => "Y",
            Family::Y4simplified => "Y4simplified",
            Family::Y5simplified => "Y5simplified",
            Family::Ystar => "Ystar",
        }
    }

    /// Runs the matching membership test.
    pub fn test(self, n: usize, g: &Polynomial) -> Result<MembershipReport> {
        match self {
            Family::W => in_w(n, g),
            Family::Wbar => in_w_closure(n, g),
            Family::Y => in_y(n, g),
            Family::Y4simplified => {
                expect_degree(g, n)?;
                in_y4_simplified(g)
            }
            Family::Y5simplified => {
                expect_degree(g, n)?;
                in_y5_simplified(g)
            }
            Family::Ystar => in_y_star(n, g),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "w" => Ok(Family::W),
            "wbar" | "w_closure" => Ok(Family::Wbar),
            "y" => Ok(Family::Y),
            "y4" | "y4simplified" => Ok(Family::Y4simplified),
            "y5" | "y5simplified" => Ok(Family::Y5simplified),
            "ystar" | "y*" => Ok(Family::Ystar),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// The first `(k, m)` for which `g * Q^k_m / x^m` is not quasi-stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub k: usize,
    pub m: usize,
    pub product: Polynomial,
    pub verdict: StabilityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub description: String,
    #[serde(with = "rational_string")]
    pub lhs: BigRational,
    #[serde(with = "rational_string")]
    pub rhs: BigRational,
    pub holds: bool,
}

impl InequalityCheck {
    fn at_least(description: String, lhs: BigRational, rhs: BigRational) -> Self {
        let holds = lhs >= rhs;
        Self {
            description,
            lhs,
            rhs,
            holds,
        }
    }

    fn greater(description: String, lhs: BigRational, rhs: BigRational) -> Self {
        let holds = lhs > rhs;
        Self {
            description,
            lhs,
            rhs,
            holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub member: bool,
    pub family: Family,
    pub n: usize,
    pub witness: Option<Witness>,
    pub inequality_trace: Vec<InequalityCheck>,
    /// For `Y*_n`: which part of the union accepted `g`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
}

impl MembershipReport {
    fn from_trace(family: Family, n: usize, inequality_trace: Vec<InequalityCheck>) -> Self {
        let member = inequality_trace.iter().all(|c| c.holds);
        Self {
            member,
            family,
            n,
            witness: None,
            inequality_trace,
            branch: None,
        }
    }

    pub fn first_failure(&self) -> Option<&InequalityCheck> {
        self.inequality_trace.iter().find(|c| !c.holds)
    }
}

pub(crate) fn expect_degree(g: &Polynomial, n: usize) -> Result<()> {
    if g.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            actual: g.degree(),
        });
    }
    Ok(())
}

fn expect_positive(g: &Polynomial) -> Result<()> {
    if !g.is_positive() {
        return Err(Error::NotPositiveCoefficients);
    }
    Ok(())
}

fn log_concavity_trace(n: usize, g: &Polynomial, strict: bool) -> Result<Vec<InequalityCheck>> {
    if n < 3 {
        return Err(Error::InvalidDegree(format!("W_n needs n >= 3, got {n}")));
    }
    expect_degree(g, n)?;
    expect_positive(g)?;
    let b = g.coeffs();
    Ok((2..n)
        .map(|i| {
            let rel = if strict { ">" } else { ">=" };
            let description = format!("b{i}*b{} {rel} b{}*b{}", i - 1, i - 2, i + 1);
            let lhs = &b[i] * &b[i - 1];
            let rhs = &b[i - 2] * &b[i + 1];
            if strict {
                InequalityCheck::greater(description, lhs, rhs)
            } else {
                InequalityCheck::at_least(description, lhs, rhs)
            }
        })
        .collect())
}

/// `b_i b_{i-1} > b_{i-2} b_{i+1}` for `i = 2, ..., n-1`.
pub fn in_w(n: usize, g: &Polynomial) -> Result<MembershipReport> {
    Ok(MembershipReport::from_trace(
        Family::W,
        n,
        log_concavity_trace(n, g, true)?,
    ))
}

/// `b_i b_{i-1} >= b_{i-2} b_{i+1}` for `i = 2, ..., n-1`.
pub fn in_w_closure(n: usize, g: &Polynomial) -> Result<MembershipReport> {
    Ok(MembershipReport::from_trace(
        Family::Wbar,
        n,
        log_concavity_trace(n, g, false)?,
    ))
}

/// Quasi-stability test of `g * Q^k_m / x^m`.
pub fn shifted_product_verdict(
    g: &Polynomial,
    k: usize,
    m: usize,
) -> Result<(Polynomial, StabilityVerdict)> {
    let q = basic_quasistable(k, m)?;
    let product = shift_divide(&hadamard(g, &q)?, m)?;
    let verdict = quasi_stability_agt(&product)?;
    Ok((product, verdict))
}

fn first_failing_pair(
    g: &Polynomial,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Result<Option<Witness>> {
    for (k, m) in pairs {
        let (product, verdict) = shifted_product_verdict(g, k, m)?;
        if !verdict.is_quasi_stable() {
            return Ok(Some(Witness {
                k,
                m,
                product,
                verdict,
            }));
        }
    }
    Ok(None)
}

/// All `(k, m)` with `k >= 2` and `k + m <= n`, by increasing `k` then `m`.
pub fn y_test_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (2..=n).flat_map(move |k| (0..=n - k).map(move |m| (k, m)))
}

/// Membership in `Y_n`: every `g * Q^k_m / x^m` with `k >= 2`, `k + m <= n`
/// is quasi-stable. The witness is the first failure in [`y_test_pairs`] order.
pub fn in_y(n: usize, g: &Polynomial) -> Result<MembershipReport> {
    expect_degree(g, n)?;
    expect_positive(g)?;
    let witness = first_failing_pair(g, y_test_pairs(n))?;
    Ok(MembershipReport {
        member: witness.is_none(),
        family: Family::Y,
        n,
        witness,
        inequality_trace: Vec::new(),
        branch: None,
    })
}

/// `b_1 b_2 >= b_0 b_3` and `b_2 b_3 >= b_1 b_4`.
pub fn in_y4_simplified(g: &Polynomial) -> Result<MembershipReport> {
    expect_degree(g, 4)?;
    expect_positive(g)?;
    let b = g.coeffs();
    let trace = vec![
        InequalityCheck::at_least("b1*b2 >= b0*b3".into(), &b[1] * &b[2], &b[0] * &b[3]),
        InequalityCheck::at_least("b2*b3 >= b1*b4".into(), &b[2] * &b[3], &b[1] * &b[4]),
    ];
    Ok(MembershipReport::from_trace(Family::Y4simplified, 4, trace))
}

/// `(g * Q^3_1) / x` and `g * Q^5` both quasi-stable.
pub fn in_y5_simplified(g: &Polynomial) -> Result<MembershipReport> {
    expect_degree(g, 5)?;
    expect_positive(g)?;
    let witness = first_failing_pair(g, [(3, 1), (5, 0)])?;
    let b = g.coeffs();
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    let d2 = &two * (&b[3] * &b[4] - &b[2] * &b[5]);
    let d4 = &four * (&b[3] * &b[4] - &b[2] * &b[5]) * (&b[1] * &b[2] - &b[0] * &b[3])
        - num_traits::pow(&b[1] * &b[4] - &b[0] * &b[5], 2);
    let zero = BigRational::from_integer(0.into());
    let trace = vec![
        InequalityCheck::at_least("b2*b3 >= b1*b4".into(), &b[2] * &b[3], &b[1] * &b[4]),
        InequalityCheck::at_least("Delta2(g*Q^5) >= 0".into(), d2, zero.clone()),
        InequalityCheck::at_least("Delta4(g*Q^5) >= 0".into(), d4, zero),
    ];
    Ok(MembershipReport {
        member: witness.is_none(),
        family: Family::Y5simplified,
        n: 5,
        witness,
        inequality_trace: trace,
        branch: None,
    })
}

pub(crate) fn is_nonneg(q: &BigRational) -> bool {
    !q.is_negative()
}
