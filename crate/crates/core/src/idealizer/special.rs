//! Quasi-stable variants: `Y*_n`, finite multiplier sequences on negative-
//! rooted polynomials, and the `G = (x+1) g(x^2)` special case.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{expect_degree, in_y, Family, InequalityCheck, MembershipReport};
use crate::error::{Error, Result};
use crate::poly::{basic_quasistable, binomial_poly, even_odd_split, hadamard, Polynomial};
use crate::stability::{
    has_only_negative_zeros, quasi_stability_agt, square_free_part, SturmChain,
};

fn count(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Distinct strictly negative zeros of `p`, and distinct zeros overall.
fn negative_zero_counts(p: &Polynomial) -> (usize, usize) {
    let s = square_free_part(p);
    if s.is_constant() {
        return (0, 0);
    }
    let chain = SturmChain::new(&s);
    let below = chain
        .variations_at_neg_inf()
        .saturating_sub(chain.variations_at(&BigRational::zero()));
    let below = if s.coeff(0).is_zero() {
        below.saturating_sub(1)
    } else {
        below
    };
    (below, s.degree())
}

fn multiplier_trace(h: &Polynomial, l: usize) -> Vec<InequalityCheck> {
    (2..=l)
        .map(|nu| {
            let p = hadamard(h, &binomial_poly(nu)).expect("positive coefficients");
            let (neg, all) = negative_zero_counts(&p);
            InequalityCheck {
                description: format!(
                    "distinct negative zeros of g_e*(y+1)^{nu} = its distinct zeros"
                ),
                lhs: count(neg),
                rhs: count(all),
                holds: has_only_negative_zeros(&p),
            }
        })
        .collect()
}

/// True iff `h * (y+1)^ν` has only real negative zeros for `ν = 2, ..., l`.
pub fn is_finite_multiplier_on_hyp(h: &Polynomial, l: usize) -> Result<bool> {
    expect_degree(h, l)?;
    if !h.is_positive() {
        return Err(Error::NotPositiveCoefficients);
    }
    Ok(multiplier_trace(h, l).iter().all(|c| c.holds))
}

/// Membership in `Y*_n`: `Y_n` itself, or, for even `n = 2l`, an even
/// `g = g_e(x^2)` whose coefficients act as a finite multiplier sequence.
pub fn in_y_star(n: usize, g: &Polynomial) -> Result<MembershipReport> {
    expect_degree(g, n)?;
    if !g.has_quasi_stable_shape() {
        return Err(Error::ShapeViolation(
            "Y* needs b_0, b_n > 0 and nonnegative interior coefficients".into(),
        ));
    }
    let mut report = if g.is_positive() {
        let mut r = in_y(n, g)?;
        r.family = Family::Ystar;
        r.branch = Some("Y".into());
        r
    } else {
        MembershipReport {
            member: false,
            family: Family::Ystar,
            n,
            witness: None,
            inequality_trace: vec![InequalityCheck {
                description: "all coefficients positive".into(),
                lhs: count(g.coeffs().iter().filter(|c| c.is_positive()).count()),
                rhs: count(g.coeffs().len()),
                holds: false,
            }],
            branch: None,
        }
    };
    if report.member || n % 2 == 1 {
        return Ok(report);
    }
    let parts = even_odd_split(g);
    if !parts.odd.is_zero() {
        return Ok(report);
    }
    let l = n / 2;
    let ge = parts.even;
    if !ge.is_positive() {
        report.inequality_trace.push(InequalityCheck {
            description: "g_e has positive coefficients".into(),
            lhs: count(ge.coeffs().iter().filter(|c| c.is_positive()).count()),
            rhs: count(ge.coeffs().len()),
            holds: false,
        });
        return Ok(report);
    }
    let trace = multiplier_trace(&ge, l);
    let member = trace.iter().all(|c| c.holds);
    Ok(MembershipReport {
        member,
        family: Family::Ystar,
        n,
        witness: None,
        inequality_trace: trace,
        branch: Some("even_multiplier".into()),
    })
}

/// `G(x) = (x + 1) g(x^2)`.
pub fn special_case_from_g(g: &Polynomial) -> Polynomial {
    &g.compose_square() * &Polynomial::from_i64s(&[1, 1]).expect("nonzero")
}

fn special_case_degree(big_g: &Polynomial) -> Result<usize> {
    let n = big_g.degree();
    if n % 2 == 0 {
        return Err(Error::InvalidDegree(format!(
            "G must have odd degree, got {n}"
        )));
    }
    let parts = even_odd_split(big_g);
    if parts.even != parts.odd {
        return Err(Error::StructureViolation("G_e differs from G_o".into()));
    }
    if !big_g.is_positive() {
        return Err(Error::NotPositiveCoefficients);
    }
    Ok(n)
}

/// `G * Q^{2k+1}` is quasi-stable.
pub fn special_case_hypothesis(big_g: &Polynomial) -> Result<bool> {
    let n = special_case_degree(big_g)?;
    let product = hadamard(big_g, &basic_quasistable(n, 0)?)?;
    Ok(quasi_stability_agt(&product)?.is_quasi_stable())
}

/// `F * G` is quasi-stable, for a quasi-stable `F` of the same degree as `G`.
pub fn special_case_check(big_g: &Polynomial, f: &Polynomial) -> Result<bool> {
    let n = special_case_degree(big_g)?;
    expect_degree(f, n)?;
    if !quasi_stability_agt(f)?.is_quasi_stable() {
        return Err(Error::NotQuasiStableInput("F".into()));
    }
    Ok(quasi_stability_agt(&hadamard(f, big_g)?)?.is_quasi_stable())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c).unwrap()
    }

    #[test]
    fn multiplier_examples() {
        assert!(is_finite_multiplier_on_hyp(&p(&[1, 2, 1]), 2).unwrap());
        assert!(is_finite_multiplier_on_hyp(&p(&[1, 1, 1]), 2).unwrap());
        let h = Polynomial::from_strs(&["1", "0.1", "1"]).unwrap();
        assert!(!is_finite_multiplier_on_hyp(&h, 2).unwrap());
        assert!(is_finite_multiplier_on_hyp(&p(&[1, 2, 1]), 3).is_err());
    }

    #[test]
    fn y_star_examples() {
        let r = in_y_star(4, &p(&[1, 0, 2, 0, 1])).unwrap();
        assert!(r.member);
        assert_eq!(r.branch.as_deref(), Some("even_multiplier"));
        assert!(in_y_star(4, &p(&[1, 0, 1, 0, 1])).unwrap().member);
        let r = in_y_star(
            4,
            &Polynomial::from_strs(&["1", "0", "0.1", "0", "1"]).unwrap(),
        )
        .unwrap();
        assert!(!r.member);
        assert!(r.first_failure().is_some());
        let g = p(&[3, 4, 5, 4, 3, 2]);
        assert_eq!(
            in_y_star(5, &g).unwrap().member,
            in_y(5, &g).unwrap().member
        );
        assert!(!in_y_star(5, &p(&[1, 0, 2, 0, 1, 1])).unwrap().member);
        assert!(in_y_star(4, &p(&[1, -1, 2, 0, 1])).is_err());
    }

    #[test]
    fn special_case_examples() {
        let q5 = basic_quasistable(5, 0).unwrap();
        assert_eq!(special_case_from_g(&p(&[1, 2, 1])), q5);
        assert!(special_case_hypothesis(&q5).unwrap());
        assert!(special_case_check(&q5, &q5).unwrap());
        let g3 = p(&[1, 1, 1, 1]);
        assert!(special_case_hypothesis(&g3).unwrap());
        assert!(matches!(
            special_case_hypothesis(&p(&[1, 2, 1, 1])),
            Err(Error::StructureViolation(_))
        ));
    }
}
