//! The two-parameter perturbation family approaching `Q^k_m` from inside
//! the stable polynomials.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::stability::is_stable_routh_hurwitz;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QFamily {
    pub poly: Polynomial,
    /// Checked with Routh–Hurwitz; the construction does not guarantee it.
    pub stable: bool,
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

fn quad(x2: BigRational, x0: BigRational) -> Polynomial {
    Polynomial::new(vec![x0, BigRational::zero(), x2]).unwrap_or_else(|_| Polynomial::zero())
}

/// `∏_{i=0}^{n1} (i s x^2 + 1)^i ∏_{i=0}^{n2} (x^2 + 1 + i t)^i ∏_{i=0}^{n3} (x^2 + i t)^i`.
fn block(n1: usize, n2: usize, n3: usize, s: &BigRational, t: &BigRational) -> Polynomial {
    let one = BigRational::one();
    let mut acc = Polynomial::one();
    for i in 1..=n1 {
        acc = &acc * &quad(int(i) * s, one.clone()).pow(i);
    }
    for i in 1..=n2 {
        acc = &acc * &quad(one.clone(), &one + int(i) * t).pow(i);
    }
    for i in 1..=n3 {
        acc = &acc * &quad(one.clone(), int(i) * t).pow(i);
    }
    acc
}

/// `α E_{μ,ε}(x) + β x O_{ε,μ}(x)` where `E` and `O` are the products of
/// [`block`] with the roles of `ε` and `μ` exchanged between them.
pub fn q_family(
    n1: usize,
    n2: usize,
    n3: usize,
    eps: &BigRational,
    mu: &BigRational,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<QFamily> {
    if !eps.is_positive() || mu <= eps {
        return Err(Error::ParamDomain("need mu > eps > 0".into()));
    }
    if alpha.is_negative() || beta.is_negative() || (alpha.is_zero() && beta.is_zero()) {
        return Err(Error::ParamDomain("alpha, beta >= 0, not both zero".into()));
    }
    let even = block(n1, n2, n3, mu, eps).scale(alpha);
    let odd = block(n1, n2, n3, eps, mu).scale(beta).shift_up(1);
    let poly = &even + &odd;
    if poly.is_constant() {
        return Err(Error::ParamDomain("all exponents zero".into()));
    }
    let stable = is_stable_routh_hurwitz(&poly)?.stable;
    Ok(QFamily { poly, stable })
}

/// The coefficient-wise limit `ε, μ → 0`: `x^{2S_3} (x^2+1)^{S_2} (α + β x)`
/// with `S_j = n_j (n_j + 1) / 2`; the `n_1` factors all tend to 1.
pub fn q_family_limit(
    _n1: usize,
    n2: usize,
    n3: usize,
    alpha: &BigRational,
    beta: &BigRational,
) -> Polynomial {
    let s2 = n2 * (n2 + 1) / 2;
    let s3 = n3 * (n3 + 1) / 2;
    let base = quad(BigRational::one(), BigRational::one())
        .pow(s2)
        .shift_up(2 * s3);
    let lin =
        Polynomial::new(vec![alpha.clone(), beta.clone()]).unwrap_or_else(|_| Polynomial::zero());
    &base * &lin
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{basic_quasistable, ratio, rational_to_f64};

    fn distance(a: &Polynomial, b: &Polynomial) -> f64 {
        let n = a.coeffs().len().max(b.coeffs().len());
        (0..n)
            .map(|i| rational_to_f64(&(a.coeff(i) - b.coeff(i))).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn cubic_member_is_stable() {
        let mu = ratio(1, 1000);
        let eps = ratio(1, 2000);
        let one = ratio(1, 1);
        let q = q_family(0, 1, 0, &eps, &mu, &one, &one).unwrap();
        assert_eq!(q.poly.degree(), 3);
        assert!(q.stable);
    }

    #[test]
    fn wider_members() {
        let mu = ratio(1, 1000);
        let eps = ratio(1, 2000);
        let one = ratio(1, 1);
        let q = q_family(1, 1, 1, &eps, &mu, &one, &one).unwrap();
        assert_eq!(q.poly.degree(), 7);
        // Stability is reported, not assumed.
        assert_eq!(q.stable, is_stable_routh_hurwitz(&q.poly).unwrap().stable);
    }

    #[test]
    fn limits() {
        let one = ratio(1, 1);
        let zero = ratio(0, 1);
        assert_eq!(
            q_family_limit(0, 2, 0, &one, &one),
            basic_quasistable(7, 0).unwrap()
        );
        assert_eq!(
            q_family_limit(0, 1, 1, &one, &zero),
            basic_quasistable(2, 2).unwrap()
        );
        let limit = q_family_limit(0, 1, 1, &one, &one);
        let far = q_family(
            0,
            1,
            1,
            &ratio(1, 2_000_000),
            &ratio(1, 1_000_000),
            &one,
            &one,
        )
        .unwrap();
        let near = q_family(
            0,
            1,
            1,
            &ratio(1, 2_000_000_000),
            &ratio(1, 1_000_000_000),
            &one,
            &one,
        )
        .unwrap();
        assert!(distance(&near.poly, &limit) < distance(&far.poly, &limit));
        assert!(distance(&near.poly, &limit) < 1e-8);
    }

    #[test]
    fn parameter_domain() {
        let one = ratio(1, 1);
        let e = ratio(1, 10);
        assert!(q_family(0, 1, 0, &e, &e, &one, &one).is_err());
        assert!(q_family(0, 1, 0, &e, &one, &ratio(0, 1), &ratio(0, 1)).is_err());
    }
}
