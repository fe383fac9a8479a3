//! Random polynomials with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::idealizer::in_w_closure;
use crate::poly::{binomial_poly, hadamard, Polynomial};
use crate::stability::InputClass;

/// Roots and scale factors are multiples of `1 / ROOT_DENOM`.
pub const ROOT_DENOM: i64 = 1000;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn linear(c: BigRational) -> Polynomial {
    Polynomial::new(vec![c, BigRational::one()]).expect("nonzero")
}

/// `x^2 + 2a x + (a^2 + b^2)`, the pair `-a ± ib`.
fn pair(a: &BigRational, b: &BigRational) -> Polynomial {
    let two = q(2, 1);
    Polynomial::new(vec![a * a + b * b, two * a, BigRational::one()]).expect("nonzero")
}

/// `x^2 + w^2`.
fn imaginary_pair(w: &BigRational) -> Polynomial {
    Polynomial::new(vec![
        w * w,
        BigRational::from_integer(0.into()),
        BigRational::one(),
    ])
    .expect("nonzero")
}

/// Uniform multiple of `1/ROOT_DENOM` in `[lo, hi]` (both given in those units).
fn grid<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> BigRational {
    q(rng.gen_range(lo..=hi), ROOT_DENOM)
}

fn scale_units(root_scale: &BigRational) -> i64 {
    let units = (root_scale * q(ROOT_DENOM, 1)).floor().to_integer();
    i64::try_from(units).unwrap_or(i64::MAX).max(2)
}

fn product(factors: impl IntoIterator<Item = Polynomial>) -> Polynomial {
    factors
        .into_iter()
        .fold(Polynomial::one(), |acc, f| &acc * &f)
}

/// Random positive leading factor in `[1/10, 10]`.
fn leading_factor<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    q(rng.gen_range(1..=100), 10)
}

/// Degree-`n` polynomial with every zero strictly in the left half-plane:
/// real zeros in `[-root_scale, -1/1000]`, conjugate pairs with real part in
/// the same range and imaginary part in `[0, root_scale]`.
pub fn sample_stable<R: Rng + ?Sized>(
    n: usize,
    root_scale: &BigRational,
    rng: &mut R,
) -> Polynomial {
    assert!(n >= 1, "sample_stable needs n >= 1");
    let units = scale_units(root_scale);
    let pairs = rng.gen_range(0..=n / 2);
    let reals = n - 2 * pairs;
    let mut factors: Vec<Polynomial> = (0..reals).map(|_| linear(grid(rng, 1, units))).collect();
    factors.extend((0..pairs).map(|_| pair(&grid(rng, 1, units), &grid(rng, 0, units))));
    product(factors).scale(&leading_factor(rng))
}

/// Product of `count` factors `x^2 + w^2` with `w` in `(0, root_scale]`.
fn imaginary_part<R: Rng + ?Sized>(
    count: usize,
    root_scale: &BigRational,
    rng: &mut R,
) -> Polynomial {
    let units = scale_units(root_scale);
    product((0..count).map(|_| imaginary_pair(&grid(rng, 1, units))))
}

/// Construction used by [`sample_quasi_stable_branch`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuasiBranch {
    Stable,
    /// Every zero imaginary (even degree only).
    PureImaginary,
    /// One negative zero, the rest imaginary (odd degree only).
    OneNegative,
    /// A stable factor times imaginary pairs (degree at least 3; generic from 4 on).
    Generic,
    /// A square of a stable or imaginary factor times the rest (degree at least 2).
    Repeated,
}

impl QuasiBranch {
    pub const ALL: [QuasiBranch; 5] = [
        QuasiBranch::Stable,
        QuasiBranch::PureImaginary,
        QuasiBranch::OneNegative,
        QuasiBranch::Generic,
        QuasiBranch::Repeated,
    ];

    pub fn feasible(self, n: usize) -> bool {
        match self {
            QuasiBranch::Stable => n >= 1,
            QuasiBranch::PureImaginary => n >= 2 && n % 2 == 0,
            QuasiBranch::OneNegative => n >= 3 && n % 2 == 1,
            QuasiBranch::Generic => n >= 3,
            QuasiBranch::Repeated => n >= 2,
        }
    }
}

/// Quasi-stable polynomial of degree `n` built by the given branch.
///
/// Panics when the branch is infeasible for `n` (see [`QuasiBranch::feasible`]).
pub fn sample_quasi_stable_branch<R: Rng + ?Sized>(
    n: usize,
    branch: QuasiBranch,
    root_scale: &BigRational,
    rng: &mut R,
) -> Polynomial {
    assert!(branch.feasible(n), "{branch:?} infeasible for degree {n}");
    let units = scale_units(root_scale);
    let poly = match branch {
        QuasiBranch::Stable => return sample_stable(n, root_scale, rng),
        QuasiBranch::PureImaginary => imaginary_part(n / 2, root_scale, rng),
        QuasiBranch::OneNegative => {
            &linear(grid(rng, 1, units)) * &imaginary_part(n / 2, root_scale, rng)
        }
        QuasiBranch::Generic => {
            // A linear stable factor would make the parts proportional.
            let max_pairs = if n >= 4 { (n - 2) / 2 } else { 1 };
            let pairs = rng.gen_range(1..=max_pairs);
            let stable = sample_stable(n - 2 * pairs, root_scale, rng);
            &stable * &imaginary_part(pairs, root_scale, rng)
        }
        QuasiBranch::Repeated => {
            let half = rng.gen_range(1..=n / 2);
            let base = if half % 2 == 0 && rng.gen_bool(0.5) {
                imaginary_part(half / 2, root_scale, rng)
            } else {
                sample_stable(half, root_scale, rng)
            };
            let square = &base * &base;
            let rest_degree = n - 2 * half;
            if rest_degree == 0 {
                square
            } else if rest_degree >= 2 && rng.gen_bool(0.5) {
                let pairs = rest_degree / 2;
                let mut rest = imaginary_part(pairs, root_scale, rng);
                if rest_degree % 2 == 1 {
                    rest = &rest * &linear(grid(rng, 1, units));
                }
                &square * &rest
            } else {
                &square * &sample_stable(rest_degree, root_scale, rng)
            }
        }
    };
    poly.scale(&leading_factor(rng))
}

/// Quasi-stable polynomial of degree `n` from a uniformly chosen feasible branch.
pub fn sample_quasi_stable<R: Rng + ?Sized>(
    n: usize,
    root_scale: &BigRational,
    rng: &mut R,
) -> (Polynomial, QuasiBranch) {
    let options: Vec<QuasiBranch> = QuasiBranch::ALL
        .into_iter()
        .filter(|b| b.feasible(n))
        .collect();
    let branch = *options
        .choose(rng)
        .expect("stable branch is always feasible");
    (
        sample_quasi_stable_branch(n, branch, root_scale, rng),
        branch,
    )
}

/// Degrees in `lo..=hi` admitting the given Garloff–Wagner row class.
pub fn degrees_for_class(class: InputClass, lo: usize, hi: usize) -> Vec<usize> {
    (lo..=hi)
        .filter(|&n| match class {
            InputClass::OddPartZero => n >= 2 && n % 2 == 0,
            InputClass::Proportional => n >= 3 && n % 2 == 1,
            InputClass::Generic => n >= 4,
            InputClass::Stable => n >= 1,
        })
        .collect()
}

/// Quasi-stable polynomial of degree `n` aimed at a table row class.
pub fn sample_for_class<R: Rng + ?Sized>(
    class: InputClass,
    n: usize,
    root_scale: &BigRational,
    rng: &mut R,
) -> Polynomial {
    match class {
        InputClass::OddPartZero => {
            if n >= 4 && rng.gen_bool(0.3) {
                let half = imaginary_part(n / 4, root_scale, rng);
                let rest = imaginary_part(n / 2 - 2 * (n / 4), root_scale, rng);
                &(&half * &half) * &rest
            } else {
                sample_quasi_stable_branch(n, QuasiBranch::PureImaginary, root_scale, rng)
            }
        }
        InputClass::Proportional => {
            sample_quasi_stable_branch(n, QuasiBranch::OneNegative, root_scale, rng)
        }
        InputClass::Generic => sample_quasi_stable_branch(n, QuasiBranch::Generic, root_scale, rng),
        InputClass::Stable => sample_stable(n, root_scale, rng),
    }
}

/// A positive number with four significant digits, log-uniform over
/// `[10^lo, 10^hi)`.
pub fn log_uniform_coeff<R: Rng + ?Sized>(lo: f64, hi: f64, rng: &mut R) -> BigRational {
    let u: f64 = rng.gen_range(lo..hi);
    let exponent = u.floor() as i32 - 3;
    let mantissa = (10f64.powf(u - exponent as f64))
        .round()
        .clamp(1000.0, 9999.0) as i64;
    let ten = BigInt::from(10);
    if exponent >= 0 {
        BigRational::from_integer(BigInt::from(mantissa) * num_traits::pow(ten, exponent as usize))
    } else {
        BigRational::new(
            BigInt::from(mantissa),
            num_traits::pow(ten, (-exponent) as usize),
        )
    }
}

/// Degree-`n` polynomial with independent log-uniform positive coefficients.
pub fn sample_positive<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Polynomial {
    Polynomial::new((0..=n).map(|_| log_uniform_coeff(-1.0, 1.0, rng)).collect())
        .expect("positive coefficients")
}

/// A member of `W̄_n`: writing `r_i = b_i / b_{i-1}`, the condition
/// `b_i b_{i-1} >= b_{i-2} b_{i+1}` reads `r_{i-1} >= r_{i+1}`, so the
/// ratios at odd and at even positions are drawn as two non-increasing runs.
/// With probability `tie` a ratio repeats its predecessor, giving equality.
pub fn sample_w_closure<R: Rng + ?Sized>(n: usize, tie: f64, rng: &mut R) -> Polynomial {
    let mut ratios: Vec<BigRational> = (1..=n).map(|_| log_uniform_coeff(-1.0, 1.0, rng)).collect();
    for parity in 0..2 {
        let mut run: Vec<BigRational> = ratios.iter().skip(parity).step_by(2).cloned().collect();
        run.sort_by(|a, b| b.cmp(a));
        for i in 1..run.len() {
            if rng.gen_bool(tie) {
                run[i] = run[i - 1].clone();
            }
        }
        for (slot, value) in ratios.iter_mut().skip(parity).step_by(2).zip(run) {
            *slot = value;
        }
    }
    let mut coeffs = vec![log_uniform_coeff(-1.0, 1.0, rng)];
    for r in &ratios {
        let next = coeffs.last().expect("nonempty") * r;
        coeffs.push(next);
    }
    let g = Polynomial::new(coeffs).expect("positive coefficients");
    debug_assert!(in_w_closure(n.max(3), &g).map(|r| r.member).unwrap_or(true));
    g
}

/// A polynomial with only negative real zeros, `h = ∏ (y + r_i)`.
pub fn sample_negative_rooted<R: Rng + ?Sized>(
    n: usize,
    root_scale: &BigRational,
    rng: &mut R,
) -> Polynomial {
    let units = scale_units(root_scale);
    let mut roots: Vec<BigRational> = (0..n).map(|_| grid(rng, 1, units)).collect();
    if n >= 2 && rng.gen_bool(0.2) {
        roots[1] = roots[0].clone();
    }
    product(roots.into_iter().map(linear)).scale(&leading_factor(rng))
}

/// `g` with `g * (y+1)^k` equal to a random negative-rooted `h`, i.e.
/// `g_j = h_j / C(k, j)`.
pub fn sample_binomial_preimage<R: Rng + ?Sized>(
    k: usize,
    root_scale: &BigRational,
    rng: &mut R,
) -> Polynomial {
    let h = sample_negative_rooted(k, root_scale, rng);
    let inv = Polynomial::new(
        binomial_poly(k)
            .coeffs()
            .iter()
            .map(|c| c.recip())
            .collect(),
    )
    .expect("nonzero");
    hadamard(&h, &inv).expect("positive coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::sample_rng;
    use crate::stability::{
        hermite_biehler_classify, input_class, is_stable_routh_hurwitz, quasi_stability_agt,
        HermiteBiehlerClass,
    };

    fn scale() -> BigRational {
        q(5, 1)
    }

    #[test]
    fn stable_samples_pass_routh_hurwitz() {
        for i in 0..300 {
            let mut rng = sample_rng(11, i);
            let n = 1 + (i as usize % 8);
            let f = sample_stable(n, &scale(), &mut rng);
            assert_eq!(f.degree(), n);
            assert!(is_stable_routh_hurwitz(&f).unwrap().stable, "{f}");
        }
    }

    #[test]
    fn quasi_stable_branches() {
        for i in 0..300 {
            let mut rng = sample_rng(12, i);
            let n = 1 + (i as usize % 8);
            let (f, branch) = sample_quasi_stable(n, &scale(), &mut rng);
            assert_eq!(f.degree(), n);
            assert!(quasi_stability_agt(&f).unwrap().is_quasi_stable(), "{f}");
            if branch == QuasiBranch::PureImaginary {
                assert_eq!(
                    hermite_biehler_classify(&f),
                    HermiteBiehlerClass::PureImaginary
                );
            }
        }
    }

    #[test]
    fn class_samples_land_in_class() {
        for (i, class) in InputClass::ALL.into_iter().enumerate() {
            for n in degrees_for_class(class, 1, 8) {
                let mut rng = sample_rng(13, (i * 100 + n) as u64);
                let f = sample_for_class(class, n, &scale(), &mut rng);
                assert_eq!(input_class(&f).unwrap(), class, "{f}");
            }
        }
    }

    #[test]
    fn w_closure_samples() {
        for i in 0..200 {
            let mut rng = sample_rng(14, i);
            let n = 3 + (i as usize % 6);
            let g = sample_w_closure(n, 0.2, &mut rng);
            assert!(in_w_closure(n, &g).unwrap().member);
        }
    }

    #[test]
    fn binomial_preimage() {
        let mut rng = sample_rng(15, 0);
        let g = sample_binomial_preimage(3, &scale(), &mut rng);
        let h = hadamard(&g, &binomial_poly(3)).unwrap();
        assert!(crate::stability::has_only_negative_zeros(&h));
    }

    #[test]
    fn four_significant_digits() {
        let mut rng = sample_rng(16, 0);
        for _ in 0..100 {
            let c = log_uniform_coeff(-2.0, 2.0, &mut rng);
            let s = crate::poly::format_rational(&c);
            let digits: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
            assert!(
                digits.trim_start_matches('0').trim_end_matches('0').len() <= 4,
                "{s}"
            );
        }
    }
}
