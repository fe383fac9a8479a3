//! Floating-point root finder used to cross-check the exact verdicts.
//!
//! The polynomial is first split exactly into square-free factors, so that
//! repeated zeros (such as the double pair `±i` of `(x^2+1)^2`) are found as
//! simple zeros of a factor. Each factor is solved by Aberth–Ehrlich
//! iteration in `f64` and polished with Newton steps. The oracle validates
//! verdicts; boundary cases are left to the exact stability tests.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::stability::square_free_factors;

/// Half-plane threshold used by [`verdict_by_roots`] callers by default.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Relative backward-error tolerance for a root to count as converged.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

const MAX_ITER: usize = 500;
/// Relative step size at which the iteration stops; Newton polishing and
/// the inclusion radii take over from there.
const STEP_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Root {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl Root {
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Zeros of a polynomial, repeated by multiplicity.
///
/// `residuals[j]` is the relative backward error `|f(z_j)| / Σ|a_i||z_j|^i`;
/// `error_bounds[j]` is an inclusion radius for the exact zero near `z_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub residuals: Vec<f64>,
    pub error_bounds: Vec<f64>,
    pub tolerance: f64,
    pub reliable: bool,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn complex(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots.iter().map(|r| r.to_complex())
    }

    /// Smallest `|Re z|` over all roots.
    pub fn axis_margin(&self) -> f64 {
        self.roots
            .iter()
            .map(|r| r.re.abs())
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneSummary {
    pub strictly_left: usize,
    pub boundary: usize,
    pub strictly_right: usize,
    pub epsilon: f64,
}

impl HalfPlaneSummary {
    pub fn total(&self) -> usize {
        self.strictly_left + self.boundary + self.strictly_right
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleVerdict {
    Stable,
    QuasiStable,
    NotQuasiStable,
    Inconclusive,
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn abs_horner(coeffs: &[f64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs())
}

/// Simultaneous Aberth–Ehrlich iteration on a polynomial with nonzero
/// constant term. Returns the roots and whether the iteration converged.
fn aberth(coeffs: &[f64]) -> (Vec<Complex64>, bool) {
    let d = coeffs.len() - 1;
    if d == 1 {
        return (vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)], true);
    }
    let radius = (coeffs[0] / coeffs[d]).abs().powf(1.0 / d as f64);
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.7;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        for j in 0..d {
            let (p, dp) = horner(coeffs, z[j]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&i| i != j)
                .map(|i| (z[j] - z[i]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[j] -= step;
                max_step = max_step.max(step.norm() / z[j].norm().max(f64::MIN_POSITIVE));
            }
        }
        let backward_ok = z.iter().all(|&zj| {
            horner(coeffs, zj).0.norm()
                <= 4.0 * d as f64 * f64::EPSILON * abs_horner(coeffs, zj.norm())
        });
        if max_step <= STEP_TOL || backward_ok {
            converged = true;
            break;
        }
    }
    for zj in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = horner(coeffs, *zj);
            if dp.is_zero() {
                break;
            }
            let next = *zj - p / dp;
            if !next.is_finite() || horner(coeffs, next).0.norm() > p.norm() {
                break;
            }
            *zj = next;
        }
    }
    (z, converged)
}

/// Inclusion radii `d |s(z_j)| / |lead ∏_{i≠j} (z_j - z_i)|`, with the
/// evaluation error of `s` added to `|s(z_j)|`.
fn inclusion_radii(coeffs: &[f64], z: &[Complex64]) -> Vec<f64> {
    let d = z.len() as f64;
    let lead = coeffs[coeffs.len() - 1].abs();
    (0..z.len())
        .map(|j| {
            let value = horner(coeffs, z[j]).0.norm();
            let rounding = 4.0 * d * f64::EPSILON * abs_horner(coeffs, z[j].norm());
            let prod: f64 = (0..z.len())
                .filter(|&i| i != j)
                .map(|i| (z[j] - z[i]).norm())
                .product();
            let denom = lead * prod;
            if denom == 0.0 {
                f64::INFINITY
            } else {
                d * (value + rounding) / denom
            }
        })
        .collect()
}

pub fn find_roots(f: &Polynomial, tol: f64) -> Result<RootSet> {
    if f.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    let zero_roots = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut roots: Vec<Complex64> = vec![Complex64::zero(); zero_roots];
    let mut bounds: Vec<f64> = vec![0.0; zero_roots];
    let mut converged = true;
    let reduced = crate::poly::shift_divide(f, zero_roots)?;
    for (i, factor) in square_free_factors(&reduced).iter().enumerate() {
        if factor.degree() == 0 {
            continue;
        }
        let coeffs = factor.to_f64_coeffs();
        let (z, ok) = aberth(&coeffs);
        converged &= ok;
        let radii = inclusion_radii(&coeffs, &z);
        for (zj, rj) in z.into_iter().zip(radii) {
            for _ in 0..=i {
                roots.push(zj);
                bounds.push(rj);
            }
        }
    }
    let full = f.to_f64_coeffs();
    let residuals: Vec<f64> = roots
        .iter()
        .map(|&z| {
            let scale = abs_horner(&full, z.norm());
            if scale == 0.0 {
                0.0
            } else {
                horner(&full, z).0.norm() / scale
            }
        })
        .collect();
    let reliable = converged && residuals.iter().all(|&r| r <= tol);
    Ok(RootSet {
        roots: roots.into_iter().map(Root::from).collect(),
        residuals,
        error_bounds: bounds,
        tolerance: tol,
        reliable,
    })
}

pub fn classify_halfplane(rs: &RootSet, eps: f64) -> HalfPlaneSummary {
    let mut s = HalfPlaneSummary {
        strictly_left: 0,
        boundary: 0,
        strictly_right: 0,
        epsilon: eps,
    };
    for r in &rs.roots {
        match side(r.re, eps) {
            Side::Left => s.strictly_left += 1,
            Side::Boundary => s.boundary += 1,
            Side::Right => s.strictly_right += 1,
        }
    }
    s
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Boundary,
    Right,
}

fn side(re: f64, eps: f64) -> Side {
    if re < -eps {
        Side::Left
    } else if re > eps {
        Side::Right
    } else {
        Side::Boundary
    }
}

/// Stability verdict read off the numerical roots.
///
/// `Inconclusive` when the solver did not converge, or when some root's
/// half-plane class could change within its inclusion radius.
pub fn verdict_by_roots(f: &Polynomial, eps: f64) -> OracleVerdict {
    let Ok(rs) = find_roots(f, DEFAULT_ROOT_TOL) else {
        return OracleVerdict::Inconclusive;
    };
    verdict_from_root_set(&rs, eps)
}

pub fn verdict_from_root_set(rs: &RootSet, eps: f64) -> OracleVerdict {
    if !rs.reliable {
        return OracleVerdict::Inconclusive;
    }
    let flips = rs
        .roots
        .iter()
        .zip(&rs.error_bounds)
        .any(|(r, &e)| !e.is_finite() || side(r.re - e, eps) != side(r.re + e, eps));
    if flips {
        return OracleVerdict::Inconclusive;
    }
    let s = classify_halfplane(rs, eps);
    if s.strictly_right > 0 {
        OracleVerdict::NotQuasiStable
    } else if s.boundary > 0 {
        OracleVerdict::QuasiStable
    } else {
        OracleVerdict::Stable
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c).unwrap()
    }

    fn close(z: Complex64, re: f64, im: f64, tol: f64) -> bool {
        (z.re - re).abs() <= tol && (z.im - im).abs() <= tol
    }

    #[test]
    fn double_root() {
        let rs = find_roots(&p(&[1, 2, 1]), DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(rs.len(), 2);
        assert!(rs.complex().all(|z| close(z, -1.0, 0.0, 1e-12)));
        assert!(rs.reliable);
    }

    #[test]
    fn cubic_with_imaginary_pair() {
        let rs = find_roots(&p(&[1, 1, 1, 1]), DEFAULT_ROOT_TOL).unwrap();
        let zs: Vec<Complex64> = rs.complex().collect();
        for (re, im) in [(-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            assert!(
                zs.iter().any(|&z| close(z, re, im, 1e-12)),
                "missing {re} {im}i"
            );
        }
        let s = classify_halfplane(&rs, DEFAULT_EPS);
        assert_eq!((s.strictly_left, s.boundary, s.strictly_right), (1, 2, 0));
        assert_eq!(s.total(), 3);
    }

    #[test]
    fn example_one_product_roots() {
        let prod =
            Polynomial::from_strs(&["74.56", "51.2", "1085.68", "716.8", "1472", "617"]).unwrap();
        let rs = find_roots(&prod, DEFAULT_ROOT_TOL).unwrap();
        let zs: Vec<Complex64> = rs.complex().collect();
        assert!(zs.iter().any(|&z| close(z, 0.000062127, 0.276826, 1e-6)));
        assert!(zs.iter().any(|&z| close(z, 0.000062127, -0.276826, 1e-6)));
        assert!(classify_halfplane(&rs, DEFAULT_EPS).strictly_right >= 2);
        assert_eq!(
            verdict_by_roots(&prod, DEFAULT_EPS),
            OracleVerdict::NotQuasiStable
        );
    }

    #[test]
    fn verdict_examples() {
        let f = p(&[16, 8, 164, 80, 230, 100]);
        let rs = find_roots(&f, DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(classify_halfplane(&rs, DEFAULT_EPS).strictly_left, 5);
        assert_eq!(verdict_by_roots(&f, DEFAULT_EPS), OracleVerdict::Stable);
        assert_eq!(
            verdict_by_roots(&p(&[1, 0, 2, 0, 1]), DEFAULT_EPS),
            OracleVerdict::QuasiStable
        );
        assert_eq!(
            verdict_by_roots(&p(&[0, 1, 1]), DEFAULT_EPS),
            OracleVerdict::QuasiStable
        );
    }

    #[test]
    fn zero_roots_and_errors() {
        let rs = find_roots(&p(&[0, 0, 1, 1]), DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(rs.complex().filter(|z| z.is_zero()).count(), 2);
        assert_eq!(
            find_roots(&p(&[3]), DEFAULT_ROOT_TOL),
            Err(Error::DegreeZero)
        );
    }

    #[test]
    fn json_shape() {
        let rs = find_roots(&p(&[1, 1]), DEFAULT_ROOT_TOL).unwrap();
        let js = serde_json::to_value(&rs).unwrap();
        assert_eq!(js["roots"][0]["re"], -1.0);
        assert!(js["residuals"].is_array());
    }
}
