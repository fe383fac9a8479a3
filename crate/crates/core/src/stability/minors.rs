//! Hurwitz matrices and their minors in exact arithmetic.
//!
//! Determinants are computed by fraction-free (Bareiss) elimination over
//! integers after clearing row denominators, so no rounding ever enters.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{format_rational, parse_rational, Polynomial};

/// The `n x n` Hurwitz matrix of a degree-`n` polynomial.
///
/// Row 1 holds `a_{n-1}, a_{n-3}, ...`, row 2 holds `a_n, a_{n-2}, ...`, and
/// every following pair is the previous pair shifted one column right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzMatrix {
    n: usize,
    entries: Vec<Vec<BigRational>>,
}

impl HurwitzMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    /// Zero-based entry access.
    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row][col]
    }

    /// Determinant of the submatrix picked by zero-based `rows` and `cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<BigRational> {
        if rows.len() != cols.len() {
            return Err(Error::InvalidDegree(format!(
                "minor needs as many rows as columns ({} vs {})",
                rows.len(),
                cols.len()
            )));
        }
        if let Some(bad) = rows.iter().chain(cols).find(|&&i| i >= self.n) {
            return Err(Error::InvalidDegree(format!(
                "index {bad} outside a {n}x{n} matrix",
                n = self.n
            )));
        }
        let sub: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect())
            .collect();
        Ok(determinant(&sub))
    }
}

pub fn hurwitz_matrix(f: &Polynomial) -> Result<HurwitzMatrix> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let entries = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    // a_{n - 2(c+1) + (r+1)} in one-based terms.
                    let idx = n as isize - 2 * c as isize + r as isize - 1;
                    if idx < 0 {
                        BigRational::zero()
                    } else {
                        f.coeff(idx as usize)
                    }
                })
                .collect()
        })
        .collect();
    Ok(HurwitzMatrix { n, entries })
}

/// Leading principal minors `Δ_1, ..., Δ_n` of a Hurwitz matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorSequence {
    deltas: Vec<BigRational>,
}

impl MinorSequence {
    pub fn new(deltas: Vec<BigRational>) -> Self {
        Self { deltas }
    }

    pub fn deltas(&self) -> &[BigRational] {
        &self.deltas
    }

    /// One-based: `delta(1)` is `Δ_1`.
    pub fn delta(&self, k: usize) -> &BigRational {
        &self.deltas[k - 1]
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn all_positive(&self) -> bool {
        self.deltas.iter().all(Signed::is_positive)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.deltas.iter().map(format_rational).collect()
    }
}

impl Serialize for MinorSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MinorSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        let deltas = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self { deltas })
    }
}

pub fn principal_minors(h: &HurwitzMatrix) -> MinorSequence {
    let (ints, scales) = clear_rows(&h.entries);
    let int_minors = leading_minors_int(ints);
    let mut acc = BigInt::one();
    let deltas = int_minors
        .into_iter()
        .zip(scales)
        .map(|(m, s)| {
            acc *= s;
            BigRational::new(m, acc.clone())
        })
        .collect();
    MinorSequence { deltas }
}

/// Shortcut for `principal_minors(&hurwitz_matrix(f)?)`.
pub fn hurwitz_minors(f: &Polynomial) -> Result<MinorSequence> {
    Ok(principal_minors(&hurwitz_matrix(f)?))
}

/// Exact determinant of a square rational matrix.
pub fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    if m.is_empty() {
        return BigRational::one();
    }
    let (ints, scales) = clear_rows(m);
    let scale = scales.into_iter().fold(BigInt::one(), |a, b| a * b);
    BigRational::new(determinant_int(ints), scale)
}

/// Multiplies each row by the lcm of its denominators.
fn clear_rows(m: &[Vec<BigRational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints = row.iter().map(|c| c.numer() * (&l / c.denom())).collect();
            (ints, l)
        })
        .unzip()
}

/// Bareiss elimination with row pivoting.
fn determinant_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// All leading principal minors. Bareiss without pivoting produces them as
/// successive pivots; once a pivot vanishes the remaining minors are computed
/// one by one.
fn leading_minors_int(m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let n = m.len();
    let original = m.clone();
    let mut work = m;
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = work[k][k].clone();
        out.push(pivot.clone());
        if pivot.is_zero() {
            for size in k + 2..=n {
                let sub: Vec<Vec<BigInt>> = original[..size]
                    .iter()
                    .map(|r| r[..size].to_vec())
                    .collect();
                out.push(determinant_int(sub));
            }
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&work[i][j] * &pivot - &work[i][k] * &work[k][j]) / &prev;
                work[i][j] = v;
            }
        }
        prev = pivot;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c).unwrap()
    }

    /// Cofactor expansion, used as an independent determinant oracle.
    fn cofactor_det(m: &[Vec<BigRational>]) -> BigRational {
        let n = m.len();
        if n == 0 {
            return BigRational::one();
        }
        (0..n)
            .map(|j| {
                let sub: Vec<Vec<BigRational>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * cofactor_det(&sub);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    #[test]
    fn cubic_layout() {
        let h = hurwitz_matrix(&p(&[1, 3, 3, 1])).unwrap();
        let expect: Vec<Vec<BigRational>> = [[3, 1, 0], [1, 3, 0], [0, 3, 1]]
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        assert_eq!(h.entries(), expect.as_slice());
        let m = principal_minors(&h);
        assert_eq!(m.deltas(), &[rat(3), rat(8), rat(8)]);
    }

    #[test]
    fn degree_one_and_zero() {
        let h = hurwitz_matrix(&p(&[7, 2])).unwrap();
        assert_eq!(h.entries(), &[vec![rat(7)]]);
        assert_eq!(hurwitz_matrix(&p(&[5])), Err(Error::DegreeZero));
    }

    #[test]
    fn example_two_matrix_and_minors() {
        let g = Polynomial::from_strs(&["4.5", "10", "4.75", "5.5", "1", "1"]).unwrap();
        let h = hurwitz_matrix(&g).unwrap();
        let row0: Vec<String> = h.entries()[0].iter().map(format_rational).collect();
        assert_eq!(row0, ["1", "4.75", "4.5", "0", "0"]);
        let row4: Vec<String> = h.entries()[4].iter().map(format_rational).collect();
        assert_eq!(row4, ["0", "0", "1", "4.75", "4.5"]);
        assert_eq!(
            h.minor(&[0, 1, 2], &[0, 1, 2]).unwrap(),
            ratio(-19375, 10000)
        );
        assert_eq!(h.minor(&[1, 2, 3], &[1, 2, 3]).unwrap(), ratio(70125, 1000));
        assert!(h.minor(&[0, 1], &[0]).is_err());
        assert!(h.minor(&[5], &[0]).is_err());
    }

    #[test]
    fn last_minor_is_constant_times_previous() {
        let f =
            Polynomial::from_strs(&["74.56", "51.2", "1085.68", "716.8", "1472", "617"]).unwrap();
        let m = hurwitz_minors(&f).unwrap();
        assert_eq!(m.delta(5), &(f.coeff(0) * m.delta(4)));
    }

    #[test]
    fn zero_pivot_fallback_matches_cofactor() {
        // x^4 + x^3 + x^2 + x + 1 has Δ_2 = 0 but Δ_3 = -1.
        let f = p(&[1, 1, 1, 1, 1]);
        let h = hurwitz_matrix(&f).unwrap();
        let m = principal_minors(&h);
        for k in 1..=4 {
            let sub: Vec<Vec<BigRational>> =
                h.entries()[..k].iter().map(|r| r[..k].to_vec()).collect();
            assert_eq!(m.delta(k), &cofactor_det(&sub), "k = {k}");
        }
        assert!(m.delta(2).is_zero());
        assert_eq!(m.delta(3), &rat(-1));
    }

    #[test]
    fn bareiss_matches_cofactor_on_rational_matrices() {
        let vals = [3, -1, 4, 1, -5, 9, 2, -6, 5, 3, 5, 8, -9, 7, 9, 3];
        let m: Vec<Vec<BigRational>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| ratio(vals[i * 4 + j], (i + j + 1) as i64))
                    .collect()
            })
            .collect();
        assert_eq!(determinant(&m), cofactor_det(&m));
    }
}
