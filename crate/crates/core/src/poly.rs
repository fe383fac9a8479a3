//! Exact polynomials over the rationals.
//!
//! Coefficients are stored in ascending order, so `coeffs()[i]` is the
//! coefficient of `x^i`. Every value is an exact [`BigRational`]; decimal
//! literals such as `"6.62"` are read as `662/100`, never through `f64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Parses an exact rational literal.
///
/// Accepts integers (`"16"`), decimals (`"6.62"`, `"-.5"`), scientific
/// notation (`"1e-3"`) and fractions (`"662/100"`, `"-3/4"`).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse(s.to_string()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n = parse_decimal(num.trim()).ok_or_else(|| Error::Parse(s.to_string()))?;
        let d = parse_decimal(den.trim()).ok_or_else(|| Error::Parse(s.to_string()))?;
        if d.is_zero() {
            return Err(Error::Parse(s.to_string()));
        }
        return Ok(n / d);
    }
    parse_decimal(t).ok_or_else(|| Error::Parse(s.to_string()))
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Renders a rational exactly: an integer, a terminating decimal, or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        return q.numer().to_string();
    }
    let mut den = q.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_multiple_of(&two) {
        den /= &two;
        twos += 1;
    }
    while den.is_multiple_of(&five) {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", q.numer(), q.denom());
    }
    let places = twos.max(fives);
    let scaled = q * BigRational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let sign = if q.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

/// Lossy conversion used only for display and for the floating-point oracle.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Huge numerators and denominators: scale through the bit lengths.
        let n = q.numer();
        let d = q.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Serde adapter writing a rational through [`format_rational`].
pub mod rational_string {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A univariate polynomial with exact rational coefficients, ascending order.
///
/// The leading coefficient is always nonzero, except for the zero polynomial
/// which is stored as the single coefficient `0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    /// Builds a polynomial, stripping (and logging) trailing zero coefficients.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput);
        }
        let p = Self::from_vec_unchecked(coeffs);
        if p.is_zero() {
            return Err(Error::AllZero);
        }
        Ok(p)
    }

    /// Like [`Polynomial::new`] but never fails: an all-zero input yields the zero polynomial.
    pub(crate) fn from_vec_unchecked(mut coeffs: Vec<BigRational>) -> Self {
        let before = coeffs.len();
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        if coeffs.len() < before && !(coeffs.len() == 1 && coeffs[0].is_zero()) {
            log::debug!(
                "stripped {} trailing zero coefficient(s)",
                before - coeffs.len()
            );
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Parses each string with [`parse_rational`].
    pub fn from_strs<S: AsRef<str>>(coeffs: &[S]) -> Result<Self> {
        let parsed = coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn zero() -> Self {
        Self {
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_vec_unchecked(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_vec_unchecked(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn coeff_ref(&self, i: usize) -> Option<&BigRational> {
        self.coeffs.get(i)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("non-empty")
    }

    /// Every coefficient strictly positive (membership in the positive cone).
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(Signed::is_positive)
    }

    /// `a_0 > 0`, `a_n > 0` and every other coefficient nonnegative.
    pub fn has_quasi_stable_shape(&self) -> bool {
        self.coeffs[0].is_positive()
            && self.leading().is_positive()
            && self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Sign of the value at `x` as -1, 0 or 1.
    pub(crate) fn sign_at(&self, x: &BigRational) -> i8 {
        sign_of(&self.eval(x))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect();
        Self::from_vec_unchecked(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_vec_unchecked(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading().recip();
        self.scale(&lead)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiplies by `x^m`.
    pub fn shift_up(&self, m: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd.max(1));
        (
            Self::from_vec_unchecked(quot),
            Self::from_vec_unchecked(rem),
        )
    }

    /// `p(x) -> p(x^2)`
    pub fn compose_square(&self) -> Self {
        let mut coeffs = vec![BigRational::zero(); 2 * self.degree() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        Self::from_vec_unchecked(coeffs)
    }

    /// Multiplies through by the lcm of the denominators; returns the integer
    /// coefficients and the positive factor used.
    pub fn to_integer_coeffs(&self) -> (Vec<BigInt>, BigInt) {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        (ints, lcm)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// Exact-literal strings, one per coefficient, ascending.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

pub(crate) fn sign_of(q: &BigRational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.to_strings())
    }
}

/// Descending human form, e.g. `617x^5 + 1472x^4 + 716.8x^3 + ...`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if c.abs().is_one() && i > 0 {
                String::new()
            } else {
                mag
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Comma-separated ascending coefficients, e.g. `"16,8,164,80,230,100"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        Self::from_strs(&parts)
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    coeffs: Vec<String>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialRepr {
            coeffs: self.to_strings(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolynomialRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        if coeffs.is_empty() {
            return Err(serde::de::Error::custom(Error::EmptyInput));
        }
        Ok(Self::from_vec_unchecked(coeffs))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeff_ref(i), rhs.coeff_ref(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::from_vec_unchecked(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::from_vec_unchecked(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_vec_unchecked(coeffs)
    }
}

/// `f(x) = f_e(x^2) + x f_o(x^2)`. Either part may be the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenOddParts {
    pub even: Polynomial,
    pub odd: Polynomial,
}

impl EvenOddParts {
    pub fn even_is_zero(&self) -> bool {
        self.even.is_zero()
    }

    pub fn odd_is_zero(&self) -> bool {
        self.odd.is_zero()
    }
}

pub fn even_odd_split(f: &Polynomial) -> EvenOddParts {
    let pick = |offset: usize| {
        let coeffs: Vec<BigRational> = f.coeffs.iter().skip(offset).step_by(2).cloned().collect();
        if coeffs.is_empty() {
            Polynomial::zero()
        } else {
            Polynomial::from_vec_unchecked(coeffs)
        }
    };
    EvenOddParts {
        even: pick(0),
        odd: pick(1),
    }
}

pub fn recompose(parts: &EvenOddParts) -> Polynomial {
    &parts.even.compose_square() + &parts.odd.compose_square().shift_up(1)
}

/// Result of [`hadamard_detailed`]: the product and whether its degree fell
/// below `min(deg f, deg g)` because the top coefficient product vanished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardProduct {
    pub poly: Polynomial,
    pub nominal_degree: usize,
    pub degree_dropped: bool,
}

pub fn hadamard_detailed(f: &Polynomial, g: &Polynomial) -> Result<HadamardProduct> {
    let k = f.degree().min(g.degree());
    let coeffs: Vec<BigRational> = f.coeffs[..=k]
        .iter()
        .zip(&g.coeffs[..=k])
        .map(|(a, b)| a * b)
        .collect();
    let poly = Polynomial::from_vec_unchecked(coeffs);
    if poly.is_zero() {
        return Err(Error::ResultIsZero);
    }
    let degree_dropped = poly.degree() < k;
    if degree_dropped {
        log::warn!(
            "hadamard product degree dropped from {k} to {}",
            poly.degree()
        );
    }
    Ok(HadamardProduct {
        poly,
        nominal_degree: k,
        degree_dropped,
    })
}

/// Coefficient-wise product truncated to degree `min(deg f, deg g)`.
pub fn hadamard(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    hadamard_detailed(f, g).map(|h| h.poly)
}

/// `1 + x + ... + x^n`, the neutral element of the Hadamard product in degree `n`.
pub fn identity_poly(n: usize) -> Polynomial {
    Polynomial::from_vec_unchecked(vec![BigRational::one(); n + 1])
}

/// `(x + 1)^n` with exact binomial coefficients.
pub fn binomial_poly(n: usize) -> Polynomial {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    for i in 0..=n {
        coeffs.push(BigRational::from_integer(c.clone()));
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Polynomial::from_vec_unchecked(coeffs)
}

/// `Q^k_m = x^m Q^k` with `Q^{2l} = (x^2+1)^l` and `Q^{2l+1} = (1+x)(x^2+1)^l`.
pub fn basic_quasistable(k: usize, m: usize) -> Result<Polynomial> {
    if k < 2 {
        return Err(Error::InvalidDegree(format!(
            "basic quasi-stable polynomials need k >= 2, got {k}"
        )));
    }
    let even = binomial_poly(k / 2).compose_square();
    let q = if k % 2 == 0 {
        even
    } else {
        &even * &Polynomial::from_i64s(&[1, 1]).expect("nonzero")
    };
    Ok(q.shift_up(m))
}

/// Exact division by `x^m`.
pub fn shift_divide(p: &Polynomial, m: usize) -> Result<Polynomial> {
    if m == 0 {
        return Ok(p.clone());
    }
    if p.is_zero() {
        return Ok(p.clone());
    }
    if p.coeffs.len() <= m || p.coeffs[..m].iter().any(|c| !c.is_zero()) {
        return Err(Error::NotDivisible(m));
    }
    Ok(Polynomial::from_vec_unchecked(p.coeffs[m..].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c).unwrap()
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("6.62").unwrap(), ratio(662, 100));
        assert_eq!(parse_rational("662/100").unwrap(), ratio(331, 50));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), rat(250));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn formats_exact_literals() {
        assert_eq!(format_rational(&ratio(662, 100)), "6.62");
        assert_eq!(format_rational(&rat(-16)), "-16");
        assert_eq!(format_rational(&ratio(-1, 8)), "-0.125");
        assert_eq!(format_rational(&ratio(1, 3)), "1/3");
        let big = parse_rational("-36860871.08608").unwrap();
        assert_eq!(format_rational(&big), "-36860871.08608");
    }

    #[test]
    fn make_polynomial_examples() {
        let f = p(&[1, 1, 1, 1]);
        assert_eq!(f.degree(), 3);
        let f = p(&[16, 8, 164, 80, 230, 100]);
        assert_eq!(f.to_string(), "100x^5 + 230x^4 + 80x^3 + 164x^2 + 8x + 16");
        assert_eq!(Polynomial::from_i64s(&[0, 0]), Err(Error::AllZero));
        assert_eq!(Polynomial::new(vec![]), Err(Error::EmptyInput));
        assert_eq!(p(&[1, 2, 0, 0]).degree(), 1);
    }

    #[test]
    fn split_examples() {
        let parts = even_odd_split(&p(&[1, 1, 1, 1]));
        assert_eq!(parts.even, p(&[1, 1]));
        assert_eq!(parts.odd, p(&[1, 1]));

        let parts = even_odd_split(&p(&[1, 0, 2, 0, 1]));
        assert_eq!(parts.even, p(&[1, 2, 1]));
        assert!(parts.odd_is_zero());
        assert_eq!(recompose(&parts), p(&[1, 0, 2, 0, 1]));

        let f = p(&[16, 8, 164, 80, 230, 100]);
        let parts = even_odd_split(&f);
        assert_eq!(parts.even, p(&[16, 164, 230]));
        assert_eq!(parts.odd, p(&[8, 80, 100]));
        assert_eq!(recompose(&parts), f);

        let parts = EvenOddParts {
            even: p(&[1, 1]),
            odd: p(&[1, 1]),
        };
        assert_eq!(recompose(&parts), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn hadamard_example_one() {
        let f = p(&[16, 8, 164, 80, 230, 100]);
        let g = Polynomial::from_strs(&["4.66", "6.4", "6.62", "8.96", "6.4", "6.17"]).unwrap();
        let prod = hadamard(&f, &g).unwrap();
        let expected =
            Polynomial::from_strs(&["74.56", "51.2", "1085.68", "716.8", "1472", "617"]).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn hadamard_truncates_and_flags() {
        let f = p(&[1, 0, 2, 0, 1]);
        let g = p(&[3, 3, 3, 1]);
        let h = hadamard_detailed(&f, &g).unwrap();
        assert_eq!(h.nominal_degree, 3);
        assert!(h.degree_dropped);
        assert_eq!(h.poly, p(&[3, 0, 6]));
        assert_eq!(
            hadamard(&p(&[0, 1]), &p(&[1, 0, 1])),
            Err(Error::ResultIsZero)
        );
        assert_eq!(
            hadamard(&p(&[1, 2, 3]), &identity_poly(5)).unwrap(),
            p(&[1, 2, 3])
        );
    }

    #[test]
    fn identity_and_basic_quasistable() {
        assert_eq!(identity_poly(3), p(&[1, 1, 1, 1]));
        assert_eq!(identity_poly(0), p(&[1]));
        assert_eq!(basic_quasistable(3, 0).unwrap(), p(&[1, 1, 1, 1]));
        assert_eq!(basic_quasistable(5, 0).unwrap(), p(&[1, 1, 2, 2, 1, 1]));
        assert_eq!(basic_quasistable(2, 2).unwrap(), p(&[0, 0, 1, 0, 1]));
        assert_eq!(basic_quasistable(4, 1).unwrap(), p(&[0, 1, 0, 2, 0, 1]));
        assert!(matches!(
            basic_quasistable(1, 0),
            Err(Error::InvalidDegree(_))
        ));
        assert_eq!(binomial_poly(4), p(&[1, 4, 6, 4, 1]));
    }

    #[test]
    fn shift_divide_examples() {
        assert_eq!(
            shift_divide(&p(&[0, 0, 1, 0, 1]), 2).unwrap(),
            p(&[1, 0, 1])
        );
        let q = p(&[3, 1, 4]);
        assert_eq!(shift_divide(&q, 0).unwrap(), q);
        assert_eq!(shift_divide(&q, 1), Err(Error::NotDivisible(1)));

        // (g * Q^3_1)/x against direct expansion b1 + b2 x + b3 x^2 + b4 x^3.
        let g = Polynomial::from_strs(&["4.5", "10", "4.75", "5.5", "1", "1"]).unwrap();
        let prod = hadamard(&g, &basic_quasistable(3, 1).unwrap()).unwrap();
        let direct = Polynomial::from_strs(&["10", "4.75", "5.5", "1"]).unwrap();
        assert_eq!(shift_divide(&prod, 1).unwrap(), direct);
    }

    #[test]
    fn div_rem_and_derivative() {
        let f = p(&[1, 3, 3, 1]);
        let (q, r) = f.div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[1, 2, 1]));
        assert!(r.is_zero());
        assert_eq!(f.derivative(), p(&[3, 6, 3]));
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn json_form() {
        let f = Polynomial::from_strs(&["16", "6.62", "1/3"]).unwrap();
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"{"coeffs":["16","6.62","1/3"]}"#);
        let back: Polynomial =
            serde_json::from_str(r#"{"coeffs":["16","662/100","1/3"]}"#).unwrap();
        assert_eq!(back, f);
    }
}
