//! Exact real-root machinery: gcd, square-free parts, Sturm chains, root
//! isolation and the weak interlacing relation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, MODULUS - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Integer image of `f` reduced modulo the prime, or `None` when the
/// leading coefficient vanishes there.
fn reduce_mod(f: &Polynomial) -> Option<Vec<u64>> {
    let (ints, _) = f.to_integer_coeffs();
    let m = BigInt::from(MODULUS);
    let out: Vec<u64> = ints
        .iter()
        .map(|c| c.mod_floor(&m).to_u64().expect("reduced below the modulus"))
        .collect();
    (*out.last()? != 0).then_some(out)
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64]) {
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"));
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = mul_mod(*a.last().expect("nonempty"), lead_inv);
        for (i, &c) in b.iter().enumerate() {
            let t = mul_mod(factor, c);
            a[shift + i] = (a[shift + i] + MODULUS - t) % MODULUS;
        }
        trim(a);
    }
}

/// Sufficient test for `gcd(f, g) = 1` over the rationals: a common factor
/// over Q survives reduction modulo a prime that does not divide either
/// leading coefficient, so a trivial gcd modulo that prime certifies it.
fn certainly_coprime(f: &Polynomial, g: &Polynomial) -> bool {
    let (Some(mut a), Some(mut b)) = (reduce_mod(f), reduce_mod(g)) else {
        return false;
    };
    while !b.is_empty() {
        rem_mod(&mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

/// Monic gcd by the Euclidean algorithm; `gcd(f, 0) = monic(f)`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    if !f.is_zero() && !g.is_zero() && certainly_coprime(f, g) {
        return Ok(Polynomial::one());
    }
    let (mut a, mut b) = (f.monic(), g.monic());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

/// `f / gcd(f, f')`, monic. Constants map to `1`.
pub fn square_free_part(f: &Polynomial) -> Polynomial {
    if f.is_constant() {
        return Polynomial::one();
    }
    let g = poly_gcd(f, &f.derivative()).expect("f is nonzero");
    f.div_rem(&g).0.monic()
}

/// Yun's algorithm: returns `[s_1, s_2, ...]` with `f = c * s_1 * s_2^2 * ...`,
/// each `s_i` monic, square-free and pairwise coprime.
pub fn square_free_factors(f: &Polynomial) -> Vec<Polynomial> {
    if f.is_constant() {
        return Vec::new();
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df).expect("nonzero");
    let mut b = f.div_rem(&a0).0;
    let mut c = df.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    loop {
        let a = poly_gcd(&b, &d).expect("b nonzero");
        out.push(a.clone());
        b = b.div_rem(&a).0;
        if b.is_constant() {
            break;
        }
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
    }
    while out.last().is_some_and(Polynomial::is_constant) {
        out.pop();
    }
    out
}

/// A Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let mut chain = vec![p.clone()];
        if p.is_constant() {
            return Self { chain };
        }
        let mut prev = p.clone();
        let mut cur = normalize_positive(&p.derivative());
        while !cur.is_zero() {
            chain.push(cur.clone());
            let (_, r) = prev.div_rem(&cur);
            prev = cur;
            cur = normalize_positive(&-&r);
        }
        Self { chain }
    }

    fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::count_variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::count_variations(self.chain.iter().map(|p| {
            let s = if p.leading().is_positive() { 1 } else { -1 };
            if p.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::count_variations(self.chain.iter().map(|p| {
            if p.leading().is_positive() {
                1
            } else {
                -1
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at(hi))
    }

    /// Distinct real roots overall.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

fn normalize_positive(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    p.scale(&p.leading().abs().recip())
}

/// True iff every zero of `f` is real and strictly negative (multiplicities
/// allowed). A nonzero constant qualifies vacuously; a zero at the origin fails.
pub fn has_only_negative_zeros(f: &Polynomial) -> bool {
    assert!(
        !f.is_zero(),
        "has_only_negative_zeros on the zero polynomial"
    );
    if f.is_constant() {
        return true;
    }
    if f.coeff(0).is_zero() {
        return false;
    }
    let s = square_free_part(f);
    let chain = SturmChain::new(&s);
    let below_zero = chain
        .variations_at_neg_inf()
        .saturating_sub(chain.variations_at(&BigRational::zero()));
    below_zero == s.degree()
}

/// True iff every zero of `f` is real.
pub fn has_only_real_zeros(f: &Polynomial) -> bool {
    if f.is_constant() {
        return true;
    }
    let s = square_free_part(f);
    SturmChain::new(&s).count_all() == s.degree()
}

/// True iff every zero of `f` is real and simple.
pub fn has_only_simple_real_zeros(f: &Polynomial) -> bool {
    if f.is_constant() {
        return true;
    }
    let s = square_free_part(f);
    s.degree() == f.degree() && SturmChain::new(&s).count_all() == s.degree()
}

/// Half-open interval `(lo, hi]` holding exactly one real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn cauchy_bound(p: &Polynomial) -> BigRational {
    let lead = p.leading().abs();
    let max = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    max + BigRational::one()
}

/// Isolates the distinct real roots of `f`, in increasing order.
pub fn isolate_real_roots(f: &Polynomial) -> Vec<RootInterval> {
    if f.is_constant() {
        return Vec::new();
    }
    let s = square_free_part(f);
    let chain = SturmChain::new(&s);
    let b = cauchy_bound(&s);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = BigRational::from_integer(2.into());
    while let Some((lo, hi)) = stack.pop() {
        match chain.count_in(&lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / &two;
                // Push the right half first so the left half pops first.
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterlacingFailure {
    NotRealRooted,
    DegreeMismatch,
    OrderViolated,
}

/// Outcome of [`interlaces`]. `strict` is set when every inequality of the
/// pattern holds strictly (no shared or repeated zeros).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterlacingReport {
    pub interlaces: bool,
    pub strict: bool,
    pub failure: Option<InterlacingFailure>,
}

impl InterlacingReport {
    fn fail(reason: InterlacingFailure) -> Self {
        Self {
            interlaces: false,
            strict: false,
            failure: Some(reason),
        }
    }
}

/// Zeros of `p` with multiplicity, as indices into the merged ordered list of
/// distinct roots described by `intervals`.
fn root_indices(p: &Polynomial, intervals: &[RootInterval]) -> Vec<usize> {
    let factors = square_free_factors(p);
    let chains: Vec<SturmChain> = factors.iter().map(SturmChain::new).collect();
    let mut out = Vec::new();
    for (j, iv) in intervals.iter().enumerate() {
        for (mult, chain) in chains.iter().enumerate() {
            if chain.count_in(&iv.lo, &iv.hi) == 1 {
                out.extend(std::iter::repeat_n(j, mult + 1));
                break;
            }
        }
    }
    out
}

/// Weak interlacing `g ≺ h`: either `deg h = deg g + 1` with
/// `α_1 ≤ β_1 ≤ α_2 ≤ ... ≤ β_n ≤ α_{n+1}`, or equal degrees with
/// `β_1 ≤ α_1 ≤ ... ≤ β_n ≤ α_n` (α the zeros of `h`, β those of `g`).
/// A zero argument interlaces with any real-rooted polynomial.
pub fn interlaces(g: &Polynomial, h: &Polynomial) -> InterlacingReport {
    if g.is_zero() || h.is_zero() {
        let other = if g.is_zero() { h } else { g };
        if other.is_zero() || has_only_real_zeros(other) {
            return InterlacingReport {
                interlaces: true,
                strict: false,
                failure: None,
            };
        }
        return InterlacingReport::fail(InterlacingFailure::NotRealRooted);
    }
    if !has_only_real_zeros(g) || !has_only_real_zeros(h) {
        return InterlacingReport::fail(InterlacingFailure::NotRealRooted);
    }
    let (n, m) = (g.degree(), h.degree());
    if m != n && m != n + 1 {
        return InterlacingReport::fail(InterlacingFailure::DegreeMismatch);
    }
    let intervals = isolate_real_roots(&(g * h));
    let beta = root_indices(g, &intervals);
    let alpha = root_indices(h, &intervals);
    debug_assert_eq!(beta.len(), n);
    debug_assert_eq!(alpha.len(), m);

    // Chain of values that must be non-decreasing.
    let mut seq = Vec::with_capacity(n + m);
    if m == n + 1 {
        for i in 0..n {
            seq.push(alpha[i]);
            seq.push(beta[i]);
        }
        seq.push(alpha[n]);
    } else {
        for i in 0..n {
            seq.push(beta[i]);
            seq.push(alpha[i]);
        }
    }
    let weak = seq.windows(2).all(|w| w[0] <= w[1]);
    if !weak {
        return InterlacingReport::fail(InterlacingFailure::OrderViolated);
    }
    let strict = seq.windows(2).all(|w| w[0] < w[1]);
    InterlacingReport {
        interlaces: true,
        strict,
        failure: None,
    }
}
