//! Minor-based and interlacing-based stability tests.

mod minors;
mod sturm;

pub use minors::{
    determinant, hurwitz_matrix, hurwitz_minors, principal_minors, HurwitzMatrix, MinorSequence,
};
pub use sturm::{
    has_only_negative_zeros, has_only_real_zeros, has_only_simple_real_zeros, interlaces,
    isolate_real_roots, poly_gcd, square_free_factors, square_free_part, InterlacingFailure,
    InterlacingReport, RootInterval, SturmChain,
};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{even_odd_split, format_rational, EvenOddParts, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityKind {
    Stable,
    QuasiStable,
    NotQuasiStable,
}

/// Verdict of [`quasi_stability_agt`].
///
/// `index` is the number of zeros in the open left half-plane when the
/// polynomial is quasi-stable, and the length of the positive prefix of the
/// minor sequence otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub kind: StabilityKind,
    pub index: usize,
    pub minors: MinorSequence,
    pub gcd: Option<Polynomial>,
    /// The minors were not a positive prefix followed by zeros.
    pub nonstandard_pattern: bool,
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        self.kind == StabilityKind::Stable
    }

    pub fn is_quasi_stable(&self) -> bool {
        self.kind != StabilityKind::NotQuasiStable
    }
}

#[derive(Serialize)]
struct VerdictRepr<'a> {
    kind: StabilityKind,
    index: usize,
    deltas: &'a MinorSequence,
    gcd: Option<Vec<String>>,
    nonstandard_pattern: bool,
}

impl Serialize for StabilityVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VerdictRepr {
            kind: self.kind,
            index: self.index,
            deltas: &self.minors,
            gcd: self.gcd.as_ref().map(Polynomial::to_strings),
            nonstandard_pattern: self.nonstandard_pattern,
        }
        .serialize(serializer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouthHurwitz {
    pub stable: bool,
    pub positive_coefficients: bool,
    pub minors: MinorSequence,
}

/// Routh–Hurwitz: stable iff every coefficient and every `Δ_k` is positive.
pub fn is_stable_routh_hurwitz(f: &Polynomial) -> Result<RouthHurwitz> {
    let minors = hurwitz_minors(f)?;
    let positive_coefficients = f.is_positive();
    let stable = positive_coefficients && minors.all_positive();
    Ok(RouthHurwitz {
        stable,
        positive_coefficients,
        minors,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LienardChipartVariant {
    /// `Δ_2, Δ_4, ... > 0`
    EvenMinors,
    /// `Δ_1, Δ_3, ... > 0`
    OddMinors,
}

/// Liénard–Chipart test for polynomials with positive coefficients.
pub fn is_stable_lienard_chipart(f: &Polynomial, variant: LienardChipartVariant) -> Result<bool> {
    if !f.is_positive() {
        return Err(Error::NotPositiveCoefficients);
    }
    let minors = hurwitz_minors(f)?;
    let start = match variant {
        LienardChipartVariant::EvenMinors => 2,
        LienardChipartVariant::OddMinors => 1,
    };
    Ok((start..=f.degree())
        .step_by(2)
        .all(|k| minors.delta(k).is_positive()))
}

/// Quasi-stability with stability index (Adm–Garloff–Tyaglov).
///
/// With `m` the length of the positive prefix of `Δ_1, ..., Δ_n`, the
/// polynomial is quasi-stable iff `Δ_{m+1} = ... = Δ_n = 0` and
/// `gcd(f_e, f_o)` has only negative zeros; it is stable iff `m = n`.
pub fn quasi_stability_agt(f: &Polynomial) -> Result<StabilityVerdict> {
    if !f.coeff(0).is_positive() || !f.leading().is_positive() {
        return Err(Error::ShapeViolation("a_0 and a_n must be positive".into()));
    }
    if f.coeffs().iter().any(Signed::is_negative) {
        return Err(Error::ShapeViolation("negative coefficient".into()));
    }
    let minors = hurwitz_minors(f)?;
    let n = f.degree();
    let index = minors
        .deltas()
        .iter()
        .take_while(|d| d.is_positive())
        .count();
    if index == n {
        return Ok(StabilityVerdict {
            kind: StabilityKind::Stable,
            index,
            minors,
            gcd: Some(Polynomial::one()),
            nonstandard_pattern: false,
        });
    }
    let tail_zero = minors.deltas()[index..].iter().all(Zero::is_zero);
    let parts = even_odd_split(f);
    let gcd = poly_gcd(&parts.even, &parts.odd).expect("f_e is nonzero since a_0 > 0");
    let kind = if tail_zero && has_only_negative_zeros(&gcd) {
        StabilityKind::QuasiStable
    } else {
        StabilityKind::NotQuasiStable
    };
    Ok(StabilityVerdict {
        kind,
        index,
        minors,
        gcd: Some(gcd),
        nonstandard_pattern: !tail_zero,
    })
}

/// The Hermite–Biehler taxonomy of a polynomial with `a_0 > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HermiteBiehlerClass {
    NotQuasiStable,
    /// `gcd(f_e, f_o) = 1`
    StrictlyStable,
    /// Quasi-stable, none of the special cases below.
    QuasiStableGeneric,
    /// `f_o = 0`: every zero on the imaginary axis.
    PureImaginary,
    /// `f_e = c f_o`: one negative zero, the rest imaginary.
    OneNegRestImaginary {
        c: BigRational,
    },
}

impl HermiteBiehlerClass {
    pub fn name(&self) -> &'static str {
        match self {
            Self::NotQuasiStable => "not_quasi_stable",
            Self::StrictlyStable => "strictly_stable",
            Self::QuasiStableGeneric => "quasi_stable_generic",
            Self::PureImaginary => "pure_imaginary",
            Self::OneNegRestImaginary { .. } => "one_neg_rest_imaginary",
        }
    }

    pub fn is_quasi_stable(&self) -> bool {
        !matches!(self, Self::NotQuasiStable)
    }
}

impl Serialize for HermiteBiehlerClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            case: &'static str,
            c: Option<String>,
        }
        let c = match self {
            Self::OneNegRestImaginary { c } => Some(format_rational(c)),
            _ => None,
        };
        Repr {
            case: self.name(),
            c,
        }
        .serialize(serializer)
    }
}

/// `Some(c)` when `even = c * odd` with `odd` nonzero.
pub fn proportionality_constant(parts: &EvenOddParts) -> Option<BigRational> {
    let (e, o) = (&parts.even, &parts.odd);
    if o.is_zero() || e.degree() != o.degree() {
        return None;
    }
    let c = e.leading() / o.leading();
    (o.scale(&c) == *e).then_some(c)
}

pub fn hermite_biehler_classify(f: &Polynomial) -> HermiteBiehlerClass {
    if !f.has_quasi_stable_shape() || f.is_constant() {
        return HermiteBiehlerClass::NotQuasiStable;
    }
    let parts = even_odd_split(f);
    if !has_only_negative_zeros(&parts.even) {
        return HermiteBiehlerClass::NotQuasiStable;
    }
    if !parts.odd.is_zero() {
        if !has_only_negative_zeros(&parts.odd) || !interlaces(&parts.odd, &parts.even).interlaces {
            return HermiteBiehlerClass::NotQuasiStable;
        }
    }
    let gcd = poly_gcd(&parts.even, &parts.odd).expect("f_e nonzero");
    if gcd.is_one_poly() {
        HermiteBiehlerClass::StrictlyStable
    } else if parts.odd.is_zero() {
        HermiteBiehlerClass::PureImaginary
    } else if let Some(c) = proportionality_constant(&parts) {
        HermiteBiehlerClass::OneNegRestImaginary { c }
    } else {
        HermiteBiehlerClass::QuasiStableGeneric
    }
}

impl Polynomial {
    pub(crate) fn is_one_poly(&self) -> bool {
        self.is_constant() && self.coeff(0).is_one()
    }
}

/// Row/column label of the Garloff–Wagner case table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputClass {
    /// `f_o = 0`
    OddPartZero,
    /// `f_e = c f_o ≠ 0`
    Proportional,
    /// quasi-stable, `f_e ≠ c f_o`, `f_o ≠ 0`, not stable
    Generic,
    Stable,
}

impl InputClass {
    pub const ALL: [InputClass; 4] = [
        Self::OddPartZero,
        Self::Proportional,
        Self::Generic,
        Self::Stable,
    ];
}

/// What the case table predicts for `f * p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductCase {
    /// `f_o * p_o = 0`: the product is even.
    OddPartVanishes,
    /// Both inputs proportional: so is the product.
    ProportionalParts,
    /// Neither special case: no zeros on the imaginary axis.
    GenericQuasiStable,
    /// Both inputs stable.
    StrictlyStable,
}

impl ProductCase {
    /// The table entry is `H_k`, i.e. the product has no imaginary-axis zeros.
    pub fn predicts_stable_product(self) -> bool {
        matches!(self, Self::GenericQuasiStable | Self::StrictlyStable)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GarloffWagnerCell {
    pub row: InputClass,
    pub col: InputClass,
    pub case: ProductCase,
}

/// Classifies a quasi-stable polynomial into its row of the case table.
pub fn input_class(f: &Polynomial) -> Result<InputClass> {
    let verdict = quasi_stability_agt(f)?;
    match verdict.kind {
        StabilityKind::NotQuasiStable => Err(Error::NotQuasiStableInput(f.to_string())),
        StabilityKind::Stable => Ok(InputClass::Stable),
        StabilityKind::QuasiStable => {
            let parts = even_odd_split(f);
            if parts.odd.is_zero() {
                Ok(InputClass::OddPartZero)
            } else if proportionality_constant(&parts).is_some() {
                Ok(InputClass::Proportional)
            } else {
                Ok(InputClass::Generic)
            }
        }
    }
}

pub fn garloff_wagner_case(f: &Polynomial, p: &Polynomial) -> Result<GarloffWagnerCell> {
    let row = input_class(f)?;
    let col = input_class(p)?;
    use InputClass::*;
    let case = match (row, col) {
        (OddPartZero, _) | (_, OddPartZero) => ProductCase::OddPartVanishes,
        (Proportional, Proportional) => ProductCase::ProportionalParts,
        (Stable, Stable) => ProductCase::StrictlyStable,
        _ => ProductCase::GenericQuasiStable,
    };
    Ok(GarloffWagnerCell { row, col, case })
}

/// Outcome of [`hermite_kakeya_probe`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HermiteKakeyaProbe {
    pub trials: usize,
    pub failures: usize,
}

/// Spot check of the pencil criterion: when `f_o` and `f_e` are non-constant
/// and strictly interlace, `λ f_o + μ f_e` must have simple real zeros for
/// every `(λ, μ)` on the unit circle. Points are drawn exactly through the
/// rational parametrisation `((1-t²)/(1+t²), 2t/(1+t²))`.
///
/// Returns `None` when the hypothesis does not apply.
pub fn hermite_kakeya_probe<R: Rng + ?Sized>(
    f: &Polynomial,
    trials: usize,
    rng: &mut R,
) -> Option<HermiteKakeyaProbe> {
    let parts = even_odd_split(f);
    if parts.odd.is_zero() || parts.odd.is_constant() || parts.even.is_constant() {
        return None;
    }
    let report = interlaces(&parts.odd, &parts.even);
    if !report.strict {
        return None;
    }
    let one = BigRational::one();
    let failures = (0..trials)
        .filter(|_| {
            let t = BigRational::new(rng.gen_range(-10_000i64..=10_000).into(), 1000.into());
            let flip = if rng.gen_bool(0.5) {
                -one.clone()
            } else {
                one.clone()
            };
            let denom = &one + &t * &t;
            let lambda = (&one - &t * &t) / &denom * &flip;
            let mu = (&t + &t) / &denom * &flip;
            let pencil = &parts.odd.scale(&lambda) + &parts.even.scale(&mu);
            pencil.is_zero() || !has_only_simple_real_zeros(&pencil)
        })
        .count();
    Some(HermiteKakeyaProbe { trials, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{basic_quasistable, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c).unwrap()
    }

    fn example_f() -> Polynomial {
        p(&[16, 8, 164, 80, 230, 100])
    }

    fn example_product() -> Polynomial {
        Polynomial::from_strs(&["74.56", "51.2", "1085.68", "716.8", "1472", "617"]).unwrap()
    }

    #[test]
    fn routh_hurwitz_examples() {
        let rh = is_stable_routh_hurwitz(&example_f()).unwrap();
        assert!(rh.stable);
        assert_eq!(rh.minors.delta(2), &rat(2000));
        assert_eq!(rh.minors.delta(4), &rat(6400));

        let rh = is_stable_routh_hurwitz(&example_product()).unwrap();
        assert!(!rh.stable);
        assert_eq!(
            rh.minors.delta(2),
            &crate::poly::parse_rational("385265.04").unwrap()
        );
        assert_eq!(
            rh.minors.delta(4),
            &crate::poly::parse_rational("-36860871.08608").unwrap()
        );

        let rh = is_stable_routh_hurwitz(&p(&[1, 0, 1])).unwrap();
        assert!(!rh.stable);
        assert!(rh.minors.delta(1).is_zero());
        assert!(!is_stable_routh_hurwitz(&p(&[1, -1, 1])).unwrap().stable);
    }

    #[test]
    fn lienard_chipart_examples() {
        use LienardChipartVariant::*;
        for f in [p(&[1, 3, 3, 1]), example_f()] {
            assert!(is_stable_lienard_chipart(&f, EvenMinors).unwrap());
            assert!(is_stable_lienard_chipart(&f, OddMinors).unwrap());
        }
        assert!(!is_stable_lienard_chipart(&example_product(), EvenMinors).unwrap());
        assert!(!is_stable_lienard_chipart(&example_product(), OddMinors).unwrap());
        assert_eq!(
            is_stable_lienard_chipart(&p(&[1, 0, 1]), EvenMinors),
            Err(Error::NotPositiveCoefficients)
        );
    }

    #[test]
    fn agt_examples() {
        let v = quasi_stability_agt(&p(&[1, 1, 1, 1])).unwrap();
        assert_eq!(v.kind, StabilityKind::QuasiStable);
        assert_eq!(v.index, 1);
        assert_eq!(v.gcd, Some(p(&[1, 1])));

        let v = quasi_stability_agt(&example_f()).unwrap();
        assert_eq!((v.kind, v.index), (StabilityKind::Stable, 5));

        let v = quasi_stability_agt(&p(&[1, 0, 2, 0, 1])).unwrap();
        assert_eq!((v.kind, v.index), (StabilityKind::QuasiStable, 0));
        assert_eq!(v.gcd, Some(p(&[1, 2, 1])));

        // I_4 is not quasi-stable; its minors are 1, 0, -1, -1.
        let v = quasi_stability_agt(&p(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(v.kind, StabilityKind::NotQuasiStable);
        assert!(v.nonstandard_pattern);

        // x^4 + 4: zeros ±1±i, f_o = 0 but gcd y^2 + 4 has complex zeros
        let v = quasi_stability_agt(&p(&[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(v.kind, StabilityKind::NotQuasiStable);

        assert!(matches!(
            quasi_stability_agt(&p(&[0, 1, 1])),
            Err(Error::ShapeViolation(_))
        ));
        assert!(matches!(
            quasi_stability_agt(&p(&[1, -1, 1])),
            Err(Error::ShapeViolation(_))
        ));
    }

    #[test]
    fn verdict_json_shape() {
        let v = quasi_stability_agt(&p(&[1, 1, 1, 1])).unwrap();
        let js = serde_json::to_value(&v).unwrap();
        assert_eq!(
            js,
            serde_json::json!({
                "kind": "quasi_stable", "index": 1, "deltas": ["1", "0", "0"],
                "gcd": ["1", "1"], "nonstandard_pattern": false
            })
        );
    }

    #[test]
    fn hermite_biehler_examples() {
        assert_eq!(
            hermite_biehler_classify(&p(&[1, 0, 2, 0, 1])),
            HermiteBiehlerClass::PureImaginary
        );
        assert_eq!(
            hermite_biehler_classify(&p(&[1, 1, 1, 1])),
            HermiteBiehlerClass::OneNegRestImaginary { c: rat(1) }
        );
        assert_eq!(
            hermite_biehler_classify(&example_f()),
            HermiteBiehlerClass::StrictlyStable
        );
        assert_eq!(
            hermite_biehler_classify(&example_product()),
            HermiteBiehlerClass::NotQuasiStable
        );
        assert_eq!(
            hermite_biehler_classify(&p(&[1, 1])),
            HermiteBiehlerClass::StrictlyStable
        );
        // (x^2+1)(x+1)(x+2)
        let generic = &p(&[1, 0, 1]) * &p(&[2, 3, 1]);
        assert_eq!(
            hermite_biehler_classify(&generic),
            HermiteBiehlerClass::QuasiStableGeneric
        );
        assert_eq!(
            hermite_biehler_classify(&p(&[1, -1, 1])),
            HermiteBiehlerClass::NotQuasiStable
        );
    }

    #[test]
    fn basic_quasistable_polys_are_quasi_stable() {
        for k in 2..=9 {
            let q = basic_quasistable(k, 0).unwrap();
            let v = quasi_stability_agt(&q).unwrap();
            assert_eq!(v.kind, StabilityKind::QuasiStable, "k = {k}");
            assert!(hermite_biehler_classify(&q).is_quasi_stable());
        }
    }

    #[test]
    fn garloff_wagner_examples() {
        let even = p(&[1, 0, 2, 0, 1]);
        let cell = garloff_wagner_case(&even, &p(&[1, 3, 3, 1])).unwrap();
        assert_eq!(cell.case, ProductCase::OddPartVanishes);
        let q3 = p(&[1, 1, 1, 1]);
        let cell = garloff_wagner_case(&q3, &q3).unwrap();
        assert_eq!(cell.case, ProductCase::ProportionalParts);
        let cell = garloff_wagner_case(&example_f(), &p(&[1, 5, 10, 10, 5, 1])).unwrap();
        assert_eq!(cell.case, ProductCase::StrictlyStable);
        assert!(matches!(
            garloff_wagner_case(&p(&[1, 1, 1, 1, 1]), &q3),
            Err(Error::NotQuasiStableInput(_))
        ));
    }

    #[test]
    fn gcd_of_product_parts_in_index_two_case() {
        // f = (x^2 + 1)(x^2 + 3x + 2) has stability index 2 and g = I_4 ∈ W̄_4,
        // so Δ_3(f*g) = 0 and gcd((f*g)_e, (f*g)_o) = y + a_1 b_1 / (a_3 b_3).
        let f = &p(&[1, 0, 1]) * &p(&[2, 3, 1]);
        let prod = crate::poly::hadamard(&f, &crate::poly::identity_poly(4)).unwrap();
        let minors = hurwitz_minors(&prod).unwrap();
        assert!(minors.delta(3).is_zero());
        let parts = even_odd_split(&prod);
        let gcd = poly_gcd(&parts.even, &parts.odd).unwrap();
        let shift = prod.coeff(1) / prod.coeff(3);
        assert_eq!(gcd, Polynomial::new(vec![shift, rat(1)]).unwrap());
    }

    #[test]
    fn hermite_kakeya_holds_for_stable() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let probe = hermite_kakeya_probe(&example_f(), 50, &mut rng).unwrap();
        assert_eq!(probe.failures, 0);
        assert!(hermite_kakeya_probe(&p(&[1, 0, 2, 0, 1]), 5, &mut rng).is_none());
    }
}
