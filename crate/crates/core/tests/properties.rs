use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use hurwitz_core::poly::{format_rational, parse_rational};
use hurwitz_core::stability::{hurwitz_minors, is_stable_routh_hurwitz, poly_gcd};
use hurwitz_core::{even_odd_split, hadamard, identity_poly, recompose, Polynomial};

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..500)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn positive_rational() -> impl Strategy<Value = BigRational> {
    (1i64..10_000, 1i64..500).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    (
        prop::collection::vec(rational(), 0..=max_degree),
        rational().prop_filter("nonzero", |q| !q.is_zero()),
    )
        .prop_map(|(mut cs, lead)| {
            cs.push(lead);
            Polynomial::new(cs).unwrap()
        })
}

/// Products of stable linear and quadratic factors.
fn stable_poly(max_factors: usize) -> impl Strategy<Value = Polynomial> {
    let factor = prop_oneof![
        positive_rational().prop_map(|a| Polynomial::new(vec![a, BigRational::one()]).unwrap()),
        (positive_rational(), positive_rational()).prop_map(|(b, c)| Polynomial::new(vec![
            c,
            b,
            BigRational::one()
        ])
        .unwrap()),
    ];
    prop::collection::vec(factor, 1..=max_factors)
        .prop_map(|fs| fs.iter().fold(Polynomial::one(), |acc, f| &acc * f))
}

proptest! {
    #[test]
    fn rational_text_round_trip(q in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn polynomial_json_round_trip(p in poly(8)) {
        let text = serde_json::to_string(&p).unwrap();
        let back: Polynomial = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn hadamard_identity_is_neutral(p in poly(8)) {
        prop_assert_eq!(hadamard(&p, &identity_poly(p.degree())).unwrap(), p);
    }

    #[test]
    fn hadamard_commutes(f in poly(6), g in poly(6)) {
        let fg = hadamard(&f, &g);
        let gf = hadamard(&g, &f);
        prop_assert_eq!(fg.ok(), gf.ok());
    }

    #[test]
    fn hadamard_associates(f in stable_poly(3), g in stable_poly(3), h in stable_poly(3)) {
        let left = hadamard(&hadamard(&f, &g).unwrap(), &h).unwrap();
        let right = hadamard(&f, &hadamard(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn even_odd_recompose(p in poly(9)) {
        let parts = even_odd_split(&p);
        prop_assert_eq!(recompose(&parts), p);
    }

    #[test]
    fn last_minor_factors_through_constant_term(p in poly(7)) {
        prop_assume!(p.degree() >= 2);
        let m = hurwitz_minors(&p).unwrap();
        let n = m.len();
        prop_assert_eq!(m.delta(n).clone(), p.coeff(0) * m.delta(n - 1));
    }

    #[test]
    fn stable_products_pass_routh_hurwitz(p in stable_poly(4)) {
        prop_assert!(is_stable_routh_hurwitz(&p).unwrap().stable);
    }

    #[test]
    fn hadamard_of_stable_is_stable(f in stable_poly(4), g in stable_poly(4)) {
        let h = hadamard(&f, &g).unwrap();
        prop_assert!(is_stable_routh_hurwitz(&h).unwrap().stable);
    }

    #[test]
    fn gcd_recovers_common_factor(a in poly(4), b in poly(4), c in poly(3)) {
        let g = poly_gcd(&(&a * &c), &(&b * &c)).unwrap();
        let (_, r) = g.div_rem(&c);
        prop_assert!(r.is_zero(), "gcd {} not a multiple of {}", g, c);
    }

    #[test]
    fn gcd_divides_both(a in poly(6), b in poly(6)) {
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert!(a.div_rem(&g).1.is_zero());
        prop_assert!(b.div_rem(&g).1.is_zero());
    }
}
