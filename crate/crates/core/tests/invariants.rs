use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use selberg_periods::selberg_local::{local_logderiv, LocalZetaQuery};
use selberg_periods::series::{eval_psi, eval_psi_l_direct, eval_xi};
use selberg_periods::spectra::{
    gen_synthetic, norm_of, parse_spectrum, q_polynomial, write_spectrum, GroupElement, LengthSpectrum, PrimitiveClass,
};
use selberg_periods::{Complex, SeriesConfig};

fn spectrum(norms: &[f64], weights: &[(f64, f64)]) -> LengthSpectrum {
    let classes = norms
        .iter()
        .zip(weights)
        .map(|(&n, &(a, b))| PrimitiveClass::from_norm(n, [a, b], 1, None).unwrap())
        .collect();
    LengthSpectrum::new(classes, None).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn element() -> impl Strategy<Value = GroupElement> {
    (-9i64..10, 1i64..5, -9i64..10, 1i64..5, -9i64..10, 1i64..5)
        .prop_filter("a != 0", |t| t.0 != 0)
        .prop_map(|(an, ad, bn, bd, cn, cd)| {
            let (a, b, c) = (rat(an, ad), rat(bn, bd), rat(cn, cd));
            let d = (BigRational::one() + &b * &c) / &a;
            GroupElement::new(a, b, c, d).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn psi_is_linear_in_weights(
        norms in prop::collection::vec(2.0f64..80.0, 1..5),
        w in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5),
        lambda in -3.0f64..3.0,
        sre in 1.2f64..3.0, sim in -4.0f64..4.0,
    ) {
        let cfg = SeriesConfig::with_k(2);
        let s = Complex::from_f64(sre, sim);
        let base = spectrum(&norms, &w);
        let scaled = base.map_weights(|c| { let [a, b] = c.weight_pair(); [a * lambda, b * lambda] });
        let v = eval_psi(&base, s, &cfg).unwrap().value;
        let u = eval_psi(&scaled, s, &cfg).unwrap().value;
        prop_assert!((u - v * lambda).abs_f64() <= 1e-12 * (1.0 + v.abs_f64() * lambda.abs()));
    }

    #[test]
    fn xi_matches_first_psi_l_for_k1(seed in 0u64..1000, sre in 1.2f64..3.0, sim in -5.0f64..5.0) {
        let cfg = SeriesConfig::with_k(1);
        let spec = gen_synthetic(seed, 4, (3.0, 60.0), 1.0).unwrap();
        let s = Complex::from_f64(sre, sim);
        let a = eval_xi(&spec, s, &cfg).unwrap().value;
        let b = eval_psi_l_direct(&spec, 1, s, &cfg).unwrap().value;
        prop_assert!((a - b).abs_f64() <= 1e-12 * (1.0 + a.abs_f64()));
    }

    #[test]
    fn synthetic_spectra_respect_range(seed: u64, count in 1usize..30, lo in 1.5f64..10.0, width in 1.0f64..200.0) {
        let spec = gen_synthetic(seed, count, (lo, lo + width), 0.5).unwrap();
        prop_assert_eq!(spec.len(), count);
        for c in spec.classes() {
            prop_assert!(c.norm() >= lo && c.norm() <= lo + width);
        }
        prop_assert_eq!(spec, gen_synthetic(seed, count, (lo, lo + width), 0.5).unwrap());
    }

    #[test]
    fn spectrum_text_round_trip(seed: u64, count in 1usize..20) {
        let spec = gen_synthetic(seed, count, (2.0, 500.0), 3.0).unwrap();
        let mut buf = Vec::new();
        write_spectrum(&spec, &mut buf).unwrap();
        let back = parse_spectrum(&buf[..]).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn q_polynomial_is_odd_under_inversion(g in element()) {
        let q = q_polynomial(&g);
        let qi = q_polynomial(&g.inverse());
        for (x, y) in q.iter().zip(&qi) {
            prop_assert!((x + y).is_zero());
        }
    }

    #[test]
    fn norm_is_conjugation_invariant(g in element(), h in element()) {
        prop_assume!(g.is_hyperbolic());
        let a = norm_of(&g).unwrap();
        let b = norm_of(&g.conjugate_by(&h)).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a);
        prop_assert!((a - norm_of(&g.inverse()).unwrap()).abs() <= 1e-12 * a);
    }

    #[test]
    fn local_logderiv_telescopes(j in -3i64..6, n in 2.0f64..100.0, sre in 1.1f64..4.0, sim in -3.0f64..3.0) {
        let s = Complex::from_f64(sre, sim);
        let f = |j, s| local_logderiv(&LocalZetaQuery::new(j, n, s), 1e-14).unwrap();
        let lhs = f(j, s) - f(j, s + 1.0);
        let rhs = f(j - 1, s);
        prop_assert!((lhs - rhs).abs_f64() <= 1e-12 * (1.0 + rhs.abs_f64()));
    }
}
