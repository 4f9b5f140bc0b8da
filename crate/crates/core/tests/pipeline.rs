use cwl_core::conway::{builtin_pd, conway_data_from_diagram, parse_pd, SkeinEngine};
use cwl_core::surgery::{lescop_lambda, walker_from_lescop, ConwayData, SurgeryPresentation, ThetaOverrides};
use cwl_core::{Rational, Slope};
use proptest::prelude::*;

fn lambda_from_pd(text: &str, slopes: Vec<Slope>) -> Rational {
    let engine = SkeinEngine::default();
    let d = parse_pd(text, "test").unwrap();
    let cd = conway_data_from_diagram(&d, &engine).unwrap();
    let pres = SurgeryPresentation::new(d.linking_matrix(), slopes).unwrap();
    lescop_lambda(&pres, &cd, &ThetaOverrides::new()).unwrap()
}

#[test]
fn trefoil_surgeries() {
    // a1hat(trefoil) = 1: +1 surgery on the right-handed trefoil is the
    // Poincare sphere up to orientation, |lambda_w| = 2
    let pd = "X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]";
    assert_eq!(lambda_from_pd(pd, vec![Slope::integral(0)]), Rational::new(11, 12));
    let l = lambda_from_pd(pd, vec![Slope::integral(1)]);
    let pres = SurgeryPresentation::knot(Slope::integral(1));
    assert_eq!(walker_from_lescop(&pres, &l).unwrap().abs(), Rational::from_integer(2));
}

#[test]
fn hopf_link_surgery_is_a_lens_space() {
    // (p, 0) on the Hopf link is S^3; lambda is 0
    let text = builtin_pd("hopf", Some(1)).unwrap().to_string();
    for p in [-3, 1, 4] {
        assert_eq!(lambda_from_pd(&text, vec![Slope::integral(p), Slope::integral(0)]), Rational::zero());
    }
}

#[test]
fn pd_and_builtin_agree() {
    for name in ["whitehead", "borromean", "trefoil"] {
        let text = builtin_pd(name, None).unwrap().to_string();
        let slopes = vec![Slope::integral(1); parse_pd(&text, name).unwrap().mu()];
        let engine = SkeinEngine::default();
        let d = cwl_core::conway::builtin(name, None).unwrap();
        let cd = conway_data_from_diagram(&d, &engine).unwrap();
        let pres = SurgeryPresentation::new(d.linking_matrix(), slopes.clone()).unwrap();
        assert_eq!(lescop_lambda(&pres, &cd, &ThetaOverrides::new()).unwrap(), lambda_from_pd(&text, slopes));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // reversing every slope mirrors the manifold: lambda changes sign on a
    // rational homology sphere when a1hat is mirror invariant (knots)
    #[test]
    fn knot_mirror_flips_sign(a in -30i64..30, p in 1i64..40, q in 1i64..40) {
        prop_assume!(num_integer::Integer::gcd(&p, &q) == 1);
        let cd = ConwayData::from_knots(&[a]);
        let at = |p| lescop_lambda(&SurgeryPresentation::knot(Slope::new(p, q).unwrap()), &cd, &ThetaOverrides::new()).unwrap();
        prop_assert_eq!(at(p), -at(-p));
    }
}
