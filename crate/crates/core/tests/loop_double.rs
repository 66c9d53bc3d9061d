use liecurrent::arith::scalar::{q, qf};
use liecurrent::double::{
    build_w, canonical_pair, embed_gx, involution_on_w, manin_verify, pattern_equal, CaseTag,
    DoubleElem, Finite, FiniteKind, FormSpec, LagrangianPattern, LoopPart, Window,
};
use liecurrent::lie::cartan_involution;
use liecurrent::{build_algebra, AlgebraType, Error, LaurentPoly};

fn sl2() -> liecurrent::LieAlgebraData {
    build_algebra(AlgebraType::A1).unwrap()
}

fn all_cases() -> Vec<CaseTag> {
    vec![
        CaseTag::A1,
        CaseTag::A2,
        CaseTag::A3,
        CaseTag::a4(q(1), q(2)).unwrap(),
        CaseTag::B1,
        CaseTag::B2,
        CaseTag::C,
    ]
}

#[test]
fn case_patterns_pass_on_sl2() {
    let g = sl2();
    let win = Window::new(-10, 6).unwrap();
    for case in all_cases() {
        let w = build_w(&case, &g).unwrap();
        let r = manin_verify(&w, &case, &g, win).unwrap();
        assert!(r.all_pass(), "{case}: {}", r.to_text());
    }
}

#[test]
fn gx_control_fails_transversality() {
    let g = sl2();
    let win = Window::new(-10, 6).unwrap();
    let w = LagrangianPattern::gx_control(&CaseTag::A1, &g, win.hi);
    let r = manin_verify(&w, &CaseTag::A1, &g, win).unwrap();
    let c = r.check("transversality_independent").unwrap();
    assert!(!c.passed());
    assert!(c.witness.as_ref().unwrap()[0].contains("W and g[x]"));
}

#[test]
fn sigma_swaps_a4_parameters() {
    let g = sl2();
    let sigma = cartan_involution(&g).unwrap();
    let case = CaseTag::a4(q(1), q(2)).unwrap();
    let w = build_w(&case, &g).unwrap();
    let image = involution_on_w(&w, &sigma, &g).unwrap();
    assert_eq!(image.case, CaseTag::a4(q(2), q(1)).unwrap());
    // unswapped comparison is the negative control
    let err = pattern_equal(&w.map(&sigma), &w, &g).unwrap_err();
    assert!(matches!(err, Error::MismatchWitness(_)));
    // sigma twice is the identity on patterns
    assert_eq!(w.map(&sigma).map(&sigma), w);
}

#[test]
fn a4_rejects_degenerate_parameters() {
    assert!(matches!(CaseTag::a4(q(1), q(1)), Err(Error::DegenerateParameters(_))));
    assert!(matches!(CaseTag::a4(q(0), q(1)), Err(Error::DegenerateParameters(_))));
}

#[test]
fn canonical_pair_examples() {
    let g = sl2();
    let form = FormSpec::new(&CaseTag::A1, 8).unwrap();
    let u = DoubleElem::monomial(FiniteKind::None, 3, 0, -1);
    let v = DoubleElem::monomial(FiniteKind::None, 3, 1, 0);
    assert_eq!(canonical_pair(&u, &v, &form, &g).unwrap(), q(1));

    let formb = FormSpec::new(&CaseTag::B1, 8).unwrap();
    let h = DoubleElem::zero(FiniteKind::Plain, 3).with_finite(Finite::Plain(g.unit(2)));
    let hh = g.form.get(2, 2).clone();
    assert_eq!(canonical_pair(&h, &h, &formb, &g).unwrap(), -hh);
}

#[test]
fn embedding_examples() {
    let g = sl2();
    let mut f = LoopPart::new();
    f.insert(0, LaurentPoly::from_coeffs(&[q(1), q(2), q(3)]));
    let e = embed_gx(&f, &CaseTag::C, &g).unwrap();
    match &e.finite {
        Finite::Dual { h, g: eps } => {
            assert_eq!(h[0], q(1));
            assert_eq!(eps[0], q(2));
        }
        _ => panic!("wrong shape"),
    }
    let mut c = LoopPart::new();
    c.insert(2, LaurentPoly::constant(qf(1, 3)));
    let b = embed_gx(&c, &CaseTag::B1, &g).unwrap();
    let form = FormSpec::new(&CaseTag::B1, 8).unwrap();
    assert_eq!(canonical_pair(&b, &b, &form, &g).unwrap(), q(0));
    let a = embed_gx(&f, &CaseTag::A2, &g).unwrap();
    assert_eq!(a.loop_part, f);
}

mod props {
    use super::*;
    use liecurrent::double::classify_a_poly;
    use liecurrent::Scalar;
    use proptest::prelude::*;

    fn scalar() -> impl Strategy<Value = Scalar> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| qf(n, d))
    }

    fn case() -> impl Strategy<Value = CaseTag> {
        prop::sample::select(all_cases())
    }

    fn loop_part(lo: i64, hi: i64) -> impl Strategy<Value = LoopPart> {
        prop::collection::vec((0usize..3, lo..=hi, scalar()), 0..4).prop_map(|ts| {
            let mut f = LoopPart::new();
            for (b, k, c) in ts {
                let e = f.entry(b).or_insert_with(LaurentPoly::zero);
                *e = &*e + &LaurentPoly::monomial(c, k);
            }
            f.retain(|_, p| !p.is_zero());
            f
        })
    }

    fn elem(kind: FiniteKind) -> impl Strategy<Value = DoubleElem> {
        let vec3 = || prop::collection::vec(scalar(), 3);
        (loop_part(-3, 3), vec3(), vec3()).prop_map(move |(l, a, b)| {
            let finite = match kind {
                FiniteKind::None => Finite::None,
                FiniteKind::Plain => Finite::Plain(a),
                FiniteKind::Dual => Finite::Dual { h: a, g: b },
            };
            DoubleElem { loop_part: l, finite }
        })
    }

    fn case_and_triple() -> impl Strategy<Value = (CaseTag, DoubleElem, DoubleElem, DoubleElem)> {
        case().prop_flat_map(|c| {
            let k = c.finite_kind();
            (Just(c), elem(k), elem(k), elem(k))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn canonical_form_is_invariant((c, u, v, w) in case_and_triple()) {
            let g = sl2();
            let form = FormSpec::new(&c, 24).unwrap();
            let lhs = canonical_pair(&u.bracket(&v, &g), &w, &form, &g).unwrap();
            let rhs = canonical_pair(&u, &v.bracket(&w, &g), &form, &g).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", c);
        }

        #[test]
        fn embedded_gx_is_isotropic(c in case(), f1 in loop_part(0, 4), f2 in loop_part(0, 4)) {
            let g = sl2();
            let form = FormSpec::new(&c, 24).unwrap();
            let a = embed_gx(&f1, &c, &g).unwrap();
            let b = embed_gx(&f2, &c, &g).unwrap();
            prop_assert_eq!(canonical_pair(&a, &b, &form, &g).unwrap(), q(0), "{}", c);
        }

        #[test]
        fn classifier_ignores_rescaling(
            rep in 0usize..4,
            (n, d) in (-5i64..=5, 1i64..=5).prop_filter("c != 0", |(n, _)| *n != 0),
        ) {
            let c = qf(n, d);
            let p = match rep {
                0 => LaurentPoly::one(),
                1 => LaurentPoly::from_terms([(0, q(1)), (1, q(-1))]),
                2 => LaurentPoly::from_terms([(0, q(1)), (1, q(-2)), (2, q(1))]),
                _ => LaurentPoly::from_terms([(0, q(1)), (1, q(-3)), (2, q(2))]),
            };
            let scaled = LaurentPoly::from_terms(p.terms().map(|(k, v)| {
                let ck = (0..*k).fold(q(1), |acc, _| acc * &c);
                (*k, v * ck)
            }));
            let a = classify_a_poly(&p).unwrap();
            let b = classify_a_poly(&scaled).unwrap();
            prop_assert_eq!(a.name(), b.name());
            if let (liecurrent::double::AClass::A4 { j: j1 }, liecurrent::double::AClass::A4 { j: j2 }) = (&a, &b) {
                prop_assert_eq!(j1, j2);
            }
        }
    }
}
