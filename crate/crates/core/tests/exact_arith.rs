use liecurrent::arith::poly::diff;
use liecurrent::arith::scalar::{q, qf};
use liecurrent::arith::{residue_pair, series_inverse, LaurentPoly, MultiPoly, TruncSeries};
use liecurrent::Scalar;
use num_traits::Zero;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| qf(n, d))
}

fn multi() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), scalar()), 0..5)
        .prop_map(|ts| MultiPoly::from_terms(ts.into_iter().map(|((a, b, c), s)| ([a, b, c], s))))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..4, scalar()), 0..5).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #[test]
    fn multipoly_ring_laws(a in multi(), b in multi(), c in multi()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!(!(&a * &b).terms().any(|(_, s)| s.is_zero()));
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn series_inverse_multiplies_back(tail in prop::collection::vec(scalar(), 0..5), order in 0usize..8) {
        let mut cs = vec![q(1)];
        cs.extend(tail);
        let p = MultiPoly::from_terms(cs.iter().enumerate().map(|(i, c)| ([i as u32, 0, 0], c.clone())));
        let inv = series_inverse(&p, order).unwrap();
        let prod = TruncSeries::new(cs, order).mul(&inv);
        let mut want = vec![Scalar::zero(); order + 1];
        want[0] = q(1);
        prop_assert_eq!(prod.coeffs(), &want[..]);
    }

    #[test]
    fn residue_is_symmetric_and_bilinear(
        f in laurent(), f2 in laurent(), g in laurent(), s in scalar(),
        w in prop::collection::vec(scalar(), 12),
    ) {
        let mut wc = vec![q(1)];
        wc.extend(w);
        let w = TruncSeries::new(wc, 12);
        let fg = residue_pair(&f, &g, &w).unwrap();
        prop_assert_eq!(&fg, &residue_pair(&g, &f, &w).unwrap());
        let lin = residue_pair(&(&f + &f2.scale(&s)), &g, &w).unwrap();
        prop_assert_eq!(lin, fg + s * residue_pair(&f2, &g, &w).unwrap());
    }

    #[test]
    fn divide_exact_undoes_multiplication(a in multi(), b in multi()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a.clone());
        // the (y - x) denominators of the r-matrix code
        let d = diff(0, 1).pow(2);
        prop_assert_eq!((&a * &d).divide_exact(&d).unwrap(), a);
    }
}

#[test]
fn divide_exact_examples() {
    let (x, y) = (MultiPoly::x(), MultiPoly::y());
    let d = &x - &y;
    assert_eq!((&x.pow(2) - &y.pow(2)).divide_exact(&d).unwrap(), &x + &y);
    let cube = (&x.pow(3) - &y.pow(3)).divide_exact(&d).unwrap();
    assert_eq!(cube, &(&x.pow(2) + &(&x * &y)) + &y.pow(2));
    assert!((&x.pow(2) + &y.pow(2)).divide_exact(&d).is_err());
}
