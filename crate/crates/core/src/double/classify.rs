//! Normal forms of 1/a(x) under x -> c x.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::laurent::LaurentPoly;
use crate::arith::scalar::{q, to_short, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AClass {
    A1,
    /// p = 1 - c x; x -> x/c gives 1 - x.
    A2 { c: Scalar },
    /// p = (1 - c x)^2.
    A3 { c: Scalar },
    /// j = b1^2 / b2, which equals m1/m2 + m2/m1 + 2.
    A4 { j: Scalar },
}

impl AClass {
    pub fn name(&self) -> &'static str {
        match self {
            AClass::A1 => "A1",
            AClass::A2 { .. } => "A2",
            AClass::A3 { .. } => "A3",
            AClass::A4 { .. } => "A4",
        }
    }
}

impl fmt::Display for AClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AClass::A1 => write!(f, "A1"),
            AClass::A2 { c } => write!(f, "A2, c={}", to_short(c)),
            AClass::A3 { c } => write!(f, "A3, c={}", to_short(c)),
            AClass::A4 { j } => write!(f, "A4, j={}", to_short(j)),
        }
    }
}

pub fn classify_a_poly(p: &LaurentPoly) -> Result<AClass> {
    if !p.is_polynomial() {
        return Err(Error::BadDegree(format!("{p} has negative powers")));
    }
    let deg = p.highest().unwrap_or(0);
    if deg > 2 {
        return Err(Error::BadDegree(format!("degree {deg} > 2")));
    }
    if !p.coeff(0).is_one() {
        return Err(Error::BadConstantTerm(to_short(&p.coeff(0))));
    }
    let b1 = p.coeff(1);
    let b2 = p.coeff(2);
    Ok(match deg {
        0 => AClass::A1,
        1 => AClass::A2 { c: -b1 },
        _ => {
            let disc = &b1 * &b1 - q(4) * &b2;
            if disc.is_zero() {
                AClass::A3 { c: -b1 / q(2) }
            } else {
                AClass::A4 { j: &b1 * &b1 / &b2 }
            }
        }
    })
}

/// p(c x).
pub fn rescale_variable(p: &LaurentPoly, c: &Scalar) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (k, v) in p.terms() {
        let mut f = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            f *= c;
        }
        if *k < 0 {
            f = Scalar::one() / f;
        }
        out.add_term(*k, v * f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(&cs.iter().map(|&c| q(c)).collect::<Vec<_>>())
    }

    #[test]
    fn examples() {
        assert_eq!(classify_a_poly(&p(&[1])).unwrap(), AClass::A1);
        assert_eq!(classify_a_poly(&p(&[1, -2, 1])).unwrap().name(), "A3");
        assert_eq!(
            classify_a_poly(&p(&[1, -3, 2])).unwrap(),
            AClass::A4 { j: crate::arith::scalar::qf(9, 2) }
        );
        assert_eq!(classify_a_poly(&p(&[1, -3, 2])).unwrap().to_string(), "A4, j=9/2");
        assert!(matches!(classify_a_poly(&p(&[2, 1])), Err(Error::BadConstantTerm(_))));
        assert!(matches!(classify_a_poly(&p(&[1, 0, 0, 1])), Err(Error::BadDegree(_))));
    }
}
