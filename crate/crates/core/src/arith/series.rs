//! Truncated power series and the residue pairing.

use std::fmt;

use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::poly::MultiPoly;
use super::scalar::{to_short, Scalar};
use crate::error::{Error, Result};

/// Coefficients of x^0..=x^order; higher ones are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Scalar>,
}

impl TruncSeries {
    pub fn new(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.resize(order + 1, Scalar::zero());
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Scalar::one()], order)
    }

    /// A polynomial read as a series known up to `order`.
    pub fn from_laurent(p: &LaurentPoly, order: usize) -> Result<Self> {
        if !p.is_polynomial() {
            return Err(Error::Invalid(format!("{p} has negative powers")));
        }
        let mut c = vec![Scalar::zero(); order + 1];
        for (k, v) in p.terms() {
            if (*k as usize) <= order {
                c[*k as usize] = v.clone();
            }
        }
        Ok(Self { coeffs: c })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> Result<&Scalar> {
        self.coeffs.get(i).ok_or(Error::InsufficientOrder {
            needed: i as i64,
            have: self.order() as i64,
        })
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let n = self.order().min(other.order());
        let mut c = vec![Scalar::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                c[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncSeries { coeffs: c }
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(&self.coeffs)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.to_laurent().to_string();
        write!(f, "{} + O(x^{})", body, self.order() + 1)
    }
}

/// Inverse of a univariate polynomial with constant term 1, up to x^order.
pub fn series_inverse(p: &MultiPoly, order: usize) -> Result<TruncSeries> {
    let used = p.vars_used();
    if used.len() > 1 {
        return Err(Error::Invalid(format!("{p} is not univariate")));
    }
    let v = used.first().copied().unwrap_or(0);
    let c0 = p.constant_term();
    if !c0.is_one() {
        return Err(Error::NonUnitConstantTerm(to_short(&c0)));
    }
    let mut pc = vec![Scalar::zero(); order + 1];
    for (e, c) in p.terms() {
        if (e[v] as usize) <= order {
            pc[e[v] as usize] = c.clone();
        }
    }
    // q_k = -sum_{i=1..k} p_i q_{k-i}
    let mut qc: Vec<Scalar> = vec![Scalar::one()];
    for k in 1..=order {
        let mut acc = Scalar::zero();
        for i in 1..=k {
            if !pc[i].is_zero() {
                acc -= &pc[i] * &qc[k - i];
            }
        }
        qc.push(acc);
    }
    Ok(TruncSeries { coeffs: qc })
}

/// Coefficient of x^-1 in f*g*w.
pub fn residue_pair(f: &LaurentPoly, g: &LaurentPoly, w: &TruncSeries) -> Result<Scalar> {
    residue_of_product(&(f * g), w)
}

/// Coefficient of x^-1 in p*w, refusing when w is too short.
pub fn residue_of_product(p: &LaurentPoly, w: &TruncSeries) -> Result<Scalar> {
    let low = match p.lowest() {
        None => return Ok(Scalar::zero()),
        Some(l) => l,
    };
    if low >= 0 {
        return Ok(Scalar::zero());
    }
    let needed = -low - 1;
    if (w.order() as i64) < needed {
        return Err(Error::InsufficientOrder {
            needed,
            have: w.order() as i64,
        });
    }
    let mut acc = Scalar::zero();
    for (k, c) in p.terms() {
        if *k > -1 {
            break;
        }
        acc += c * &w.coeffs[(-1 - k) as usize];
    }
    Ok(acc)
}
