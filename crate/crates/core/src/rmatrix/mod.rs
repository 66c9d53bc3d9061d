//! r-matrices as tensors over a power of (y - x), the CYBE and skewness
//! checks, cobrackets, and dual bases.

pub mod cobracket;
pub mod cybe;
pub mod duals;

use std::fmt;

use num_traits::Zero;

use crate::arith::poly::{diff, MultiPoly};
use crate::arith::scalar::{half, q, to_short, Scalar};
use crate::double::CaseTag;
use crate::error::{Error, Result};
use crate::lie::{cartan_omega, casimir_omega, drinfeld_jimbo_r, LieAlgebraData, TensorElem};

pub use cobracket::{act, cobracket, cocycle_check, cocycle_check_with, degree_bound_check, degree_bound_witness};
pub use cybe::{cybe_check, skew_check, CybeReport, SkewReport};
pub use duals::{dual_basis_verify, dual_family, manin_consistency_check, manin_consistency_with, closed_form_dual, DualFamily};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RCase {
    Case(CaseTag),
    DJ,
    /// The four double types r_1..r_4, written with the denominator x - y.
    FourTypes(u8),
    Rm { m1: Scalar, m2: Scalar },
}

impl fmt::Display for RCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RCase::Case(c) => write!(f, "{c}"),
            RCase::DJ => write!(f, "DJ"),
            RCase::FourTypes(k) => write!(f, "r{k}"),
            RCase::Rm { m1, m2 } => write!(f, "r_m(m1={}, m2={})", to_short(m1), to_short(m2)),
        }
    }
}

/// r = numerator / (y - x)^m + twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalR {
    pub label: String,
    pub numerator: TensorElem,
    pub denom_power: u32,
    pub twist: Option<TensorElem>,
}

impl RationalR {
    pub fn new(label: impl Into<String>, numerator: TensorElem, denom_power: u32) -> Self {
        Self {
            label: label.into(),
            numerator,
            denom_power,
            twist: None,
        }
    }

    /// Adds a polynomial twist p, requiring p(x,y) + p^21(y,x) = 0.
    pub fn with_twist(self, p: TensorElem) -> Result<Self> {
        let s = p.add(&p.flip());
        if let Some((slot, c)) = s.first_term() {
            return Err(Error::Invalid(format!(
                "twist is not skew: p + p21(y,x) has coefficient {c} at {slot:?}"
            )));
        }
        Ok(self.with_twist_unchecked(p))
    }

    /// Same without the skewness requirement; used by negative controls.
    pub fn with_twist_unchecked(mut self, p: TensorElem) -> Self {
        self.twist = Some(match self.twist.take() {
            Some(t) => t.add(&p),
            None => p,
        });
        self
    }

    pub fn denominator(&self) -> MultiPoly {
        diff(0, 1).pow(self.denom_power)
    }

    /// Polynomial numerator of r over (y - x)^m, twist included.
    pub fn cleared(&self) -> TensorElem {
        match &self.twist {
            None => self.numerator.clone(),
            Some(p) => self.numerator.add(&p.mul_poly(&self.denominator())),
        }
    }
}

/// r_{m1,m2} = sum_{a>0} (m1 e_-a (x) e_a + m2 e_a (x) e_-a) + (m1+m2)/2 sum_i h_i (x) h'_i.
pub fn r_m1m2(g: &LieAlgebraData, m1: &Scalar, m2: &Scalar) -> TensorElem {
    let mut t = cartan_omega(g).scale(&((m1 + m2) * half()));
    for k in 0..g.n_pos() {
        t.add_term([g.neg(k), g.pos(k), 0], &MultiPoly::constant(m1.clone()));
        t.add_term([g.pos(k), g.neg(k), 0], &MultiPoly::constant(m2.clone()));
    }
    t
}

fn poly(terms: &[([u32; 3], i64)]) -> MultiPoly {
    MultiPoly::from_terms(terms.iter().map(|(e, c)| (*e, q(*c))))
}

pub fn build_r(which: &RCase, g: &LieAlgebraData) -> Result<RationalR> {
    let omega = casimir_omega(g);
    let dj = drinfeld_jimbo_r(g);
    let yx = diff(0, 1);
    let label = which.to_string();
    let x = MultiPoly::x();
    let r = match which {
        RCase::DJ => RationalR::new(label, dj, 0),
        RCase::Rm { m1, m2 } => RationalR::new(label, r_m1m2(g, m1, m2), 0),
        RCase::FourTypes(k) => match k {
            1 => RationalR::new(label, TensorElem::zero(2), 0),
            2 => RationalR::new(label, omega.scale(&q(-1)), 1),
            3 => RationalR::new(label, omega.mul_poly(&x).scale(&q(-1)).add(&dj.mul_poly(&yx)), 1),
            4 => RationalR::new(label, omega.mul_poly(&poly(&[([1, 1, 0], -1)])), 1),
            _ => return Err(Error::Invalid(format!("there is no type r{k}"))),
        },
        RCase::Case(c) => match c {
            CaseTag::A1 => RationalR::new(label, omega, 1),
            CaseTag::A2 => {
                let n = omega
                    .mul_poly(&poly(&[([0, 0, 0], 1), ([1, 0, 0], -1)]))
                    .sub(&dj.mul_poly(&yx));
                RationalR::new(label, n, 1)
            }
            CaseTag::A3 => {
                // (x - 1)(y - 1) = xy - x - y + 1
                let f = poly(&[([1, 1, 0], 1), ([1, 0, 0], -1), ([0, 1, 0], -1), ([0, 0, 0], 1)]);
                RationalR::new(label, omega.mul_poly(&f), 1)
            }
            CaseTag::A4 { m1, m2 } => {
                CaseTag::a4(m1.clone(), m2.clone())?;
                let f = MultiPoly::from_terms([
                    ([0, 0, 0], q(1)),
                    ([1, 0, 0], -(m1 + m2)),
                    ([1, 1, 0], m1 * m2),
                ]);
                let n = omega.mul_poly(&f).sub(&r_m1m2(g, m1, m2).mul_poly(&yx));
                RationalR::new(label, n, 1)
            }
            CaseTag::B1 => RationalR::new(label, omega.mul_poly(&x).add(&dj.mul_poly(&yx)), 1),
            CaseTag::B2 => {
                let f = poly(&[([1, 0, 0], 1), ([1, 1, 0], -1)]);
                RationalR::new(label, omega.mul_poly(&f).add(&dj.mul_poly(&yx)), 1)
            }
            CaseTag::C => RationalR::new(label, omega.mul_poly(&poly(&[([1, 1, 0], 1)])), 1),
        },
    };
    Ok(r)
}

/// The nine constructions exercised by the CYBE and cobracket suites.
pub fn standard_cases() -> Vec<RCase> {
    let a4 = |a: i64, b: i64| RCase::Case(CaseTag::a4(q(a), q(b)).expect("valid parameters"));
    vec![
        RCase::Case(CaseTag::A1),
        RCase::Case(CaseTag::A2),
        RCase::Case(CaseTag::A3),
        a4(1, 2),
        a4(2, 3),
        RCase::Case(CaseTag::B1),
        RCase::Case(CaseTag::B2),
        RCase::Case(CaseTag::C),
        RCase::DJ,
    ]
}

/// Render a 2-leg tensor as (basis_i, basis_j, monomial, "p/q") rows.
pub fn tensor_rows(t: &TensorElem, g: &LieAlgebraData) -> Vec<(String, String, [u32; 3], String)> {
    let mut out = Vec::new();
    for (s, p) in t.terms() {
        for (e, c) in p.terms() {
            if c.is_zero() {
                continue;
            }
            out.push((
                g.labels[s[0]].clone(),
                g.labels[s[1]].clone(),
                *e,
                crate::arith::scalar::to_pq(c),
            ));
        }
    }
    out
}

/// The r-matrix induced by the B1/B2 patterns through r = sum E x^n (x) dual(E x^n):
/// the closed form with r_DJ replaced by r_DJ^21.
pub fn r_from_b_pattern(case: &CaseTag, g: &LieAlgebraData) -> Result<RationalR> {
    let a = match case {
        CaseTag::B1 => MultiPoly::x(),
        CaseTag::B2 => poly(&[([1, 0, 0], 1), ([1, 1, 0], -1)]),
        other => return Err(Error::Invalid(format!("{other} is not a B case"))),
    };
    let dj21 = drinfeld_jimbo_r(g).swap_legs();
    let n = casimir_omega(g).mul_poly(&a).add(&dj21.mul_poly(&diff(0, 1)));
    Ok(RationalR::new(format!("{case} (pattern orientation)"), n, 1))
}

fn rows_json(t: &TensorElem, g: &LieAlgebraData) -> serde_json::Value {
    tensor_rows(t, g)
        .into_iter()
        .map(|(i, j, e, c)| serde_json::json!([i, j, e, c]))
        .collect()
}

/// {case, numerator: [[b_i, b_j, [ex, ey, ez], "p/q"]...], denom_power, twist}.
pub fn r_to_json(r: &RationalR, g: &LieAlgebraData) -> serde_json::Value {
    serde_json::json!({
        "case": r.label,
        "algebra": g.kind.name(),
        "numerator": rows_json(&r.numerator, g),
        "denom_power": r.denom_power,
        "twist": r.twist.as_ref().map(|t| rows_json(t, g)),
    })
}
