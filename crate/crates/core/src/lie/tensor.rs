//! Tensors in g^{(x)2} and g^{(x)3} with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::algebra::LieAlgebraData;
use crate::arith::poly::MultiPoly;
use crate::arith::scalar::Scalar;
use crate::error::{Error, Result};

pub type Slot = [usize; 3];

/// Unused trailing slots of a 2-leg key are 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElem {
    legs: usize,
    terms: BTreeMap<Slot, MultiPoly>,
}

impl TensorElem {
    pub fn zero(legs: usize) -> Self {
        assert!(legs == 2 || legs == 3, "tensors have 2 or 3 legs");
        Self {
            legs,
            terms: BTreeMap::new(),
        }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn add_term(&mut self, slot: Slot, p: &MultiPoly) {
        if p.is_zero() {
            return;
        }
        debug_assert!(self.legs == 3 || slot[2] == 0);
        let e = self.terms.entry(slot).or_default();
        *e += p;
        if e.is_zero() {
            self.terms.remove(&slot);
        }
    }

    pub fn add_scaled(&mut self, slot: Slot, p: &MultiPoly, c: &Scalar) {
        if !c.is_zero() {
            self.add_term(slot, &p.scale(c));
        }
    }

    pub fn from_pairs(it: impl IntoIterator<Item = (usize, usize, MultiPoly)>) -> Self {
        let mut t = Self::zero(2);
        for (i, j, p) in it {
            t.add_term([i, j, 0], &p);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Slot, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, slot: &Slot) -> MultiPoly {
        self.terms.get(slot).cloned().unwrap_or_default()
    }

    pub fn first_term(&self) -> Option<(Slot, MultiPoly)> {
        self.terms.iter().next().map(|(s, p)| (*s, p.clone()))
    }

    pub fn add(&self, other: &TensorElem) -> TensorElem {
        assert_eq!(self.legs, other.legs);
        let mut out = self.clone();
        for (s, p) in &other.terms {
            out.add_term(*s, p);
        }
        out
    }

    pub fn sub(&self, other: &TensorElem) -> TensorElem {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Scalar) -> TensorElem {
        let mut out = Self::zero(self.legs);
        if c.is_zero() {
            return out;
        }
        for (s, p) in &self.terms {
            out.terms.insert(*s, p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, f: &MultiPoly) -> TensorElem {
        let mut out = Self::zero(self.legs);
        for (s, p) in &self.terms {
            out.add_term(*s, &(p * f));
        }
        out
    }

    /// Applies a variable permutation to every coefficient.
    pub fn relabel_vars(&self, perm: [usize; 3]) -> TensorElem {
        let mut out = Self::zero(self.legs);
        for (s, p) in &self.terms {
            out.add_term(*s, &p.relabel(perm));
        }
        out
    }

    /// Swaps the two legs of a 2-leg tensor, leaving variables alone.
    pub fn swap_legs(&self) -> TensorElem {
        assert_eq!(self.legs, 2);
        let mut out = Self::zero(2);
        for (s, p) in &self.terms {
            out.add_term([s[1], s[0], 0], p);
        }
        out
    }

    /// t^{21}(y, x): legs and variables swapped together.
    pub fn flip(&self) -> TensorElem {
        self.swap_legs().relabel_vars([1, 0, 2])
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&MultiPoly) -> Result<MultiPoly>) -> Result<TensorElem> {
        let mut out = Self::zero(self.legs);
        for (s, p) in &self.terms {
            out.add_term(*s, &f(p)?);
        }
        Ok(out)
    }

    /// Replaces b on `leg` by [a, b].
    pub fn bracket_leg(&self, leg: usize, a: usize, g: &LieAlgebraData) -> Result<TensorElem> {
        if leg >= self.legs {
            return Err(Error::BadLeg {
                leg,
                legs: self.legs,
            });
        }
        let mut out = Self::zero(self.legs);
        for (s, p) in &self.terms {
            for (k, c) in g.bracket_basis(a, s[leg]) {
                let mut t = *s;
                t[leg] = k.to_owned();
                out.add_scaled(t, p, c);
            }
        }
        Ok(out)
    }

    /// Same as `bracket_leg` but with a polynomial multiplier on the acting element.
    pub fn bracket_leg_poly(
        &self,
        leg: usize,
        a: usize,
        f: &MultiPoly,
        g: &LieAlgebraData,
    ) -> Result<TensorElem> {
        Ok(self.bracket_leg(leg, a, g)?.mul_poly(f))
    }

    pub fn render(&self, g: &LieAlgebraData) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(s, p)| {
                let legs: Vec<&str> = s[..self.legs].iter().map(|&i| g.labels[i].as_str()).collect();
                format!("({}) {}", p, legs.join(" (x) "))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p}) b{}", s[0])?;
            for i in 1..self.legs {
                write!(f, "(x)b{}", s[i])?;
            }
        }
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        Ok(())
    }
}
