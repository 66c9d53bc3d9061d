//! Sparse polynomials in x, y, z with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::scalar::{to_short, Scalar};
use crate::error::{Error, Result};

pub type Exp = [u32; 3];

pub const VARS: [&str; 3] = ["x", "y", "z"];

/// Term map keyed by exponent vectors. Arrays compare lexicographically,
/// so the last key is the leading term for lex order x > y > z.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    terms: BTreeMap<Exp, Scalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn monomial(c: Scalar, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The variable with index `i` (0 = x, 1 = y, 2 = z).
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(Scalar::one(), e)
    }

    pub fn x() -> Self {
        Self::var(0)
    }
    pub fn y() -> Self {
        Self::var(1)
    }
    pub fn z() -> Self {
        Self::var(2)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exp, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exp) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<(&Exp, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Variables that actually occur.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..3)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&[0, 0, 0])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Moves variable `i` to position `perm[i]`.
    pub fn relabel(&self, perm: [usize; 3]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut f = [0; 3];
            for i in 0..3 {
                f[perm[i]] += e[i];
            }
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn swap_xy(&self) -> Self {
        self.relabel([1, 0, 2])
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_monomial(&self, c: &Scalar, e: Exp) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(f, v)| ([f[0] + e[0], f[1] + e[1], f[2] + e[2]], v * c))
                .collect(),
        }
    }

    /// Exact quotient `n / d`; the remainder is the witness when it fails.
    pub fn divide_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let (lead_e, lead_c) = match d.leading() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(Error::Invalid("division by zero polynomial".into())),
        };
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero();
        let mut stuck = MultiPoly::zero();
        while let Some((e, c)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            if (0..3).all(|i| e[i] >= lead_e[i]) {
                let qe = [e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2]];
                let qc = &c / &lead_c;
                rem -= &d.mul_monomial(&qc, qe);
                quo.add_term(qe, qc);
            } else {
                rem.terms.remove(&e);
                stuck.add_term(e, c);
            }
        }
        if stuck.is_zero() {
            Ok(quo)
        } else {
            Err(Error::NotDivisible {
                remainder: stuck.to_string(),
            })
        }
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], c * d);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for i in 0..3 {
                match e[i] {
                    0 => {}
                    1 => factors.push(VARS[i].to_string()),
                    n => factors.push(format!("{}^{}", VARS[i], n)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", to_short(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", to_short(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `y - x` relabelled into the requested pair of variables: `var(j) - var(i)`.
pub fn diff(i: usize, j: usize) -> MultiPoly {
    &MultiPoly::var(j) - &MultiPoly::var(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::q;

    #[test]
    fn divide_examples() {
        let x = MultiPoly::x();
        let y = MultiPoly::y();
        let n = &(&x * &x) - &(&y * &y);
        assert_eq!(n.divide_exact(&(&x - &y)).unwrap(), &x + &y);
        let n3 = &x.pow(3) - &y.pow(3);
        let expect = &(&(&x * &x) + &(&x * &y)) + &(&y * &y);
        assert_eq!(n3.divide_exact(&(&x - &y)).unwrap(), expect);
        let n2 = &(&x * &x) + &(&y * &y);
        assert!(matches!(
            n2.divide_exact(&(&x - &y)),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn display_and_relabel() {
        let p = MultiPoly::from_terms([([2, 0, 0], q(3)), ([0, 1, 0], q(-1)), ([0, 0, 0], q(1))]);
        assert_eq!(p.to_string(), "3*x^2 - y + 1");
        assert_eq!(p.swap_xy().to_string(), "-x + 3*y^2 + 1");
        assert_eq!(p.relabel([0, 2, 1]).to_string(), "3*x^2 - z + 1");
    }

    #[test]
    fn zero_terms_never_stored() {
        let x = MultiPoly::x();
        let p = &x - &x;
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }
}
