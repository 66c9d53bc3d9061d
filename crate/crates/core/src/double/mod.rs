//! Classical doubles of g[x]: g[x,x^-1] (cases A), g[x,x^-1] + g (B),
//! g[x,x^-1] + g[eps] (C), with their canonical forms.

pub mod classify;
pub mod manin;
pub mod pattern;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::laurent::LaurentPoly;
use crate::arith::poly::MultiPoly;
use crate::arith::scalar::{q, to_short, Scalar};
use crate::arith::series::{residue_of_product, series_inverse, TruncSeries};
use crate::error::{Error, Result};
use crate::lie::LieAlgebraData;

pub use classify::{classify_a_poly, AClass};
pub use manin::{manin_verify, perp_window, PerpResult, Window};
pub use pattern::{build_w, involution_on_w, pattern_equal, LagrangianPattern};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    A1,
    A2,
    A3,
    A4 { m1: Scalar, m2: Scalar },
    B1,
    B2,
    C,
}

impl CaseTag {
    pub fn a4(m1: Scalar, m2: Scalar) -> Result<Self> {
        if m1 == m2 {
            return Err(Error::DegenerateParameters(
                "A4 needs m1 != m2; equal parameters are case A3 up to scaling (see classify_a_poly)"
                    .into(),
            ));
        }
        if (&m1 * &m2).is_zero() {
            return Err(Error::DegenerateParameters(
                "A4 needs m1*m2 != 0; a vanishing parameter is case A2 or A1 (see classify_a_poly)"
                    .into(),
            ));
        }
        Ok(CaseTag::A4 { m1, m2 })
    }

    /// Parses `A1`..`C`; A4 takes its parameters separately.
    pub fn parse(name: &str, m1: Option<Scalar>, m2: Option<Scalar>) -> Result<Self> {
        match name.to_ascii_uppercase().as_str() {
            "A1" => Ok(CaseTag::A1),
            "A2" => Ok(CaseTag::A2),
            "A3" => Ok(CaseTag::A3),
            "A4" => match (m1, m2) {
                (Some(a), Some(b)) => CaseTag::a4(a, b),
                _ => Err(Error::Invalid("case A4 needs --m1 and --m2".into())),
            },
            "B1" => Ok(CaseTag::B1),
            "B2" => Ok(CaseTag::B2),
            "C" => Ok(CaseTag::C),
            other => Err(Error::Invalid(format!("unknown case {other}"))),
        }
    }

    pub fn is_a(&self) -> bool {
        matches!(self, CaseTag::A1 | CaseTag::A2 | CaseTag::A3 | CaseTag::A4 { .. })
    }

    pub fn finite_kind(&self) -> FiniteKind {
        match self {
            CaseTag::B1 | CaseTag::B2 => FiniteKind::Plain,
            CaseTag::C => FiniteKind::Dual,
            _ => FiniteKind::None,
        }
    }

    /// The polynomial 1/a(x) (cases A) or 1/b(x) (cases B); 1 for case C.
    pub fn inverse_weight(&self) -> LaurentPoly {
        let one = Scalar::one();
        match self {
            CaseTag::A1 | CaseTag::B1 | CaseTag::C => LaurentPoly::one(),
            CaseTag::A2 | CaseTag::B2 => LaurentPoly::from_coeffs(&[one, q(-1)]),
            CaseTag::A3 => LaurentPoly::from_coeffs(&[one, q(-2), q(1)]),
            CaseTag::A4 { m1, m2 } => LaurentPoly::from_coeffs(&[one, -(m1 + m2), m1 * m2]),
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::A1 => write!(f, "A1"),
            CaseTag::A2 => write!(f, "A2"),
            CaseTag::A3 => write!(f, "A3"),
            CaseTag::A4 { m1, m2 } => write!(f, "A4(m1={}, m2={})", to_short(m1), to_short(m2)),
            CaseTag::B1 => write!(f, "B1"),
            CaseTag::B2 => write!(f, "B2"),
            CaseTag::C => write!(f, "C"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteKind {
    None,
    Plain,
    Dual,
}

/// Canonical form data. The loop part pairs as Res(K'(f1,f2) x^-shift w(x)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpec {
    pub case: Option<CaseTag>,
    pub inverse_weight: LaurentPoly,
    pub weight: TruncSeries,
    pub shift: i64,
    pub finite: FiniteKind,
    /// t(1) for case C; only c(x) = 1 occurs, so this is 0.
    pub c1: Scalar,
}

pub const DEFAULT_ORDER: usize = 64;

impl FormSpec {
    pub fn new(case: &CaseTag, order: usize) -> Result<Self> {
        let p = case.inverse_weight();
        let weight = series_inverse(&laurent_to_poly(&p)?, order)?;
        let shift = match case {
            CaseTag::B1 | CaseTag::B2 => 1,
            CaseTag::C => 2,
            _ => 0,
        };
        Ok(Self {
            case: Some(case.clone()),
            inverse_weight: p,
            weight,
            shift,
            finite: case.finite_kind(),
            c1: Scalar::zero(),
        })
    }

    /// An A-type form Res(K' a(x)) with arbitrary 1/a = p, p(0) = 1.
    pub fn a_weight(p: &LaurentPoly, order: usize) -> Result<Self> {
        Ok(Self {
            case: None,
            inverse_weight: p.clone(),
            weight: series_inverse(&laurent_to_poly(p)?, order)?,
            shift: 0,
            finite: FiniteKind::None,
            c1: Scalar::zero(),
        })
    }

    pub fn residue_form() -> Self {
        Self::a_weight(&LaurentPoly::one(), 0).expect("trivial weight")
    }

    /// Res(f x^-shift w).
    pub fn scalar_pair(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<Scalar> {
        if self.inverse_weight == LaurentPoly::one() {
            // w = 1 exactly; no truncation involved.
            return Ok((f * g).coeff(self.shift - 1));
        }
        residue_of_product(&(f * g).shift(-self.shift), &self.weight)
    }
}

pub(crate) fn laurent_to_poly(p: &LaurentPoly) -> Result<MultiPoly> {
    if !p.is_polynomial() {
        return Err(Error::Invalid(format!("{p} is not a polynomial")));
    }
    Ok(MultiPoly::from_terms(
        p.terms().map(|(k, c)| ([*k as u32, 0, 0], c.clone())),
    ))
}

pub type LoopPart = BTreeMap<usize, LaurentPoly>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Finite {
    None,
    Plain(Vec<Scalar>),
    /// h + g*eps
    Dual { h: Vec<Scalar>, g: Vec<Scalar> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleElem {
    pub loop_part: LoopPart,
    pub finite: Finite,
}

fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

fn add_vec(a: &[Scalar], b: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y * s).collect()
}

impl DoubleElem {
    pub fn zero(kind: FiniteKind, dim: usize) -> Self {
        let finite = match kind {
            FiniteKind::None => Finite::None,
            FiniteKind::Plain => Finite::Plain(zero_vec(dim)),
            FiniteKind::Dual => Finite::Dual {
                h: zero_vec(dim),
                g: zero_vec(dim),
            },
        };
        Self {
            loop_part: LoopPart::new(),
            finite,
        }
    }

    pub fn kind(&self) -> FiniteKind {
        match self.finite {
            Finite::None => FiniteKind::None,
            Finite::Plain(_) => FiniteKind::Plain,
            Finite::Dual { .. } => FiniteKind::Dual,
        }
    }

    /// b * p(x) with a zero finite part.
    pub fn loop_term(kind: FiniteKind, dim: usize, b: usize, p: LaurentPoly) -> Self {
        let mut e = Self::zero(kind, dim);
        if !p.is_zero() {
            e.loop_part.insert(b, p);
        }
        e
    }

    pub fn monomial(kind: FiniteKind, dim: usize, b: usize, k: i64) -> Self {
        Self::loop_term(kind, dim, b, LaurentPoly::x_pow(k))
    }

    pub fn with_finite(mut self, finite: Finite) -> Self {
        self.finite = finite;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_empty()
            && match &self.finite {
                Finite::None => true,
                Finite::Plain(v) => v.iter().all(Zero::is_zero),
                Finite::Dual { h, g } => h.iter().chain(g).all(Zero::is_zero),
            }
    }

    pub fn component(&self, b: usize) -> LaurentPoly {
        self.loop_part.get(&b).cloned().unwrap_or_default()
    }

    pub fn lowest(&self) -> Option<i64> {
        self.loop_part.values().filter_map(LaurentPoly::lowest).min()
    }

    pub fn highest(&self) -> Option<i64> {
        self.loop_part.values().filter_map(LaurentPoly::highest).max()
    }

    pub fn add_scaled(&self, other: &DoubleElem, s: &Scalar) -> DoubleElem {
        let mut loop_part = self.loop_part.clone();
        for (b, p) in &other.loop_part {
            let e = loop_part.entry(*b).or_default();
            *e += &p.scale(s);
            if e.is_zero() {
                loop_part.remove(b);
            }
        }
        let finite = match (&self.finite, &other.finite) {
            (Finite::None, Finite::None) => Finite::None,
            (Finite::Plain(a), Finite::Plain(b)) => Finite::Plain(add_vec(a, b, s)),
            (Finite::Dual { h: h1, g: g1 }, Finite::Dual { h: h2, g: g2 }) => Finite::Dual {
                h: add_vec(h1, h2, s),
                g: add_vec(g1, g2, s),
            },
            _ => panic!("mixing elements of different doubles"),
        };
        DoubleElem { loop_part, finite }
    }

    pub fn add(&self, other: &DoubleElem) -> DoubleElem {
        self.add_scaled(other, &Scalar::one())
    }

    pub fn sub(&self, other: &DoubleElem) -> DoubleElem {
        self.add_scaled(other, &-Scalar::one())
    }

    pub fn scale(&self, s: &Scalar) -> DoubleElem {
        let z = DoubleElem::zero(self.kind(), self.finite_dim());
        z.add_scaled(self, s)
    }

    fn finite_dim(&self) -> usize {
        match &self.finite {
            Finite::None => 0,
            Finite::Plain(v) => v.len(),
            Finite::Dual { h, .. } => h.len(),
        }
    }

    /// Multiplies the loop part by a Laurent polynomial; the finite part is dropped to zero.
    pub fn mul_loop(&self, f: &LaurentPoly) -> DoubleElem {
        let mut out = DoubleElem::zero(self.kind(), self.finite_dim());
        for (b, p) in &self.loop_part {
            let r = p * f;
            if !r.is_zero() {
                out.loop_part.insert(*b, r);
            }
        }
        out
    }

    pub fn bracket(&self, other: &DoubleElem, g: &LieAlgebraData) -> DoubleElem {
        let mut loop_part = LoopPart::new();
        for (a, p) in &self.loop_part {
            for (b, r) in &other.loop_part {
                let pr = p * r;
                for (k, c) in g.bracket_basis(*a, *b) {
                    let e = loop_part.entry(*k).or_default();
                    *e += &pr.scale(c);
                    if e.is_zero() {
                        loop_part.remove(k);
                    }
                }
            }
        }
        let finite = match (&self.finite, &other.finite) {
            (Finite::None, Finite::None) => Finite::None,
            (Finite::Plain(u), Finite::Plain(v)) => Finite::Plain(g.bracket(u, v)),
            (Finite::Dual { h: h1, g: g1 }, Finite::Dual { h: h2, g: g2 }) => {
                let hh = g.bracket(h1, h2);
                let e1 = g.bracket(h1, g2);
                let e2 = g.bracket(g1, h2);
                Finite::Dual {
                    h: hh,
                    g: add_vec(&e1, &e2, &Scalar::one()),
                }
            }
            _ => panic!("mixing elements of different doubles"),
        };
        DoubleElem { loop_part, finite }
    }

    /// Applies a linear map of g to every coefficient.
    pub fn map_g(&self, f: &crate::lie::BasisMap) -> DoubleElem {
        let mut loop_part = LoopPart::new();
        for (b, p) in &self.loop_part {
            for (k, c) in f.image(*b).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = loop_part.entry(k).or_default();
                *e += &p.scale(c);
                if e.is_zero() {
                    loop_part.remove(&k);
                }
            }
        }
        let finite = match &self.finite {
            Finite::None => Finite::None,
            Finite::Plain(v) => Finite::Plain(f.apply(v)),
            Finite::Dual { h, g } => Finite::Dual {
                h: f.apply(h),
                g: f.apply(g),
            },
        };
        DoubleElem { loop_part, finite }
    }

    /// ASCII rendering as a list of monomials, e.g. `-1/2*x^-1 h1 + e1`.
    pub fn render(&self, g: &LieAlgebraData) -> String {
        let mut parts = Vec::new();
        for (b, p) in &self.loop_part {
            parts.push(format!("({}) {}", p, g.labels[*b]));
        }
        let vec_str = |v: &[Scalar]| -> String {
            let items: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| format!("{} {}", to_short(c), g.labels[i]))
                .collect();
            if items.is_empty() {
                "0".into()
            } else {
                items.join(" + ")
            }
        };
        match &self.finite {
            Finite::None => {}
            Finite::Plain(v) => parts.push(format!("[finite: {}]", vec_str(v))),
            Finite::Dual { h, g: gg } => {
                parts.push(format!("[finite: {} ; eps*({})]", vec_str(h), vec_str(gg)))
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// The canonical invariant form of the double.
pub fn canonical_pair(u: &DoubleElem, v: &DoubleElem, form: &FormSpec, g: &LieAlgebraData) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (i, f) in &u.loop_part {
        for (j, h) in &v.loop_part {
            let k = g.form.get(*i, *j);
            if k.is_zero() {
                continue;
            }
            acc += k * form.scalar_pair(f, h)?;
        }
    }
    match (&u.finite, &v.finite) {
        (Finite::None, Finite::None) => {}
        (Finite::Plain(a), Finite::Plain(b)) => acc -= g.form_pair(a, b),
        (Finite::Dual { h: h1, g: g1 }, Finite::Dual { h: h2, g: g2 }) => {
            acc -= g.form_pair(g1, h2);
            acc -= g.form_pair(h1, g2);
            if !form.c1.is_zero() {
                acc -= &form.c1 * g.form_pair(h1, h2);
            }
        }
        _ => return Err(Error::Invalid("elements of different doubles".into())),
    }
    Ok(acc)
}

/// Embeds a polynomial element of g[x] into the double of `case`.
pub fn embed_gx(f: &LoopPart, case: &CaseTag, g: &LieAlgebraData) -> Result<DoubleElem> {
    let n = g.dim();
    for p in f.values() {
        if !p.is_polynomial() {
            return Err(Error::Invalid(format!("{p} is not polynomial")));
        }
    }
    let loop_part: LoopPart = f.iter().filter(|(_, p)| !p.is_zero()).map(|(b, p)| (*b, p.clone())).collect();
    let coeffs = |k: i64| -> Vec<Scalar> {
        let mut v = zero_vec(n);
        for (b, p) in f {
            v[*b] = p.coeff(k);
        }
        v
    };
    let finite = match case.finite_kind() {
        FiniteKind::None => Finite::None,
        FiniteKind::Plain => Finite::Plain(coeffs(0)),
        FiniteKind::Dual => Finite::Dual {
            h: coeffs(0),
            g: coeffs(1),
        },
    };
    Ok(DoubleElem { loop_part, finite })
}

/// Embedding of the single monomial b x^k.
pub fn embed_monomial(b: usize, k: i64, case: &CaseTag, g: &LieAlgebraData) -> DoubleElem {
    let mut f = LoopPart::new();
    f.insert(b, LaurentPoly::x_pow(k));
    embed_gx(&f, case, g).expect("monomials with k >= 0 are polynomial")
}
