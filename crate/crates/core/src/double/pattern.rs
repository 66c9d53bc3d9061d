//! Finitely presented Lagrangian subalgebras: exceptional generators plus a
//! tail q(x) g[x^-1].

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{CaseTag, DoubleElem, Finite, FiniteKind};
use crate::arith::laurent::LaurentPoly;
use crate::arith::linalg::{Matrix, Vector};
use crate::arith::scalar::{half, q, Scalar};
use crate::error::{Error, Result};
use crate::lie::{BasisMap, LieAlgebraData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianPattern {
    pub case: CaseTag,
    pub kind: FiniteKind,
    pub dim: usize,
    pub exceptional: Vec<DoubleElem>,
    /// q(x); the tail is q(x) g[x^-1]. None means no tail.
    pub tail: Option<LaurentPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Key {
    Loop(usize, i64),
    Fin(usize),
}

pub(crate) fn keys_of(e: &DoubleElem, dim: usize) -> Vec<(Key, Scalar)> {
    let mut out = Vec::new();
    for (b, p) in &e.loop_part {
        for (k, c) in p.terms() {
            out.push((Key::Loop(*b, *k), c.clone()));
        }
    }
    match &e.finite {
        Finite::None => {}
        Finite::Plain(v) => {
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    out.push((Key::Fin(i), c.clone()));
                }
            }
        }
        Finite::Dual { h, g } => {
            for (i, c) in h.iter().enumerate() {
                if !c.is_zero() {
                    out.push((Key::Fin(i), c.clone()));
                }
            }
            for (i, c) in g.iter().enumerate() {
                if !c.is_zero() {
                    out.push((Key::Fin(dim + i), c.clone()));
                }
            }
        }
    }
    out
}

/// Coordinates of several elements over the union of their supports.
pub(crate) fn vectorize(elems: &[&DoubleElem], dim: usize) -> (usize, Vec<Vector>) {
    let mut index: BTreeMap<Key, usize> = BTreeMap::new();
    let all: Vec<Vec<(Key, Scalar)>> = elems.iter().map(|e| keys_of(e, dim)).collect();
    for ks in &all {
        for (k, _) in ks {
            let n = index.len();
            index.entry(*k).or_insert(n);
        }
    }
    let width = index.len();
    let vecs = all
        .into_iter()
        .map(|ks| {
            let mut v = vec![Scalar::zero(); width];
            for (k, c) in ks {
                v[index[&k]] = c;
            }
            v
        })
        .collect();
    (width, vecs)
}

/// Remainder of the C[z]-part (z = x^-1) of f modulo q; positive powers are kept.
pub fn reduce_mod_tail(f: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    let d = -q.lowest().expect("nonzero tail");
    let lc = q.coeff(-d);
    let mut r = f.clone();
    while let Some(l) = r.lowest() {
        if l > 0 || -l < d {
            break;
        }
        let c = r.coeff(l) / &lc;
        r -= &q.shift(l + d).scale(&c);
    }
    r
}

impl LagrangianPattern {
    /// z-degree of q, i.e. minus its lowest x-exponent.
    pub fn tail_degree(&self) -> Option<i64> {
        self.tail.as_ref().map(|t| -t.lowest().expect("nonzero tail"))
    }

    /// Whether q lies in C[x^-1]; this makes the tail an ideal of C[x^-1] g.
    pub fn tail_in_cz(&self) -> bool {
        self.tail.as_ref().map_or(true, |t| t.highest().unwrap() <= 0)
    }

    /// q(x) x^-j b.
    pub fn tail_generator(&self, b: usize, j: i64) -> Option<DoubleElem> {
        let t = self.tail.as_ref()?;
        Some(DoubleElem::loop_term(self.kind, self.dim, b, t.shift(-j)))
    }

    /// Exceptional loop parts all in C[x^-1].
    pub fn exceptional_in_cz(&self) -> bool {
        self.exceptional
            .iter()
            .all(|e| e.highest().map_or(true, |h| h <= 0))
    }

    pub fn reduce(&self, e: &DoubleElem) -> DoubleElem {
        match &self.tail {
            None => e.clone(),
            Some(t) => {
                let mut out = e.clone();
                out.loop_part = e
                    .loop_part
                    .iter()
                    .map(|(b, p)| (*b, reduce_mod_tail(p, t)))
                    .filter(|(_, p)| !p.is_zero())
                    .collect();
                out
            }
        }
    }

    /// Exact membership. Returns the exceptional coefficients on success.
    pub fn membership(&self, e: &DoubleElem) -> Option<Vec<Scalar>> {
        if !self.tail_in_cz() {
            return None;
        }
        let target = self.reduce(e);
        let reduced: Vec<DoubleElem> = self.exceptional.iter().map(|x| self.reduce(x)).collect();
        let mut refs: Vec<&DoubleElem> = reduced.iter().collect();
        refs.push(&target);
        let (width, mut vecs) = vectorize(&refs, self.dim);
        let t = vecs.pop().unwrap();
        if width == 0 {
            return Some(vec![Scalar::zero(); reduced.len()]);
        }
        if vecs.is_empty() {
            return t.iter().all(Zero::is_zero).then(Vec::new);
        }
        Matrix::from_rows(vecs, width).transpose().solve(&t)
    }

    pub fn contains(&self, e: &DoubleElem) -> bool {
        self.membership(e).is_some()
    }

    pub fn map(&self, f: &BasisMap) -> LagrangianPattern {
        LagrangianPattern {
            case: self.case.clone(),
            kind: self.kind,
            dim: self.dim,
            exceptional: self.exceptional.iter().map(|e| e.map_g(f)).collect(),
            tail: self.tail.clone(),
        }
    }

    /// The negative control W = g[x] (truncated at x^hi) with the case's finite shape.
    pub fn gx_control(case: &CaseTag, g: &LieAlgebraData, hi: i64) -> Self {
        let mut exceptional = Vec::new();
        for k in 0..=hi {
            for b in 0..g.dim() {
                exceptional.push(super::embed_monomial(b, k, case, g));
            }
        }
        LagrangianPattern {
            case: case.clone(),
            kind: case.finite_kind(),
            dim: g.dim(),
            exceptional,
            tail: None,
        }
    }

    pub fn render(&self, g: &LieAlgebraData) -> String {
        let mut parts: Vec<String> = self.exceptional.iter().map(|e| e.render(g)).collect();
        if let Some(t) = &self.tail {
            parts.push(format!("({t}) g[x^-1]"));
        }
        format!("Span{{{}}}", parts.join(", "))
    }
}

fn x_inv_minus(c: &Scalar) -> LaurentPoly {
    LaurentPoly::from_terms([(-1, Scalar::one()), (0, -c.clone())])
}

/// The Lagrangian subalgebra for each case, over all positive roots and Cartan indices.
pub fn build_w(case: &CaseTag, g: &LieAlgebraData) -> Result<LagrangianPattern> {
    if let CaseTag::A4 { m1, m2 } = case {
        CaseTag::a4(m1.clone(), m2.clone())?;
    }
    let n = g.dim();
    let kind = case.finite_kind();
    let np = g.n_pos();
    let cartans: Vec<usize> = (1..=g.rank()).map(|i| g.cartan(i)).collect();
    let lt = |b: usize, p: LaurentPoly| DoubleElem::loop_term(kind, n, b, p);
    let one = Scalar::one();
    let mut exc = Vec::new();
    let tail = match case {
        CaseTag::A1 => LaurentPoly::x_pow(-1),
        CaseTag::A2 => {
            for &h in &cartans {
                exc.push(lt(h, x_inv_minus(&half())));
            }
            for k in 0..np {
                exc.push(lt(g.neg(k), x_inv_minus(&one)));
                exc.push(lt(g.pos(k), LaurentPoly::x_pow(-1)));
            }
            LaurentPoly::from_terms([(-1, q(1)), (-2, q(-1))])
        }
        CaseTag::A3 => {
            for k in 0..np {
                exc.push(lt(g.pos(k), x_inv_minus(&one)));
                exc.push(lt(g.neg(k), x_inv_minus(&one)));
            }
            for &h in &cartans {
                exc.push(lt(h, x_inv_minus(&one)));
            }
            LaurentPoly::from_terms([(-2, q(1)), (-1, q(-2)), (0, q(1))])
        }
        CaseTag::A4 { m1, m2 } => {
            for k in 0..np {
                exc.push(lt(g.pos(k), x_inv_minus(m1)));
                exc.push(lt(g.neg(k), x_inv_minus(m2)));
            }
            let mid = (m1 + m2) * half();
            for &h in &cartans {
                exc.push(lt(h, x_inv_minus(&mid)));
            }
            LaurentPoly::from_terms([(-2, q(1)), (-1, -(m1 + m2)), (0, m1 * m2)])
        }
        CaseTag::B1 | CaseTag::B2 => {
            for k in 0..np {
                exc.push(lt(g.pos(k), LaurentPoly::one()));
                exc.push(DoubleElem::zero(kind, n).with_finite(Finite::Plain(g.unit(g.neg(k)))));
            }
            for &h in &cartans {
                let minus: Vec<Scalar> = g.unit(h).iter().map(|c| -c).collect();
                exc.push(lt(h, LaurentPoly::one()).with_finite(Finite::Plain(minus)));
            }
            if *case == CaseTag::B1 {
                LaurentPoly::x_pow(-1)
            } else {
                LaurentPoly::from_terms([(0, q(1)), (-1, q(-1))])
            }
        }
        CaseTag::C => {
            for b in 0..n {
                exc.push(DoubleElem::zero(kind, n).with_finite(Finite::Dual {
                    h: vec![Scalar::zero(); n],
                    g: g.unit(b),
                }));
            }
            LaurentPoly::one()
        }
    };
    Ok(LagrangianPattern {
        case: case.clone(),
        kind,
        dim: n,
        exceptional: exc,
        tail: Some(tail),
    })
}

/// Is every element of `b` in `a`? Returns a witness generator otherwise.
fn contained(a: &LagrangianPattern, b: &LagrangianPattern, g: &LieAlgebraData) -> std::result::Result<(), String> {
    for e in &b.exceptional {
        if !a.contains(e) {
            return Err(e.render(g));
        }
    }
    if let Some(tb) = &b.tail {
        if a.tail.is_none() {
            return Err(format!("tail ({tb}) g[x^-1] has no counterpart"));
        }
        // z acts on C[z]/(q_a), a space of dimension deg q_a, so the first
        // deg q_a multiples z^j q_b b span every later one modulo the tail of `a`.
        let reach = a.tail_degree().unwrap().max(1);
        for bb in 0..g.dim() {
            for j in 0..reach {
                let t = b.tail_generator(bb, j).unwrap();
                if !a.contains(&t) {
                    return Err(t.render(g));
                }
            }
        }
    }
    Ok(())
}

/// Equality by mutual membership.
pub fn pattern_equal(a: &LagrangianPattern, b: &LagrangianPattern, g: &LieAlgebraData) -> Result<()> {
    contained(a, b, g).map_err(|w| Error::MismatchWitness(format!("{w} lies in the second pattern only")))?;
    contained(b, a, g).map_err(|w| Error::MismatchWitness(format!("{w} lies in the first pattern only")))?;
    Ok(())
}

/// Applies sigma (x fixed) to an A4 pattern and checks sigma(W_{m1,m2}) = W_{m2,m1}.
pub fn involution_on_w(w: &LagrangianPattern, sigma: &BasisMap, g: &LieAlgebraData) -> Result<LagrangianPattern> {
    let CaseTag::A4 { m1, m2 } = &w.case else {
        return Err(Error::Invalid("involution_on_w expects an A4 pattern".into()));
    };
    let swapped = CaseTag::a4(m2.clone(), m1.clone())?;
    let expected = build_w(&swapped, g)?;
    let mut image = w.map(sigma);
    pattern_equal(&image, &expected, g)?;
    image.case = swapped;
    Ok(image)
}
