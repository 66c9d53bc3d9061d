use std::collections::HashMap;

use super::RationalR;
use crate::arith::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebraData, TensorElem};
use crate::report::{Check, Report};

fn xpow(n: u32) -> MultiPoly {
    MultiPoly::monomial(crate::arith::scalar::one(), [n, 0, 0])
}

fn ypow(n: u32) -> MultiPoly {
    MultiPoly::monomial(crate::arith::scalar::one(), [0, n, 0])
}

/// a x^n acting on a g(x)g-valued polynomial: x on leg 1, y on leg 2.
pub fn act(a: usize, n: u32, t: &TensorElem, g: &LieAlgebraData) -> TensorElem {
    let l0 = t.bracket_leg(0, a, g).expect("2-leg tensor").mul_poly(&xpow(n));
    let l1 = t.bracket_leg(1, a, g).expect("2-leg tensor").mul_poly(&ypow(n));
    l0.add(&l1)
}

/// delta(a x^n) = [a x^n (x) 1 + 1 (x) a y^n, r], divided out exactly.
pub fn cobracket(r: &RationalR, a: usize, n: u32, g: &LieAlgebraData) -> Result<TensorElem> {
    let raw = act(a, n, &r.cleared(), g);
    if r.denom_power == 0 {
        return Ok(raw);
    }
    let d = r.denominator();
    raw.map_coeffs(|p| {
        p.divide_exact(&d).map_err(|e| match e {
            Error::NotDivisible { remainder } => Error::NotPolynomial(format!(
                "delta({} x^{n}) of {}: coefficient {p} leaves remainder {remainder} modulo {d}",
                g.labels[a], r.label
            )),
            other => other,
        })
    })
}

/// First monomial of total degree below n - 1, if any.
pub fn degree_bound_witness(delta: &TensorElem, n: u32, g: &LieAlgebraData) -> Option<String> {
    let bound = n.saturating_sub(1);
    for (s, p) in delta.terms() {
        if let Some(low) = p.min_total_degree() {
            if low < bound {
                return Some(format!(
                    "({p}) {} (x) {} has a term of degree {low} < {bound}",
                    g.labels[s[0]], g.labels[s[1]]
                ));
            }
        }
    }
    None
}

/// Polynomiality and the (x,y)^(n-1) bound for 1 <= n <= n_max.
pub fn degree_bound_check(r: &RationalR, g: &LieAlgebraData, n_max: u32) -> Report {
    let mut rep = Report::new(r.label.clone(), g.kind.name());
    let mut poly_fail = None;
    let mut bound_fail = None;
    'outer: for n in 0..=n_max {
        for a in 0..g.dim() {
            match cobracket(r, a, n, g) {
                Err(e) => {
                    poly_fail = Some(vec![e.to_string()]);
                    break 'outer;
                }
                Ok(d) => {
                    if n >= 1 && bound_fail.is_none() {
                        bound_fail = degree_bound_witness(&d, n, g)
                            .map(|w| vec![format!("delta({} x^{n}): {w}", g.labels[a])]);
                    }
                }
            }
        }
    }
    rep.push(Check::from_witness("polynomiality", poly_fail.clone()));
    if poly_fail.is_some() {
        rep.push(Check::fail("degree_bound", vec!["cobracket not polynomial".into()]));
    } else {
        rep.push(Check::from_witness("degree_bound", bound_fail));
    }
    rep
}

/// The 1-cocycle identity for an arbitrary cobracket map `delta(a, n)`.
pub fn cocycle_check_with(
    label: &str,
    g: &LieAlgebraData,
    max_degree: u32,
    delta: impl Fn(usize, u32) -> Result<TensorElem>,
) -> Report {
    let mut rep = Report::new(label, g.kind.name());
    let mut memo: HashMap<(usize, u32), TensorElem> = HashMap::new();
    let mut get = |b: usize, d: u32| -> Result<TensorElem> {
        if let Some(t) = memo.get(&(b, d)) {
            return Ok(t.clone());
        }
        let t = delta(b, d)?;
        memo.insert((b, d), t.clone());
        Ok(t)
    };
    let mut witness = None;
    'outer: for n in 0..=max_degree {
        for k in 0..=max_degree {
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    let step = (|| -> Result<Option<String>> {
                        let mut lhs = TensorElem::zero(2);
                        for (c, s) in g.bracket_basis(a, b) {
                            lhs = lhs.add(&get(*c, n + k)?.scale(s));
                        }
                        let rhs = act(a, n, &get(b, k)?, g).sub(&act(b, k, &get(a, n)?, g));
                        let diff = lhs.sub(&rhs);
                        Ok(diff.first_term().map(|(s, p)| {
                            format!(
                                "[{} x^{n}, {} x^{k}]: defect ({p}) {} (x) {}",
                                g.labels[a], g.labels[b], g.labels[s[0]], g.labels[s[1]]
                            )
                        }))
                    })();
                    match step {
                        Ok(None) => {}
                        Ok(Some(w)) => {
                            witness = Some(vec![w]);
                            break 'outer;
                        }
                        Err(e) => {
                            witness = Some(vec![e.to_string()]);
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    rep.push(Check::from_witness("cocycle", witness));
    rep
}

pub fn cocycle_check(r: &RationalR, g: &LieAlgebraData, max_degree: u32) -> Report {
    cocycle_check_with(&r.label, g, max_degree, |a, n| cobracket(r, a, n, g))
}
