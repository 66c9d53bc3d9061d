use rayon::prelude::*;

use super::RationalR;
use crate::arith::poly::diff;
use crate::lie::{LieAlgebraData, TensorElem};
use crate::report::{Check, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CybeReport {
    /// [r12,r13] + [r12,r23] + [r13,r23] times ((y-x)(z-x)(z-y))^m.
    pub residual: TensorElem,
    pub is_zero: bool,
    pub witness: Option<String>,
}

impl CybeReport {
    pub fn to_report(&self, label: &str, g: &LieAlgebraData) -> Report {
        let mut r = Report::new(label, g.kind.name());
        r.push(Check::from_witness("cybe", self.witness.clone().map(|w| vec![w])));
        r.notes.push(format!("residual terms: {}", self.residual.len()));
        r
    }
}

/// Bracket of two 2-leg tensors placed on legs `pa` and `pb` of g^(x)3,
/// sharing exactly one leg. Coefficients are already in (x,y,z).
fn bracket_placed(a: &TensorElem, pa: [usize; 2], b: &TensorElem, pb: [usize; 2], g: &LieAlgebraData) -> TensorElem {
    let shared = *pa.iter().find(|l| pb.contains(l)).expect("legs overlap");
    let terms_b: Vec<_> = b.terms().map(|(s, p)| (*s, p.clone())).collect();
    let terms_a: Vec<_> = a.terms().map(|(s, p)| (*s, p.clone())).collect();
    terms_a
        .par_iter()
        .map(|(sa, p)| {
            let mut acc = TensorElem::zero(3);
            for (sb, q) in &terms_b {
                let mut slot = [0usize; 3];
                let (mut u, mut v) = (0, 0);
                for t in 0..2 {
                    if pa[t] == shared {
                        u = sa[t];
                    } else {
                        slot[pa[t]] = sa[t];
                    }
                    if pb[t] == shared {
                        v = sb[t];
                    } else {
                        slot[pb[t]] = sb[t];
                    }
                }
                let br = g.bracket_basis(u, v);
                if br.is_empty() {
                    continue;
                }
                let pq = p * q;
                for (k, c) in br {
                    slot[shared] = *k;
                    acc.add_scaled(slot, &pq, c);
                }
            }
            acc
        })
        .reduce(|| TensorElem::zero(3), |x, y| x.add(&y))
}

fn place(t: &TensorElem, perm: [usize; 3]) -> TensorElem {
    t.relabel_vars(perm)
}

pub fn cybe_check(r: &RationalR, g: &LieAlgebraData) -> CybeReport {
    let n = r.cleared();
    let m = r.denom_power;
    // r12 in (x,y); r13 in (x,z); r23 in (y,z).
    let n12 = n.clone();
    let n13 = place(&n, [0, 2, 1]);
    let n23 = place(&n, [1, 2, 0]);
    let zy = diff(1, 2).pow(m);
    let zx = diff(0, 2).pow(m);
    let yx = diff(0, 1).pow(m);
    let parts = [
        (bracket_placed(&n12, [0, 1], &n13, [0, 2], g), zy),
        (bracket_placed(&n12, [0, 1], &n23, [1, 2], g), zx),
        (bracket_placed(&n13, [0, 2], &n23, [1, 2], g), yx),
    ];
    let mut residual = TensorElem::zero(3);
    for (t, f) in &parts {
        residual = residual.add(&t.mul_poly(f));
    }
    let witness = residual.first_term().map(|(s, p)| {
        format!(
            "({p}) {} (x) {} (x) {}",
            g.labels[s[0]], g.labels[s[1]], g.labels[s[2]]
        )
    });
    CybeReport {
        is_zero: residual.is_zero(),
        residual,
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewReport {
    pub holds: bool,
    pub witness: Option<String>,
}

/// r(x,y) + r^21(y,x) = 0, tested on N + (-1)^m N^21(y,x).
pub fn skew_check(r: &RationalR) -> SkewReport {
    let n = r.cleared();
    let f = n.flip();
    let s = if r.denom_power % 2 == 0 { n.add(&f) } else { n.sub(&f) };
    let witness = s.first_term().map(|(slot, p)| format!("({p}) b{} (x) b{}", slot[0], slot[1]));
    SkewReport {
        holds: witness.is_none(),
        witness,
    }
}

