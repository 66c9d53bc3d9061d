//! Orders O_h in g((x^-1)), Belavin-Drinfeld triples and F-data.

mod bd;
mod fdata;

pub use bd::{bd_to_json, enum_bd, verify_bd_triple, BDTriple};
pub use fdata::{parabolic, verify_f_data, FData, FDataJson};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::linalg::{same_span, Matrix, RowSpace, Vector};
use crate::arith::scalar::{q, qf, Scalar};
use crate::arith::LaurentPoly;
use crate::double::LoopPart;
use crate::error::{Error, Result};
use crate::lie::LieAlgebraData;
use crate::report::{Check, Report};

/// v(sum_{k >= n} a_k x^-k) = n, with v(0) = +inf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    /// v >= c for a rational bound c.
    pub fn at_least(self, c: &Scalar) -> bool {
        match self {
            Valuation::Infinite => true,
            Valuation::Finite(v) => q(v) >= *c,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

pub fn valuation(f: &LaurentPoly) -> Valuation {
    match f.highest() {
        None => Valuation::Infinite,
        Some(h) => Valuation::Finite(-h),
    }
}

/// The order O_h, either at a simplex vertex h_i or at an arbitrary rational h.
#[derive(Clone, Debug)]
pub struct OrderSpec<'g> {
    pub g: &'g LieAlgebraData,
    pub vertex: Option<usize>,
    /// Coordinates in the Cartan basis h_1..h_r.
    pub h: Vector,
    pub mark: i64,
    /// alpha_i-coefficient of each basis element (0 on the Cartan).
    pub coeff: Vec<i64>,
}

impl<'g> OrderSpec<'g> {
    /// h_i with alpha_j(h_i) = delta_ij / k_i.
    pub fn vertex(g: &'g LieAlgebraData, i: usize) -> Result<Self> {
        let r = g.rank();
        if i > r {
            return Err(Error::Invalid(format!("vertex {i} outside 0..={r}")));
        }
        let mark = g.roots.marks[i];
        let h = if i == 0 {
            vec![Scalar::zero(); r]
        } else {
            // rows: alpha_j(h) = sum_k h_k alpha_j(h_k)
            let a = Matrix::from_rows(
                (0..r)
                    .map(|j| (0..r).map(|k| g.simple_values[k][j].clone()).collect())
                    .collect(),
                r,
            );
            let target: Vector = (0..r)
                .map(|j| if j + 1 == i { qf(1, mark) } else { Scalar::zero() })
                .collect();
            a.solve(&target)
                .ok_or_else(|| Error::Invalid("simple roots are dependent".into()))?
        };
        for j in 0..r {
            let mut beta = vec![0; r];
            beta[j] = 1;
            let want = if j + 1 == i { qf(1, mark) } else { Scalar::zero() };
            if g.root_value(&beta, &h) != want {
                return Err(Error::Invalid(format!("alpha_{} (h_{i}) is wrong", j + 1)));
            }
        }
        let coeff = (0..g.dim()).map(|b| g.alpha_coefficient(b, i)).collect();
        Ok(Self {
            g,
            vertex: Some(i),
            h,
            mark,
            coeff,
        })
    }

    pub fn from_h(g: &'g LieAlgebraData, h: Vector) -> Result<Self> {
        if h.len() != g.rank() {
            return Err(Error::Invalid(format!("h needs {} coordinates", g.rank())));
        }
        Ok(Self {
            g,
            vertex: None,
            h,
            mark: 1,
            coeff: vec![0; g.dim()],
        })
    }

    /// Least valuation allowed on the b-component by the explicit display.
    fn display_bound(&self, b: usize) -> i64 {
        let r = self.coeff[b];
        let k = self.mark;
        if self.g.is_cartan(b) {
            0
        } else if 1 <= r && r <= k {
            1
        } else if 1 - k <= r && r <= 0 {
            0
        } else {
            debug_assert_eq!(r, -k);
            -1
        }
    }

    /// beta(h) for the grade beta of basis element b; M_beta(h) asks v >= beta(h).
    fn root_bound(&self, b: usize) -> Scalar {
        self.g.root_value(&self.g.grade[b], &self.h)
    }

    fn display_ok(&self, b: usize, v: Valuation) -> bool {
        v.at_least(&q(self.display_bound(b)))
    }

    fn valuation_ok(&self, b: usize, v: Valuation) -> bool {
        v.at_least(&self.root_bound(b))
    }

    pub fn label(&self) -> String {
        match self.vertex {
            Some(i) => format!("O_alpha{i} (k={})", self.mark),
            None => format!("O_h h={:?}", self.h.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// False when the display and the M_alpha(h) criterion disagree.
    pub agrees: bool,
    pub witness: Option<String>,
}

pub fn order_membership(f: &LoopPart, spec: &OrderSpec) -> Membership {
    let mut display = true;
    let mut by_val = true;
    let mut witness = None;
    for (&b, p) in f {
        let v = valuation(p);
        let d = spec.vertex.is_none() || spec.display_ok(b, v);
        let m = spec.valuation_ok(b, v);
        if (!d || !m) && witness.is_none() {
            witness = Some(format!(
                "{}-component has valuation {v}, needs >= {}",
                spec.g.labels[b],
                spec.root_bound(b)
            ));
        }
        display &= d;
        by_val &= m;
    }
    Membership {
        member: display && by_val,
        agrees: display == by_val,
        witness,
    }
}

fn monomial_in(spec: &OrderSpec, b: usize, m: i64) -> bool {
    spec.valuation_ok(b, Valuation::Finite(-m))
}

/// Exponent range and dense coordinates for b x^m, lo <= m <= hi.
struct Grid {
    lo: i64,
    hi: i64,
    dim: usize,
}

impl Grid {
    fn size(&self) -> usize {
        self.dim * (self.hi - self.lo + 1) as usize
    }

    fn idx(&self, b: usize, m: i64) -> usize {
        (m - self.lo) as usize * self.dim + b
    }

    fn unit(&self, b: usize, m: i64) -> Vector {
        let mut v = vec![Scalar::zero(); self.size()];
        v[self.idx(b, m)] = Scalar::one();
        v
    }

    fn monomials(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        (self.lo..=self.hi).flat_map(move |m| (0..self.dim).map(move |b| (b, m)))
    }

    fn embed(&self, f: &LoopPart) -> Option<Vector> {
        let mut v = vec![Scalar::zero(); self.size()];
        for (&b, p) in f {
            for (&m, c) in p.terms() {
                if m < self.lo || m > self.hi {
                    return None;
                }
                v[self.idx(b, m)] += c;
            }
        }
        Some(v)
    }
}

/// Perp of O_{alpha_i} cap g[x,x^-1] in the window lo..hi, compared with
/// x^-3 g_k + x^-2 (g_0 + .. + g_{k-1}) + x^-1 (g_-1 + .. + g_-k) over C[x^-1].
pub fn order_perp_check(spec: &OrderSpec, lo: i64, hi: i64) -> Result<Report> {
    let Some(_) = spec.vertex else {
        return Err(Error::Invalid("the displayed perp needs a simplex vertex".into()));
    };
    if lo > -3 || hi < 1 {
        return Err(Error::WindowTooSmall(format!(
            "need lo <= -3 and hi >= 1, got {lo}..{hi}"
        )));
    }
    let g = spec.g;
    let mut rep = Report::new(spec.label(), g.kind.name());
    rep.window = Some([lo, hi]);
    let grid = Grid { lo, hi, dim: g.dim() };
    let mirror = Grid { lo: -1 - hi, hi: -1 - lo, dim: g.dim() };

    let mut disagree = Vec::new();
    for (b, m) in grid.monomials().chain(mirror.monomials()) {
        let v = Valuation::Finite(-m);
        if spec.display_ok(b, v) != spec.valuation_ok(b, v) {
            disagree.push(format!("{} x^{m}", g.labels[b]));
        }
    }
    rep.push(Check::from_witness(
        "membership_agree",
        (!disagree.is_empty()).then_some(disagree),
    ));

    let o_mirror: Vec<(usize, i64)> = mirror
        .monomials()
        .filter(|&(b, m)| monomial_in(spec, b, m))
        .collect();
    let o_vecs: Vec<Vector> = o_mirror.iter().map(|&(b, m)| mirror.unit(b, m)).collect();
    let perp = perp_of_vectors(g, &mirror, &o_vecs, &grid);

    let bound = |b: usize| -> i64 {
        let r = spec.coeff[b];
        if g.is_cartan(b) || (0..spec.mark).contains(&r) {
            -2
        } else if r == spec.mark {
            -3
        } else {
            -1
        }
    };
    let display: Vec<Vector> = grid
        .monomials()
        .filter(|&(b, m)| m <= bound(b))
        .map(|(b, m)| grid.unit(b, m))
        .collect();
    let n = grid.size();
    rep.push(if same_span(&perp, &display, n) {
        Check::pass("perp_matches_display")
    } else {
        Check::fail(
            "perp_matches_display",
            vec![format!("kernel rank {} vs display rank {}", perp.len(), display.len())],
        )
    });

    // x^-2 (O cap g[x,x^-1]) inside the window
    let shifted: Vec<Vector> = grid
        .monomials()
        .filter(|&(b, m)| monomial_in(spec, b, m + 2))
        .map(|(b, m)| grid.unit(b, m))
        .collect();
    let holds = same_span(&perp, &shifted, n);
    rep.note(format!(
        "x^-2 identity {} for k_i = {}",
        if holds { "holds" } else { "fails" },
        spec.mark
    ));
    rep.push(if holds == (spec.mark == 1) {
        Check::pass("x^-2_identity_iff_k1")
    } else {
        Check::fail(
            "x^-2_identity_iff_k1",
            vec![format!("identity holds = {holds} with k_i = {}", spec.mark)],
        )
    });

    // perp of the perp, read on the mirrored grid
    let pp = perp_of_vectors(g, &grid, &perp, &mirror);
    rep.push(if same_span(&pp, &o_vecs, mirror.size()) {
        Check::pass("double_perp")
    } else {
        Check::fail(
            "double_perp",
            vec![format!("rank {} vs {}", pp.len(), o_vecs.len())],
        )
    });
    Ok(rep)
}

/// { w on `target` : Res K(v, w) = 0 for all v in `vs` on `source` }.
fn perp_of_vectors(g: &LieAlgebraData, source: &Grid, vs: &[Vector], target: &Grid) -> Vec<Vector> {
    let rows: Vec<Vector> = vs
        .iter()
        .map(|v| {
            let mut row = vec![Scalar::zero(); target.size()];
            for (b, m) in source.monomials() {
                let c = &v[source.idx(b, m)];
                if c.is_zero() {
                    continue;
                }
                let j = -1 - m;
                for b2 in 0..target.dim {
                    let f = g.form.get(b, b2);
                    if !f.is_zero() {
                        row[target.idx(b2, j)] += c * f;
                    }
                }
            }
            row
        })
        .collect();
    if rows.is_empty() {
        return target.monomials().map(|(b, m)| target.unit(b, m)).collect();
    }
    Matrix::from_rows(rows, target.size()).kernel()
}

fn loop_bracket(g: &LieAlgebraData, u: &LoopPart, v: &LoopPart) -> LoopPart {
    let mut out: LoopPart = BTreeMap::new();
    for (&a, p) in u {
        for (&b, r) in v {
            let pr = p * r;
            for (c, s) in g.bracket_basis(a, b) {
                let e = out.entry(*c).or_insert_with(LaurentPoly::zero);
                *e = &*e + &pr.scale(s);
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn loop_scale(u: &LoopPart, f: &LaurentPoly) -> LoopPart {
    u.iter()
        .map(|(&b, p)| (b, p * f))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

/// O_{alpha_i} cap g[x,x^-1] modulo gamma^2 times itself, gamma = x^-1 - 1,
/// compared with g[gamma]/(gamma^2) through X_b = x^{-r(b)} b.
pub fn quotient_check(spec: &OrderSpec, lo: i64, hi: i64) -> Result<Report> {
    if spec.vertex.is_none() || spec.mark != 1 {
        return Err(Error::Invalid("the quotient check needs a vertex with k_i = 1".into()));
    }
    if lo > -4 || hi < 1 {
        return Err(Error::WindowTooSmall(format!(
            "need lo <= -4 and hi >= 1, got {lo}..{hi}"
        )));
    }
    let g = spec.g;
    let dim = g.dim();
    let grid = Grid { lo, hi, dim };
    let n = grid.size();
    let mut rep = Report::new(format!("{} / gamma^2", spec.label()), g.kind.name());
    rep.window = Some([lo, hi]);

    let gamma = LaurentPoly::from_terms([(-1, q(1)), (0, q(-1))]);
    let gamma2 = &gamma * &gamma;
    let o_monos: Vec<(usize, i64)> = grid
        .monomials()
        .filter(|&(b, m)| monomial_in(spec, b, m))
        .collect();
    let o_space = RowSpace::new(
        &o_monos.iter().map(|&(b, m)| grid.unit(b, m)).collect::<Vec<_>>(),
        n,
    );
    let sub: Vec<Vector> = o_monos
        .iter()
        .filter(|&&(_, m)| m - 2 >= lo)
        .map(|&(b, m)| {
            let f: LoopPart = [(b, gamma2.shift(m))].into_iter().collect();
            grid.embed(&f).expect("inside the window")
        })
        .collect();
    let outside: Vec<String> = sub
        .iter()
        .enumerate()
        .filter(|(_, v)| !o_space.contains(v))
        .map(|(i, _)| format!("gamma^2 {} x^{}", g.labels[o_monos[i].0], o_monos[i].1))
        .collect();
    rep.push(Check::from_witness(
        "submodule",
        (!outside.is_empty()).then_some(outside),
    ));
    let sub_space = RowSpace::new(&sub, n);
    let qdim = o_space.rank() - sub_space.rank();
    rep.note(format!("quotient dimension {qdim}"));
    rep.push(if qdim == 2 * dim {
        Check::pass("dimension")
    } else {
        Check::fail("dimension", vec![format!("{qdim} != 2 dim g = {}", 2 * dim)])
    });

    // representatives gamma^a X_b
    let x_b = |b: usize| -> LoopPart {
        [(b, LaurentPoly::x_pow(-spec.coeff[b]))].into_iter().collect()
    };
    let gpow = |a: u32| -> LaurentPoly {
        (0..a).fold(LaurentPoly::one(), |acc, _| &acc * &gamma)
    };
    let rep_of = |a: u32, b: usize| loop_scale(&x_b(b), &gpow(a));
    let mut reps = sub.clone();
    for a in 0..2 {
        for b in 0..dim {
            reps.push(grid.embed(&rep_of(a, b)).expect("inside the window"));
        }
    }
    let span_rank = RowSpace::new(&reps, n).rank();
    rep.push(if span_rank == o_space.rank() && span_rank - sub_space.rank() == 2 * dim {
        Check::pass("representatives_span")
    } else {
        Check::fail(
            "representatives_span",
            vec![format!("rank {span_rank} of {}", o_space.rank())],
        )
    });

    let mut bad = Vec::new();
    for a in 0..2u32 {
        for c in 0..2u32 {
            for b1 in 0..dim {
                for b2 in 0..dim {
                    let got = loop_bracket(g, &rep_of(a, b1), &rep_of(c, b2));
                    let mut want: LoopPart = BTreeMap::new();
                    if a + c < 2 {
                        for (b3, s) in g.bracket_basis(b1, b2) {
                            for (k, p) in rep_of(a + c, *b3) {
                                let e = want.entry(k).or_insert_with(LaurentPoly::zero);
                                *e = &*e + &p.scale(s);
                            }
                        }
                    }
                    let diff = match (grid.embed(&got), grid.embed(&want)) {
                        (Some(x), Some(y)) => x.iter().zip(&y).map(|(u, v)| u - v).collect::<Vector>(),
                        _ => return Err(Error::WindowTooSmall("bracket leaves the window".into())),
                    };
                    if !sub_space.contains(&diff) && bad.len() < 5 {
                        bad.push(format!(
                            "[gamma^{a} X_{}, gamma^{c} X_{}]",
                            g.labels[b1], g.labels[b2]
                        ));
                    }
                }
            }
        }
    }
    rep.push(Check::from_witness("bracket_matches", (!bad.is_empty()).then_some(bad)));
    Ok(rep)
}

impl PartialOrd<i64> for Valuation {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Valuation::Finite(*other)))
    }
}

impl PartialEq<i64> for Valuation {
    fn eq(&self, other: &i64) -> bool {
        *self == Valuation::Finite(*other)
    }
}
