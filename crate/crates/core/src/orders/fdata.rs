use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::linalg::{in_span, rank_of, Matrix, RowSpace, Vector};
use crate::arith::scalar::{parse_scalar, to_pq, Scalar};
use crate::error::{Error, Result};
use crate::lie::LieAlgebraData;
use crate::report::{Check, Report};

/// p^-_{alpha_i}: negative root vectors, the Cartan, and e_beta with no alpha_i in beta.
/// Returned as basis indices; closure under the bracket is checked.
pub fn parabolic(g: &LieAlgebraData, vertex: usize) -> Result<Vec<usize>> {
    if vertex > g.rank() {
        return Err(Error::Invalid(format!("vertex {vertex} outside 0..={}", g.rank())));
    }
    let n = g.n_pos();
    let basis: Vec<usize> = (0..g.dim())
        .filter(|&b| b >= n || g.alpha_coefficient(b, vertex) == 0)
        .collect();
    for &a in &basis {
        for &b in &basis {
            if let Some((c, _)) = g.bracket_basis(a, b).iter().find(|(c, _)| !basis.contains(c)) {
                return Err(Error::Invalid(format!(
                    "[{}, {}] has a {} component",
                    g.labels[a], g.labels[b], g.labels[*c]
                )));
            }
        }
    }
    Ok(basis)
}

/// A subalgebra L (rows of `basis`) with a bilinear form B in L-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FData {
    pub basis: Matrix,
    pub form: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FDataJson {
    pub basis: Vec<Vec<String>>,
    pub form: Vec<Vec<String>>,
}

fn parse_rows(rows: &[Vec<String>]) -> Result<Vec<Vector>> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_scalar(s)).collect())
        .collect()
}

impl FData {
    pub fn new(basis: Vec<Vector>, form: Vec<Vector>, dim_g: usize) -> Result<Self> {
        let l = basis.len();
        if basis.iter().any(|r| r.len() != dim_g) {
            return Err(Error::Invalid(format!("basis rows must have length {dim_g}")));
        }
        if form.len() != l || form.iter().any(|r| r.len() != l) {
            return Err(Error::Invalid(format!("form must be {l} x {l}")));
        }
        Ok(Self {
            basis: Matrix::from_rows(basis, dim_g),
            form: Matrix::from_rows(form, l),
        })
    }

    pub fn from_json(s: &str, dim_g: usize) -> Result<Self> {
        let j: FDataJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(parse_rows(&j.basis)?, parse_rows(&j.form)?, dim_g)
    }

    pub fn to_json(&self) -> String {
        let rows = |m: &Matrix| -> Vec<Vec<String>> {
            m.data.iter().map(|r| r.iter().map(to_pq).collect()).collect()
        };
        let j = FDataJson {
            basis: rows(&self.basis),
            form: rows(&self.form),
        };
        serde_json::to_string_pretty(&j).expect("plain data")
    }

    fn b(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        crate::arith::linalg::dot(u, &self.form.mul_vec(v))
    }
}

fn short(v: &[Scalar], g: &LieAlgebraData) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{}*{}", to_pq(c), g.labels[i]))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn verify_f_data(d: &FData, g: &LieAlgebraData, vertex: usize) -> Result<Report> {
    let mut rep = Report::new(format!("F-data at vertex {vertex}"), g.kind.name());
    let mark = *g
        .roots
        .marks
        .get(vertex)
        .ok_or_else(|| Error::Invalid(format!("vertex {vertex} outside 0..={}", g.rank())))?;
    if mark != 1 {
        rep.push(Check::fail(
            "mark_one",
            vec![format!("k_{vertex} = {mark}: no F-data exist for k_i >= 2")],
        ));
        return Ok(rep);
    }
    let rows = &d.basis.data;
    let l = rows.len();
    let dim = g.dim();
    if rank_of(rows, dim) != l {
        rep.push(Check::fail("basis_independent", vec!["rows of L are dependent".into()]));
        return Ok(rep);
    }
    let space = RowSpace::new(rows, dim);

    // coordinates of [a_i, a_j] in the L basis, if it lies in L
    let mut coords: Vec<Vec<Option<Vector>>> = vec![vec![None; l]; l];
    let mut open = Vec::new();
    for i in 0..l {
        for j in 0..l {
            let br = g.bracket(&rows[i], &rows[j]);
            if space.contains(&br) {
                coords[i][j] = in_span(rows, &br);
            } else if open.len() < 4 {
                open.push(format!("[L{i}, L{j}] = {}", short(&br, g)));
            }
        }
    }
    let closed = open.is_empty();
    rep.push(Check::from_witness("subalgebra", (!closed).then_some(open)));

    let p = parabolic(g, vertex)?;
    let mut all = rows.clone();
    all.extend(p.iter().map(|&b| g.unit(b)));
    let sum_rank = rank_of(&all, dim);
    rep.push(if sum_rank == dim {
        Check::pass("L_plus_p_is_g")
    } else {
        Check::fail("L_plus_p_is_g", vec![format!("rank {sum_rank} < {dim}")])
    });

    let skew: Vec<String> = (0..l)
        .flat_map(|i| (0..l).map(move |j| (i, j)))
        .filter(|&(i, j)| !(d.form.get(i, j) + d.form.get(j, i)).is_zero())
        .map(|(i, j)| format!("B(L{i},L{j}) + B(L{j},L{i}) != 0"))
        .collect();
    rep.push(Check::from_witness("skew", (!skew.is_empty()).then_some(skew)));

    if closed {
        let unit = |i: usize| -> Vector {
            let mut v = vec![Scalar::zero(); l];
            v[i] = Scalar::one();
            v
        };
        let br = |i: usize, j: usize| coords[i][j].clone().expect("closed");
        let mut bad = Vec::new();
        for a in 0..l {
            for b in 0..l {
                for c in 0..l {
                    let s = d.b(&br(a, b), &unit(c)) + d.b(&br(b, c), &unit(a)) + d.b(&br(c, a), &unit(b));
                    if !s.is_zero() && bad.len() < 4 {
                        bad.push(format!("(L{a}, L{b}, L{c}) gives {}", to_pq(&s)));
                    }
                }
            }
        }
        rep.push(Check::from_witness("cocycle", (!bad.is_empty()).then_some(bad)));
    } else {
        rep.push(Check::fail("cocycle", vec!["L is not a subalgebra".into()]));
    }

    // L cap p: combinations of L rows with no component outside p
    let outside: Vec<usize> = (0..dim).filter(|b| !p.contains(b)).collect();
    let cap = if outside.is_empty() {
        (0..l).map(|i| {
            let mut v = vec![Scalar::zero(); l];
            v[i] = Scalar::one();
            v
        }).collect()
    } else {
        Matrix::from_rows(
            outside
                .iter()
                .map(|&b| rows.iter().map(|r| r[b].clone()).collect())
                .collect(),
            l,
        )
        .kernel()
    };
    let restricted = Matrix::from_rows(
        cap.iter()
            .map(|u| cap.iter().map(|v| d.b(u, v)).collect())
            .collect(),
        cap.len(),
    );
    let det = if cap.is_empty() {
        Scalar::one()
    } else {
        restricted.determinant()
    };
    rep.note(format!("dim (L cap p) = {}", cap.len()));
    rep.push(if det.is_zero() {
        Check::fail(
            "nondegenerate_on_L_cap_p",
            vec![format!("det of B on L cap p (dim {}) is 0", cap.len())],
        )
    } else {
        Check::pass("nondegenerate_on_L_cap_p")
    });
    Ok(rep)
}
