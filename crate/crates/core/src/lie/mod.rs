pub mod algebra;
pub mod tensor;

use num_traits::{One, Zero};

pub use algebra::{build_algebra, AlgebraType, LieAlgebraData, RootSystemData};
pub use tensor::{Slot, TensorElem};

use crate::arith::linalg::Matrix;
use crate::arith::poly::MultiPoly;
use crate::arith::scalar::{half, Scalar};
use crate::error::{Error, Result};

/// Omega = sum b_i (x) b^i over dual bases of the normalized form.
pub fn casimir_omega(g: &LieAlgebraData) -> TensorElem {
    let n = g.dim();
    let mut t = TensorElem::zero(2);
    for i in 0..n {
        for j in 0..n {
            let c = g.form_inv.get(i, j);
            if !c.is_zero() {
                t.add_term([i, j, 0], &MultiPoly::constant(c.clone()));
            }
        }
    }
    t
}

/// Cartan part of Omega: sum_i h_i (x) h'_i.
pub fn cartan_omega(g: &LieAlgebraData) -> TensorElem {
    let inv = g.cartan_gram().inverse().expect("nondegenerate Cartan block");
    let mut t = TensorElem::zero(2);
    for i in 1..=g.rank() {
        for j in 1..=g.rank() {
            let c = inv.get(i - 1, j - 1);
            if !c.is_zero() {
                t.add_term([g.cartan(i), g.cartan(j), 0], &MultiPoly::constant(c.clone()));
            }
        }
    }
    t
}

/// r_DJ = sum_{a>0} e_a (x) e_-a + 1/2 sum_i h_i (x) h'_i.
pub fn drinfeld_jimbo_r(g: &LieAlgebraData) -> TensorElem {
    let mut t = cartan_omega(g).scale(&half());
    for k in 0..g.n_pos() {
        t.add_term([g.pos(k), g.neg(k), 0], &MultiPoly::one());
    }
    t
}

/// A linear map on g, stored by images of basis elements (`images.data[b]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMap {
    pub images: Matrix,
}

impl BasisMap {
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let n = v.len();
        let mut out = vec![Scalar::zero(); n];
        for (b, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, img) in self.images.data[b].iter().enumerate() {
                if !img.is_zero() {
                    out[k] += c * img;
                }
            }
        }
        out
    }

    pub fn image(&self, b: usize) -> &[Scalar] {
        &self.images.data[b]
    }

    pub fn compose(&self, other: &BasisMap) -> BasisMap {
        // (self o other)(b) = self(other(b))
        let rows = other.images.data.iter().map(|r| self.apply(r)).collect();
        BasisMap {
            images: Matrix::from_rows(rows, self.images.cols),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images == Matrix::identity(self.images.rows)
    }

    /// Checks f([a,b]) = [f a, f b] on all basis pairs; returns an offending pair.
    pub fn automorphism_defect(&self, g: &LieAlgebraData) -> Option<(usize, usize)> {
        let n = g.dim();
        for a in 0..n {
            for b in 0..n {
                let lhs = self.apply(&g.bracket(&g.unit(a), &g.unit(b)));
                let rhs = g.bracket(self.image(a), self.image(b));
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// sigma(e_{a_i}) = e_{-a_i}, sigma(h) = -h, extended through brackets.
pub fn cartan_involution(g: &LieAlgebraData) -> Result<BasisMap> {
    let n = g.dim();
    let rank = g.rank();
    let mut images: Vec<Option<Vec<Scalar>>> = vec![None; n];
    for i in 1..=rank {
        let h = g.cartan(i);
        let mut v = vec![Scalar::zero(); n];
        v[h] = -Scalar::one();
        images[h] = Some(v);
        let mut r = vec![0; rank];
        r[i - 1] = 1;
        let e = g.root_vector(&r).unwrap();
        let f = g.opposite(e);
        images[e] = Some(g.unit(f));
        images[f] = Some(g.unit(e));
    }
    // Roots come in height order, so parents are always assigned first.
    for sign in [1i64, -1] {
        for (k, root) in g.roots.positive_roots.iter().enumerate() {
            let b = if sign == 1 { g.pos(k) } else { g.neg(k) };
            if images[b].is_some() {
                continue;
            }
            let beta: Vec<i64> = root.iter().map(|c| sign * c).collect();
            let mut done = false;
            for j in 0..rank {
                let mut parent = beta.clone();
                parent[j] -= sign;
                let mut simple = vec![0; rank];
                simple[j] = sign;
                let (Some(p), Some(s)) = (g.root_vector(&parent), g.root_vector(&simple)) else {
                    continue;
                };
                let Some((_, c)) = g.bracket_basis(s, p).iter().find(|(t, _)| *t == b) else {
                    continue;
                };
                let (Some(sp), Some(ss)) = (images[p].clone(), images[s].clone()) else {
                    continue;
                };
                let img: Vec<Scalar> = g.bracket(&ss, &sp).iter().map(|v| v / c).collect();
                let target = g.opposite(b);
                if img.iter().enumerate().any(|(t, v)| t != target && !v.is_zero()) {
                    return Err(Error::ExtensionFailure(format!(
                        "image of {} leaves the opposite root space",
                        g.labels[b]
                    )));
                }
                images[b] = Some(img);
                done = true;
                break;
            }
            if !done {
                return Err(Error::ExtensionFailure(format!("no parent for {}", g.labels[b])));
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = images.into_iter().map(|v| v.unwrap()).collect();
    let map = BasisMap {
        images: Matrix::from_rows(rows, n),
    };
    if let Some((a, b)) = map.automorphism_defect(g) {
        return Err(Error::ExtensionFailure(format!(
            "not multiplicative on ({}, {})",
            g.labels[a], g.labels[b]
        )));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::q;

    fn all() -> Vec<LieAlgebraData> {
        [AlgebraType::A1, AlgebraType::A2, AlgebraType::B2, AlgebraType::G2]
            .into_iter()
            .map(|k| build_algebra(k).unwrap())
            .collect()
    }

    #[test]
    fn dimensions_and_marks() {
        let dims: Vec<usize> = all().iter().map(|g| g.dim()).collect();
        assert_eq!(dims, vec![3, 8, 10, 14]);
        let g2 = build_algebra(AlgebraType::G2).unwrap();
        let mut m = g2.roots.marks.clone();
        assert_eq!(m[0], 1);
        m.sort();
        assert_eq!(m, vec![1, 2, 3]);
        assert_eq!(build_algebra(AlgebraType::A2).unwrap().roots.marks, vec![1, 1, 1]);
        assert_eq!(build_algebra(AlgebraType::A1).unwrap().roots.marks, vec![1, 1]);
        let cm: Vec<Vec<Vec<i64>>> = all().iter().map(|g| g.roots.cartan_matrix.clone()).collect();
        assert_eq!(cm[1], vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cm[2], vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(cm[3], vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(build_algebra(AlgebraType::B2).unwrap().roots.marks, vec![1, 2, 1]);
    }

    #[test]
    fn jacobi_and_invariance() {
        for g in all() {
            let n = g.dim();
            for a in 0..n {
                for b in 0..n {
                    let ab = g.bracket(&g.unit(a), &g.unit(b));
                    for c in 0..n {
                        let bc = g.bracket(&g.unit(b), &g.unit(c));
                        let ca = g.bracket(&g.unit(c), &g.unit(a));
                        let s1 = g.bracket(&ab, &g.unit(c));
                        let s2 = g.bracket(&bc, &g.unit(a));
                        let s3 = g.bracket(&ca, &g.unit(b));
                        for k in 0..n {
                            assert!((&s1[k] + &s2[k] + &s3[k]).is_zero(), "{} jacobi", g.kind);
                        }
                        let lhs = g.form_pair(&ab, &g.unit(c));
                        let rhs = g.form_pair(&g.unit(a), &bc);
                        assert_eq!(lhs, rhs);
                        assert_eq!(g.killing_pair(&ab, &g.unit(c)), g.killing_pair(&g.unit(a), &bc));
                    }
                }
            }
            assert_eq!(g.form, g.killing, "{}: trace form disagrees with Killing", g.kind);
        }
    }

    #[test]
    fn sl2_conventions() {
        let g = build_algebra(AlgebraType::A1).unwrap();
        assert_eq!(g.labels, vec!["e1", "f1", "h1"]);
        // [h, e] = 2 e after rescaling h by 1/K(e,f) of the Chevalley basis
        let he = g.bracket_basis(2, 0);
        assert_eq!(he.len(), 1);
        assert_eq!(g.killing.get(0, 1), &q(1));
        let sigma = cartan_involution(&g).unwrap();
        assert!(sigma.compose(&sigma).is_identity());
    }

    #[test]
    fn involutions() {
        for g in all() {
            let s = cartan_involution(&g).unwrap();
            assert!(s.compose(&s).is_identity(), "{}", g.kind);
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    assert_eq!(g.killing_pair(s.image(a), s.image(b)), g.killing.get(a, b).clone());
                }
            }
        }
    }
}
