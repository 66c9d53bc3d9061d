//! Simple Lie algebras of rank <= 2, built from matrix Chevalley generators.
//!
//! The pipeline is generic: brackets of the e_i (resp. f_i) generate the root
//! vectors, structure constants come from decomposing matrix commutators, and
//! the negative root vectors are then rescaled so that K(e_a, e_-a) = 1.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::linalg::{dot, Matrix, Vector};
use crate::arith::scalar::{q, to_pq, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraType {
    A1,
    A2,
    B2,
    G2,
}

impl AlgebraType {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraType::A1 => "sl2",
            AlgebraType::A2 => "sl3",
            AlgebraType::B2 => "sp4",
            AlgebraType::G2 => "g2",
        }
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a1" | "sl2" => Ok(AlgebraType::A1),
            "a2" | "sl3" => Ok(AlgebraType::A2),
            "b2" | "c2" | "so5" | "sp4" => Ok(AlgebraType::B2),
            "g2" => Ok(AlgebraType::G2),
            _ => Err(Error::UnsupportedType(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    pub rank: usize,
    /// `cartan_matrix[i][j] = alpha_j(h_i)` for the coroots h_i.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Sorted by height, then descending lexicographic.
    pub positive_roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    /// `marks[0] = 1`, `marks[i]` = coefficient of alpha_i in the highest root.
    pub marks: Vec<i64>,
    /// Inner products of the extended diagram vertices alpha_0..alpha_rank.
    pub extended_gram: Vec<Vec<Scalar>>,
}

impl RootSystemData {
    /// Root-lattice coordinates of vertex `i` of the extended diagram.
    pub fn vertex(&self, i: usize) -> Vec<i64> {
        if i == 0 {
            self.highest_root.iter().map(|c| -c).collect()
        } else {
            let mut v = vec![0; self.rank];
            v[i - 1] = 1;
            v
        }
    }
}

/// Basis order: e_beta for positive roots, e_-beta in the same order, then h_1..h_rank.
#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    pub kind: AlgebraType,
    pub roots: RootSystemData,
    pub labels: Vec<String>,
    pub grade: Vec<Vec<i64>>,
    brackets: Vec<Vec<Vec<(usize, Scalar)>>>,
    pub killing: Matrix,
    pub form: Matrix,
    pub form_inv: Matrix,
    /// Diagonal change of basis applied to the Chevalley basis.
    pub rescale: Vec<Scalar>,
    /// `simple_values[j][k] = alpha_k(h_j)` in the rescaled Cartan basis.
    pub simple_values: Vec<Vec<Scalar>>,
    pub(crate) matrices: Vec<Matrix>,
    root_index: BTreeMap<Vec<i64>, usize>,
}

fn elem(n: usize, entries: &[(usize, usize, i64)]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for &(i, j, v) in entries {
        m.set(i, j, q(v));
    }
    m
}

fn e_ij(n: usize, i: usize, j: usize) -> Matrix {
    elem(n, &[(i, j, 1)])
}

fn generators(kind: AlgebraType) -> (usize, Vec<(Matrix, Matrix)>) {
    match kind {
        AlgebraType::A1 => (2, vec![(e_ij(2, 0, 1), e_ij(2, 1, 0))]),
        AlgebraType::A2 => (
            3,
            vec![
                (e_ij(3, 0, 1), e_ij(3, 1, 0)),
                (e_ij(3, 1, 2), e_ij(3, 2, 1)),
            ],
        ),
        // sp4 with the symplectic form pairing coordinates (1,4) and (2,3).
        AlgebraType::B2 => (
            4,
            vec![
                (elem(4, &[(0, 1, 1), (2, 3, -1)]), elem(4, &[(1, 0, 1), (3, 2, -1)])),
                (e_ij(4, 1, 2), e_ij(4, 2, 1)),
            ],
        ),
        // Derivations of the split octonions in Zorn's vector-matrix model,
        // acting on (a, v1, v2, v3, w1, w2, w3, b). alpha_1 is the short root.
        AlgebraType::G2 => (
            8,
            vec![
                (
                    elem(8, &[(0, 2, -1), (1, 6, 1), (3, 4, -1), (5, 0, 1), (5, 7, -1), (7, 2, 1)]),
                    elem(8, &[(0, 5, 1), (2, 0, -1), (2, 7, 1), (4, 3, -1), (6, 1, 1), (7, 5, -1)]),
                ),
                (elem(8, &[(2, 3, -1), (6, 5, 1)]), elem(8, &[(3, 2, -1), (5, 6, 1)])),
            ],
        ),
    }
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let ab = a.mul(b);
    let ba = b.mul(a);
    let mut out = ab;
    for i in 0..out.rows {
        for j in 0..out.cols {
            if !ba.data[i][j].is_zero() {
                out.data[i][j] -= &ba.data[i][j];
            }
        }
    }
    out
}

fn flatten(m: &Matrix) -> Vector {
    m.data.iter().flatten().cloned().collect()
}

fn scaled(m: &Matrix, c: &Scalar) -> Matrix {
    Matrix::from_rows(
        m.data.iter().map(|r| r.iter().map(|v| v * c).collect()).collect(),
        m.cols,
    )
}

/// Ratio c with a = c*b, if a is a multiple of b (b nonzero).
fn ratio(a: &Matrix, b: &Matrix) -> Option<Scalar> {
    let fa = flatten(a);
    let fb = flatten(b);
    let k = fb.iter().position(|v| !v.is_zero())?;
    let c = &fa[k] / &fb[k];
    fa.iter().zip(&fb).all(|(x, y)| *x == &c * y).then_some(c)
}

fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

fn label_for(r: &[i64]) -> String {
    let digits: String = r.iter().map(|c| c.abs().to_string()).collect();
    if r.iter().all(|&c| c >= 0) {
        format!("e{digits}")
    } else {
        format!("f{digits}")
    }
}

/// Root vectors reachable from the simple ones by bracketing with `gens`.
fn grow_roots(simple: &[Matrix], sign: i64) -> Result<BTreeMap<Vec<i64>, Matrix>> {
    let rank = simple.len();
    let mut found: BTreeMap<Vec<i64>, Matrix> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for (i, m) in simple.iter().enumerate() {
        let mut r = vec![0; rank];
        r[i] = sign;
        found.insert(r.clone(), m.clone());
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        let x = found[&r].clone();
        for (j, g) in simple.iter().enumerate() {
            let y = commutator(g, &x);
            if y.is_zero() {
                continue;
            }
            let mut s = r.clone();
            s[j] += sign;
            if let Some(existing) = found.get(&s) {
                if ratio(&y, existing).is_none() {
                    return Err(Error::Invalid(format!("root space {s:?} is not one-dimensional")));
                }
                continue;
            }
            found.insert(s.clone(), y);
            queue.push_back(s);
        }
    }
    Ok(found)
}

impl LieAlgebraData {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.roots.rank
    }

    pub fn n_pos(&self) -> usize {
        self.roots.positive_roots.len()
    }

    /// Basis index of e_alpha for the k-th positive root.
    pub fn pos(&self, k: usize) -> usize {
        k
    }

    /// Basis index of e_-alpha for the k-th positive root.
    pub fn neg(&self, k: usize) -> usize {
        self.n_pos() + k
    }

    /// Basis index of h_i, with i counted from 1.
    pub fn cartan(&self, i: usize) -> usize {
        2 * self.n_pos() + i - 1
    }

    pub fn is_cartan(&self, b: usize) -> bool {
        b >= 2 * self.n_pos()
    }

    /// Basis index of the root vector with the given grade.
    pub fn root_vector(&self, r: &[i64]) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    /// The opposite basis element: e_a <-> e_-a, h_i -> h_i.
    pub fn opposite(&self, b: usize) -> usize {
        let n = self.n_pos();
        if b < n {
            b + n
        } else if b < 2 * n {
            b - n
        } else {
            b
        }
    }

    /// [b_i, b_j] as a sparse combination of basis elements.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.brackets[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn form_pair(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(u, &self.form.mul_vec(v))
    }

    pub fn killing_pair(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(u, &self.killing.mul_vec(v))
    }

    pub fn unit(&self, b: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[b] = Scalar::one();
        v
    }

    /// Coefficient of alpha_i in the grade of basis element b (vertex 0 gives 0).
    pub fn alpha_coefficient(&self, b: usize, vertex: usize) -> i64 {
        if vertex == 0 {
            0
        } else {
            self.grade[b][vertex - 1]
        }
    }

    /// Matrix of ad(b) acting on coordinate vectors (column convention).
    pub fn ad(&self, b: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in &self.brackets[b][j] {
                m.data[*k][j] += c;
            }
        }
        m
    }

    /// Image of a basis element under the defining matrix representation.
    pub fn matrix_of(&self, b: usize) -> &Matrix {
        &self.matrices[b]
    }
}

fn structure_constants(
    mats: &[Matrix],
    grade: &[Vec<i64>],
    root_index: &BTreeMap<Vec<i64>, usize>,
    cartan_span: &[usize],
) -> Result<Vec<Vec<Vec<(usize, Scalar)>>>> {
    let n = mats.len();
    let h_basis: Vec<Vector> = cartan_span.iter().map(|&i| flatten(&mats[i])).collect();
    let h_mat = Matrix::from_rows(h_basis.clone(), h_basis[0].len()).transpose();
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let z = commutator(&mats[i], &mats[j]);
            if z.is_zero() {
                continue;
            }
            let g: Vec<i64> = grade[i].iter().zip(&grade[j]).map(|(a, b)| a + b).collect();
            if g.iter().all(|&c| c == 0) {
                let coeffs = h_mat
                    .solve(&flatten(&z))
                    .ok_or_else(|| Error::Invalid("bracket leaves the Cartan".into()))?;
                for (k, c) in cartan_span.iter().zip(coeffs) {
                    if !c.is_zero() {
                        table[i][j].push((*k, c));
                    }
                }
            } else if let Some(&k) = root_index.get(&g) {
                let c = ratio(&z, &mats[k])
                    .ok_or_else(|| Error::Invalid(format!("bracket not in root space {g:?}")))?;
                table[i][j].push((k, c));
            } else {
                return Err(Error::Invalid(format!("nonzero bracket in non-root grade {g:?}")));
            }
        }
    }
    Ok(table)
}

fn killing_from(table: &[Vec<Vec<(usize, Scalar)>>]) -> Matrix {
    let n = table.len();
    let mut k = Matrix::zeros(n, n);
    // K(a,b) = sum_{c,d} C^d_{a c} C^c_{b d}
    for a in 0..n {
        for b in a..n {
            let mut acc = Scalar::zero();
            for d in 0..n {
                for (c, cbd) in &table[b][d] {
                    for (dd, cac) in &table[a][*c] {
                        if *dd == d {
                            acc += cac * cbd;
                        }
                    }
                }
            }
            k.data[a][b] = acc.clone();
            k.data[b][a] = acc;
        }
    }
    k
}

pub fn build_algebra(kind: AlgebraType) -> Result<LieAlgebraData> {
    let (size, gens) = generators(kind);
    let rank = gens.len();
    let es: Vec<Matrix> = gens.iter().map(|g| g.0.clone()).collect();
    let fs: Vec<Matrix> = gens.iter().map(|g| g.1.clone()).collect();
    let hs: Vec<Matrix> = gens.iter().map(|(e, f)| commutator(e, f)).collect();

    let mut cartan_matrix = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            let c = ratio(&commutator(&hs[i], &es[j]), &es[j])
                .ok_or_else(|| Error::Invalid("e_j is not an h-eigenvector".into()))?;
            if !c.is_integer() {
                return Err(Error::Invalid("non-integral Cartan entry".into()));
            }
            cartan_matrix[i][j] = c.to_integer().try_into().unwrap();
        }
        if cartan_matrix[i][i] != 2 {
            return Err(Error::Invalid("generators are not Chevalley-normalized".into()));
        }
    }

    let pos = grow_roots(&es, 1)?;
    let negs = grow_roots(&fs, -1)?;
    let mut positive_roots: Vec<Vec<i64>> = pos.keys().cloned().collect();
    positive_roots.sort_by(|a, b| height(a).cmp(&height(b)).then(b.cmp(a)));
    for r in &positive_roots {
        let m: Vec<i64> = r.iter().map(|c| -c).collect();
        if !negs.contains_key(&m) {
            return Err(Error::Invalid(format!("missing negative root {m:?}")));
        }
    }
    if negs.len() != pos.len() {
        return Err(Error::Invalid("root system is not symmetric".into()));
    }

    let np = positive_roots.len();
    let mut mats = Vec::new();
    let mut grade = Vec::new();
    let mut labels = Vec::new();
    for r in &positive_roots {
        mats.push(pos[r].clone());
        grade.push(r.clone());
        labels.push(label_for(r));
    }
    for r in &positive_roots {
        let m: Vec<i64> = r.iter().map(|c| -c).collect();
        mats.push(negs[&m].clone());
        labels.push(label_for(&m));
        grade.push(m);
    }
    for (i, h) in hs.iter().enumerate() {
        mats.push(h.clone());
        grade.push(vec![0; rank]);
        labels.push(format!("h{}", i + 1));
    }
    let root_index: BTreeMap<Vec<i64>, usize> = grade
        .iter()
        .enumerate()
        .take(2 * np)
        .map(|(i, g)| (g.clone(), i))
        .collect();
    let cartan_span: Vec<usize> = (2 * np..2 * np + rank).collect();

    // Rescale e_-a by 1/K(e_a, e_-a); h_i picks up the factor of its simple root.
    let table0 = structure_constants(&mats, &grade, &root_index, &cartan_span)?;
    let k0 = killing_from(&table0);
    let mut rescale = vec![Scalar::one(); mats.len()];
    for k in 0..np {
        rescale[np + k] = Scalar::one() / k0.get(k, np + k);
    }
    for i in 0..rank {
        let simple = root_index[&{
            let mut r = vec![0; rank];
            r[i] = 1;
            r
        }];
        rescale[2 * np + i] = rescale[np + simple].clone();
    }
    let mats: Vec<Matrix> = mats.iter().zip(&rescale).map(|(m, c)| scaled(m, c)).collect();
    let brackets = structure_constants(&mats, &grade, &root_index, &cartan_span)?;
    let killing = killing_from(&brackets);
    for k in 0..np {
        if !killing.get(k, np + k).is_one() {
            return Err(Error::Invalid("rescaling failed to normalize K(e_a, e_-a)".into()));
        }
    }

    // Invariant form from the trace form of the defining representation.
    let n = mats.len();
    let mut trace = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let p = mats[a].mul(&mats[b]);
            let mut t = Scalar::zero();
            for i in 0..size {
                t += &p.data[i][i];
            }
            trace.data[a][b] = t;
        }
    }
    let norm = trace.get(0, np).clone();
    let form = Matrix::from_rows(
        trace.data.iter().map(|r| r.iter().map(|v| v / &norm).collect()).collect(),
        n,
    );
    let form_inv = form
        .inverse()
        .ok_or_else(|| Error::SingularGram("invariant form".into()))?;

    let mut simple_values = vec![vec![Scalar::zero(); rank]; rank];
    for j in 0..rank {
        for k in 0..rank {
            let mut r = vec![0; rank];
            r[k] = 1;
            let ek = root_index[&r];
            let c = brackets[2 * np + j][ek]
                .iter()
                .find(|(b, _)| *b == ek)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Scalar::zero);
            simple_values[j][k] = c;
        }
    }

    let highest_root = positive_roots.last().cloned().unwrap();
    let mut marks = vec![1];
    marks.extend(highest_root.iter().copied());

    let mut alg = LieAlgebraData {
        kind,
        roots: RootSystemData {
            rank,
            cartan_matrix,
            positive_roots,
            highest_root,
            marks,
            extended_gram: Vec::new(),
        },
        labels,
        grade,
        brackets,
        killing,
        form,
        form_inv,
        rescale,
        simple_values,
        matrices: mats,
        root_index,
    };
    let verts: Vec<Vec<i64>> = (0..=rank).map(|i| alg.roots.vertex(i)).collect();
    alg.roots.extended_gram = verts
        .iter()
        .map(|a| verts.iter().map(|b| alg.root_inner(a, b)).collect())
        .collect();
    Ok(alg)
}

impl LieAlgebraData {
    /// The Cartan element t_beta with form(t_beta, h) = beta(h), in h-coordinates.
    pub fn coroot_dual(&self, beta: &[i64]) -> Vector {
        let rank = self.rank();
        let vals: Vector = (0..rank)
            .map(|j| {
                (0..rank).fold(Scalar::zero(), |acc, k| {
                    acc + &self.simple_values[j][k] * q(beta[k])
                })
            })
            .collect();
        let gh = self.cartan_gram();
        gh.inverse().expect("Cartan block is nondegenerate").mul_vec(&vals)
    }

    pub fn cartan_gram(&self) -> Matrix {
        let r = self.rank();
        let off = 2 * self.n_pos();
        let mut g = Matrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                g.data[i][j] = self.form.get(off + i, off + j).clone();
            }
        }
        g
    }

    /// Inner product of two root-lattice vectors under the invariant form.
    pub fn root_inner(&self, a: &[i64], b: &[i64]) -> Scalar {
        let ta = self.coroot_dual(a);
        let tb = self.coroot_dual(b);
        dot(&ta, &self.cartan_gram().mul_vec(&tb))
    }

    /// beta(h) for h given in coordinates of the Cartan basis.
    pub fn root_value(&self, beta: &[i64], h: &[Scalar]) -> Scalar {
        let rank = self.rank();
        let mut acc = Scalar::zero();
        for j in 0..rank {
            for k in 0..rank {
                if beta[k] != 0 && !h[j].is_zero() {
                    acc += &h[j] * &self.simple_values[j][k] * q(beta[k]);
                }
            }
        }
        acc
    }
}

impl LieAlgebraData {
    /// Basis, grading, structure constants and forms with "p/q" entries.
    pub fn to_json(&self) -> serde_json::Value {
        let mat = |m: &Matrix| -> Vec<Vec<String>> {
            m.data.iter().map(|r| r.iter().map(to_pq).collect()).collect()
        };
        let mut brackets = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, c) in &self.brackets[i][j] {
                    brackets.push(serde_json::json!([i, j, k, to_pq(c)]));
                }
            }
        }
        serde_json::json!({
            "algebra": self.kind.name(),
            "dim": self.dim(),
            "rank": self.rank(),
            "labels": self.labels,
            "grade": self.grade,
            "cartan_matrix": self.roots.cartan_matrix,
            "marks": self.roots.marks,
            "brackets": brackets,
            "form": mat(&self.form),
            "killing": mat(&self.killing),
        })
    }
}
