use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::linalg::{rank_of, Vector};
use crate::arith::scalar::Scalar;
use crate::error::{Error, Result};
use crate::lie::LieAlgebraData;
use crate::report::{Check, Report};

/// Vertices are numbered 0..=rank on the extended diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BDTriple {
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub tau: BTreeMap<usize, usize>,
    pub v_dim: usize,
    pub s_dim: usize,
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|v| mask & (1 << v) != 0).collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn difference(g: &LieAlgebraData, a: usize, b: usize) -> Vec<i64> {
    let (va, vb) = (g.roots.vertex(a), g.roots.vertex(b));
    va.iter().zip(&vb).map(|(x, y)| x - y).collect()
}

/// dim { h : (alpha - tau alpha)(h) = 0 for alpha in Gamma1 }.
fn v_dim(g: &LieAlgebraData, tau: &BTreeMap<usize, usize>) -> usize {
    let r = g.rank();
    let rows: Vec<Vector> = tau
        .iter()
        .map(|(&a, &t)| {
            let d = difference(g, a, t);
            (0..r)
                .map(|j| {
                    let mut h = vec![Scalar::zero(); r];
                    h[j] = Scalar::one();
                    g.root_value(&d, &h)
                })
                .collect()
        })
        .collect();
    r - rank_of(&rows, r)
}

fn nilpotent(tau: &BTreeMap<usize, usize>) -> bool {
    tau.keys().all(|&a| {
        let mut cur = a;
        for _ in 0..=tau.len() {
            match tau.get(&cur) {
                Some(&t) => cur = t,
                None => return true,
            }
        }
        false
    })
}

/// All admissible (Gamma1, Gamma2, tau) with alpha_vertex not in Gamma1 and alpha_0 not in Gamma2.
pub fn enum_bd(g: &LieAlgebraData, vertex: usize) -> Result<Vec<BDTriple>> {
    let r = g.rank();
    if r > 2 {
        return Err(Error::RankTooLarge(r));
    }
    if vertex > r {
        return Err(Error::Invalid(format!("vertex {vertex} outside 0..={r}")));
    }
    let n = r + 1;
    let gram = &g.roots.extended_gram;
    let pairs: Vec<(u32, u32)> = (0..1u32 << n)
        .filter(|m1| m1 & (1 << vertex) == 0)
        .flat_map(|m1| {
            (0..1u32 << n)
                .filter(move |m2| m2 & 1 == 0 && m2.count_ones() == m1.count_ones())
                .map(move |m2| (m1, m2))
        })
        .collect();
    let mut out: Vec<BDTriple> = pairs
        .par_iter()
        .flat_map_iter(|&(m1, m2)| {
            let g1 = members(m1, n);
            let g2 = members(m2, n);
            permutations(&g2)
                .into_iter()
                .filter_map(|img| {
                    let tau: BTreeMap<usize, usize> =
                        g1.iter().copied().zip(img.iter().copied()).collect();
                    let iso = tau.iter().all(|(&a, &ta)| {
                        tau.iter().all(|(&b, &tb)| gram[a][b] == gram[ta][tb])
                    });
                    if !iso || !nilpotent(&tau) {
                        return None;
                    }
                    let v = v_dim(g, &tau);
                    Some(BDTriple {
                        gamma1: g1.clone(),
                        gamma2: g2.clone(),
                        tau,
                        v_dim: v,
                        s_dim: v * v.saturating_sub(1) / 2,
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Re-checks a triple without the enumeration code; V is computed as the
/// orthogonal complement of the dual vectors t_{alpha - tau alpha}.
pub fn verify_bd_triple(g: &LieAlgebraData, vertex: usize, t: &BDTriple) -> Report {
    let mut rep = Report::new(format!("BD triple at vertex {vertex}"), g.kind.name());
    let r = g.rank();
    let ok_vertices = !t.gamma1.contains(&vertex)
        && !t.gamma2.contains(&0)
        && t.gamma1.iter().chain(&t.gamma2).all(|&v| v <= r);
    rep.push(if ok_vertices {
        Check::pass("vertices")
    } else {
        Check::fail("vertices", vec![format!("{:?} -> {:?}", t.gamma1, t.gamma2)])
    });

    let keys: Vec<usize> = t.tau.keys().copied().collect();
    let mut vals: Vec<usize> = t.tau.values().copied().collect();
    vals.sort();
    let distinct = vals.windows(2).all(|w| w[0] != w[1]);
    let mut g1 = t.gamma1.clone();
    let mut g2 = t.gamma2.clone();
    g1.sort();
    g2.sort();
    rep.push(if keys == g1 && vals == g2 && distinct {
        Check::pass("bijection")
    } else {
        Check::fail("bijection", vec![format!("{:?}", t.tau)])
    });

    let mut bad = Vec::new();
    for (&a, &ta) in &t.tau {
        for (&b, &tb) in &t.tau {
            let lhs = g.root_inner(&g.roots.vertex(a), &g.roots.vertex(b));
            let rhs = g.root_inner(&g.roots.vertex(ta), &g.roots.vertex(tb));
            if lhs != rhs {
                bad.push(format!("<a{a},a{b}> = {lhs} but <a{ta},a{tb}> = {rhs}"));
            }
        }
    }
    rep.push(Check::from_witness("isometry", (!bad.is_empty()).then_some(bad)));

    // tau^n(a) leaves Gamma1 for some n; a cycle never does
    let mut stuck = Vec::new();
    for &a in &t.gamma1 {
        let mut seen = vec![a];
        let mut cur = a;
        while let Some(&next) = t.tau.get(&cur) {
            if seen.contains(&next) {
                stuck.push(format!("a{a} returns to a{next}"));
                break;
            }
            seen.push(next);
            cur = next;
        }
    }
    rep.push(Check::from_witness("nilpotent", (!stuck.is_empty()).then_some(stuck)));

    let duals: Vec<Vector> = t
        .tau
        .iter()
        .map(|(&a, &ta)| {
            let d: Vec<i64> = g
                .roots
                .vertex(a)
                .iter()
                .zip(g.roots.vertex(ta))
                .map(|(x, y)| x - y)
                .collect();
            g.coroot_dual(&d)
        })
        .collect();
    let v = r - rank_of(&duals, r);
    rep.push(if v == t.v_dim && t.s_dim == v * v.saturating_sub(1) / 2 {
        Check::pass("dimensions")
    } else {
        Check::fail(
            "dimensions",
            vec![format!("v_dim {} (recomputed {v}), s_dim {}", t.v_dim, t.s_dim)],
        )
    });
    rep
}

pub fn bd_to_json(ts: &[BDTriple]) -> String {
    serde_json::to_string_pretty(ts).expect("triples always serialize")
}
