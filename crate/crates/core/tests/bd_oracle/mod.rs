// Brute-force Belavin-Drinfeld oracle. Shares no code with the library
// enumerator: diagrams, marks and ranks are all hard-coded or recomputed here.

#![allow(dead_code)]

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleTriple {
    pub g1: Vec<usize>,
    pub g2: Vec<usize>,
    pub tau: Vec<(usize, usize)>,
    pub v_dim: usize,
}

pub struct Diagram {
    // inner products of alpha_0..alpha_r, any positive scaling
    pub gram: Vec<Vec<i64>>,
    // marks k_0..k_r, k_0 = 1
    pub marks: Vec<i64>,
}

pub fn diagram(name: &str) -> Diagram {
    match name {
        "sl2" => Diagram {
            gram: vec![vec![2, -2], vec![-2, 2]],
            marks: vec![1, 1],
        },
        "sl3" => Diagram {
            gram: vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
            marks: vec![1, 1, 1],
        },
        // alpha_1 short, alpha_0 and alpha_2 long
        "sp4" => Diagram {
            gram: vec![vec![4, -2, 0], vec![-2, 2, -2], vec![0, -2, 4]],
            marks: vec![1, 2, 1],
        },
        // alpha_1 short; alpha_0 hangs off the long alpha_2
        "g2" => Diagram {
            gram: vec![vec![6, 0, -3], vec![0, 2, -3], vec![-3, -3, 6]],
            marks: vec![1, 3, 2],
        },
        _ => panic!("no diagram for {name}"),
    }
}

// alpha_v in simple-root coordinates, alpha_0 = -sum k_i alpha_i
fn coords(d: &Diagram, v: usize) -> Vec<i64> {
    let r = d.marks.len() - 1;
    if v == 0 {
        d.marks[1..].iter().map(|k| -k).collect()
    } else {
        (0..r).map(|j| i64::from(j + 1 == v)).collect()
    }
}

fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[rank][k] * b;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn oracle(name: &str, vertex: usize) -> Vec<OracleTriple> {
    let d = diagram(name);
    let n = d.marks.len();
    let r = n - 1;
    let domain: Vec<usize> = (0..n).filter(|&v| v != vertex).collect();
    let mut out = Vec::new();
    // assignment[j] = image of domain[j] or None
    let mut assign: Vec<Option<usize>> = vec![None; domain.len()];
    loop {
        let pairs: Vec<(usize, usize)> = domain
            .iter()
            .zip(&assign)
            .filter_map(|(&a, t)| t.map(|t| (a, t)))
            .collect();
        let targets: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        let mut sorted = targets.clone();
        sorted.sort();
        sorted.dedup();
        let injective = sorted.len() == targets.len();
        let isometric = pairs.iter().all(|&(a, ta)| {
            pairs
                .iter()
                .all(|&(b, tb)| d.gram[a][b] == d.gram[ta][tb])
        });
        let image = |v: usize| pairs.iter().find(|p| p.0 == v).map(|p| p.1);
        let nilpotent = pairs.iter().all(|&(a, _)| {
            let mut cur = a;
            for _ in 0..=n {
                match image(cur) {
                    Some(t) => cur = t,
                    None => return true,
                }
            }
            false
        });
        if injective && isometric && nilpotent {
            let rows: Vec<Vec<i64>> = pairs
                .iter()
                .map(|&(a, t)| {
                    let ca = coords(&d, a);
                    let ct = coords(&d, t);
                    ca.iter().zip(&ct).map(|(x, y)| x - y).collect()
                })
                .collect();
            let mut g1: Vec<usize> = pairs.iter().map(|p| p.0).collect();
            g1.sort();
            out.push(OracleTriple {
                g1,
                g2: sorted,
                tau: pairs.clone(),
                v_dim: r - int_rank(&rows),
            });
        }
        // odometer over None, 1..n (targets exclude 0)
        let mut j = 0;
        loop {
            if j == assign.len() {
                out.sort();
                return out;
            }
            assign[j] = match assign[j] {
                None => Some(1),
                Some(t) if t + 1 < n => Some(t + 1),
                Some(_) => None,
            };
            if assign[j].is_some() {
                break;
            }
            j += 1;
        }
    }
}
