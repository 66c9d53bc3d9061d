#![allow(dead_code)]

use liecurrent::arith::scalar::Scalar;
use num_traits::{One, Zero};

// ---- independent oracle: t_0(phi(x)^j) = alpha_j ----

pub fn mul(a: &[Scalar], b: &[Scalar], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of (1 + sum eta_i x^i)^j, any integer j, to `len` terms.
pub fn unit_pow(eta: &[Scalar], j: i64, len: usize) -> Vec<Scalar> {
    let mut p = vec![Scalar::one()];
    p.extend(eta.iter().cloned());
    p.resize(len, Scalar::zero());
    let base = if j >= 0 {
        p
    } else {
        // Newton-free inverse: solve p * r = 1 term by term
        let mut r = vec![Scalar::zero(); len];
        r[0] = Scalar::one();
        for k in 1..len {
            let mut acc = Scalar::zero();
            for i in 1..=k {
                acc -= &p[i] * &r[k - i];
            }
            r[k] = acc;
        }
        r
    };
    let mut out = vec![Scalar::zero(); len];
    out[0] = Scalar::one();
    for _ in 0..j.unsigned_abs() {
        out = mul(&out, &base, len);
    }
    out
}

pub fn oracle_holds(n: u32, alpha: &[Scalar], order: usize, eta: &[Scalar]) -> Result<(), String> {
    let lowest = if n == 0 { -(order as i64) - 1 } else { -(order as i64) };
    for j in lowest..=(n as i64 - 2) {
        if n == 0 && j == -1 {
            continue;
        }
        // t_0(phi^j) = coefficient of x^{n-1} in x^j P^j (n = 0: of x^-1)
        let idx = n as i64 - 1 - j;
        let c = unit_pow(eta, j, idx as usize + 1)[idx as usize].clone();
        let want = alpha[(n as i64 - 2 - j) as usize].clone();
        if c != want {
            return Err(format!("j = {j}: t0(phi^j) = {c}, alpha_j = {want}"));
        }
    }
    Ok(())
}
