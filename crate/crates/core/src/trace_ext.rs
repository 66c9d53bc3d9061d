//! Trace extensions A(n, alpha) and A(infinity) of F[[x]], and the normalizing
//! substitution that kills the negative traces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::laurent::LaurentPoly;
use crate::arith::linalg::Matrix;
use crate::arith::poly::MultiPoly;
use crate::arith::scalar::{parse_scalar, to_pq, Scalar};
use crate::arith::series::{series_inverse, TruncSeries};
use crate::error::{Error, Result};
use crate::report::{Check, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtKind {
    /// `alpha[j]` is alpha_{n-2-j}.
    Finite { n: u32, alpha: Vec<Scalar> },
    /// a_0..=a_depth are available.
    Infinite { depth: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceExtension {
    pub kind: ExtKind,
}

/// Finite kinds: `fin[i]` is the coefficient of x_f^i and `laur` the F((x_e))
/// part (for n = 0, all of F((x))). A(infinity): `a` holds the a_i part and
/// `laur` the F[[x]] part.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceElem {
    pub fin: Vec<Scalar>,
    pub laur: LaurentPoly,
    pub a: BTreeMap<usize, Scalar>,
}

impl TraceElem {
    pub fn is_zero(&self) -> bool {
        self.fin.iter().all(Zero::is_zero) && self.laur.is_zero() && self.a.is_empty()
    }

    pub fn add(&self, other: &TraceElem) -> TraceElem {
        self.add_scaled(other, &Scalar::one())
    }

    pub fn add_scaled(&self, other: &TraceElem, s: &Scalar) -> TraceElem {
        let len = self.fin.len().max(other.fin.len());
        let mut fin = vec![Scalar::zero(); len];
        for (i, c) in self.fin.iter().enumerate() {
            fin[i] += c;
        }
        for (i, c) in other.fin.iter().enumerate() {
            fin[i] += c * s;
        }
        let mut a = self.a.clone();
        for (i, c) in &other.a {
            let v = a.remove(i).unwrap_or_default() + c * s;
            if !v.is_zero() {
                a.insert(*i, v);
            }
        }
        TraceElem {
            fin,
            laur: &self.laur + &other.laur.scale(s),
            a,
        }
    }

    pub fn scale(&self, s: &Scalar) -> TraceElem {
        TraceElem::default().add_scaled(self, s).with_fin_len(self.fin.len())
    }

    fn with_fin_len(mut self, n: usize) -> Self {
        self.fin.resize(n, Scalar::zero());
        self
    }
}

impl fmt::Display for TraceElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.fin.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}*x_f^{i}", to_pq(c)));
            }
        }
        if !self.laur.is_zero() {
            parts.push(format!("({})", self.laur));
        }
        for (i, c) in &self.a {
            parts.push(format!("{}*a_{i}", to_pq(c)));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A linear functional on an extension; lets tests inject degenerate traces.
pub trait TraceFunctional {
    fn trace(&self, u: &TraceElem) -> Result<Scalar>;
}

impl TraceExtension {
    pub fn finite(n: u32, alpha: Vec<Scalar>) -> Self {
        Self {
            kind: ExtKind::Finite { n, alpha },
        }
    }

    pub fn infinite(depth: usize) -> Self {
        Self {
            kind: ExtKind::Infinite { depth },
        }
    }

    /// Stored alpha entries (Finite) or the largest a-index (Infinite).
    pub fn depth(&self) -> usize {
        match &self.kind {
            ExtKind::Finite { alpha, .. } => alpha.len(),
            ExtKind::Infinite { depth } => *depth,
        }
    }

    fn n(&self) -> usize {
        match &self.kind {
            ExtKind::Finite { n, .. } => *n as usize,
            ExtKind::Infinite { .. } => 0,
        }
    }

    fn zero_elem(&self) -> TraceElem {
        TraceElem {
            fin: vec![Scalar::zero(); self.n()],
            ..Default::default()
        }
    }

    pub fn one(&self) -> TraceElem {
        self.x_pow(0).expect("x^0 is always available")
    }

    /// The image of x^i under F[[x]] -> A; negative i only for n = 0.
    pub fn x_pow(&self, i: i64) -> Result<TraceElem> {
        let mut u = self.zero_elem();
        match &self.kind {
            ExtKind::Finite { n, .. } => {
                if i < 0 && *n > 0 {
                    return Err(Error::Invalid(format!("x^{i} is not defined when n = {n}; use x_e")));
                }
                if i >= 0 && (i as usize) < u.fin.len() {
                    u.fin[i as usize] = Scalar::one();
                }
                u.laur = LaurentPoly::x_pow(i);
            }
            ExtKind::Infinite { .. } => {
                if i < 0 {
                    return Err(Error::Invalid(format!("x^{i} does not lie in A(infinity)")));
                }
                u.laur = LaurentPoly::x_pow(i);
            }
        }
        Ok(u)
    }

    /// x_e^i (any integer i); e itself is x_e^0.
    pub fn xe_pow(&self, i: i64) -> Result<TraceElem> {
        match &self.kind {
            ExtKind::Finite { .. } => {
                let mut u = self.zero_elem();
                u.laur = LaurentPoly::x_pow(i);
                Ok(u)
            }
            ExtKind::Infinite { .. } => Err(Error::Invalid("A(infinity) has no x_e".into())),
        }
    }

    /// x_f^i; zero for i >= n. f itself is x_f^0.
    pub fn xf_pow(&self, i: usize) -> Result<TraceElem> {
        match &self.kind {
            ExtKind::Finite { n, .. } if *n >= 1 => {
                let mut u = self.zero_elem();
                if i < u.fin.len() {
                    u.fin[i] = Scalar::one();
                }
                Ok(u)
            }
            _ => Err(Error::Invalid("x_f needs a finite extension with n >= 1".into())),
        }
    }

    pub fn a(&self, i: usize) -> Result<TraceElem> {
        match &self.kind {
            ExtKind::Infinite { depth } => {
                if i > *depth {
                    return Err(Error::DepthExceeded(format!("a_{i} beyond stored depth {depth}")));
                }
                let mut u = self.zero_elem();
                u.a.insert(i, Scalar::one());
                Ok(u)
            }
            _ => Err(Error::Invalid("a_i lives in A(infinity) only".into())),
        }
    }

    pub fn mul(&self, u: &TraceElem, v: &TraceElem) -> Result<TraceElem> {
        let mut out = self.zero_elem();
        match &self.kind {
            ExtKind::Finite { .. } => {
                let n = out.fin.len();
                for (i, c) in u.fin.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (j, d) in v.fin.iter().enumerate() {
                        if i + j < n {
                            out.fin[i + j] += c * d;
                        }
                    }
                }
                out.laur = &u.laur * &v.laur;
            }
            ExtKind::Infinite { depth } => {
                for w in [u, v] {
                    if let Some((&i, _)) = w.a.iter().next_back() {
                        if i > *depth {
                            return Err(Error::DepthExceeded(format!("a_{i} beyond stored depth {depth}")));
                        }
                    }
                }
                // a_i a_j = 0, a_i x^j = a_{i-j} when i >= j.
                for (x, y) in [(u, v), (v, u)] {
                    for (i, c) in &x.a {
                        for (j, d) in y.laur.terms() {
                            if *j < 0 {
                                return Err(Error::Invalid("negative power in A(infinity)".into()));
                            }
                            let j = *j as usize;
                            if *i >= j {
                                let e = out.a.entry(i - j).or_default();
                                *e += c * d;
                            }
                        }
                    }
                }
                out.a.retain(|_, c| !c.is_zero());
                out.laur = &u.laur * &v.laur;
            }
        }
        Ok(out)
    }

    pub fn alpha(&self, i: i64) -> Result<Scalar> {
        let ExtKind::Finite { n, alpha } = &self.kind else {
            return Err(Error::Invalid("alpha belongs to finite extensions".into()));
        };
        let j = *n as i64 - 2 - i;
        if j < 0 {
            return Err(Error::Invalid(format!("alpha_{i} is undefined for n = {n}")));
        }
        alpha.get(j as usize).cloned().ok_or_else(|| {
            Error::DepthExceeded(format!("alpha_{i} needed, {} stored", alpha.len()))
        })
    }

    /// t(x_e^i) for n >= 1, t(x^i) for n = 0.
    fn t_laurent_monomial(&self, i: i64) -> Result<Scalar> {
        let n = self.n() as i64;
        if n == 0 {
            return match i {
                -1 => Ok(Scalar::one()),
                i if i >= 0 => Ok(Scalar::zero()),
                i => self.alpha(i),
            };
        }
        if i >= n {
            Ok(Scalar::zero())
        } else if i == n - 1 {
            Ok(Scalar::one())
        } else {
            self.alpha(i)
        }
    }

    pub fn pair(&self, u: &TraceElem, v: &TraceElem) -> Result<Scalar> {
        self.trace(&self.mul(u, v)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TraceExtensionJson::from(self)).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: TraceExtensionJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }
}

impl TraceFunctional for TraceExtension {
    fn trace(&self, u: &TraceElem) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        match &self.kind {
            ExtKind::Finite { n, .. } => {
                let n = *n as usize;
                for (i, c) in u.fin.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    // t(x_f^{n-1}) = -1, t(x_f^i) = -alpha_i below that.
                    let t = if i + 1 == n { Scalar::one() } else { self.alpha(i as i64)? };
                    acc -= c * t;
                }
                for (i, c) in u.laur.terms() {
                    acc += c * self.t_laurent_monomial(*i)?;
                }
            }
            ExtKind::Infinite { .. } => {
                acc += u.a.get(&0).cloned().unwrap_or_default();
            }
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceExtensionJson {
    pub kind: String,
    pub n: Option<u32>,
    pub depth: usize,
    pub alpha: Vec<String>,
}

impl From<&TraceExtension> for TraceExtensionJson {
    fn from(t: &TraceExtension) -> Self {
        match &t.kind {
            ExtKind::Finite { n, alpha } => Self {
                kind: "finite".into(),
                n: Some(*n),
                depth: alpha.len(),
                alpha: alpha.iter().map(to_pq).collect(),
            },
            ExtKind::Infinite { depth } => Self {
                kind: "infinite".into(),
                n: None,
                depth: *depth,
                alpha: Vec::new(),
            },
        }
    }
}

impl TryFrom<TraceExtensionJson> for TraceExtension {
    type Error = Error;

    fn try_from(j: TraceExtensionJson) -> Result<Self> {
        match j.kind.as_str() {
            "finite" => {
                let n = j.n.ok_or_else(|| Error::Parse("finite extension without n".into()))?;
                let alpha = j.alpha.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()?;
                if alpha.len() != j.depth {
                    return Err(Error::Parse(format!("depth {} but {} alpha entries", j.depth, alpha.len())));
                }
                Ok(Self::finite(n, alpha))
            }
            "infinite" => Ok(Self::infinite(j.depth)),
            other => Err(Error::Parse(format!("unknown extension kind {other}"))),
        }
    }
}

/// Output of the normalization: y_e = x_e + sum xi_i x_e^{i+1} and its inverse
/// x_e = y_e + sum eta_i y_e^{i+1}, i.e. phi(x) = x + sum eta_i x^{i+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub n: u32,
    pub order: usize,
    pub xi: Vec<Scalar>,
    pub eta: Vec<Scalar>,
    /// (k, t(y_e^-k)) recomputed from eta; all zero.
    pub checked: Vec<(i64, Scalar)>,
}

/// 1 + sum c_i x^i as a series known to `order`.
fn unit_series(c: &[Scalar], order: usize) -> TruncSeries {
    let mut v = vec![Scalar::one()];
    v.extend(c.iter().cloned());
    TruncSeries::new(v.into_iter().take(order + 1).collect(), order)
}

fn series_pow_neg(s: &TruncSeries, k: usize) -> Result<TruncSeries> {
    let order = s.order();
    let p = MultiPoly::from_terms(s.coeffs().iter().enumerate().map(|(i, c)| ([i as u32, 0, 0], c.clone())));
    let inv = series_inverse(&p, order)?;
    let mut acc = TruncSeries::one(order);
    for _ in 0..k {
        acc = acc.mul(&inv);
    }
    Ok(acc)
}

/// The targets: n = 0 needs t(y^-k) = 0 for 2 <= k <= order + 1; n = 1, 2 need
/// t(y_e^-k) = 0 for 1 <= k <= order.
fn targets(n: u32, order: usize) -> Vec<i64> {
    if n == 0 {
        (2..=order as i64 + 1).collect()
    } else {
        (1..=order as i64).collect()
    }
}

/// The unknown fixed by target k, and the number of xi's needed overall.
fn unknown_for(n: u32, k: i64) -> usize {
    match n {
        0 => (k - 1) as usize,
        1 => k as usize,
        _ => (k + 1) as usize,
    }
}

impl TraceExtension {
    /// t(y^-k) with y = x_e (1 + sum xi_i x_e^i).
    fn trace_of_neg_power(&self, xi: &[Scalar], k: i64) -> Result<Scalar> {
        // only x_e^{m-k} with m - k <= n - 1 has a nonzero trace
        let top = (k + self.n() as i64 - 1).max(0) as usize;
        let s = series_pow_neg(&unit_series(xi, top), k as usize)?;
        let mut u = self.zero_elem();
        u.laur = s.to_laurent().shift(-k);
        self.trace(&u)
    }

    /// Normalization: returns xi and its compositional inverse eta.
    /// The eta list runs to the last unknown the targets involve (order for
    /// n = 0, 1; order + 1 for n = 2, where xi_1 is free and pinned to 0).
    pub fn normalize_automorphism(&self, order: usize) -> Result<Normalization> {
        let ExtKind::Finite { n, .. } = &self.kind else {
            return Err(Error::Invalid("normalization applies to A(n, alpha)".into()));
        };
        let n = *n;
        if n > 2 {
            return Err(Error::Invalid(format!("normalization is defined for n in {{0,1,2}}, got {n}")));
        }
        if order == 0 {
            return Err(Error::Invalid("order must be positive".into()));
        }
        if n == 2 {
            let a0 = self.alpha(0)?;
            if !a0.is_zero() {
                return Err(Error::ObstructionNonzero(format!(
                    "alpha_0 = {} != 0: A(2, alpha) admits no Lagrangian complement",
                    to_pq(&a0)
                )));
            }
        }
        let ks = targets(n, order);
        let len = unknown_for(n, *ks.last().unwrap());
        let mut xi = vec![Scalar::zero(); len];
        for &k in &ks {
            let j = unknown_for(n, k);
            // t(y^-k) = R - k xi_j, with R the value at xi_j = 0.
            xi[j - 1] = Scalar::zero();
            let r = self.trace_of_neg_power(&xi[..j], k)?;
            xi[j - 1] = r / Scalar::from_integer(k.into());
        }
        let eta = compositional_inverse(&xi);
        // independent re-substitution: rebuild y_e from eta alone
        let xi_back = compositional_inverse(&eta);
        let mut checked = Vec::new();
        for &k in &ks {
            let j = unknown_for(n, k);
            let v = self.trace_of_neg_power(&xi_back[..j], k)?;
            if !v.is_zero() {
                return Err(Error::Invalid(format!(
                    "re-substitution left t(y_e^-{k}) = {}",
                    to_pq(&v)
                )));
            }
            checked.push((k, v));
        }
        Ok(Normalization {
            n,
            order,
            xi,
            eta,
            checked,
        })
    }
}

/// Given psi(x) = x + sum c_i x^{i+1}, the coefficients of psi^{-1}.
pub fn compositional_inverse(c: &[Scalar]) -> Vec<Scalar> {
    let len = c.len();
    // phi(x)/x as a series; psi(phi) = phi * (1 + sum c_i phi^i)
    let mut eta = vec![Scalar::zero(); len];
    for j in 1..=len {
        let phi = unit_series(&eta, len);
        let mut pw = TruncSeries::one(len);
        let mut total = TruncSeries::one(len);
        for (i, ci) in c.iter().enumerate() {
            // phi^{i+1} / x^{i+1} ... times x^i: build phi^i as (phi/x)^i x^i
            pw = pw.mul(&phi);
            let shifted = shift_series(&pw, i + 1, len);
            total = add_series(&total, &shifted, ci);
        }
        // psi(phi)/x = (phi/x) * total; coefficient of x^j must vanish
        let comp = phi.mul(&total);
        let err = comp.coeffs()[j].clone();
        eta[j - 1] -= err;
    }
    eta
}

fn shift_series(s: &TruncSeries, by: usize, order: usize) -> TruncSeries {
    let mut v = vec![Scalar::zero(); by];
    v.extend(s.coeffs().iter().cloned());
    v.truncate(order + 1);
    TruncSeries::new(v, order)
}

fn add_series(a: &TruncSeries, b: &TruncSeries, s: &Scalar) -> TruncSeries {
    let v = a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| x + y * s).collect();
    TruncSeries::new(v, a.order())
}

/// F[[x]]-perp inside the window: x^0..x^D against themselves and the D+1
/// extension directions closest to F[[x]].
pub fn verify_perp(ext: &TraceExtension, window_depth: usize) -> Result<Report> {
    verify_perp_with(ext, ext, window_depth)
}

pub fn verify_perp_with(ext: &TraceExtension, t: &dyn TraceFunctional, window_depth: usize) -> Result<Report> {
    let d = window_depth;
    let n = ext.n() as i64;
    let poly: Vec<TraceElem> = (0..=d as i64).map(|i| ext.x_pow(i)).collect::<Result<_>>()?;
    let extra: Vec<(String, TraceElem)> = match &ext.kind {
        ExtKind::Finite { .. } => (0..=d as i64)
            .map(|m| {
                let i = n - 1 - m;
                let name = if n == 0 { format!("x^{i}") } else { format!("x_e^{i}") };
                ext.xe_pow(i).map(|u| (name, u))
            })
            .collect::<Result<_>>()?,
        ExtKind::Infinite { .. } => (0..=d).map(|i| ext.a(i).map(|u| (format!("a_{i}"), u))).collect::<Result<_>>()?,
    };
    let names: Vec<String> = (0..=d)
        .map(|i| format!("x^{i}"))
        .chain(extra.iter().map(|(s, _)| s.clone()))
        .collect();
    let window: Vec<&TraceElem> = poly.iter().chain(extra.iter().map(|(_, u)| u)).collect();
    // rows: window elements; columns: the test powers x^0..x^D
    let mut m = Matrix::zeros(d + 1, window.len());
    for (j, test) in poly.iter().enumerate() {
        for (i, w) in window.iter().enumerate() {
            m.set(j, i, t.trace(&ext.mul(w, test)?)?);
        }
    }
    let kernel = m.kernel();
    let mut rep = Report::new(kind_label(ext), "F[[x]]");
    rep.window = Some([0, d as i64]);
    let ext_block_rank = {
        let mut b = Matrix::zeros(d + 1, extra.len());
        for j in 0..=d {
            for i in 0..extra.len() {
                b.set(j, i, m.get(j, d + 1 + i).clone());
            }
        }
        b.rank()
    };
    rep.push(Check::from_witness(
        "nondegenerate",
        (ext_block_rank != extra.len()).then(|| {
            vec![format!(
                "extension directions pair with rank {ext_block_rank} < {}",
                extra.len()
            )]
        }),
    ));
    let stray: Vec<String> = kernel
        .iter()
        .filter(|v| v[d + 1..].iter().any(|c| !c.is_zero()))
        .map(|v| render_combo(v, &names))
        .collect();
    rep.push(Check::from_witness("perp_is_polynomial", (!stray.is_empty()).then_some(stray)));
    rep.notes.push(format!(
        "perp basis: {}",
        kernel.iter().map(|v| render_combo(v, &names)).collect::<Vec<_>>().join(", ")
    ));
    Ok(rep)
}

fn render_combo(v: &[Scalar], names: &[String]) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, s)| if c.is_one() { s.clone() } else { format!("{}*{s}", to_pq(c)) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn kind_label(ext: &TraceExtension) -> String {
    match &ext.kind {
        ExtKind::Finite { n, .. } => format!("A({n}, alpha)"),
        ExtKind::Infinite { .. } => "A(infinity)".into(),
    }
}
