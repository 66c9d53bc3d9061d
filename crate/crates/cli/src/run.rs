use std::fmt::Write as _;
use std::path::Path;

use liecurrent::arith::{to_pq, Scalar};
use liecurrent::double::{build_w, classify_a_poly, manin_verify, CaseTag, Window};
use liecurrent::orders::{enum_bd, verify_bd_triple, verify_f_data, BDTriple, FData};
use liecurrent::report::{Check, Report, REPORT_VERSION};
use liecurrent::rmatrix::{
    build_r, cocycle_check, cybe_check, degree_bound_check, dual_basis_verify, r_to_json, skew_check, RCase,
};
use liecurrent::trace_ext::TraceExtension;
use liecurrent::{build_algebra, Error, LaurentPoly, LieAlgebraData};
use num_traits::Zero;
use rayon::prelude::*;

use crate::{BdArgs, CaseArgs, ExportCmd, Format, Output, TraceCmd, VerifyArgs};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedType(_)
            | Error::DegenerateParameters(_)
            | Error::WindowTooSmall(_)
            | Error::RankTooLarge(_)
            | Error::BadDegree(_)
            | Error::BadConstantTerm(_)
            | Error::Parse(_)
            | Error::Invalid(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn config(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

fn write_out(path: Option<&Path>, body: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| config(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn emit(out: &Output, text: impl FnOnce() -> String, json: impl FnOnce() -> String) -> Result<(), Failure> {
    let mut body = match out.format {
        Format::Text => text(),
        Format::Json => json(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    write_out(out.output.as_deref(), &body)
}

fn case_of(a: &CaseArgs) -> Result<(LieAlgebraData, CaseTag), Failure> {
    let g = build_algebra(a.algebra)?;
    let case = CaseTag::parse(&a.case, a.m1.clone(), a.m2.clone())?;
    Ok((g, case))
}

pub fn verify(a: &VerifyArgs) -> Result<bool, Failure> {
    if a.depth == 0 {
        return Err(config("--depth must be at least 1"));
    }
    let (g, case) = case_of(&a.case)?;
    let window = Window::new(a.window.0, a.window.1)?;
    let w = build_w(&case, &g)?;
    let r = build_r(&RCase::Case(case.clone()), &g)?;
    let label = case.to_string();

    // independent parts run concurrently; collect keeps their order
    let parts: Vec<liecurrent::Result<Option<(&str, Report)>>> = (0..6)
        .into_par_iter()
        .map(|i| -> liecurrent::Result<Option<(&str, Report)>> {
            Ok(match i {
                0 => Some(("manin.", manin_verify(&w, &case, &g, window)?)),
                1 => Some(("", cybe_check(&r, &g).to_report(&label, &g))),
                2 => {
                    let s = skew_check(&r);
                    let mut rep = Report::new(label.clone(), g.kind.name());
                    rep.push(Check::from_witness("skew", s.witness.map(|w| vec![w])));
                    Some(("", rep))
                }
                3 => Some(("cobracket.", degree_bound_check(&r, &g, a.depth))),
                4 => Some(("cobracket.", cocycle_check(&r, &g, a.depth))),
                _ if case.is_a() => Some(("dual_basis.", dual_basis_verify(&case, &g, a.depth)?.0)),
                _ => None,
            })
        })
        .collect();

    let mut rep = Report::new(label, g.kind.name());
    for p in parts {
        if let Some((prefix, sub)) = p? {
            rep.absorb(prefix, sub);
        }
    }
    emit(&a.out, || rep.to_text(), || rep.to_json())?;
    Ok(rep.all_pass())
}

fn set(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| format!("a{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn triple_line(t: &BDTriple) -> String {
    let tau: Vec<String> = t.tau.iter().map(|(a, b)| format!("a{a} -> a{b}")).collect();
    let tau = if tau.is_empty() { "-".to_string() } else { tau.join(", ") };
    format!(
        "G1 = {}  G2 = {}  tau: {tau}  dim V = {}  dim S = {}",
        set(&t.gamma1),
        set(&t.gamma2),
        t.v_dim,
        t.s_dim
    )
}

pub fn bd(a: &BdArgs) -> Result<bool, Failure> {
    let g = build_algebra(a.algebra)?;
    let triples = enum_bd(&g, a.vertex)?;
    let mut rep = Report::new(format!("BD triples at vertex {}", a.vertex), g.kind.name());
    for (k, t) in triples.iter().enumerate() {
        let v = verify_bd_triple(&g, a.vertex, t);
        let bad: Vec<String> = v
            .failures()
            .iter()
            .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default().join("; ")))
            .collect();
        rep.push(Check::from_witness(format!("triple_{k}"), (!bad.is_empty()).then_some(bad)));
    }
    if let Some(path) = &a.fdata {
        let s = std::fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
        let d = FData::from_json(&s, g.dim())?;
        rep.absorb("fdata.", verify_f_data(&d, &g, a.vertex)?);
    }
    rep.note(format!("{} triples", triples.len()));

    let text = || {
        let mut s = format!("{} triples for {} at vertex {}\n", triples.len(), g.kind.name(), a.vertex);
        for (k, t) in triples.iter().enumerate() {
            let _ = writeln!(s, "  {k}: {}", triple_line(t));
        }
        s + &rep.to_text()
    };
    let json = || {
        let v = serde_json::json!({
            "version": REPORT_VERSION,
            "algebra": g.kind.name(),
            "vertex": a.vertex,
            "count": triples.len(),
            "triples": triples,
            "report": rep,
        });
        serde_json::to_string_pretty(&v).expect("plain data")
    };
    emit(&a.out, text, json)?;
    Ok(rep.all_pass())
}

fn pq_list(v: &[Scalar]) -> Vec<String> {
    v.iter().map(to_pq).collect()
}

pub fn trace(t: &TraceCmd) -> Result<bool, Failure> {
    match t {
        TraceCmd::Normalize { n, alpha, order, out } => normalize(*n, alpha, *order, out),
        TraceCmd::Classify { poly, out } => {
            let p = LaurentPoly::from_coeffs(poly);
            let class = classify_a_poly(&p)?;
            emit(
                out,
                || class.to_string(),
                || {
                    let v = serde_json::json!({
                        "version": REPORT_VERSION,
                        "poly": pq_list(poly),
                        "class": class.name(),
                        "normal_form": class.to_string(),
                    });
                    serde_json::to_string_pretty(&v).expect("plain data")
                },
            )?;
            Ok(true)
        }
    }
}

fn normalize(n: u32, alpha: &[Scalar], order: usize, out: &Output) -> Result<bool, Failure> {
    // enough entries for every trace the targets touch
    let need = order + n as usize + 2;
    let mut alpha = alpha.to_vec();
    let mut notes = Vec::new();
    if alpha.len() < need {
        notes.push(format!("alpha zero-extended from {} to {need} entries", alpha.len()));
        alpha.resize(need, Scalar::zero());
    }
    let ext = TraceExtension::finite(n, alpha.clone());
    let norm = ext.normalize_automorphism(order).map_err(|e| match e {
        Error::ObstructionNonzero(m) => Failure {
            code: 1,
            message: format!(
                "{m}; for n = 2 the trace form pairs g[x] with a complement only when alpha_0 vanishes"
            ),
        },
        other => other.into(),
    })?;
    let ok = norm.checked.iter().all(|(_, v)| v.is_zero());
    let ks: Vec<i64> = norm.checked.iter().map(|(k, _)| *k).collect();
    let text = || {
        let var = if n == 0 { "y" } else { "y_e" };
        let mut s = format!("A({n}, alpha) to order {order}\n");
        for note in &notes {
            let _ = writeln!(s, "  note: {note}");
        }
        for (i, c) in norm.eta.iter().enumerate() {
            let _ = writeln!(s, "  eta_{} = {}", i + 1, to_pq(c));
        }
        let _ = writeln!(
            s,
            "  [{}] re-substitution: t({var}^-k) = 0 for k = {}..{}",
            if ok { "PASS" } else { "FAIL" },
            ks.first().unwrap_or(&0),
            ks.last().unwrap_or(&0)
        );
        s
    };
    let json = || {
        let checked: Vec<serde_json::Value> = norm
            .checked
            .iter()
            .map(|(k, v)| serde_json::json!({"k": k, "trace": to_pq(v)}))
            .collect();
        let v = serde_json::json!({
            "version": REPORT_VERSION,
            "n": n,
            "order": order,
            "alpha": pq_list(&alpha),
            "xi": pq_list(&norm.xi),
            "eta": pq_list(&norm.eta),
            "checked": checked,
            "notes": notes,
        });
        serde_json::to_string_pretty(&v).expect("plain data")
    };
    emit(out, text, json)?;
    Ok(ok)
}

pub fn export(x: &ExportCmd) -> Result<bool, Failure> {
    let (v, path) = match x {
        ExportCmd::Algebra { algebra, output } => (build_algebra(*algebra)?.to_json(), output),
        ExportCmd::Rmatrix { case, output } => {
            let (g, c) = case_of(case)?;
            (r_to_json(&build_r(&RCase::Case(c), &g)?, &g), output)
        }
    };
    let mut body = serde_json::to_string_pretty(&v).expect("plain data");
    body.push('\n');
    write_out(path.as_deref(), &body)?;
    Ok(true)
}
