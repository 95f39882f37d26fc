//! Canonical renderings of characters and verification reports.
//!
//! Everything here is a pure function of its input, and maps/arrays are emitted in
//! a fixed order, so identical inputs give byte-identical output.

use crate::characters::CharacterResult;
use crate::liealg::{NilpotentSlice, RootSystem};
use crate::modular::TransformReport;
use crate::qlaurent::{BigQ, GaussQ, QJetSeries};
use crate::Q;
use num_complex::Complex64;
use serde_json::{json, Value};
use std::fmt::Write;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: &str = "exponent_num,exponent_den,coeff_re_num,coeff_re_den,coeff_im_num,coeff_im_den";

fn frac(x: &Q) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn bigfrac(x: &BigQ) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn vec_frac(v: &[Q]) -> Vec<String> {
    v.iter().map(frac).collect()
}

fn c64(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// The u⁰ (z = 0) part of a series as (exponent, coefficient) pairs.
fn u0_terms(s: &QJetSeries) -> Vec<(Q, GaussQ)> {
    s.coefficients().into_iter().filter(|t| t.1 == 0).map(|(e, _, c)| (e, c)).collect()
}

/// One line per nonzero coefficient, `exponent_num,exponent_den,re_num,re_den,im_num,im_den`.
pub fn series_csv(s: &QJetSeries) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (e, c) in u0_terms(s) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            e.numer(),
            e.denom(),
            c.re.numer(),
            c.re.denom(),
            c.im.numer(),
            c.im.denom()
        );
    }
    out
}

pub fn series_json(s: &QJetSeries) -> Value {
    let terms: Vec<Value> = s
        .coefficients()
        .into_iter()
        .map(|(e, k, c)| json!({"exponent": frac(&e), "u": k, "re": bigfrac(&c.re), "im": bigfrac(&c.im)}))
        .collect();
    json!({
        "jet": s.jet(),
        "precision": s.prec().map(|p| frac(&p)),
        "terms": terms,
    })
}

pub fn character_json(r: &CharacterResult) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "character",
        "algebra": r.algebra,
        "nilpotent": r.nilpotent,
        "level": r.level.map(|l| frac(&l)),
        "q_order": frac(&r.q_order),
        "jet": r.jet,
        "u_cancelled": r.u_cancelled,
        "central_charge": r.central_charge.map(|c| frac(&c)),
        "central_charge_note": r.central_charge_note,
        "leading_exponent": r.lead().map(|e| frac(&e)),
        "integer_coefficients": r.has_integer_coefficients(),
        "flags": r.flags,
        "series": series_json(&r.series),
    })
}

/// Plain-text rendering: a short header, then `q^e  coefficient` per line (u⁰ part).
pub fn character_text(r: &CharacterResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra: {}", r.algebra);
    if let Some(n) = &r.nilpotent {
        let _ = writeln!(out, "nilpotent: {n}");
    }
    if let Some(l) = r.level {
        let _ = writeln!(out, "level: {}", frac(&l));
    }
    if let Some(c) = r.central_charge {
        let _ = writeln!(out, "central charge: {}", frac(&c));
    }
    let _ = writeln!(out, "q-order: {}", frac(&r.q_order));
    match r.lead() {
        None => {
            let _ = writeln!(out, "series: 0");
        }
        Some(e) => {
            let _ = writeln!(out, "leading exponent: {}", frac(&e));
            for (e, c) in u0_terms(&r.series) {
                let _ = writeln!(out, "q^{}\t{}", frac(&e), c);
            }
        }
    }
    for f in &r.flags {
        let _ = writeln!(out, "note: {f}");
    }
    out
}

pub fn report_json(r: &TransformReport) -> Value {
    json!({
        "identity": r.identity,
        "tau": c64(r.tau),
        "z": r.z.iter().map(|c| c64(*c)).collect::<Vec<_>>(),
        "lhs": c64(r.lhs),
        "rhs": c64(r.rhs),
        "abs_dev": r.abs_dev,
        "rel_dev": r.rel_dev,
        "tail_bound": r.tail_bound,
        "eps": r.eps,
        "verdict": if r.pass { "PASS" } else { "FAIL" },
    })
}

pub fn reports_json(rs: &[TransformReport]) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "verification",
        "pass": rs.iter().all(|r| r.pass),
        "max_rel_dev": rs.iter().map(|r| r.rel_dev).fold(0.0, f64::max),
        "reports": rs.iter().map(report_json).collect::<Vec<_>>(),
    })
}

pub fn report_text(r: &TransformReport) -> String {
    format!(
        "{} {} tau={:.6}{:+.6}i rel_dev={:.3e} tail={:.3e}",
        if r.pass { "PASS" } else { "FAIL" },
        r.identity,
        r.tau.re,
        r.tau.im,
        r.rel_dev,
        r.tail_bound
    )
}

pub fn algebra_json(rs: &RootSystem) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "algebra",
        "type": rs.cartan_type.to_string(),
        "rank": rs.rank(),
        "dim": rs.dim(),
        "coxeter": rs.coxeter,
        "dual_coxeter": rs.dual_coxeter,
        "lacety": rs.lacety,
        "weyl_order": rs.weyl_order().to_string(),
        "cartan": rs.cartan,
        "theta": rs.theta,
        "rho": vec_frac(&rs.rho),
        "positive_roots": rs.positive.len(),
    })
}

pub fn slice_json(rs: &RootSystem, s: &NilpotentSlice) -> Value {
    let dims: Vec<Value> = s.graded_dims().iter().map(|(j, d)| json!([frac(j), d])).collect();
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "slice",
        "type": rs.cartan_type.to_string(),
        "rank": rs.rank(),
        "nilpotent": s.kind_name(),
        "dynkin_labels": vec_frac(&rs.dynkin_labels(&s.x).iter().map(|v| v * 2).collect::<Vec<_>>()),
        "x": vec_frac(&s.x),
        "graded_dims": dims,
        "dim_g0": s.dim_g0(),
        "dim_g_half": s.dim_g_half(),
        "dim_gf": s.dim_gf(),
        "theta_x": frac(&s.theta_x()),
        "beta": s.beta,
        "hf_known": s.hf_basis.is_some(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::UJet;

    #[test]
    fn csv_is_exact() {
        let mut s = QJetSeries::zero(0, Some(Q::new(3, 1)));
        s.push(Q::new(-1, 10), UJet::constant(GaussQ::from_parts(Q::new(1, 1), Q::new(0, 1)), 0));
        s.push(Q::new(9, 10), UJet::constant(GaussQ::from_parts(Q::new(9, 2), Q::new(-1, 3)), 0));
        let csv = series_csv(&s);
        assert_eq!(csv, format!("{CSV_HEADER}\n-1,10,1,1,0,1\n9,10,9,2,-1,3\n"));
        let j = series_json(&s);
        assert_eq!(j["terms"][1]["re"], "9/2");
        assert_eq!(j["precision"], "3");
    }

    #[test]
    fn slice_json_is_stable() {
        let rs = RootSystem::from_name("D4").unwrap();
        let s = NilpotentSlice::minimal(&rs);
        let a = to_pretty(&slice_json(&rs, &s));
        let b = to_pretty(&slice_json(&rs, &s));
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["dim_g_half"], 8);
        assert_eq!(v["dynkin_labels"], json!(["0", "1", "0", "0"]));
    }
}
