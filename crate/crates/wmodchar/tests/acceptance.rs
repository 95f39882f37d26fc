//! Acceptance run: one PASS/FAIL line per criterion, written straight to stdout so
//! it shows up without `--nocapture`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::time::{Duration, Instant};
use wmodchar::characters::{
    admissible_vacuum_character, boundary_affine_character, boundary_slice_character, numerator_b, numerator_b_relative, principal_qhr_character,
    qhr_admissible_character, smallest_admissible_p, vanishing_predicate, wmin_character, wmin_spec,
};
use wmodchar::liealg::{AffineWeight, NilpotentSlice, RootSystem, WeylElement, WeylGroup, DEFAULT_WEYL_CAP};
use wmodchar::modular::TransformReport;
use wmodchar::qlaurent::{GaussQ, QJetSeries};
use wmodchar::report::series_csv;
use wmodchar::thetaforms::{dedekind_eta, f_function, f_function_alt, generic_direction, jacobi_theta, FVariant, ThetaKind};
use wmodchar::verify::{self, Sampling};
use wmodchar::Q;

const EPS: f64 = 1e-6;

fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

fn setup(name: &str) -> (RootSystem, WeylGroup) {
    let rs = RootSystem::from_name(name).unwrap();
    let wg = WeylGroup::new(&rs, DEFAULT_WEYL_CAP).unwrap();
    (rs, wg)
}

fn vacuum0(rs: &RootSystem, p: i64) -> AffineWeight {
    AffineWeight::lambda0(rs.rank(), qi(p - rs.dual_coxeter))
}

struct Ledger {
    failures: Vec<String>,
}

impl Ledger {
    fn line(&mut self, id: &str, pass: bool, took: Duration, limit: Duration, what: &str) {
        let pass_all = pass && took <= limit;
        let mut out = std::io::stdout().lock();
        let _ = writeln!(
            out,
            "acceptance {id}: {} {what} [{:.1}s, limit {}s]",
            if pass_all { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs()
        );
        if !pass_all {
            self.failures.push(id.to_string());
        }
    }

    fn note(&self, id: &str, text: &str) {
        let _ = writeln!(std::io::stdout().lock(), "acceptance {id}: {text}");
    }
}

fn numeric_ok(reps: &[TransformReport]) -> (bool, f64, f64) {
    let max = reps.iter().map(|r| r.rel_dev).fold(0.0, f64::max);
    let tail = reps.iter().map(|r| r.tail_bound).fold(0.0, f64::max);
    (reps.iter().all(|r| r.pass && r.eps == EPS) && max <= EPS, max, tail)
}

fn criterion1(l: &mut Ledger) {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, k) in [("A1", -1), ("D4", -1), ("D4", -2)] {
        let (rs, wg) = setup(name);
        let spec = verify::theorem1_spec(&rs, k, None).unwrap();
        let c = verify::theorem1(&rs, &wg, &spec, qi(4), 6).unwrap();
        ok &= c.pass;
        parts.push(format!("{name} k={k} through q^{}", c.upto));
    }
    // k = -1 is the only level at which the A1 minimal data satisfy (λ|α) = k + h^∨.
    let a1 = RootSystem::from_name("A1").unwrap();
    ok &= (-1..=4).filter(|k| verify::theorem1_spec(&a1, *k, None).is_ok()).count() == 1;
    l.line("C1", ok, t.elapsed(), Duration::from_secs(60), &format!("numerator identity A = rhs = B, jet 6: {}", parts.join("; ")));
}

fn criterion2(l: &mut Ledger) {
    let t = Instant::now();
    let (rs, wg) = setup("D4");
    let c = verify::remark4(&rs, &wg, qi(4), 6).unwrap();
    l.line("C2", c.pass, t.elapsed(), Duration::from_secs(120), &format!("denominator identity D4 k=-2 through q^{}", c.upto));
    let t = Instant::now();
    let (rs, wg) = setup("E6");
    let c = verify::remark4(&rs, &wg, qi(3), 3).unwrap();
    l.line("C2-slow", c.pass, t.elapsed(), Duration::from_secs(1800), &format!("denominator identity E6 k=-3 through q^{}", c.upto));
}

fn criterion3(l: &mut Ledger) {
    let t = Instant::now();
    let (d4, wd4) = setup("D4");
    let (e6, we6) = setup("E6");
    let one_d4 = wmin_character(&d4, &wd4, -2, qi(6), 0).unwrap().is_constant_one();
    let one_e6 = wmin_character(&e6, &we6, -3, qi(6), 0).unwrap().is_constant_one();
    let r = wmin_character(&d4, &wd4, -1, qi(6), 0).unwrap();
    let lead = r.lead().unwrap();
    let lead_one = r.series.coefficient(lead).map(|j| j.c[0] == GaussQ::one()).unwrap_or(false);
    let golden = include_str!("../../wmodchar-cli/tests/golden/wmin_d4_km1.csv");
    let frozen = series_csv(&r.series) == golden;
    l.line(
        "C3",
        one_d4 && one_e6 && r.has_integer_coefficients() && lead_one && frozen,
        t.elapsed(),
        Duration::from_secs(120),
        &format!(
            "W^min: D4 k=-2 is 1 ({one_d4}), E6 k=-3 is 1 ({one_e6}), D4 k=-1 integral with leading coefficient 1 at q^{lead}, golden match ({frozen})"
        ),
    );
}

fn criterion4(l: &mut Ledger) {
    let t = Instant::now();
    let (rs, wg) = setup("A1");
    let pr = NilpotentSlice::principal(&rs);
    let bd_aff = boundary_affine_character(&rs, 3, qi(12)).unwrap();
    let adm = admissible_vacuum_character(&rs, rs.dual_coxeter, 3, qi(12)).unwrap();
    let a = bd_aff.series.agrees_with(&adm.series, bd_aff.lead().unwrap() + 12);
    let bd_pr = boundary_slice_character(&rs, &pr, 3, qi(8)).unwrap();
    let general = qhr_admissible_character(&rs, &wg, &pr, rs.dual_coxeter, 3, &vacuum0(&rs, rs.dual_coxeter), qi(8)).unwrap();
    let b = bd_pr.series.agrees_with(&general.series, bd_pr.lead().unwrap() + 8);
    // The principal product formula needs u = h; it agrees with the general QHR formula at every u = h point we can form.
    let mut c = true;
    for p in [3, 5, 7] {
        let prop = principal_qhr_character(&rs, p, &vacuum0(&rs, p), qi(8)).unwrap();
        let thm = qhr_admissible_character(&rs, &wg, &pr, p, rs.coxeter, &vacuum0(&rs, p), qi(8)).unwrap();
        c &= prop.series.agrees_with(&thm.series, prop.lead().unwrap() + 8);
    }
    // The literal triple at u = 3 asks for the principal product formula at k + h^∨ = 2/3, which needs
    // u = h = 2 with gcd(p, u) = 1; that point does not exist, so the criterion as stated
    // is reported FAIL and only the attainable parts are asserted.
    let literal = principal_qhr_character(&rs, rs.dual_coxeter, &vacuum0(&rs, rs.dual_coxeter), qi(8));
    let why = match &literal {
        Ok(_) => "unexpectedly computable".to_string(),
        Err(e) => e.to_string(),
    };
    l.note(
        "C4",
        &format!(
            "FAIL (unattainable, not asserted: principal product at u=3 -> {why}) A1 u=3: boundary affine = admissible vacuum to q-order 12 ({a}); boundary principal = general QHR to q-order 8 ({b}); principal product = general QHR at u=h=2, p=3,5,7 ({c}) [{:.1}s, limit 30s]",
            t.elapsed().as_secs_f64()
        ),
    );
    if !(a && b && c && literal.is_err() && t.elapsed() <= Duration::from_secs(30)) {
        l.failures.push("C4 attainable parts".into());
    }
}

fn criterion5(l: &mut Ledger) {
    let t = Instant::now();
    let mut ok = true;
    let mut checked = 0;
    for (name, principal) in [("A1", true), ("A2", true), ("D4", false)] {
        let (rs, wg) = setup(name);
        let slice = if principal { NilpotentSlice::principal(&rs) } else { NilpotentSlice::minimal(&rs) };
        for u in 1..=7 {
            let Some(p) = smallest_admissible_p(&rs, u) else { continue };
            let r = qhr_admissible_character(&rs, &wg, &slice, p, u, &vacuum0(&rs, p), qi(10)).unwrap();
            ok &= r.is_zero() == vanishing_predicate(&slice, u);
            checked += 1;
        }
    }
    l.line("C5", ok, t.elapsed(), Duration::from_secs(120), &format!("vanishing iff u <= theta(x) on {checked} admissible (g, f, u)"));
}

fn criterion6(l: &mut Ledger) {
    let t = Instant::now();
    let s = Sampling { points: 5, seed: 2024, eps: EPS };
    let mut reps = Vec::new();
    for name in ["A1", "D4"] {
        let (rs, wg) = setup(name);
        let slice = NilpotentSlice::minimal(&rs);
        reps.extend(verify::theta(&rs, 2, &s).unwrap());
        let k = if name == "A1" { 1 } else { -2 };
        reps.extend(verify::f_laws(&rs, &wg, k, &s).unwrap());
        reps.extend(verify::denominator(&rs, &slice, &s).unwrap());
    }
    let (ok, max, tail) = numeric_ok(&reps);
    l.line(
        "C6a",
        ok,
        t.elapsed(),
        Duration::from_secs(300),
        &format!("theta/f/denominator S,T laws, {} checks, max rel dev {max:.2e}, max tail {tail:.2e}", reps.len()),
    );
    let t = Instant::now();
    let (rs, wg) = setup("D4");
    let spec = verify::theorem1_spec(&rs, -2, None).unwrap();
    let ncos = wmodchar::modular::Cosets::new(&rs, 4, verify::COSET_CAP).unwrap().len();
    let reps = verify::theorem2(&rs, &wg, &spec, &verify::all_which(), &s).unwrap();
    let (ok, max, tail) = numeric_ok(&reps);
    l.line(
        "C6b",
        ok && ncos == 1024,
        t.elapsed(),
        Duration::from_secs(300),
        &format!("Psi S,T for D4 n=4 ({ncos} cosets), {} checks, max rel dev {max:.2e}, max tail {tail:.2e}", reps.len()),
    );
}

fn criterion7(l: &mut Ledger) {
    let t = Instant::now();
    let s = Sampling { points: 5, seed: 7, eps: EPS };
    let (a1, wa1) = setup("A1");
    let (a2, wa2) = setup("A2");
    let mut reps = verify::theorem4b(&a1, &wa1, &NilpotentSlice::minimal(&a1), 4, 3, &s).unwrap();
    reps.extend(verify::theorem4b(&a2, &wa2, &NilpotentSlice::principal(&a2), 5, 3, &s).unwrap());
    let (ok, max, tail) = numeric_ok(&reps);
    l.line(
        "C7",
        ok,
        t.elapsed(),
        Duration::from_secs(300),
        &format!("vacuum-class ch~ T-laws, {} checks, max dev {max:.2e}, max tail {tail:.2e}", reps.len()),
    );
}

fn criterion8(l: &mut Ledger) {
    let t = Instant::now();
    let (rs, wg) = setup("D4");
    // B for (w′λ, w′α) is ε(w′)·B for (λ, α). B vanishes to u-order
    // |Δ₊⁰| = 3 here, so the jet must go past 3 for the comparison to mean anything.
    let spec = wmin_spec(&rs, -1).unwrap();
    let emax = numerator_b_relative(&rs, &wg, FVariant::Plain, &spec, qi(2), 0).unwrap().prec().unwrap();
    let b = numerator_b(&rs, &wg, FVariant::Plain, &spec, emax, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut sign_ok = !b.is_zero();
    for _ in 0..20 {
        let w = wg.element(rng.gen_range(0..wg.len()));
        let bt = numerator_b(&rs, &wg, FVariant::Plain, &spec.twisted(&w), emax, 5).unwrap();
        sign_ok &= bt.agrees_with(&b.scale(&GaussQ::from_int(w.sign as i64)), emax);
    }
    // f⁻, f* built two ways.
    let z0 = generic_direction(&rs, &spec.slice).unwrap();
    let mut variant_ok = true;
    for i in [0usize, 7, 55, 191] {
        let w = wg.element(i);
        for v in [FVariant::Minus, FVariant::Star] {
            let a = f_function(&rs, v, &spec.lambda, &w, &spec.slice, &z0, qi(4), 3).unwrap();
            let c = f_function_alt(&rs, v, &spec.lambda, &w, &spec.slice, &z0, qi(4), 3).unwrap();
            variant_ok &= a.agrees_with(&c, qi(4));
        }
    }
    // r_γ f_{λ,w} = f_{λ,w} for γ ∈ Δ⁰ vanishing on 𝔥^f (distinguished D4 orbit, 𝔥^f = 0).
    let dist = NilpotentSlice::dynkin(&rs, &[2, 0, 2, 2]).unwrap();
    let zero = vec![Q::from_integer(0); 4];
    let mut stab_ok = true;
    for gamma in [vec![0i64, 1, 0, 0], vec![0, -1, 0, 0]] {
        stab_ok &= dist.vanishes_on_hf(&rs, &gamma);
        let r = WeylElement::reflection(&rs, &gamma);
        for i in [0usize, 5, 40, 120] {
            let w = wg.element(i);
            for v in [FVariant::Plain, FVariant::Minus, FVariant::Star] {
                let f1 = f_function(&rs, v, &spec.lambda, &w, &dist, &zero, qi(6), 0).unwrap();
                let f2 = f_function(&rs, v, &spec.lambda, &r.compose(&w), &dist, &zero, qi(6), 0).unwrap();
                stab_ok &= f1.agrees_with(&f2, qi(6));
            }
        }
    }
    // Raising the truncation keeps every coefficient already known.
    let mut mono_ok = true;
    let full = dedekind_eta(qi(12), 0).mul(&jacobi_theta(ThetaKind::T00, Q::new(1, 3), qi(12), 0));
    for n in 1..12 {
        let lo: QJetSeries = dedekind_eta(qi(n), 0).mul(&jacobi_theta(ThetaKind::T00, Q::new(1, 3), qi(n), 0));
        let p = lo.prec().unwrap();
        mono_ok &= p <= full.prec().unwrap() && lo.agrees_with(&full, p);
    }
    l.line(
        "C8",
        sign_ok && variant_ok && stab_ok && mono_ok,
        t.elapsed(),
        Duration::from_secs(300),
        &format!("sign law over 20 random w' ({sign_ok}), f variant laws ({variant_ok}), r_gamma-stabilizer ({stab_ok}), truncation monotonicity ({mono_ok})"),
    );
}

#[test]
fn acceptance() {
    let mut l = Ledger { failures: Vec::new() };
    criterion1(&mut l);
    criterion2(&mut l);
    criterion3(&mut l);
    criterion4(&mut l);
    criterion5(&mut l);
    criterion6(&mut l);
    criterion7(&mut l);
    criterion8(&mut l);
    assert!(l.failures.is_empty(), "failed: {:?}", l.failures);
}
