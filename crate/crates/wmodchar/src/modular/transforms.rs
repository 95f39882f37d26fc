use super::cosets::Cosets;
use super::eval::{Eval, Evaluator};
use crate::characters::{b_weights, check_dominant, NumeratorSpec};
use crate::liealg::{principal_admissible_vacuum, AffineWeight, NilpotentSlice, WeylElement, WeylGroup};
use crate::qlaurent::QJetSeries;
use crate::thetaforms::{positive_level, FVariant};
use crate::{Error, Result, Q};
use num_complex::Complex64 as C64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub const DEFAULT_EPS: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    S,
    T,
}

impl Transform {
    pub fn name(self) -> &'static str {
        match self {
            Transform::S => "S",
            Transform::T => "T",
        }
    }
}

/// A point (τ, z) with Im τ > 0 and z ∈ 𝔥^f in simple-root coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalPoint {
    pub tau: C64,
    pub z: Vec<C64>,
    pub eps: f64,
}

impl EvalPoint {
    pub fn new(tau: C64, z: Vec<C64>) -> Result<Self> {
        if tau.im <= 0.0 {
            return Err(Error::Precondition("Im tau must be positive".into()));
        }
        Ok(EvalPoint { tau, z, eps: DEFAULT_EPS })
    }

    /// z = s·z₀.
    pub fn along(tau: C64, z0: &[Q], s: C64) -> Result<Self> {
        Self::new(tau, z0.iter().map(|c| s * c.to_f64().unwrap()).collect())
    }

    /// Deterministic pseudo-random points with Im τ ∈ [0.6, 1.2], |Re τ| ≤ 0.5,
    /// and z = s·z₀/|z₀| with 0.05 ≤ |s| ≤ 0.3 (z = 0 when z₀ = 0).
    pub fn samples(ev: &Evaluator, z0: &[Q], count: usize, seed: u64) -> Vec<EvalPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let zf: Vec<C64> = z0.iter().map(|c| C64::new(c.to_f64().unwrap(), 0.0)).collect();
        let norm = ev.ip(&zf, &zf).re.sqrt();
        (0..count)
            .map(|_| {
                let tau = C64::new(rng.gen_range(-0.5..=0.5), rng.gen_range(0.6..=1.2));
                let r = rng.gen_range(0.05..=0.3);
                let arg = rng.gen_range(0.0..2.0 * PI);
                let s = C64::from_polar(r, arg);
                let z = if norm > 0.0 { zf.iter().map(|c| c * s / norm).collect() } else { zf.clone() };
                EvalPoint { tau, z, eps: DEFAULT_EPS }
            })
            .collect()
    }

    fn s_image(&self) -> (C64, Vec<C64>) {
        (-1.0 / self.tau, self.z.iter().map(|c| c / self.tau).collect())
    }

    fn t_image(&self) -> C64 {
        self.tau + 1.0
    }
}

/// Below this magnitude both sides count as zero and deviations are absolute.
pub const ABS_FLOOR: f64 = 1e-9;

/// Outcome of one numerical identity check.
#[derive(Clone, Debug)]
pub struct TransformReport {
    pub identity: String,
    pub tau: C64,
    pub z: Vec<C64>,
    pub lhs: C64,
    pub rhs: C64,
    pub abs_dev: f64,
    pub rel_dev: f64,
    /// Truncation bound of both sides, relative to max(|lhs|, |rhs|).
    pub tail_bound: f64,
    pub eps: f64,
    pub pass: bool,
}

impl TransformReport {
    pub fn build(identity: impl Into<String>, pt: &EvalPoint, lhs: Eval, rhs: Eval) -> Result<Self> {
        let identity = identity.into();
        let abs_dev = (lhs.value - rhs.value).norm();
        let scale = lhs.value.norm().max(rhs.value.norm());
        // Identities whose two sides vanish (e.g. ch̃* of the vacuum class at z = 0)
        // are judged on absolute deviation.
        let (rel_dev, tail_bound) = if scale > ABS_FLOOR {
            (abs_dev / scale, (lhs.tail + rhs.tail) / scale)
        } else {
            (abs_dev, lhs.tail + rhs.tail)
        };
        if !(tail_bound <= pt.eps) {
            return Err(Error::Numerical(format!(
                "{identity}: tail bound {tail_bound:.3e} exceeds eps {:.1e}; raise the truncation budget",
                pt.eps
            )));
        }
        Ok(TransformReport {
            identity,
            tau: pt.tau,
            z: pt.z.clone(),
            lhs: lhs.value,
            rhs: rhs.value,
            abs_dev,
            rel_dev,
            tail_bound,
            eps: pt.eps,
            pass: rel_dev <= pt.eps + tail_bound,
        })
    }
}

/// e^{πi x} with x reduced exactly modulo 2.
pub fn phase_pi(x: Q) -> C64 {
    let r = x - (x / 2).floor() * 2;
    C64::from_polar(1.0, PI * r.to_f64().unwrap())
}

/// a(λ,μ) = e^{−2πi(λ̄|μ̄)/n}.
pub fn s_coefficient(ev: &Evaluator, lam_bar: &[Q], mu_bar: &[Q], n: i64) -> C64 {
    phase_pi(-ev.rs.ip(lam_bar, mu_bar) * 2 / n)
}

/// φ(τ,z) = (−iτ)^{l/2} e^{πin(z|z)/τ} |P/nQ^∨|^{−1/2}, principal branch.
pub fn phi(ev: &Evaluator, n: i64, ncos: usize, tau: C64, z: &[C64]) -> C64 {
    let l = ev.rank() as f64;
    let mi = C64::new(0.0, -1.0) * tau;
    mi.powf(l / 2.0) * (C64::new(0.0, PI) * n as f64 * ev.ip(z, z) / tau).exp() / (ncos as f64).sqrt()
}

/// A(z) = ½ Σ_{α∈Δ⁰∪Δ^{1/2}} α(z)².
pub fn a_of_z(ev: &Evaluator, slice: &NilpotentSlice, z: &[C64]) -> C64 {
    let mut s = C64::zero();
    for r in slice.delta0_positive(ev.rs) {
        s += ev.root_at(&r, z).powi(2) * 2.0;
    }
    for r in slice.delta_half(ev.rs) {
        s += ev.root_at(&r, z).powi(2);
    }
    s / 2.0
}

fn s_partner(v: FVariant) -> FVariant {
    match v {
        FVariant::Plain => FVariant::Star,
        FVariant::Minus => FVariant::Minus,
        FVariant::Star => FVariant::Plain,
    }
}

fn t_partner(v: FVariant) -> FVariant {
    match v {
        FVariant::Plain => FVariant::Minus,
        FVariant::Minus => FVariant::Plain,
        FVariant::Star => FVariant::Star,
    }
}

fn lam_x(ev: &Evaluator, lam_bar: &[Q], x: &[Q]) -> Q {
    ev.rs.ip(lam_bar, x)
}

/// Θ_λ(−1/τ, z/τ) = φ Σ_μ a(λ,μ) Θ_μ(τ,z) and Θ_λ(τ+1,z) = e^{πi|λ̄|²/n} Θ_λ(τ,z).
pub fn verify_theta_transforms(
    ev: &Evaluator,
    lam_bar: &[Q],
    n: i64,
    cosets: &Cosets,
    pt: &EvalPoint,
) -> Result<Vec<TransformReport>> {
    let (st, sz) = pt.s_image();
    let lhs = ev.theta(lam_bar, n, st, &sz)?;
    let table = ev.theta_table(cosets, pt.tau, &pt.z)?;
    let mut rhs = Eval::exact(C64::zero());
    for (mu, t) in cosets.reps().iter().zip(&table) {
        rhs = rhs.add(t.scale(s_coefficient(ev, lam_bar, mu, n)));
    }
    let rhs = rhs.scale(phi(ev, n, cosets.len(), pt.tau, &pt.z));
    let s = TransformReport::build("theta S", pt, lhs, rhs)?;
    let lhs = ev.theta(lam_bar, n, pt.t_image(), &pt.z)?;
    let rhs = ev.theta(lam_bar, n, pt.tau, &pt.z)?.scale(phase_pi(ev.rs.norm2(lam_bar) / n));
    let t = TransformReport::build("theta T", pt, lhs, rhs)?;
    Ok(vec![s, t])
}

/// The six transformation laws of f_{λ,w}, f⁻_{λ,w}, f*_{λ,w}.
#[allow(clippy::too_many_arguments)]
pub fn verify_f_transform(
    ev: &Evaluator,
    transform: Transform,
    variant: FVariant,
    lam: &AffineWeight,
    w: &WeylElement,
    slice: &NilpotentSlice,
    cosets: &Cosets,
    pt: &EvalPoint,
) -> Result<TransformReport> {
    let rs = ev.rs;
    let n = positive_level(lam.level)?;
    require_level(cosets, n)?;
    let lx = lam_x(ev, &lam.fin, &slice.x);
    let nx2 = rs.norm2(&slice.x) * n;
    let lam2n = rs.norm2(&lam.fin) / n;
    let name = format!("f {} {}", variant.name(), transform.name());
    match transform {
        Transform::S => {
            let (st, sz) = pt.s_image();
            let lhs = ev.f(variant, lam, w, slice, st, &sz)?;
            let tv = s_partner(variant);
            let extra = match variant {
                FVariant::Plain => C64::new(1.0, 0.0),
                FVariant::Minus => phase_pi(lx * 4 - nx2 * 2),
                FVariant::Star => phase_pi(lx * 4),
            };
            let (y, pref) = ev.f_argument(tv, n, &slice.x, pt.tau, &pt.z);
            let table = ev.theta_table(cosets, pt.tau, &y)?;
            let mut rhs = Eval::exact(C64::zero());
            for mu in cosets.reps() {
                let idx = cosets.index_of(rs, &w.apply(mu));
                rhs = rhs.add(table[idx].scale(s_coefficient(ev, &lam.fin, mu, n)));
            }
            let rhs = rhs.scale(pref * extra * phi(ev, n, cosets.len(), pt.tau, &pt.z));
            TransformReport::build(name, pt, lhs, rhs)
        }
        Transform::T => {
            let lhs = ev.f(variant, lam, w, slice, pt.t_image(), &pt.z)?;
            let ph = match variant {
                FVariant::Plain => phase_pi(-lx * 4 + nx2 + lam2n),
                FVariant::Minus => phase_pi(nx2 + lam2n),
                FVariant::Star => phase_pi(lam2n),
            };
            let rhs = ev.f(t_partner(variant), lam, w, slice, pt.tau, &pt.z)?.scale(ph);
            TransformReport::build(name, pt, lhs, rhs)
        }
    }
}

fn require_level(cosets: &Cosets, n: i64) -> Result<()> {
    if cosets.n != n {
        return Err(Error::Incompatible(format!("cosets are for level {}, weight has level {n}", cosets.n)));
    }
    Ok(())
}

fn dims(slice: &NilpotentSlice) -> (i64, i64, i64) {
    (slice.dim_g0() as i64, slice.dim_g_half() as i64, slice.dim_gf() as i64)
}

/// S- and T-laws of R^W_f, R^{W−}_f, R^{W*}_f.
pub fn verify_denominator_transform(
    ev: &Evaluator,
    slice: &NilpotentSlice,
    transform: Transform,
    variant: FVariant,
    pt: &EvalPoint,
) -> Result<TransformReport> {
    let name = format!("R {} {}", variant.name(), transform.name());
    let (g0, gh, gf) = dims(slice);
    match transform {
        Transform::S => {
            let (st, sz) = pt.s_image();
            let lhs = ev.w_denominator(slice, variant, st, &sz)?;
            let d0 = slice.delta0_positive(ev.rs).len() as i64;
            let l = ev.rank() as f64;
            let pre = C64::new(0.0, -1.0).powi(d0 as i32)
                * (C64::new(0.0, -1.0) * pt.tau).powf(l / 2.0)
                * (C64::new(0.0, PI) * a_of_z(ev, slice, &pt.z) / pt.tau).exp();
            let rhs = ev.w_denominator(slice, s_partner(variant), pt.tau, &pt.z)?.scale(pre);
            TransformReport::build(name, pt, lhs, rhs)
        }
        Transform::T => {
            let lhs = ev.w_denominator(slice, variant, pt.t_image(), &pt.z)?;
            let ph = match variant {
                FVariant::Star => phase_pi(Q::new(gf, 12)),
                _ => phase_pi(Q::new(2 * g0 - gh, 24)),
            };
            let rhs = ev.w_denominator(slice, t_partner(variant), pt.tau, &pt.z)?.scale(ph);
            TransformReport::build(name, pt, lhs, rhs)
        }
    }
}

/// a₁ = e^{−πi(dim 𝔤₀ − ½ dim 𝔤_{1/2})/12}.
pub fn a1(slice: &NilpotentSlice) -> C64 {
    let (g0, gh, _) = dims(slice);
    phase_pi(Q::new(-(2 * g0 - gh), 24))
}

/// φ₁(τ,z) = i^{|Δ₊⁰|} |P/nQ^∨|^{−1/2} e^{(πi/τ)(n|z|² − A(z))}.
pub fn phi1(ev: &Evaluator, slice: &NilpotentSlice, n: i64, ncos: usize, tau: C64, z: &[C64]) -> C64 {
    let d0 = slice.delta0_positive(ev.rs).len() as i32;
    let e = ev.ip(z, z) * n as f64 - a_of_z(ev, slice, z);
    C64::new(0.0, 1.0).powi(d0) / (ncos as f64).sqrt() * (C64::new(0.0, PI) * e / tau).exp()
}

/// B^{[α]var}_μ(τ,z) for every coset μ, from one table of Θ_ν(τ, Y_var):
/// Θ_μ(τ, vY) = Θ_{v⁻¹μ}(τ, Y).
fn numerator_b_all(
    ev: &Evaluator,
    wg: &WeylGroup,
    variant: FVariant,
    spec: &NumeratorSpec,
    cosets: &Cosets,
    tau: C64,
    z: &[C64],
) -> Result<Vec<Eval>> {
    let rs = ev.rs;
    let n = cosets.n;
    let (y, pref) = ev.f_argument(variant, n, &spec.slice.x, tau, z);
    let table = ev.theta_table(cosets, tau, &y)?;
    let terms: Vec<(WeylElement, f64)> = b_weights(rs, wg, &spec.alpha, &spec.slice.beta)
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(m, c)| (WeylElement { rank: rs.rank(), matrix: m.to_vec(), sign: 1 }.inverse(rs), c as f64))
        .collect();
    let bx = spec.slice.beta_x(rs).to_f64().unwrap() / 4.0;
    Ok(cosets
        .reps()
        .iter()
        .map(|mu| {
            let mut acc = Eval::exact(C64::zero());
            for (vinv, c) in &terms {
                acc = acc.add(table[cosets.index_of(rs, &vinv.apply(mu))].scale(C64::new(*c, 0.0)));
            }
            acc.scale(pref * bx)
        })
        .collect())
}

/// S/T laws of Ψ^{[α]}_λ = B/R^W and its minus/star variants.
pub fn verify_psi_transform(
    ev: &Evaluator,
    wg: &WeylGroup,
    spec: &NumeratorSpec,
    transform: Transform,
    variant: FVariant,
    cosets: &Cosets,
    pt: &EvalPoint,
) -> Result<TransformReport> {
    let rs = ev.rs;
    let n = positive_level(spec.lambda.level)?;
    require_level(cosets, n)?;
    let lam = &spec.lambda.fin;
    let x = &spec.slice.x;
    let lx = lam_x(ev, lam, x);
    let name = format!("Psi {} {}", variant.name(), transform.name());
    match transform {
        Transform::S => {
            let (st, sz) = pt.s_image();
            let lhs = ev.psi(wg, variant, spec, st, &sz)?;
            let tv = s_partner(variant);
            let extra = match variant {
                FVariant::Plain => C64::new(1.0, 0.0),
                FVariant::Minus => phase_pi(lx * 4 - rs.norm2(x) * n * 2),
                FVariant::Star => phase_pi(lx * 4),
            };
            let bs = numerator_b_all(ev, wg, tv, spec, cosets, pt.tau, &pt.z)?;
            let r = ev.w_denominator(&spec.slice, tv, pt.tau, &pt.z)?;
            let mut sum = Eval::exact(C64::zero());
            for (mu, b) in cosets.reps().iter().zip(&bs) {
                sum = sum.add(b.scale(s_coefficient(ev, lam, mu, n)));
            }
            let rhs = sum.div(r).scale(extra * phi1(ev, &spec.slice, n, cosets.len(), pt.tau, &pt.z));
            TransformReport::build(name, pt, lhs, rhs)
        }
        Transform::T => {
            let lhs = ev.psi(wg, variant, spec, pt.t_image(), &pt.z)?;
            let shifted: Vec<Q> = lam.iter().zip(x).map(|(a, b)| a - b * n).collect();
            let base = rs.norm2(&shifted) / n;
            let (_, _, gf) = dims(&spec.slice);
            let ph = match variant {
                FVariant::Plain => phase_pi(base - lx * 2) * a1(&spec.slice),
                FVariant::Minus => phase_pi(base + lx * 2) * a1(&spec.slice),
                FVariant::Star => phase_pi(rs.norm2(lam) / n - Q::new(gf, 12)),
            };
            let rhs = ev.psi(wg, t_partner(variant), spec, pt.tau, &pt.z)?.scale(ph);
            TransformReport::build(name, pt, lhs, rhs)
        }
    }
}

/// Applies the S-law twice (τ → −1/τ → τ, z → −z/τ → z) and compares with Ψ_λ(τ,z).
pub fn verify_double_s(
    ev: &Evaluator,
    wg: &WeylGroup,
    spec: &NumeratorSpec,
    cosets: &Cosets,
    pt: &EvalPoint,
) -> Result<TransformReport> {
    let n = positive_level(spec.lambda.level)?;
    require_level(cosets, n)?;
    let lhs = ev.psi(wg, FVariant::Plain, spec, pt.tau, &pt.z)?;
    let tp = -1.0 / pt.tau;
    let zp: Vec<C64> = pt.z.iter().map(|c| -c / pt.tau).collect();
    let zm: Vec<C64> = pt.z.iter().map(|c| -c).collect();
    let bs = numerator_b_all(ev, wg, FVariant::Plain, spec, cosets, pt.tau, &zm)?;
    let r = ev.w_denominator(&spec.slice, FVariant::Plain, pt.tau, &zm)?;
    let reps = cosets.reps();
    let mut total = Eval::exact(C64::zero());
    for (nu, b) in reps.iter().zip(&bs) {
        let mut c = C64::zero();
        for mu in reps {
            c += s_coefficient(ev, &spec.lambda.fin, mu, n)
                * s_coefficient(ev, mu, nu, n)
                * phase_pi(lam_x(ev, mu, &spec.slice.x) * 4);
        }
        total = total.add(b.scale(c));
    }
    let pre = phi1(ev, &spec.slice, n, cosets.len(), tp, &zp) * phi1(ev, &spec.slice, n, cosets.len(), pt.tau, &zm);
    let rhs = total.div(r).scale(pre);
    let mut pt2 = pt.clone();
    pt2.eps *= 2.0;
    TransformReport::build("Psi S^2", &pt2, lhs, rhs)
}

/// T-laws for the normalized Euler–Poincaré characters ch̃, ch̃⁻, ch̃* of
/// H_f(λ) at the principal admissible level k + h^∨ = p/u.
#[allow(clippy::too_many_arguments)]
pub fn verify_theorem4b(
    ev: &Evaluator,
    wg: &WeylGroup,
    slice: &NilpotentSlice,
    p: i64,
    u: i64,
    lam0: &AffineWeight,
    variant: FVariant,
    pt: &EvalPoint,
) -> Result<TransformReport> {
    let rs = ev.rs;
    principal_admissible_vacuum(rs, p, u)?;
    let level = check_dominant(rs, lam0)?;
    if level != p - rs.dual_coxeter {
        return Err(Error::Precondition(format!("Lambda^0 must have level p - h^vee = {}", p - rs.dual_coxeter)));
    }
    let kh = Q::new(p, u);
    let lr: Vec<Q> = lam0.fin.iter().zip(&rs.rho).map(|(a, b)| a + b).collect();
    let shifted: Vec<Q> = lr.iter().zip(&slice.x).map(|(a, b)| a - kh * b).collect();
    let base = rs.norm2(&shifted) / kh;
    let lrx = rs.ip(&lr, &slice.x);
    let (_, _, gf) = dims(slice);
    let ph = match variant {
        FVariant::Plain => a1(slice) * phase_pi(base - lrx * 2),
        FVariant::Minus => a1(slice) * phase_pi(base + lrx * 2),
        FVariant::Star => phase_pi(rs.norm2(&lr) / kh - Q::new(gf, 12)),
    };
    let lhs = ev.admissible_qhr(wg, slice, lam0, p, u, variant, pt.t_image(), &pt.z)?;
    let rhs = ev.admissible_qhr(wg, slice, lam0, p, u, t_partner(variant), pt.tau, &pt.z)?.scale(ph);
    TransformReport::build(format!("ch {} T", variant.name()), pt, lhs, rhs)
}

/// Holomorphy smoke check: at each τ the truncated q-expansion is finite, and the
/// mass Σ|c_e||q|^e left beyond successive integer cutoffs decreases to below
/// 1% of the value at the last cutoff.
pub fn holomorphy_smoke(series: &QJetSeries, taus: &[C64]) -> bool {
    let terms: Vec<(f64, f64, C64)> = series
        .u0_part()
        .coefficients()
        .into_iter()
        .map(|(e, _, c)| (e.to_f64().unwrap(), c.to_c64().norm(), c.to_c64()))
        .collect();
    let Some(lead) = terms.first().map(|t| t.0) else { return true };
    let last = terms.last().map(|t| t.0).unwrap_or(lead);
    taus.iter().all(|&tau| {
        let r = (-2.0 * PI * tau.im).exp();
        let full: C64 = terms.iter().map(|(e, _, c)| c * (C64::new(0.0, 2.0 * PI) * tau * *e).exp()).sum();
        if !full.re.is_finite() || !full.im.is_finite() {
            return false;
        }
        let masses: Vec<f64> = (0..=(last - lead).floor() as i64)
            .map(|k| terms.iter().filter(|t| t.0 > lead + k as f64).map(|(e, a, _)| a * r.powf(*e)).sum())
            .collect();
        let monotone = masses.windows(2).all(|w| w[1] <= w[0]);
        let small = masses.len() < 2 || masses[masses.len() - 2] < 1e-2 * full.norm().max(1e-300);
        monotone && small
    })
}
