use super::cosets::Cosets;
use crate::characters::{b_weights, NumeratorSpec};
use crate::liealg::lattice::{CorootLattice, DEFAULT_POINT_CAP};
use crate::liealg::{AffineWeight, NilpotentSlice, RootSystem, WeylElement, WeylGroup};
use crate::thetaforms::{eta_exponent, positive_level, FVariant, ThetaKind};
use crate::{Error, Result, Q};
use num_complex::Complex64 as C64;
use num_traits::{ToPrimitive, Zero};
use std::f64::consts::PI;

const TWO_PI_I: C64 = C64::new(0.0, 2.0 * PI);

/// A numerical value together with an upper bound on its truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eval {
    pub value: C64,
    pub tail: f64,
}

impl Eval {
    pub fn exact(value: C64) -> Self {
        Eval { value, tail: 0.0 }
    }

    pub fn add(self, o: Eval) -> Eval {
        Eval { value: self.value + o.value, tail: self.tail + o.tail }
    }

    pub fn scale(self, c: C64) -> Eval {
        Eval { value: self.value * c, tail: self.tail * c.norm() }
    }

    pub fn mul(self, o: Eval) -> Eval {
        Eval {
            value: self.value * o.value,
            tail: self.value.norm() * o.tail + o.value.norm() * self.tail + self.tail * o.tail,
        }
    }

    pub fn div(self, o: Eval) -> Eval {
        let d = o.value.norm();
        let v = self.value / o.value;
        let tail = if o.tail >= d {
            f64::INFINITY
        } else {
            (self.tail + v.norm() * o.tail) / (d - o.tail)
        };
        Eval { value: v, tail }
    }

    pub fn rel_tail(&self) -> f64 {
        if self.value.norm() > 0.0 {
            self.tail / self.value.norm()
        } else {
            self.tail
        }
    }
}

pub fn q_pow(tau: C64, e: f64) -> C64 {
    (TWO_PI_I * tau * e).exp()
}

pub fn e2pii(x: f64) -> C64 {
    (TWO_PI_I * x).exp()
}

fn q_abs(tau: C64) -> Result<f64> {
    if tau.im <= 0.0 {
        return Err(Error::Precondition("Im tau must be positive".into()));
    }
    Ok((-2.0 * PI * tau.im).exp())
}

/// η(τ)^a = q^{a/24} exp(a Σ log(1−qⁿ)), the branch continuous from q → 0.
pub fn eta_pow(tau: C64, a: f64) -> Result<Eval> {
    let r = q_abs(tau)?;
    let q = q_pow(tau, 1.0);
    let mut log = C64::zero();
    let mut qn = q;
    let mut rn = r;
    while rn > 1e-18 {
        log += (C64::new(1.0, 0.0) - qn).ln();
        qn *= q;
        rn *= r;
    }
    let value = q_pow(tau, a / 24.0) * (log * a).exp();
    // |Σ_{m>N} log(1−q^m)| ≤ 2|q|^{N+1}/(1−|q|) for |q| ≤ 1/2.
    let rest = 2.0 * rn / (1.0 - r);
    let tail = value.norm() * ((a.abs() * rest).exp() - 1.0);
    Ok(Eval { value, tail })
}

pub fn eta(tau: C64) -> Result<Eval> {
    eta_pow(tau, 1.0)
}

/// Jacobi ϑ_ab(τ, z) from its defining sums (q = e^{2πiτ}, y = e^{2πiz}):
/// ϑ₀₀ = Σ q^{n²/2} yⁿ, ϑ₀₁ = Σ (−1)ⁿ q^{n²/2} yⁿ, ϑ₁₀ = Σ q^{(n+½)²/2} y^{n+½},
/// ϑ₁₁ = i Σ (−1)ⁿ q^{(n+½)²/2} y^{n+½}.
pub fn jacobi_theta(kind: ThetaKind, tau: C64, z: C64) -> Result<Eval> {
    q_abs(tau)?;
    let (shift, alt, pre) = match kind {
        ThetaKind::T00 => (0.0, false, C64::new(1.0, 0.0)),
        ThetaKind::T01 => (0.0, true, C64::new(1.0, 0.0)),
        ThetaKind::T10 => (0.5, false, C64::new(1.0, 0.0)),
        ThetaKind::T11 => (0.5, true, C64::new(0.0, 1.0)),
    };
    let a = PI * tau.im;
    let b = 2.0 * PI * z.im;
    // |term| = exp(−a m² − b m), m = n + shift; centre m* = −b/2a.
    let centre = -b / (2.0 * a);
    let logmax = a * centre * centre;
    let term = |n: i64| {
        let m = n as f64 + shift;
        let sign = if alt && n.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        (TWO_PI_I * (tau * (m * m / 2.0) + z * m)).exp() * sign
    };
    let width = ((logmax + 45.0) / a).sqrt() + 2.0;
    let lo = (centre - shift - width).floor() as i64;
    let hi = (centre - shift + width).ceil() as i64;
    let mut s = C64::zero();
    for n in lo..=hi {
        s += term(n);
    }
    // Gaussian tail beyond the window, two-sided, geometric in the step.
    let edge = |m: f64| (-(a * m * m + b * m)).exp();
    let ml = lo as f64 - 1.0 + shift;
    let mh = hi as f64 + 1.0 + shift;
    let rl = (-(a * (2.0 * (centre - ml).abs() - 1.0))).exp().min(0.5);
    let rh = (-(a * (2.0 * (mh - centre).abs() - 1.0))).exp().min(0.5);
    let tail = edge(ml) / (1.0 - rl) + edge(mh) / (1.0 - rh);
    Ok(Eval { value: pre * s, tail })
}

/// Volume of the unit ball in ℝ^l.
fn ball_volume(l: usize) -> f64 {
    let mut v = if l % 2 == 0 { 1.0 } else { 2.0 };
    let mut d = l % 2;
    while d < l {
        d += 2;
        v *= 2.0 * PI / d as f64;
    }
    v
}

fn det(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut d = 1.0;
    for i in 0..n {
        let p = (i..n).max_by(|&x, &y| a[x][i].abs().partial_cmp(&a[y][i].abs()).unwrap()).unwrap();
        if a[p][i] == 0.0 {
            return 0.0;
        }
        if p != i {
            a.swap(p, i);
            d = -d;
        }
        d *= a[i][i];
        for r in i + 1..n {
            let f = a[r][i] / a[i][i];
            for c in i..n {
                a[r][c] -= f * a[i][c];
            }
        }
    }
    d
}

/// Complex evaluation of lattice theta functions and everything built on them.
pub struct Evaluator<'a> {
    pub rs: &'a RootSystem,
    gram: Vec<Vec<f64>>,
    lat: CorootLattice,
    covol: f64,
    cell_radius: f64,
    pub point_cap: usize,
}

impl<'a> Evaluator<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        let gram: Vec<Vec<f64>> = rs.gram.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect()).collect();
        let cg: Vec<Vec<f64>> =
            rs.coroot_gram().iter().map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect()).collect();
        let covol = det(cg.clone()).sqrt();
        let cell_radius = 0.5 * (0..cg.len()).map(|i| cg[i][i].sqrt()).sum::<f64>();
        Evaluator { rs, gram, lat: CorootLattice::new(rs), covol, cell_radius, point_cap: DEFAULT_POINT_CAP }
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn ip(&self, a: &[C64], b: &[C64]) -> C64 {
        let mut s = C64::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                if self.gram[i][j] != 0.0 {
                    s += ai * bj * self.gram[i][j];
                }
            }
        }
        s
    }

    pub fn ip_real(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut s = 0.0;
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                s += ai * bj * self.gram[i][j];
            }
        }
        s
    }

    /// Θ_λ(τ, y) = Σ_{γ∈Q^∨} e^{2πi(λ̄+nγ|y)} q^{|λ̄+nγ|²/2n} for complex y, with a
    /// rigorous bound on the omitted terms (cells of nQ^∨ packed into shells).
    pub fn theta(&self, lam_bar: &[Q], n: i64, tau: C64, y: &[C64]) -> Result<Eval> {
        q_abs(tau)?;
        let l = self.rank();
        let nf = n as f64;
        let lam: Vec<f64> = lam_bar.iter().map(|x| x.to_f64().unwrap()).collect();
        let a = PI * tau.im / nf;
        let im_y: Vec<f64> = y.iter().map(|c| c.im).collect();
        // |term| = exp(−a|μ − c|² + a|c|²), c = −(π/a)·Im y.
        let c: Vec<f64> = im_y.iter().map(|v| -PI / a * v).collect();
        let log_m = a * self.ip_real(&c, &c);
        let d = nf * self.cell_radius;
        let covol = nf.powi(l as i32) * self.covol;
        let vl = ball_volume(l);
        let tail_from = |r: f64| {
            let h = 0.25 / a.sqrt();
            let mut t = 0.0;
            let mut k = 0;
            loop {
                let r0 = r + k as f64 * h;
                let r1 = r0 + h;
                let cnt = vl * ((r1 + d).powi(l as i32) - (r0 - d).max(0.0).powi(l as i32)) / covol;
                let term = cnt * (log_m - a * r0 * r0).exp();
                t += term;
                if term == 0.0 || term < 1e-30 * t || k > 100_000 {
                    break;
                }
                k += 1;
            }
            t
        };
        let mut r = ((log_m.max(0.0) + 40.0) / a).sqrt();
        let scale = log_m.exp().max(1e-300);
        while tail_from(r) > 1e-15 * scale {
            r *= 1.15;
        }
        let centre: Vec<f64> = c.iter().zip(&lam).map(|(ci, li)| (ci - li) / nf).collect();
        let pts = self.lat.ball_f64(&centre, (r / nf).powi(2), self.point_cap)?;
        let mut s = C64::zero();
        for g in &pts {
            let mu: Vec<f64> = (0..l)
                .map(|i| lam[i] + nf * g[i] as f64 * 2.0 / self.gram[i][i])
                .collect();
            let mu_c: Vec<C64> = mu.iter().map(|v| C64::new(*v, 0.0)).collect();
            let e = TWO_PI_I * (self.ip(&mu_c, y) + tau * self.ip_real(&mu, &mu) / (2.0 * nf));
            s += e.exp();
        }
        Ok(Eval { value: s, tail: tail_from(r) })
    }

    /// Θ_ν(τ, y) for every coset representative ν of P/nQ^∨.
    pub fn theta_table(&self, cosets: &Cosets, tau: C64, y: &[C64]) -> Result<Vec<Eval>> {
        cosets.reps().iter().map(|r| self.theta(r, cosets.n, tau, y)).collect()
    }

    /// Argument and prefactor of f^{variant}_{λ,w}(τ,z) = pref · Θ_λ(τ, w⁻¹Y).
    pub fn f_argument(&self, variant: FVariant, n: i64, x: &[Q], tau: C64, z: &[C64]) -> (Vec<C64>, C64) {
        let xf: Vec<C64> = x.iter().map(|v| C64::new(v.to_f64().unwrap(), 0.0)).collect();
        let x2 = self.ip(&xf, &xf);
        let pref = (TWO_PI_I * tau * x2 * (n as f64) / 2.0).exp();
        match variant {
            FVariant::Plain => (z.iter().zip(&xf).map(|(zi, xi)| zi - tau * xi).collect(), pref),
            FVariant::Minus => (z.iter().zip(&xf).map(|(zi, xi)| zi + xi - tau * xi).collect(), pref),
            FVariant::Star => (z.iter().zip(&xf).map(|(zi, xi)| zi + xi).collect(), C64::new(1.0, 0.0)),
        }
    }

    /// f_{λ,w} = q^{n|x|²/2} Θ_λ(τ, w⁻¹(z−τx)), f⁻(τ,z) = f(τ,z+x),
    /// f*(τ,z) = q^{−n|x|²/2} f(τ,z+x+τx), straight from the definitions.
    #[allow(clippy::too_many_arguments)]
    pub fn f(
        &self,
        variant: FVariant,
        lam: &AffineWeight,
        w: &WeylElement,
        slice: &NilpotentSlice,
        tau: C64,
        z: &[C64],
    ) -> Result<Eval> {
        let n = positive_level(lam.level)?;
        let (y, pref) = self.f_argument(variant, n, &slice.x, tau, z);
        let winv = w.inverse(self.rs);
        let arg = apply_c(&winv.matrix, self.rank(), &y);
        Ok(self.theta(&lam.fin, n, tau, &arg)?.scale(pref))
    }

    /// B^{[α]}_λ and its variants: ¼β(x) Σ_w ε(w)(wα|β^∨) f_{λ,w}, summed over
    /// v = w⁻¹ so that w⁻¹Y = vY.
    pub fn numerator_b(
        &self,
        wg: &WeylGroup,
        variant: FVariant,
        spec: &NumeratorSpec,
        tau: C64,
        z: &[C64],
    ) -> Result<Eval> {
        let n = positive_level(spec.lambda.level)?;
        let (y, pref) = self.f_argument(variant, n, &spec.slice.x, tau, z);
        let mut acc = Eval::exact(C64::zero());
        for (v, c) in b_weights(self.rs, wg, &spec.alpha, &spec.slice.beta) {
            if c == 0 {
                continue;
            }
            let arg = apply_c(v, self.rank(), &y);
            acc = acc.add(self.theta(&spec.lambda.fin, n, tau, &arg)?.scale(C64::new(c as f64, 0.0)));
        }
        let bx = spec.slice.beta_x(self.rs).to_f64().unwrap() / 4.0;
        Ok(acc.scale(pref * bx))
    }

    /// The W-denominator R^W_f and its minus/star variants at complex z ∈ 𝔥^f.
    /// The square root over Δ^{1/2} is taken pairwise: roots α, α' with α+α'
    /// vanishing on 𝔥^f contribute ϑ(τ, α(z)) once (the ϑ's used are even).
    pub fn w_denominator(&self, slice: &NilpotentSlice, variant: FVariant, tau: C64, z: &[C64]) -> Result<Eval> {
        let a = eta_exponent(self.rs, slice).to_f64().unwrap();
        let mut r = eta_pow(tau, a)?;
        for root in slice.delta0_positive(self.rs) {
            let az = self.root_at(&root, z);
            r = r.mul(jacobi_theta(ThetaKind::T11, tau, az)?);
        }
        let kind = match variant {
            FVariant::Plain => ThetaKind::T01,
            FVariant::Minus => ThetaKind::T00,
            FVariant::Star => ThetaKind::T10,
        };
        for root in half_root_pairs(self.rs, slice, z)? {
            let az = self.root_at(&root, z);
            r = r.mul(jacobi_theta(kind, tau, az)?);
        }
        Ok(r)
    }

    pub fn root_at(&self, root: &[i64], z: &[C64]) -> C64 {
        let rc: Vec<C64> = root.iter().map(|v| C64::new(*v as f64, 0.0)).collect();
        self.ip(&rc, z)
    }

    /// Ψ = B/R^W for the chosen variant.
    pub fn psi(&self, wg: &WeylGroup, variant: FVariant, spec: &NumeratorSpec, tau: C64, z: &[C64]) -> Result<Eval> {
        let b = self.numerator_b(wg, variant, spec, tau, z)?;
        let r = self.w_denominator(&spec.slice, variant, tau, z)?;
        if r.value.norm() <= r.tail {
            return Err(Error::Numerical("W-denominator vanishes at the point".into()));
        }
        Ok(b.div(r))
    }

    /// (R̂ ch_λ)(τ, Y, t) for the principal admissible λ = Λ⁰ − (u−1)(p/u)Λ₀:
    /// e^{2πi(p/u)t} Σ_v ε(v) Θ_{Λ̄⁰+ρ, p}(uτ, vY).
    pub fn admissible_numerator(
        &self,
        wg: &WeylGroup,
        lam0: &AffineWeight,
        p: i64,
        u: i64,
        tau: C64,
        y: &[C64],
        t: C64,
    ) -> Result<Eval> {
        let mu: Vec<Q> = lam0.fin.iter().zip(&self.rs.rho).map(|(a, b)| a + b).collect();
        let ut = tau * u as f64;
        let mut acc = Eval::exact(C64::zero());
        for (v, s) in wg.iter() {
            let arg = apply_c(v, self.rank(), y);
            acc = acc.add(self.theta(&mu, p, ut, &arg)?.scale(C64::new(s as f64, 0.0)));
        }
        Ok(acc.scale((TWO_PI_I * t * (p as f64 / u as f64)).exp()))
    }

    /// Normalized Euler–Poincaré characters ch̃, ch̃⁻, ch̃* of H_f(λ) for the
    /// vacuum-class principal admissible λ, from the specializations
    /// (τ, −τx+z, τ|x|²/2), (τ, −τx+x+z, τ|x|²/2) and (τ, x+z, 0).
    #[allow(clippy::too_many_arguments)]
    pub fn admissible_qhr(
        &self,
        wg: &WeylGroup,
        slice: &NilpotentSlice,
        lam0: &AffineWeight,
        p: i64,
        u: i64,
        variant: FVariant,
        tau: C64,
        z: &[C64],
    ) -> Result<Eval> {
        let xf: Vec<C64> = slice.x.iter().map(|v| C64::new(v.to_f64().unwrap(), 0.0)).collect();
        let x2 = self.ip(&xf, &xf);
        let (y, t): (Vec<C64>, C64) = match variant {
            FVariant::Plain => (z.iter().zip(&xf).map(|(zi, xi)| zi - tau * xi).collect(), tau * x2 / 2.0),
            FVariant::Minus => (z.iter().zip(&xf).map(|(zi, xi)| zi + xi - tau * xi).collect(), tau * x2 / 2.0),
            FVariant::Star => (z.iter().zip(&xf).map(|(zi, xi)| zi + xi).collect(), C64::zero()),
        };
        let num = self.admissible_numerator(wg, lam0, p, u, tau, &y, t)?;
        let den = self.w_denominator(slice, variant, tau, z)?;
        Ok(num.div(den))
    }
}

pub fn apply_c(m: &[i8], l: usize, v: &[C64]) -> Vec<C64> {
    (0..l)
        .map(|r| {
            let mut s = C64::zero();
            for c in 0..l {
                let a = m[r * l + c];
                if a != 0 {
                    s += v[c] * a as f64;
                }
            }
            s
        })
        .collect()
}

/// One representative of each pair {α, α'} ⊂ Δ^{1/2} with α + α' vanishing on 𝔥^f.
/// When 𝔥^f is zero or unknown only z = 0 is allowed and any pairing works.
pub fn half_root_pairs(rs: &RootSystem, slice: &NilpotentSlice, z: &[C64]) -> Result<Vec<Vec<i64>>> {
    let dh = slice.delta_half(rs);
    if dh.len() % 2 == 1 {
        return Err(Error::Precondition("odd number of roots of grade 1/2".into()));
    }
    let basis = match &slice.hf_basis {
        Some(b) if !b.is_empty() => b.clone(),
        _ => {
            if z.iter().any(|c| c.norm() > 0.0) {
                return Err(Error::Precondition("h^f is zero or unavailable: only z = 0 is allowed".into()));
            }
            return Ok(dh.iter().step_by(2).cloned().collect());
        }
    };
    let mut used = vec![false; dh.len()];
    let mut out = Vec::new();
    for i in 0..dh.len() {
        if used[i] {
            continue;
        }
        let j = (i + 1..dh.len()).find(|&j| {
            !used[j] && {
                let s: Vec<Q> = dh[i].iter().zip(&dh[j]).map(|(a, b)| Q::from_integer(a + b)).collect();
                basis.iter().all(|h| rs.ip(&s, h).is_zero())
            }
        });
        let j = j.ok_or_else(|| Error::Precondition("roots of grade 1/2 do not pair up on h^f".into()))?;
        used[i] = true;
        used[j] = true;
        out.push(dh[i].clone());
    }
    Ok(out)
}
