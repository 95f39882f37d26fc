use crate::liealg::lattice::{CorootLattice, DEFAULT_POINT_CAP};
use crate::liealg::{weyl_apply_q, AffineWeight, NilpotentSlice, RootSystem, WeylGroup};
use crate::qlaurent::{big, GaussQ, QJetSeries, UJet};
use crate::thetaforms::{positive_level, weyl_theta_sum, weyl_theta_sum_relative, FVariant, SumSpec};
use crate::{qi, Result, Q};
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;

/// Data of a numerator A^{[α]}_Λ / B^{[α]}_λ along z = (u/2πi)·z₀.
#[derive(Clone, Debug)]
pub struct NumeratorSpec {
    pub lambda: AffineWeight,
    /// The marking root α in simple-root coordinates (any root, positive or negative).
    pub alpha: Vec<i64>,
    pub slice: NilpotentSlice,
    pub z0: Vec<Q>,
}

impl NumeratorSpec {
    /// Hypothesis (Λ|α) = n of the numerator identity.
    pub fn theorem1_hypothesis(&self, rs: &RootSystem) -> bool {
        rs.ip(&self.lambda.fin, &rs.root_q(&self.alpha)) == self.lambda.level
    }

    /// The same data twisted by w′: (w′λ, w′α).
    pub fn twisted(&self, w: &crate::liealg::WeylElement) -> Self {
        NumeratorSpec {
            lambda: self.lambda.weyl(w),
            alpha: w.apply_int(&self.alpha),
            slice: self.slice.clone(),
            z0: self.z0.clone(),
        }
    }
}

fn accumulate(acc: HashMap<(Q, Q), Q>, emax: Q, jet: usize) -> QJetSeries {
    let mut s = QJetSeries::zero(jet, Some(emax));
    let mut keys: Vec<_> = acc.into_iter().filter(|(_, w)| !w.is_zero()).collect();
    keys.sort();
    for ((e, c), w) in keys {
        s.push(e, UJet::exp_linear(&big(c), jet).scale(&GaussQ::from_q(w)));
    }
    s
}

/// Ball of Q^∨ (coroot coordinates) centred at 0 large enough to contain every
/// γ with n|γ − c|²/2 + k ≤ emax whenever |c| ≤ cmax.
fn origin_ball(rs: &RootSystem, n: Q, cmax2: Q, emax: Q, k: Q) -> Result<Vec<Vec<i64>>> {
    let lat = CorootLattice::new(rs);
    let r2 = ((emax - k) * 2 / n).to_f64().unwrap().max(0.0);
    let r = r2.sqrt() + cmax2.to_f64().unwrap().sqrt() + 1e-9;
    lat.ball_f64(&vec![0.0; rs.rank()], r * r + 1.0, DEFAULT_POINT_CAP)
}

/// A^{[α]}_Λ(τ, −τx + z, τ|x|²/2) computed term by term from the affine
/// action: Σ_w ε(w) · ½ Σ_γ (γ|α) q^{|Λ|²/2n} e^{w t_γ(Λ)}. Exact through q^emax.
pub fn numerator_a_specialized(rs: &RootSystem, wg: &WeylGroup, spec: &NumeratorSpec, emax: Q, jet: usize) -> Result<QJetSeries> {
    let lam = &spec.lambda;
    let n = qi(positive_level(lam.level)?);
    let x = &spec.slice.x;
    let x2 = rs.norm2(x);
    let alpha = rs.root_q(&spec.alpha);
    let lam_norm = lam.norm2(rs);
    let cmax2 = {
        let a = rs.norm2(x).to_f64().unwrap().sqrt() + (rs.norm2(&lam.fin) / (n * n)).to_f64().unwrap().sqrt();
        qi((a * a).ceil() as i64 + 1)
    };
    let ball = origin_ball(rs, n, cmax2, emax, Q::zero())?;
    let mut acc: HashMap<(Q, Q), Q> = HashMap::new();
    for i in 0..wg.len() {
        let w = wg.element(i);
        let eps = qi(w.sign as i64);
        for y in &ball {
            let gamma = rs.coroot_coords_to_root(y);
            let weight = rs.ip(&gamma, &alpha) / 2;
            if weight.is_zero() {
                continue;
            }
            let t = lam.translate(rs, &gamma).weyl(&w);
            let e = lam_norm / (n * 2) - t.delta - rs.ip(&t.fin, x) + n * x2 / 2;
            if e > emax {
                continue;
            }
            let c = rs.ip(&t.fin, &spec.z0);
            *acc.entry((e, c)).or_insert_with(Q::zero) += eps * weight;
        }
    }
    Ok(accumulate(acc, emax, jet))
}

/// Right side of the numerator identity A = B, evaluated directly:
/// ¼β(x) Σ_w ε(w)(wα|β^∨) Σ_γ e^{2πi(Λ̄+nγ|w⁻¹z)} q^{|Λ̄+n(γ−w⁻¹x)|²/2n}.
pub fn rhs_theorem1(rs: &RootSystem, wg: &WeylGroup, spec: &NumeratorSpec, emax: Q, jet: usize) -> Result<QJetSeries> {
    let lam = &spec.lambda.fin;
    let n = qi(positive_level(spec.lambda.level)?);
    let x = &spec.slice.x;
    let beta = &spec.slice.beta;
    let bx = spec.slice.beta_x(rs);
    let beta_vee = rs.coroot(beta);
    let alpha = rs.root_q(&spec.alpha);
    let cmax2 = {
        let a = rs.norm2(x).to_f64().unwrap().sqrt() + (rs.norm2(lam) / (n * n)).to_f64().unwrap().sqrt();
        qi((a * a).ceil() as i64 + 1)
    };
    let ball = origin_ball(rs, n, cmax2, emax, Q::zero())?;
    let mut acc: HashMap<(Q, Q), Q> = HashMap::new();
    for i in 0..wg.len() {
        let w = wg.element(i);
        let coef = qi(w.sign as i64) * rs.ip(&w.apply(&alpha), &beta_vee);
        if coef.is_zero() {
            continue;
        }
        let winv = w.inverse(rs);
        let wx = winv.apply(x);
        let wz = winv.apply(&spec.z0);
        for y in &ball {
            let gamma = rs.coroot_coords_to_root(y);
            let mu: Vec<Q> = lam.iter().zip(&gamma).map(|(a, g)| a + n * g).collect();
            let d: Vec<Q> = mu.iter().zip(&wx).map(|(m, v)| m - n * v).collect();
            let e = rs.norm2(&d) / (n * 2);
            if e > emax {
                continue;
            }
            let c = rs.ip(&mu, &wz);
            *acc.entry((e, c)).or_insert_with(Q::zero) += coef;
        }
    }
    let s = accumulate(acc, emax, jet);
    Ok(s.scale(&GaussQ::from_q(bx / 4)))
}

/// Weights ε(v)(α|vβ^∨) of the B-numerator after substituting v = w⁻¹.
pub fn b_weights<'a>(rs: &RootSystem, wg: &'a WeylGroup, alpha: &[i64], beta: &[i64]) -> Vec<(&'a [i8], i64)> {
    let l = rs.rank();
    let a = rs.root_q(alpha);
    let bv = rs.coroot(beta);
    wg.iter()
        .map(|(m, sgn)| {
            let p = rs.ip(&a, &weyl_apply_q(m, l, &bv));
            debug_assert!(p.is_integer());
            (m, sgn as i64 * p.to_integer())
        })
        .collect()
}

/// B^{[α]}_λ = ¼β(x) Σ_w ε(w)(wα|β^∨) f_{λ,w} and its minus/star variants,
/// exact through q^emax.
pub fn numerator_b(
    rs: &RootSystem,
    wg: &WeylGroup,
    variant: FVariant,
    spec: &NumeratorSpec,
    emax: Q,
    jet: usize,
) -> Result<QJetSeries> {
    let n = positive_level(spec.lambda.level)?;
    let terms = b_weights(rs, wg, &spec.alpha, &spec.slice.beta);
    let sp = SumSpec::new(rs, &spec.lambda.fin, n, &spec.slice.x, &spec.z0, emax, jet).with_shift(variant.shift());
    let s = weyl_theta_sum(&sp, terms)?.series;
    Ok(s.scale(&GaussQ::from_q(spec.slice.beta_x(rs) / 4)))
}

/// [`numerator_b`] exact through (valuation + rel).
pub fn numerator_b_relative(
    rs: &RootSystem,
    wg: &WeylGroup,
    variant: FVariant,
    spec: &NumeratorSpec,
    rel: Q,
    jet: usize,
) -> Result<QJetSeries> {
    let n = positive_level(spec.lambda.level)?;
    let terms = b_weights(rs, wg, &spec.alpha, &spec.slice.beta);
    let sp = SumSpec::new(rs, &spec.lambda.fin, n, &spec.slice.x, &spec.z0, Q::zero(), jet).with_shift(variant.shift());
    let s = weyl_theta_sum_relative(&sp, &terms, rel)?.series;
    Ok(s.scale(&GaussQ::from_q(spec.slice.beta_x(rs) / 4)))
}

/// λ = kΛ₀ + ρ̂ (level k + h^∨), the single place where the ρ̂-shift happens.
pub fn shifted_vacuum(rs: &RootSystem, k: Q) -> AffineWeight {
    AffineWeight::lambda0(rs.rank(), k).add(&AffineWeight::rho_hat(rs))
}
