use super::products::require;
use crate::liealg::{AffineWeight, RootSystem, WeylGroup};
use crate::qlaurent::QJetSeries;
use crate::thetaforms::{weyl_theta_sum_relative, SumSpec};
use crate::{qi, Error, Result, Q};
use num_traits::Zero;

/// The specialization (τ, z, t) ↦ (uτ, −τx + z, τ|x|²/2u), with z taken along z₀.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub u: i64,
    pub x: Vec<Q>,
    pub z0: Vec<Q>,
}

impl Specialization {
    /// No rescaling, no shift, limit along ρ^∨.
    pub fn trivial(rs: &RootSystem) -> Self {
        Specialization { u: 1, x: vec![Q::zero(); rs.rank()], z0: rs.rho_vee.clone() }
    }

    /// Number of positive affine roots vanishing at the specialized point z = 0:
    /// α ∈ Δ₊ with α(x) = 0, plus pairs (β ∈ Δ₊, n ≥ 1) with β(x) = un.
    pub fn vanishing_order(&self, rs: &RootSystem) -> usize {
        let u = qi(self.u);
        rs.positive
            .iter()
            .map(|r| {
                let ax = rs.ip(&rs.root_q(r), &self.x);
                let mut c = usize::from(ax.is_zero());
                if ax > Q::zero() && (ax / u).is_integer() {
                    c += (ax / u).to_integer() as usize;
                }
                c
            })
            .sum()
    }
}

/// Checks that Λ is dominant integral of non-negative integer level.
pub fn check_dominant(rs: &RootSystem, lam: &AffineWeight) -> Result<i64> {
    require(lam.level.is_integer() && lam.level >= Q::zero(), "level of Lambda^0 must be a non-negative integer")?;
    require(rs.is_integral_weight(&lam.fin), "Lambda^0 must be an integral weight")?;
    let labels = rs.dynkin_labels(&lam.fin);
    require(labels.iter().all(|c| *c >= Q::zero()), "Lambda^0 must be dominant")?;
    require(rs.ip(&lam.fin, &rs.theta_q()) <= lam.level, "(Lambda^0|theta) must not exceed the level")?;
    Ok(lam.level.to_integer())
}

/// Σ_w ε(w) Σ_γ e^{2πi(w μ|z)} q^{|u wμ − m x|²/2mu}, μ = λ̄ + mγ: the
/// Weyl–Kac numerator of level m at the specialized point, exact through
/// q-order `rel` past its leading term and through u^jet.
pub fn weyl_kac_numerator(
    rs: &RootSystem,
    wg: &WeylGroup,
    lambda_bar: &[Q],
    m: i64,
    spec: &Specialization,
    rel: Q,
    jet: usize,
) -> Result<QJetSeries> {
    let u = qi(spec.u);
    let x: Vec<Q> = spec.x.iter().map(|c| c / u).collect();
    let sp = SumSpec::new(rs, lambda_bar, m, &x, &spec.z0, Q::zero(), jet);
    let terms: Vec<(&[i8], i64)> = wg.iter().map(|(mat, s)| (mat, s as i64)).collect();
    let s = weyl_theta_sum_relative(&sp, &terms, rel / u)?.series;
    Ok(s.rescale_q(spec.u))
}

/// Normalized character of L(Λ⁰) at the specialized point as a series in u
/// along z₀ (jet order `jet` after cancelling the common zero at z = 0).
pub fn integrable_character(
    rs: &RootSystem,
    wg: &WeylGroup,
    lam0: &AffineWeight,
    spec: &Specialization,
    rel: Q,
    jet: usize,
) -> Result<QJetSeries> {
    let level = check_dominant(rs, lam0)?;
    require(spec.u >= 1, "rescaling factor u must be >= 1")?;
    if spec.z0.iter().all(|c| c.is_zero()) {
        return Err(Error::Precondition("limit direction z0 must be nonzero".into()));
    }
    let hv = rs.dual_coxeter;
    let order = spec.vanishing_order(rs);
    let total = jet + order;
    let num_mu: Vec<Q> = lam0.fin.iter().zip(&rs.rho).map(|(a, b)| a + b).collect();
    let num = weyl_kac_numerator(rs, wg, &num_mu, level + hv, spec, rel, total)?;
    let den = weyl_kac_numerator(rs, wg, &rs.rho, hv, spec, rel, total)?;
    let (d, _) = QJetSeries::divide(&num, &den)?;
    Ok(d)
}

/// Σ_{γ∈pQ^∨} d(γ) q^{|ρ+γ|²/2p} / η^{dim 𝔤} with d(γ) = Π_{α>0} (γ+ρ|α)/(ρ|α):
/// the normalized character of L((p − h^∨)Λ₀) at z = 0.
pub fn vacuum_character_dimension_sum(rs: &RootSystem, p: i64, rel: Q) -> Result<QJetSeries> {
    use crate::liealg::lattice::{CorootLattice, DEFAULT_POINT_CAP};
    use crate::qlaurent::{GaussQ, UJet};
    require(p >= rs.dual_coxeter, "p must be >= h^vee")?;
    let pq = qi(p);
    let lat = CorootLattice::new(rs);
    let center: Vec<Q> = rs.rho.iter().map(|c| -c / pq).collect();
    let lead = rs.norm2(&rs.rho) / (pq * 2);
    let dim = rs.dim() as i64;
    let eta_lead = Q::new(dim, 24);
    // numerator exact through its lead + rel; its lead is |ρ|²/2p (γ = 0).
    let emax = lead + rel;
    let pts = lat.ball(rs, &center, emax * 2 / pq, DEFAULT_POINT_CAP)?;
    let roots: Vec<Vec<Q>> = rs.positive.iter().map(|r| rs.root_q(r)).collect();
    let mut num = QJetSeries::zero(0, Some(emax));
    for y in pts {
        let g: Vec<Q> = rs.coroot_coords_to_root(&y).iter().map(|c| c * pq).collect();
        let v: Vec<Q> = g.iter().zip(&rs.rho).map(|(a, b)| a + b).collect();
        let e = rs.norm2(&v) / (pq * 2);
        if e > emax {
            continue;
        }
        let mut d = Q::from_integer(1);
        for a in &roots {
            d *= rs.ip(&v, a) / rs.ip(&rs.rho, a);
        }
        num.push(e, UJet::constant(GaussQ::from_q(d), 0));
    }
    let eta = crate::thetaforms::eta_power(qi(dim), eta_lead + rel, 0)?;
    Ok(num.mul(&eta.invert()?).with_prec(Some(lead - eta_lead + rel)))
}
