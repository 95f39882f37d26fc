use super::ffun::FVariant;
use super::jacobi::{eta_power, jacobi_theta, ThetaKind};
use crate::liealg::{NilpotentSlice, RootSystem};
use crate::qlaurent::QJetSeries;
use crate::{qi, Result, Q};
use num_traits::Zero;

/// Exponent of η in the W-denominator: (3/2)l − ½ dim 𝔤^f.
pub fn eta_exponent(rs: &RootSystem, slice: &NilpotentSlice) -> Q {
    Q::new(3 * rs.rank() as i64, 2) - Q::new(slice.dim_gf() as i64, 2)
}

/// The ϑ used on Δ^{1/2} for each variant.
pub fn half_theta(variant: FVariant) -> ThetaKind {
    match variant {
        FVariant::Plain => ThetaKind::T01,
        FVariant::Minus => ThetaKind::T00,
        FVariant::Star => ThetaKind::T10,
    }
}

/// Lowest q-exponent of the W-denominator.
pub fn denominator_lead(rs: &RootSystem, slice: &NilpotentSlice, variant: FVariant) -> Q {
    let d0 = slice.delta0_positive(rs).len() as i64;
    let dh = slice.delta_half(rs).len() as i64;
    let mut lead = eta_exponent(rs, slice) / 24 + Q::new(d0, 8);
    if variant == FVariant::Star {
        lead += Q::new(dh, 16);
    }
    lead
}

/// R^W_f(τ,z) = η^{(3/2)l − ½dim 𝔤^f} Π_{α∈Δ₊⁰} ϑ₁₁(τ,α(z)) (Π_{α∈Δ^{1/2}} ϑ₀₁(τ,α(z)))^{1/2}
/// along z = (u/2πi)·z₀, exact through q^emax; minus and star use ϑ₀₀ and ϑ₁₀
/// on Δ^{1/2}. The square root is the branch with positive leading coefficient.
pub fn w_denominator(
    rs: &RootSystem,
    slice: &NilpotentSlice,
    variant: FVariant,
    z0: &[Q],
    emax: Q,
    jet: usize,
) -> Result<QJetSeries> {
    let a = eta_exponent(rs, slice);
    let d0 = slice.delta0_positive(rs);
    let dh = slice.delta_half(rs);
    let lead = denominator_lead(rs, slice, variant);
    let rel = emax - lead;
    let eta_lead = a / 24;
    let mut r = eta_power(a, eta_lead + rel, jet)?;
    let eighth = Q::new(1, 8);
    for root in &d0 {
        let c = rs.ip(&rs.root_q(root), z0);
        r = r.mul(&jacobi_theta(ThetaKind::T11, c, eighth + rel, jet));
    }
    if !dh.is_empty() {
        let kind = half_theta(variant);
        let each_lead = if kind == ThetaKind::T10 { eighth } else { Q::zero() };
        let mut p = QJetSeries::one(jet);
        for root in &dh {
            let c = rs.ip(&rs.root_q(root), z0);
            p = p.mul(&jacobi_theta(kind, c, each_lead + rel * 2, jet));
        }
        let p = p.with_prec(Some(each_lead * dh.len() as i64 + rel * 2));
        r = r.mul(&p.sqrt()?);
    }
    Ok(r.with_prec(Some(emax)))
}

/// Whether every Δ^{1/2} root pairs with another one summing to a root vanishing on 𝔥^f
/// (so the square root is a product of ϑ's). Only used as a sanity check.
pub fn half_roots_pair_up(rs: &RootSystem, slice: &NilpotentSlice) -> bool {
    let dh = slice.delta_half(rs);
    dh.iter().all(|a| {
        dh.iter().any(|b| {
            let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let sq = crate::liealg::linalg::to_q(&s);
            slice.has_hf()
                && slice
                    .hf_basis
                    .as_ref()
                    .is_some_and(|h| h.iter().all(|v| rs.ip(&sq, v).is_zero()))
        })
    }) && qi(dh.len() as i64 % 2) == Q::zero()
}
