use super::numerator::{numerator_b_relative, NumeratorSpec};
use super::result::CharacterResult;
use crate::liealg::{RootSystem, WeylGroup};
use crate::qlaurent::QJetSeries;
use crate::thetaforms::{denominator_lead, w_denominator, FVariant};
use crate::{Error, Result, Q};
use num_traits::Zero;

/// u-order of the W-denominator along z₀: one per Δ₊⁰ root, provided none of
/// them is orthogonal to z₀.
pub fn denominator_u_order(rs: &RootSystem, spec: &NumeratorSpec) -> Result<usize> {
    let d0 = spec.slice.delta0_positive(rs);
    if d0.iter().any(|r| rs.ip(&rs.root_q(r), &spec.z0).is_zero()) {
        return Err(Error::Precondition(
            "direction z0 is orthogonal to a root of g_0: the W-denominator vanishes identically".into(),
        ));
    }
    Ok(d0.len())
}

/// Ψ^{[α]}_λ = B^{[α]}_λ / R^W_f (and the minus/star variants) as a series
/// exact through q-order `rel` past its leading term and through u^jet after
/// cancelling the common power of u.
pub fn psi(
    rs: &RootSystem,
    wg: &WeylGroup,
    variant: FVariant,
    spec: &NumeratorSpec,
    rel: Q,
    jet: usize,
) -> Result<CharacterResult> {
    let (s, m) = psi_series(rs, wg, variant, spec, rel, jet)?;
    let mut r = CharacterResult::new(s, &rs.cartan_type.to_string(), rel);
    r.nilpotent = Some(spec.slice.kind_name());
    r.level = Some(spec.lambda.level);
    r.u_cancelled = m;
    Ok(r)
}

pub(crate) fn psi_series(
    rs: &RootSystem,
    wg: &WeylGroup,
    variant: FVariant,
    spec: &NumeratorSpec,
    rel: Q,
    jet: usize,
) -> Result<(QJetSeries, usize)> {
    let m = denominator_u_order(rs, spec)?;
    let total = jet + m;
    let lead_r = denominator_lead(rs, &spec.slice, variant);
    let r = w_denominator(rs, &spec.slice, variant, &spec.z0, lead_r + rel, total)?;
    let b = numerator_b_relative(rs, wg, variant, spec, rel, total)?;
    if b.is_zero() {
        return Ok((QJetSeries::zero(jet, b.prec().map(|p| p - lead_r)), m));
    }
    QJetSeries::divide(&b, &r)
}
