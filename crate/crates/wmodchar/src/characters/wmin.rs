use super::numerator::{numerator_b, shifted_vacuum, NumeratorSpec};
use super::psi::psi_series;
use super::result::CharacterResult;
use crate::liealg::{NilpotentSlice, RootSystem, WeylGroup};
use crate::qlaurent::{GaussQ, QJetSeries};
use crate::thetaforms::{denominator_lead, generic_direction, w_denominator, FVariant};
use crate::{qi, Error, Result, Q};

/// Central charge of W^k_min(𝔤): k·dim𝔤/(k+h^∨) − 6k + h^∨ − 4.
/// Standard formula from the minimal W-algebra literature (not derived here).
pub fn central_charge_wmin(rs: &RootSystem, k: Q) -> Q {
    let hv = qi(rs.dual_coxeter);
    k * qi(rs.dim() as i64) / (k + hv) - k * 6 + hv - 4
}

/// Checks 𝔤 ∈ {D_n (n ≥ 4), E_6, E_7, E_8} and −b ≤ k ≤ −1; returns b.
pub fn check_wmin_level(rs: &RootSystem, k: i64) -> Result<i64> {
    let b = rs.deligne_b()?;
    if k > -1 || k < -b {
        return Err(Error::Precondition(format!(
            "level k = {k} must be a negative integer with k >= -b = {}",
            -b
        )));
    }
    Ok(b)
}

/// The data of Ψ_{kΛ₀+ρ̂}^{[α^{(−k)}]} on the minimal slice with a generic direction.
pub fn wmin_spec(rs: &RootSystem, k: i64) -> Result<NumeratorSpec> {
    check_wmin_level(rs, k)?;
    let slice = NilpotentSlice::minimal(rs);
    let z0 = generic_direction(rs, &slice)?;
    Ok(NumeratorSpec { lambda: shifted_vacuum(rs, qi(k)), alpha: rs.alpha_j(-k)?, slice, z0 })
}

/// Normalized character of W^min_k(𝔤) as the z → 0 limit of
/// i^{|Δ₊⁰|}·B/R^W along a generic direction, exact through q-order `rel`.
/// `jet` higher u-jets of the quotient are kept for inspection in the flags.
pub fn wmin_character(rs: &RootSystem, wg: &WeylGroup, k: i64, rel: Q, jet: usize) -> Result<CharacterResult> {
    let spec = wmin_spec(rs, k)?;
    wmin_character_with(rs, wg, &spec, k, rel, jet)
}

/// [`wmin_character`] with an explicit direction z₀ ∈ θ^⊥.
pub fn wmin_character_along(
    rs: &RootSystem,
    wg: &WeylGroup,
    k: i64,
    z0: Vec<Q>,
    rel: Q,
    jet: usize,
) -> Result<CharacterResult> {
    let mut spec = wmin_spec(rs, k)?;
    spec.z0 = z0;
    if !crate::thetaforms::is_generic(rs, &spec.slice, &spec.z0) {
        return Err(Error::Precondition("direction must lie in theta-perp and be generic".into()));
    }
    wmin_character_with(rs, wg, &spec, k, rel, jet)
}

fn wmin_character_with(
    rs: &RootSystem,
    wg: &WeylGroup,
    spec: &NumeratorSpec,
    k: i64,
    rel: Q,
    jet: usize,
) -> Result<CharacterResult> {
    let (quot, m) = psi_series(rs, wg, FVariant::Plain, spec, rel, jet)?;
    let d0 = spec.slice.delta0_positive(rs).len() as i64;
    let quot = quot.scale(&GaussQ::i_pow(d0));
    let ch = quot.u0_part();
    let mut r = CharacterResult::new(ch, &rs.cartan_type.to_string(), rel);
    r.nilpotent = Some("minimal".into());
    r.level = Some(qi(k));
    r.u_cancelled = m;
    r.central_charge = Some(central_charge_wmin(rs, qi(k)));
    r.central_charge_note = Some("externally sourced minimal W-algebra central charge formula".into());
    let higher = quot.sub(&quot.u0_part()).coefficients().iter().any(|(_, k, c)| *k > 0 && !c.is_zero());
    if jet > 0 {
        r.flag(if higher { "higher u-jets nonzero" } else { "higher u-jets vanish" });
    }
    if !r.has_integer_coefficients() {
        r.flag("non-integer coefficients");
    }
    Ok(r)
}

/// Outcome of comparing both sides of the minimal W-algebra denominator identity.
#[derive(Clone, Debug)]
pub struct Remark4Report {
    pub equal: bool,
    /// (−i)^{|Δ₊⁰|}·R^W_f.
    pub lhs: QJetSeries,
    /// ¼ Σ_w ε(w)(wα|θ) Σ_γ e^{2πi(ρ+(h^∨−b)γ|w⁻¹z)} q^{|ρ+(h^∨−b)(γ−w⁻¹θ/2)|²/2(h^∨−b)}.
    pub rhs: QJetSeries,
    pub upto: Q,
    pub jet: usize,
}

/// Checks R^W_f = i^{|Δ₊⁰|}·(the alternating lattice sum at k = −b) for
/// f = f_min, i.e. B = (−i)^{|Δ₊⁰|} R, through q-order `rel` and u^{|Δ₊⁰|+jet}.
pub fn denominator_identity_remark4(rs: &RootSystem, wg: &WeylGroup, rel: Q, jet: usize) -> Result<Remark4Report> {
    let b = rs.deligne_b()?;
    let spec = wmin_spec(rs, -b)?;
    let d0 = spec.slice.delta0_positive(rs).len();
    let total = d0 + jet;
    let lead = denominator_lead(rs, &spec.slice, FVariant::Plain);
    let emax = lead + rel;
    let r = w_denominator(rs, &spec.slice, FVariant::Plain, &spec.z0, emax, total)?;
    let lhs = r.scale(&GaussQ::i_pow(-(d0 as i64)));
    let rhs = numerator_b(rs, wg, FVariant::Plain, &spec, emax, total)?;
    let equal = lhs.agrees_with(&rhs, emax) && !rhs.is_zero();
    Ok(Remark4Report { equal, lhs, rhs, upto: emax, jet: total })
}
