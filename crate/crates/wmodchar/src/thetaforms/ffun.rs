use super::lattice_sum::{weyl_theta_sum, LatticeSum, Shift, SumSpec};
use crate::liealg::{AffineWeight, NilpotentSlice, RootSystem, WeylElement};
use crate::qlaurent::{GaussQ, QJetSeries};
use crate::{Error, Result, Q};
use num_traits::{One, Zero};

/// f_{λ,w}, f⁻_{λ,w} = f_{λ,w}(τ, z+x), f*_{λ,w} = q^{−n|x|²/2} f_{λ,w}(τ, z+x+τx).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FVariant {
    Plain,
    Minus,
    Star,
}

impl FVariant {
    pub fn name(self) -> &'static str {
        match self {
            FVariant::Plain => "plain",
            FVariant::Minus => "minus",
            FVariant::Star => "star",
        }
    }

    pub(crate) fn shift(self) -> Shift {
        match self {
            FVariant::Plain => Shift::PLAIN,
            FVariant::Minus => Shift { c1: Q::one(), c2: Q::zero(), pre: Q::zero() },
            FVariant::Star => Shift { c1: Q::one(), c2: Q::one(), pre: -Q::one() },
        }
    }

    /// The second form of the variant, built through z − x instead of z + x
    /// and multiplied by e^{4πiλ(x)}.
    pub(crate) fn alt_shift(self) -> Shift {
        let s = self.shift();
        Shift { c1: -s.c1, ..s }
    }
}

/// e^{2πi t} for t ∈ ¼ℤ as a Gaussian unit.
pub(crate) fn unit_phase(t: Q) -> Result<GaussQ> {
    let k = t * 4;
    if !k.is_integer() {
        return Err(Error::PhaseOutsideGaussian(t.to_string()));
    }
    Ok(GaussQ::i_pow(k.to_integer()))
}

pub(crate) fn positive_level(n: Q) -> Result<i64> {
    if !n.is_integer() || n <= Q::zero() {
        return Err(Error::Precondition(format!("level n = {n} must be a positive integer")));
    }
    Ok(n.to_integer())
}

/// Θ_λ(τ, z) = Σ_γ e^{2πi(λ̄+nγ|z)} q^{|λ̄+nγ|²/2n} along z = (u/2πi)·z₀,
/// exact through q^emax.
pub fn theta_lambda(rs: &RootSystem, lambda_bar: &[Q], n: i64, z0: &[Q], emax: Q, jet: usize) -> Result<LatticeSum> {
    let zero = vec![Q::zero(); rs.rank()];
    let spec = SumSpec::new(rs, lambda_bar, n, &zero, z0, emax, jet);
    let id = WeylElement::identity(rs.rank());
    weyl_theta_sum(&spec, [(&id.matrix[..], 1)])
}

/// f_{λ,w}(τ,z) = q^{n|x|²/2} Θ_λ(τ, w⁻¹(z − τx)) and its variants, exact through q^emax.
pub fn f_function(
    rs: &RootSystem,
    variant: FVariant,
    lambda: &AffineWeight,
    w: &WeylElement,
    slice: &NilpotentSlice,
    z0: &[Q],
    emax: Q,
    jet: usize,
) -> Result<QJetSeries> {
    f_generic(rs, variant.shift(), None, lambda, w, slice, z0, emax, jet)
}

/// The variant built the other way: f⁻ = e^{4πiλ(x)} f(τ, z−x) and
/// f* = e^{4πiλ(x)} q^{−n|x|²/2} f(τ, z−x+τx).
pub fn f_function_alt(
    rs: &RootSystem,
    variant: FVariant,
    lambda: &AffineWeight,
    w: &WeylElement,
    slice: &NilpotentSlice,
    z0: &[Q],
    emax: Q,
    jet: usize,
) -> Result<QJetSeries> {
    let phase = rs.ip(&lambda.fin, &slice.x) * 2;
    f_generic(rs, variant.alt_shift(), Some(phase), lambda, w, slice, z0, emax, jet)
}

#[allow(clippy::too_many_arguments)]
fn f_generic(
    rs: &RootSystem,
    shift: Shift,
    phase: Option<Q>,
    lambda: &AffineWeight,
    w: &WeylElement,
    slice: &NilpotentSlice,
    z0: &[Q],
    emax: Q,
    jet: usize,
) -> Result<QJetSeries> {
    let n = positive_level(lambda.level)?;
    let v = w.inverse(rs);
    let spec = SumSpec::new(rs, &lambda.fin, n, &slice.x, z0, emax, jet).with_shift(shift);
    let s = weyl_theta_sum(&spec, [(&v.matrix[..], 1)])?.series;
    match phase {
        Some(t) => Ok(s.scale(&unit_phase(t)?)),
        None => Ok(s),
    }
}
