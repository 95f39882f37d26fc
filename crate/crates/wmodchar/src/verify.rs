//! Ready-made verification runs shared by the command line and the acceptance tests.
//!
//! Exact checks compare truncated series coefficient by coefficient; numerical
//! checks return one [`TransformReport`] per identity and sample point.

use crate::characters::{
    denominator_identity_remark4, numerator_a_specialized, numerator_b_relative, rhs_theorem1, shifted_vacuum, wmin_spec,
    NumeratorSpec,
};
use crate::liealg::{AffineWeight, NilpotentSlice, RootSystem, WeylGroup};
use crate::modular::{
    verify_denominator_transform, verify_f_transform, verify_psi_transform, verify_theorem4b, verify_theta_transforms,
    Cosets, EvalPoint, Evaluator, Transform, TransformReport,
};
use crate::thetaforms::{generic_direction, is_generic, FVariant};
use crate::{qi, Error, Result, Q};

pub const VARIANTS: [FVariant; 3] = [FVariant::Plain, FVariant::Minus, FVariant::Star];
pub const COSET_CAP: usize = 1 << 22;

/// Outcome of an exact series comparison.
#[derive(Clone, Debug)]
pub struct ExactCheck {
    pub identity: String,
    pub pass: bool,
    /// Absolute q-exponent through which coefficients were compared.
    pub upto: Q,
    pub jet: usize,
    pub detail: String,
}

/// Knobs for the numerical suites.
#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    pub points: usize,
    pub seed: u64,
    pub eps: f64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { points: 5, seed: 1, eps: crate::modular::DEFAULT_EPS }
    }
}

impl Sampling {
    fn points(&self, ev: &Evaluator, z0: &[Q]) -> Vec<EvalPoint> {
        EvalPoint::samples(ev, z0, self.points, self.seed)
            .into_iter()
            .map(|mut p| {
                p.eps = self.eps;
                p
            })
            .collect()
    }
}

/// Parses `S-plain`, `T-star`, ... into a transform and a variant.
pub fn parse_which(s: &str) -> Result<(Transform, FVariant)> {
    let (t, v) = s
        .split_once('-')
        .ok_or_else(|| Error::Precondition(format!("--which must look like S-plain or T-minus, got {s}")))?;
    let t = match t {
        "S" | "s" => Transform::S,
        "T" | "t" => Transform::T,
        _ => return Err(Error::Precondition(format!("transform must be S or T, got {t}"))),
    };
    let v = match v {
        "plain" => FVariant::Plain,
        "minus" => FVariant::Minus,
        "star" => FVariant::Star,
        _ => return Err(Error::Precondition(format!("variant must be plain, minus or star, got {v}"))),
    };
    Ok((t, v))
}

pub fn all_which() -> Vec<(Transform, FVariant)> {
    [Transform::S, Transform::T].into_iter().flat_map(|t| VARIANTS.map(|v| (t, v))).collect()
}

/// Numerator data for the minimal slice at level k: λ = kΛ₀ + ρ̂ and the marking
/// root α^{(−k)} where that is defined (D and E types); otherwise α = θ, which
/// satisfies (λ|α) = k + h^∨ only when k + h^∨ = (ρ|θ).
pub fn theorem1_spec(rs: &RootSystem, k: i64, direction: Option<Vec<Q>>) -> Result<NumeratorSpec> {
    let mut spec = match rs.cartan_type.letter {
        'D' | 'E' => wmin_spec(rs, k)?,
        _ => {
            let slice = NilpotentSlice::minimal(rs);
            let z0 = generic_direction(rs, &slice)?;
            NumeratorSpec { lambda: shifted_vacuum(rs, qi(k)), alpha: rs.theta.clone(), slice, z0 }
        }
    };
    if k + rs.dual_coxeter <= 0 {
        return Err(Error::Precondition(format!("level k + h^vee = {} must be a positive integer", k + rs.dual_coxeter)));
    }
    if !spec.theorem1_hypothesis(rs) {
        return Err(Error::Precondition(format!(
            "(lambda|alpha) = k + h^vee fails for {} at k = {k}",
            rs.cartan_type
        )));
    }
    if let Some(z) = direction {
        if z.len() != rs.rank() || !is_generic(rs, &spec.slice, &z) {
            return Err(Error::Precondition("seed direction must lie in h^f and be generic".into()));
        }
        spec.z0 = z;
    }
    Ok(spec)
}

/// A ≡ right-hand side ≡ B for the numerator data of [`theorem1_spec`], through
/// `rel` past the leading exponent of B.
pub fn theorem1(rs: &RootSystem, wg: &WeylGroup, spec: &NumeratorSpec, rel: Q, jet: usize) -> Result<ExactCheck> {
    let b = numerator_b_relative(rs, wg, FVariant::Plain, spec, rel, jet)?;
    let emax = b.prec().ok_or_else(|| Error::Numerical("numerator B has no precision bound".into()))?;
    let a = numerator_a_specialized(rs, wg, spec, emax, jet)?;
    let r = rhs_theorem1(rs, wg, spec, emax, jet)?;
    let ar = a.agrees_with(&r, emax);
    let rb = r.agrees_with(&b, emax);
    let pass = ar && rb && !b.is_zero();
    let detail = format!(
        "A vs rhs: {}, rhs vs B: {}, B lead {}, {} q-terms",
        if ar { "equal" } else { "differ" },
        if rb { "equal" } else { "differ" },
        b.valuation().map_or("none".into(), |v| v.to_string()),
        b.terms().len()
    );
    Ok(ExactCheck { identity: "theorem1".into(), pass, upto: emax, jet, detail })
}

pub fn remark4(rs: &RootSystem, wg: &WeylGroup, rel: Q, jet: usize) -> Result<ExactCheck> {
    let rep = denominator_identity_remark4(rs, wg, rel, jet)?;
    Ok(ExactCheck {
        identity: "remark4".into(),
        pass: rep.equal,
        upto: rep.upto,
        jet: rep.jet,
        detail: format!("{} q-terms on the right side", rep.rhs.terms().len()),
    })
}

/// Θ S/T laws for the first few cosets of P/nQ^∨.
pub fn theta(rs: &RootSystem, n: i64, s: &Sampling) -> Result<Vec<TransformReport>> {
    if n <= 0 {
        return Err(Error::Precondition(format!("theta level n = {n} must be positive")));
    }
    let ev = Evaluator::new(rs);
    let cos = Cosets::new(rs, n, COSET_CAP)?;
    let slice = NilpotentSlice::minimal(rs);
    let z0 = generic_direction(rs, &slice)?;
    let mut out = Vec::new();
    for pt in s.points(&ev, &z0) {
        for lam in cos.reps().iter().take(3) {
            out.extend(verify_theta_transforms(&ev, lam, n, &cos, &pt)?);
        }
    }
    Ok(out)
}

/// S/T laws of f, f⁻, f* for λ = kΛ₀ + ρ̂ on the minimal slice.
pub fn f_laws(rs: &RootSystem, wg: &WeylGroup, k: i64, s: &Sampling) -> Result<Vec<TransformReport>> {
    let n = k + rs.dual_coxeter;
    if n <= 0 {
        return Err(Error::Precondition(format!("level k + h^vee = {n} must be a positive integer")));
    }
    let ev = Evaluator::new(rs);
    let cos = Cosets::new(rs, n, COSET_CAP)?;
    let slice = NilpotentSlice::minimal(rs);
    let z0 = generic_direction(rs, &slice)?;
    let lam: AffineWeight = shifted_vacuum(rs, qi(k));
    let mut out = Vec::new();
    for (i, pt) in s.points(&ev, &z0).into_iter().enumerate() {
        let w = wg.element((37 * i + 5) % wg.len());
        for (t, v) in all_which() {
            out.push(verify_f_transform(&ev, t, v, &lam, &w, &slice, &cos, &pt)?);
        }
    }
    Ok(out)
}

pub fn denominator(rs: &RootSystem, slice: &NilpotentSlice, s: &Sampling) -> Result<Vec<TransformReport>> {
    let ev = Evaluator::new(rs);
    let z0 = generic_direction(rs, slice)?;
    let mut out = Vec::new();
    for pt in s.points(&ev, &z0) {
        for (t, v) in all_which() {
            out.push(verify_denominator_transform(&ev, slice, t, v, &pt)?);
        }
    }
    Ok(out)
}

/// S/T laws of Ψ for the numerator data `spec` (coset count n^l·|P/Q^∨|).
pub fn theorem2(
    rs: &RootSystem,
    wg: &WeylGroup,
    spec: &NumeratorSpec,
    which: &[(Transform, FVariant)],
    s: &Sampling,
) -> Result<Vec<TransformReport>> {
    let n = crate::thetaforms::positive_level(spec.lambda.level)?;
    let ev = Evaluator::new(rs);
    let cos = Cosets::new(rs, n, COSET_CAP)?;
    let mut out = Vec::new();
    for pt in s.points(&ev, &spec.z0) {
        for (t, v) in which {
            out.push(verify_psi_transform(&ev, wg, spec, *t, *v, &cos, &pt)?);
        }
    }
    Ok(out)
}

/// T-laws of ch̃, ch̃⁻, ch̃* at k + h^∨ = p/u for the vacuum class Λ⁰ = (p − h^∨)Λ₀.
pub fn theorem4b(
    rs: &RootSystem,
    wg: &WeylGroup,
    slice: &NilpotentSlice,
    p: i64,
    u: i64,
    s: &Sampling,
) -> Result<Vec<TransformReport>> {
    let ev = Evaluator::new(rs);
    let lam0 = AffineWeight::lambda0(rs.rank(), qi(p - rs.dual_coxeter));
    let mut out = Vec::new();
    for pt in s.points(&ev, &vec![Q::from_integer(0); rs.rank()]) {
        for v in VARIANTS {
            out.push(verify_theorem4b(&ev, wg, slice, p, u, &lam0, v, &pt)?);
        }
    }
    Ok(out)
}
