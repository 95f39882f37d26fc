use crate::qlaurent::{big, GaussQ, QJetSeries, UJet};
use crate::{qi, Result, Q};
use num_traits::{ToPrimitive, Zero};

/// The four Jacobi theta functions ϑ_ab.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    T11,
    T01,
    T00,
    T10,
}

impl ThetaKind {
    pub fn name(self) -> &'static str {
        match self {
            ThetaKind::T11 => "11",
            ThetaKind::T01 => "01",
            ThetaKind::T00 => "00",
            ThetaKind::T10 => "10",
        }
    }
}

/// 1 + sign·exp(c·u)·q^e, exact.
fn binomial(sign: i64, c: Q, e: Q, jet: usize) -> QJetSeries {
    let mut s = QJetSeries::one(jet);
    s.push(e, UJet::exp_linear(&big(c), jet).scale(&GaussQ::from_int(sign)));
    s
}

/// Π_{n≥1} (1 − qⁿ) through q^emax.
pub fn euler_product(emax: Q, jet: usize) -> QJetSeries {
    let mut s = QJetSeries::one(jet).with_prec(Some(emax));
    let mut n = 1;
    while qi(n) <= emax {
        s = s.mul(&binomial(-1, Q::zero(), qi(n), jet));
        n += 1;
    }
    s
}

/// η(τ) = q^{1/24} Π (1 − qⁿ), exact through q^emax.
pub fn dedekind_eta(emax: Q, jet: usize) -> QJetSeries {
    let lead = Q::new(1, 24);
    euler_product(emax - lead, jet).mul_q_power(lead)
}

/// η(τ)^a for a ∈ ½ℤ, exact through q^emax.
pub fn eta_power(a: Q, emax: Q, jet: usize) -> Result<QJetSeries> {
    let lead = a / 24;
    let e = euler_product(emax - lead, jet).pow_rational(a)?;
    Ok(e.mul_q_power(lead))
}

/// ϑ_ab(τ, z) at z = (u/2πi)·z₀ with c = (α|z₀), as a product, exact through
/// q^emax. With y = e^{2πiz}:
/// ϑ₁₁ = −i q^{1/8} y^{−1/2} Π (1−qⁿ)(1−y⁻¹qⁿ)(1−y q^{n−1}),
/// ϑ₁₀ = q^{1/8}(y^{1/2}+y^{−1/2}) Π (1−qⁿ)(1+y qⁿ)(1+y⁻¹qⁿ),
/// ϑ₀₀ = Π (1−qⁿ)(1+y q^{n−1/2})(1+y⁻¹q^{n−1/2}),
/// ϑ₀₁ = Π (1−qⁿ)(1−y q^{n−1/2})(1−y⁻¹q^{n−1/2}).
pub fn jacobi_theta(kind: ThetaKind, c: Q, emax: Q, jet: usize) -> QJetSeries {
    let eighth = Q::new(1, 8);
    let half = Q::new(1, 2);
    match kind {
        ThetaKind::T11 => {
            let rel = emax - eighth;
            let mut s = euler_product(rel, jet);
            let mut n = 1;
            while qi(n - 1) <= rel {
                s = s.mul(&binomial(-1, c, qi(n - 1), jet));
                if qi(n) <= rel {
                    s = s.mul(&binomial(-1, -c, qi(n), jet));
                }
                n += 1;
            }
            let pre = QJetSeries::monomial(
                eighth,
                UJet::exp_linear(&big(-c / 2), jet).scale(&GaussQ::i_pow(3)),
            );
            s.mul(&pre)
        }
        ThetaKind::T10 => {
            let rel = emax - eighth;
            let mut s = euler_product(rel, jet);
            let mut n = 1;
            while qi(n) <= rel {
                s = s.mul(&binomial(1, c, qi(n), jet));
                s = s.mul(&binomial(1, -c, qi(n), jet));
                n += 1;
            }
            let mut pre = QJetSeries::zero(jet, None);
            pre.push(eighth, UJet::exp_linear(&big(c / 2), jet));
            pre.push(eighth, UJet::exp_linear(&big(-c / 2), jet));
            s.mul(&pre)
        }
        ThetaKind::T00 | ThetaKind::T01 => {
            let sign = if kind == ThetaKind::T00 { 1 } else { -1 };
            let mut s = euler_product(emax, jet);
            let mut n = 1;
            while qi(n) - half <= emax {
                s = s.mul(&binomial(sign, c, qi(n) - half, jet));
                s = s.mul(&binomial(sign, -c, qi(n) - half, jet));
                n += 1;
            }
            s
        }
    }
}

/// The same functions from their series: ϑ₁₁ = i Σ (−1)ⁿ q^{(n+½)²/2} y^{n+½},
/// ϑ₁₀ = Σ q^{(n+½)²/2} y^{n+½}, ϑ₀₀ = Σ q^{n²/2} yⁿ, ϑ₀₁ = Σ (−1)ⁿ q^{n²/2} yⁿ.
pub fn jacobi_theta_sum(kind: ThetaKind, c: Q, emax: Q, jet: usize) -> QJetSeries {
    let mut s = QJetSeries::zero(jet, Some(emax));
    let half_shift = matches!(kind, ThetaKind::T11 | ThetaKind::T10);
    let bound = (2.0 * emax.to_f64().unwrap_or(0.0)).max(0.0).sqrt().ceil() as i64 + 1;
    for m in -bound..=bound {
        let k = if half_shift { Q::new(2 * m + 1, 2) } else { qi(m) };
        let e = k * k / 2;
        if e > emax {
            continue;
        }
        let sgn = if m.rem_euclid(2) == 1 { -1 } else { 1 };
        let coef = match kind {
            ThetaKind::T11 => GaussQ::i_pow(1).scale(&big(qi(sgn))),
            ThetaKind::T10 | ThetaKind::T00 => GaussQ::one(),
            ThetaKind::T01 => GaussQ::from_int(sgn),
        };
        s.push(e, UJet::exp_linear(&big(c * k), jet).scale(&coef));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn eta_pentagonal() {
        let e = dedekind_eta(qi(6) + q(1, 24), 0);
        let coeffs: Vec<(Q, String)> = e
            .coefficients()
            .into_iter()
            .map(|(e, _, c)| (e, c.to_string()))
            .collect();
        let lead = q(1, 24);
        assert_eq!(
            coeffs,
            vec![
                (lead, "1".to_string()),
                (lead + 1, "-1".to_string()),
                (lead + 2, "-1".to_string()),
                (lead + 5, "1".to_string())
            ]
        );
    }

    #[test]
    fn products_match_sums() {
        for kind in [ThetaKind::T11, ThetaKind::T01, ThetaKind::T00, ThetaKind::T10] {
            for c in [q(0, 1), q(1, 3), q(-5, 2)] {
                let p = jacobi_theta(kind, c, qi(5), 5);
                let s = jacobi_theta_sum(kind, c, qi(5), 5);
                assert!(p.agrees_with(&s, qi(5)), "{kind:?} c={c}\n{p}\n{s}");
            }
        }
    }

    #[test]
    fn parity() {
        for kind in [ThetaKind::T11, ThetaKind::T01, ThetaKind::T00, ThetaKind::T10] {
            let a = jacobi_theta(kind, q(2, 3), qi(4), 6);
            let b = jacobi_theta(kind, q(-2, 3), qi(4), 6);
            let expect = if kind == ThetaKind::T11 { b.neg() } else { b };
            assert!(a.agrees_with(&expect, qi(4)));
        }
        let z = jacobi_theta(ThetaKind::T11, q(3, 7), qi(4), 6);
        assert!(z.u0_part().is_zero());
        assert!(jacobi_theta(ThetaKind::T11, Q::zero(), qi(4), 6).is_zero());
    }

    #[test]
    fn eta_half_power() {
        let a = eta_power(q(3, 2), qi(5), 0).unwrap();
        let b = eta_power(q(3, 1), qi(5), 0).unwrap();
        assert!(a.mul(&a).agrees_with(&b, qi(5)));
        let c = eta_power(q(-3, 1), qi(5), 0).unwrap();
        assert!(b.mul(&c).agrees_with(&QJetSeries::one(0), qi(4)));
    }
}
