use super::integrable::{check_dominant, integrable_character, vacuum_character_dimension_sum, Specialization};
use super::products::{require, EtaProduct};
use super::result::CharacterResult;
use crate::liealg::{principal_admissible_vacuum, AffineWeight, NilpotentSlice, RootSystem, WeylGroup};
use crate::qlaurent::{GaussQ, QJetSeries, UJet};
use crate::{qi, Result, Q};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// The QHR of the admissible module vanishes iff u ≤ θ(x).
pub fn vanishing_predicate(slice: &NilpotentSlice, u: i64) -> bool {
    qi(u) <= slice.theta_x()
}

/// Smallest p ≥ h^∨ with gcd(p, u) = 1, provided gcd(u, r^∨) = 1.
pub fn smallest_admissible_p(rs: &RootSystem, u: i64) -> Option<i64> {
    if u < 1 || u.gcd(&rs.lacety) != 1 {
        return None;
    }
    (rs.dual_coxeter..).find(|p| p.gcd(&u) == 1)
}

/// Prefactor exponent a of the product formula:
/// |uρ − h^∨x|²/(2uh^∨) − dim 𝔤₀/24 + dim 𝔤_{1/2}/48 + l(1−u)/24.
/// With `printed_denominator` the first term is divided by 2h^∨ instead of 2uh^∨.
pub fn qhr_exponent(rs: &RootSystem, slice: &NilpotentSlice, u: i64, printed_denominator: bool) -> Q {
    let hv = qi(rs.dual_coxeter);
    let uq = qi(u);
    let v: Vec<Q> = rs.rho.iter().zip(&slice.x).map(|(r, x)| uq * r - hv * x).collect();
    let den = if printed_denominator { hv * 2 } else { uq * hv * 2 };
    let l = rs.rank() as i64;
    rs.norm2(&v) / den - Q::new(slice.dim_g0() as i64, 24) + Q::new(slice.dim_g_half() as i64, 48)
        + Q::new(l * (1 - u), 24)
}

fn grades(rs: &RootSystem, slice: &NilpotentSlice) -> Vec<Q> {
    rs.positive.iter().map(|r| slice.grade_of(rs, r)).collect()
}

/// The z-free factors q^a (η(uτ)/η(τ))^l A B C of the product formula at z = 0.
pub fn qhr_prefactor(rs: &RootSystem, slice: &NilpotentSlice, u: i64, rel: Q, printed: bool) -> EtaProduct {
    let l = rs.rank() as i64;
    let uq = qi(u);
    let gs = grades(rs, slice);
    let half = Q::new(1, 2);
    let mut p = EtaProduct::new();
    p.q_power(qhr_exponent(rs, slice, u, printed));
    p.eta(uq, l, rel).eta(Q::one(), -l, rel);
    for g in &gs {
        if *g > Q::zero() {
            p.factor(*g, 1);
        }
        if *g == half {
            let mut n = 1;
            while qi(n) - half <= rel {
                p.factor(qi(n) - half, -1);
                n += 1;
            }
        }
        if g.is_zero() {
            let mut n = 1;
            while qi(n) <= rel {
                p.factor(qi(n), -2);
                n += 1;
            }
        }
        let mut n = 1;
        loop {
            let lo = uq * n - g;
            let hi = uq * n + g;
            if lo > rel {
                break;
            }
            p.factor(lo, 1);
            if hi <= rel {
                p.factor(hi, 1);
            }
            n += 1;
        }
    }
    p
}

/// Normalized character of H_f(λ), λ = Λ⁰ − (u−1)(k+h^∨)Λ₀ with k + h^∨ = p/u,
/// at z = 0 from the product formula q^a (η(uτ)/η(τ))^l A B C D. Exact through
/// q-order `rel` past the leading term.
pub fn qhr_admissible_character(
    rs: &RootSystem,
    wg: &WeylGroup,
    slice: &NilpotentSlice,
    p: i64,
    u: i64,
    lam0: &AffineWeight,
    rel: Q,
) -> Result<CharacterResult> {
    qhr_character_impl(rs, wg, slice, p, u, lam0, rel, false)
}

/// Same as [`qhr_admissible_character`] but with the exponent a as displayed
/// with denominator 2h^∨; kept to exhibit the discrepancy for u ≠ 1.
pub fn qhr_admissible_character_printed_a(
    rs: &RootSystem,
    wg: &WeylGroup,
    slice: &NilpotentSlice,
    p: i64,
    u: i64,
    lam0: &AffineWeight,
    rel: Q,
) -> Result<CharacterResult> {
    qhr_character_impl(rs, wg, slice, p, u, lam0, rel, true)
}

#[allow(clippy::too_many_arguments)]
fn qhr_character_impl(
    rs: &RootSystem,
    wg: &WeylGroup,
    slice: &NilpotentSlice,
    p: i64,
    u: i64,
    lam0: &AffineWeight,
    rel: Q,
    printed: bool,
) -> Result<CharacterResult> {
    let vac = principal_admissible_vacuum(rs, p, u)?;
    let level = check_dominant(rs, lam0)?;
    require(level == p - rs.dual_coxeter, format!("Lambda^0 must have level p - h^vee = {}", p - rs.dual_coxeter))?;
    let pre = qhr_prefactor(rs, slice, u, rel, printed);
    let mut flags = Vec::new();
    let series = if pre.is_zero() {
        flags.push("B-factor has a (1 - q^0) factor; D not evaluated".to_string());
        QJetSeries::zero(0, Some(pre.lead() + rel))
    } else {
        let spec = Specialization { u, x: slice.x.clone(), z0: rs.rho_vee.clone() };
        let d = integrable_character(rs, wg, lam0, &spec, rel, 0)?;
        pre.series(rel)?.mul(&d)
    };
    let mut r = CharacterResult::new(series, &rs.cartan_type.to_string(), rel);
    r.nilpotent = Some(slice.kind_name());
    r.level = Some(vac.k);
    r.flags = flags;
    if vanishing_predicate(slice, u) {
        r.flag("u <= theta(x): vanishing predicted");
    }
    Ok(r)
}

/// Product formula for the principal nilpotent at u = h (Coxeter number):
/// q^{|λ̄⁰+ρ−(p/h)ρ^∨|² h/2p} Π_{α∈Δ̂₊^∨} (1 − q^{(λ⁰+ρ̂|α)})^{mult α} / η(τ)^l.
pub fn principal_qhr_character(rs: &RootSystem, p: i64, lam0: &AffineWeight, rel: Q) -> Result<CharacterResult> {
    let h = rs.coxeter;
    let vac = principal_admissible_vacuum(rs, p, h)?;
    let level = check_dominant(rs, lam0)?;
    require(level == p - rs.dual_coxeter, format!("lambda^0 must have level p - h^vee = {}", p - rs.dual_coxeter))?;
    let l = rs.rank() as i64;
    let kh = Q::new(p, h);
    let lr: Vec<Q> = lam0.fin.iter().zip(&rs.rho).map(|(a, b)| a + b).collect();
    let v: Vec<Q> = lr.iter().zip(&rs.rho_vee).map(|(a, b)| a - kh * b).collect();
    let mut prod = EtaProduct::new();
    prod.q_power(rs.norm2(&v) / (kh * 2));
    let pq = qi(p);
    for r in &rs.positive {
        let rq = rs.root_q(r);
        let s = rs.ip(&lr, &rs.coroot(r));
        let step = pq * 2 / rs.norm2(&rq);
        let mut m = 0;
        while s + step * m <= rel {
            prod.factor(s + step * m, 1);
            m += 1;
        }
        let mut m = 1;
        while step * m - s <= rel {
            prod.factor(step * m - s, 1);
            m += 1;
        }
    }
    let mut m = 1;
    while pq * m <= rel {
        prod.factor(pq * m, l);
        m += 1;
    }
    prod.eta(Q::one(), -l, rel);
    let mut r = CharacterResult::new(prod.series(rel)?, &rs.cartan_type.to_string(), rel);
    r.nilpotent = Some("principal".into());
    r.level = Some(vac.k);
    Ok(r)
}

fn check_boundary(rs: &RootSystem, u: i64) -> Result<()> {
    require(u >= 1, "u must be a positive integer")?;
    require(u.gcd(&rs.dual_coxeter) == 1, format!("gcd(u, h^vee) = gcd({u}, {}) must be 1", rs.dual_coxeter))?;
    require(u.gcd(&rs.lacety) == 1, format!("gcd(u, r^vee) = gcd({u}, {}) must be 1", rs.lacety))
}

/// Boundary level k_u = h^∨(1−u)/u: the vacuum character (η(uτ)/η(τ))^{dim 𝔤},
/// with c = (1−u) dim 𝔤.
pub fn boundary_affine_character(rs: &RootSystem, u: i64, rel: Q) -> Result<CharacterResult> {
    check_boundary(rs, u)?;
    let dim = rs.dim() as i64;
    let mut p = EtaProduct::new();
    p.eta(qi(u), dim, rel).eta(Q::one(), -dim, rel);
    let mut r = CharacterResult::new(p.series(rel)?, &rs.cartan_type.to_string(), rel);
    r.level = Some(Q::new(rs.dual_coxeter * (1 - u), u));
    r.central_charge = Some(qi((1 - u) * dim));
    Ok(r)
}

/// c(𝔤, f, k_u) = dim 𝔤₀ − ½ dim 𝔤_{1/2} − (12u/h^∨)|ρ − (h^∨/u)x|².
pub fn boundary_central_charge(rs: &RootSystem, slice: &NilpotentSlice, u: i64) -> Q {
    let hv = qi(rs.dual_coxeter);
    let v: Vec<Q> = rs.rho.iter().zip(&slice.x).map(|(r, x)| r - hv / u * x).collect();
    qi(slice.dim_g0() as i64) - Q::new(slice.dim_g_half() as i64, 2) - qi(12 * u) / hv * rs.norm2(&v)
}

/// ϑ₁₁(uτ, −jτ) = i Σ_m (−1)^m q^{u(m+½)²/2 − j(m+½)}, exact through q-order
/// `rel` past the smallest exponent occurring in the sum.
pub fn theta11_specialized(u: i64, j: Q, rel: Q) -> QJetSeries {
    let uq = qi(u);
    let ex = |m: i64| {
        let k = Q::new(2 * m + 1, 2);
        uq * k * k / 2 - j * k
    };
    let centre = (j / uq - Q::new(1, 2)).to_f64().unwrap();
    let m0 = centre.round() as i64;
    let emin = (m0 - 2..=m0 + 2).map(ex).min().unwrap();
    let cut = emin + rel;
    let mut s = QJetSeries::zero(0, Some(cut));
    let mut m = m0;
    while ex(m) <= cut || m >= m0 - 2 {
        if ex(m) <= cut {
            let c = if m.rem_euclid(2) == 0 { GaussQ::i() } else { -GaussQ::i() };
            s.push(ex(m), UJet::constant(c, 0));
        }
        m -= 1;
        if m < m0 - 2 && ex(m) > cut {
            break;
        }
    }
    let mut m = m0 + 1;
    while ex(m) <= cut || m <= m0 + 2 {
        if ex(m) <= cut {
            let c = if m.rem_euclid(2) == 0 { GaussQ::i() } else { -GaussQ::i() };
            s.push(ex(m), UJet::constant(c, 0));
        }
        m += 1;
    }
    s
}

fn positive_grades(slice: &NilpotentSlice) -> Vec<(Q, usize)> {
    slice.graded_dims().into_iter().filter(|(j, _)| *j > Q::zero()).collect()
}

/// The QHR vacuum character at the boundary level, from its ϑ₁₁ form:
/// (−i)^{|Δ₊|} η(uτ)^{(3/2)dim𝔤₀−½dim𝔤} / (η(τ)^{dim𝔤₀−dim𝔤_{1/2}} η(τ/2)^{dim𝔤_{1/2}})
/// · q^{h^∨|x|²/2u} Π_{j>0} ϑ₁₁(uτ, −jτ)^{dim 𝔤_j}.
pub fn boundary_slice_character(rs: &RootSystem, slice: &NilpotentSlice, u: i64, rel: Q) -> Result<CharacterResult> {
    check_boundary(rs, u)?;
    let dim = rs.dim() as i64;
    let g0 = slice.dim_g0() as i64;
    let gh = slice.dim_g_half() as i64;
    let hv = qi(rs.dual_coxeter);
    let mut e = EtaProduct::new();
    e.eta(qi(u), (3 * g0 - dim) / 2, rel).eta(Q::one(), gh - g0, rel).eta(Q::new(1, 2), -gh, rel);
    e.q_power(hv * rs.norm2(&slice.x) / (qi(u) * 2));
    let mut s = e.series(rel)?;
    for (j, d) in positive_grades(slice) {
        let t = theta11_specialized(u, j, rel);
        if t.is_zero() {
            s = QJetSeries::zero(0, Some(s.valuation().unwrap_or(Q::zero()) + rel));
            break;
        }
        s = s.mul(&t.pow(d as i64)?);
    }
    let s = s.scale(&GaussQ::i_pow(-(rs.positive.len() as i64)));
    let mut r = CharacterResult::new(s, &rs.cartan_type.to_string(), rel);
    r.nilpotent = Some(slice.kind_name());
    r.level = Some(Q::new(rs.dual_coxeter * (1 - u), u));
    r.central_charge = Some(boundary_central_charge(rs, slice, u));
    Ok(r)
}

/// The same character from its expanded product form:
/// (−i)^{|Δ₊⁰|} q^{h^∨|x|²/2u − ρ(x) + u(dim𝔤 − dim𝔤₀)/24} η(uτ)^{dim𝔤₀}
/// / (η(τ)^{dim𝔤₀−dim𝔤_{1/2}} η(τ/2)^{dim𝔤_{1/2}}) Π_j Π_n ((1−q^{un−j})(1−q^{un−(u−j)}))^{dim𝔤_j}.
pub fn boundary_slice_character_product(rs: &RootSystem, slice: &NilpotentSlice, u: i64, rel: Q) -> Result<CharacterResult> {
    check_boundary(rs, u)?;
    let dim = rs.dim() as i64;
    let g0 = slice.dim_g0() as i64;
    let gh = slice.dim_g_half() as i64;
    let hv = qi(rs.dual_coxeter);
    let uq = qi(u);
    let mut e = EtaProduct::new();
    e.q_power(hv * rs.norm2(&slice.x) / (uq * 2) - rs.ip(&rs.rho, &slice.x) + uq * (dim - g0) / 24);
    e.eta(uq, g0, rel).eta(Q::one(), gh - g0, rel).eta(Q::new(1, 2), -gh, rel);
    for (j, d) in positive_grades(slice) {
        let mut n = 1;
        loop {
            let a = uq * n - j;
            let b = uq * n - (uq - j);
            if a > rel && b > rel {
                break;
            }
            if a <= rel {
                e.factor(a, d as i64);
            }
            if b <= rel {
                e.factor(b, d as i64);
            }
            n += 1;
        }
    }
    let d0 = slice.delta0_positive(rs).len() as i64;
    let s = e.series(rel)?.scale(&GaussQ::i_pow(-d0));
    let mut r = CharacterResult::new(s, &rs.cartan_type.to_string(), rel);
    r.nilpotent = Some(slice.kind_name());
    r.level = Some(Q::new(rs.dual_coxeter * (1 - u), u));
    r.central_charge = Some(boundary_central_charge(rs, slice, u));
    Ok(r)
}

/// Vacuum character of V_k(𝔤) at k + h^∨ = p/u:
/// ch_{(p−h^∨)Λ₀}(uτ) (η(uτ)/η(τ))^{dim 𝔤}, with c = k dim 𝔤/(k + h^∨).
pub fn admissible_vacuum_character(rs: &RootSystem, p: i64, u: i64, rel: Q) -> Result<CharacterResult> {
    let vac = principal_admissible_vacuum(rs, p, u)?;
    let ch = vacuum_character_dimension_sum(rs, p, rel)?.rescale_q(u);
    let dim = rs.dim() as i64;
    let mut e = EtaProduct::new();
    e.eta(qi(u), dim, rel).eta(Q::one(), -dim, rel);
    let s = ch.mul(&e.series(rel)?);
    let mut r = CharacterResult::new(s, &rs.cartan_type.to_string(), rel);
    r.level = Some(vac.k);
    r.central_charge = Some(vac.k * dim / (vac.k + rs.dual_coxeter));
    Ok(r)
}
