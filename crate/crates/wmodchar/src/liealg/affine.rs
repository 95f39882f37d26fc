use super::roots::RootSystem;
use super::linalg;
use crate::{qi, Error, Result, Q};
use num_integer::Integer;
use num_traits::Zero;

/// An affine weight λ̄ + nΛ₀ + sδ.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineWeight {
    pub fin: Vec<Q>,
    pub level: Q,
    pub delta: Q,
}

impl AffineWeight {
    pub fn new(fin: Vec<Q>, level: Q, delta: Q) -> Self {
        AffineWeight { fin, level, delta }
    }

    /// nΛ₀.
    pub fn lambda0(rank: usize, level: Q) -> Self {
        AffineWeight { fin: vec![Q::zero(); rank], level, delta: Q::zero() }
    }

    /// ρ̂ = ρ + h^∨Λ₀.
    pub fn rho_hat(rs: &RootSystem) -> Self {
        AffineWeight { fin: rs.rho.clone(), level: qi(rs.dual_coxeter), delta: Q::zero() }
    }

    pub fn add(&self, o: &AffineWeight) -> Self {
        AffineWeight {
            fin: linalg::add(&self.fin, &o.fin),
            level: self.level + o.level,
            delta: self.delta + o.delta,
        }
    }

    /// Invariant form: |λ|² = |λ̄|² + 2ns.
    pub fn norm2(&self, rs: &RootSystem) -> Q {
        rs.norm2(&self.fin) + qi(2) * self.level * self.delta
    }

    /// Translation t_γ(λ) = λ + nγ − ((λ̄|γ) + n|γ|²/2)δ for γ ∈ Q^∨ (root coordinates).
    pub fn translate(&self, rs: &RootSystem, gamma: &[Q]) -> Self {
        let n = self.level;
        let fin = linalg::add(&self.fin, &linalg::scale(n, gamma));
        let shift = rs.ip(&self.fin, gamma) + n * rs.norm2(gamma) / 2;
        AffineWeight { fin, level: n, delta: self.delta - shift }
    }

    /// Action of a finite Weyl group element (fixes Λ₀ and δ).
    pub fn weyl(&self, w: &super::WeylElement) -> Self {
        AffineWeight { fin: w.apply(&self.fin), level: self.level, delta: self.delta }
    }
}

/// Data of the vacuum principal admissible weight kΛ₀ with k + h^∨ = p/u.
#[derive(Clone, Debug)]
pub struct AdmissibleVacuum {
    pub p: i64,
    pub u: i64,
    pub k: Q,
    pub lambda: AffineWeight,
    /// Λ⁰ = (p − h^∨)Λ₀, the integrable weight attached to λ.
    pub lambda0: AffineWeight,
}

/// Checks k + h^∨ = p/u, gcd(p,u) = gcd(u,r^∨) = 1, p ≥ h^∨ and builds kΛ₀.
pub fn principal_admissible_vacuum(rs: &RootSystem, p: i64, u: i64) -> Result<AdmissibleVacuum> {
    let hv = rs.dual_coxeter;
    if u < 1 {
        return Err(Error::Precondition(format!("u must be >= 1, got {u}")));
    }
    if p < hv {
        return Err(Error::Precondition(format!("p >= h^vee = {hv} required, got p = {p}")));
    }
    if p.gcd(&u) != 1 {
        return Err(Error::Precondition(format!("gcd(p, u) = 1 required, got gcd({p}, {u}) = {}", p.gcd(&u))));
    }
    if u.gcd(&rs.lacety) != 1 {
        return Err(Error::Precondition(format!(
            "gcd(u, r^vee) = 1 required, got gcd({u}, {}) = {}",
            rs.lacety,
            u.gcd(&rs.lacety)
        )));
    }
    let k = Q::new(p, u) - qi(hv);
    Ok(AdmissibleVacuum {
        p,
        u,
        k,
        lambda: AffineWeight::lambda0(rs.rank(), k),
        lambda0: AffineWeight::lambda0(rs.rank(), qi(p - hv)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn admissible_levels() {
        let a1 = RootSystem::from_name("A1").unwrap();
        let v = principal_admissible_vacuum(&a1, 2, 3).unwrap();
        assert_eq!(v.k, q(-4, 3));
        assert_eq!(v.k, Q::from_integer(a1.dual_coxeter) * Q::new(1 - 3, 3));
        let v = principal_admissible_vacuum(&a1, 4, 3).unwrap();
        assert_eq!(v.k, q(-2, 3));
        assert_eq!(v.lambda0.level, q(2, 1));
        // level of Λ⁰ equals u(k + h^∨) − h^∨
        assert_eq!(v.lambda0.level, qi(v.u) * (v.k + qi(2)) - qi(2));
        let a2 = RootSystem::from_name("A2").unwrap();
        assert_eq!(principal_admissible_vacuum(&a2, 3, 2).unwrap().k, q(-3, 2));
        assert!(principal_admissible_vacuum(&a2, 2, 3).is_err());
        assert!(principal_admissible_vacuum(&a2, 4, 2).is_err());
        let b2 = RootSystem::from_name("B2").unwrap();
        let e = principal_admissible_vacuum(&b2, 5, 2).unwrap_err();
        assert!(e.to_string().contains("r^vee"));
    }

    #[test]
    fn translation_preserves_level_and_norm() {
        let rs = RootSystem::from_name("A2").unwrap();
        let lam = AffineWeight::rho_hat(&rs);
        let g = rs.coroot_coords_to_root(&[1, -2]);
        let t = lam.translate(&rs, &g);
        assert_eq!(t.level, lam.level);
        assert_eq!(t.norm2(&rs), lam.norm2(&rs));
    }
}
