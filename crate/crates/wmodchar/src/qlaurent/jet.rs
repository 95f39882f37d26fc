use super::gauss::{BigQ, GaussQ};
use num_traits::One;

/// Truncated power series c₀ + c₁u + … + c_U u^U.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UJet {
    pub c: Vec<GaussQ>,
}

impl UJet {
    pub fn zero(order: usize) -> Self {
        UJet { c: vec![GaussQ::zero(); order + 1] }
    }

    pub fn constant(g: GaussQ, order: usize) -> Self {
        let mut j = UJet::zero(order);
        j.c[0] = g;
        j
    }

    pub fn one(order: usize) -> Self {
        UJet::constant(GaussQ::one(), order)
    }

    /// Σ_{k≤U} (c u)^k / k!.
    pub fn exp_linear(c: &BigQ, order: usize) -> Self {
        let mut out = Vec::with_capacity(order + 1);
        let mut term = BigQ::one();
        out.push(GaussQ::from_big(term.clone()));
        for k in 1..=order {
            term = term * c / BigQ::from_integer(k.into());
            out.push(GaussQ::from_big(term.clone()));
        }
        UJet { c: out }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Lowest k with c_k ≠ 0.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        UJet { c: self.c[..=order.min(self.order())].to_vec() }
    }

    pub fn add(&self, o: &UJet) -> Self {
        let n = self.order().min(o.order());
        UJet { c: (0..=n).map(|k| &self.c[k] + &o.c[k]).collect() }
    }

    pub fn sub(&self, o: &UJet) -> Self {
        let n = self.order().min(o.order());
        UJet { c: (0..=n).map(|k| &self.c[k] - &o.c[k]).collect() }
    }

    pub fn add_assign(&mut self, o: &UJet) {
        let n = self.order().min(o.order());
        self.c.truncate(n + 1);
        for k in 0..=n {
            self.c[k] += &o.c[k];
        }
    }

    pub fn neg(&self) -> Self {
        UJet { c: self.c.iter().map(|x| -x.clone()).collect() }
    }

    pub fn scale(&self, g: &GaussQ) -> Self {
        UJet { c: self.c.iter().map(|x| x * g).collect() }
    }

    pub fn mul(&self, o: &UJet) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![GaussQ::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UJet { c: out }
    }

    /// Multiplicative inverse; requires c₀ ≠ 0.
    pub fn inverse(&self) -> Option<Self> {
        if self.c[0].is_zero() {
            return None;
        }
        let inv0 = self.c[0].inv();
        let n = self.order();
        let mut out: Vec<GaussQ> = vec![inv0.clone()];
        for k in 1..=n {
            let mut s = GaussQ::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    s += &(&self.c[j] * &out[k - j]);
                }
            }
            out.push(-(&s * &inv0));
        }
        Some(UJet { c: out })
    }

    /// Divides by u^m, lowering the order by m; requires c_k = 0 for k < m.
    pub fn shift_down(&self, m: usize) -> Option<Self> {
        if self.c.iter().take(m).any(|x| !x.is_zero()) || m > self.order() {
            return None;
        }
        Some(UJet { c: self.c[m..].to_vec() })
    }

    /// Square root of a jet with c₀ = 1, normalized to b₀ = 1.
    pub fn sqrt_unit(&self) -> Option<Self> {
        if self.c[0] != GaussQ::one() {
            return None;
        }
        let n = self.order();
        let half = BigQ::new(1.into(), 2.into());
        let mut b = vec![GaussQ::one()];
        for k in 1..=n {
            let mut s = self.c[k].clone();
            for j in 1..k {
                s -= &(&b[j] * &b[k - j]);
            }
            b.push(s.scale(&half));
        }
        Some(UJet { c: b })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::gauss::big;
    use crate::q;

    #[test]
    fn exp_is_a_homomorphism() {
        let a = big(q(3, 2));
        let b = big(q(-5, 7));
        let lhs = UJet::exp_linear(&(&a + &b), 8);
        let rhs = UJet::exp_linear(&a, 8).mul(&UJet::exp_linear(&b, 8));
        assert_eq!(lhs, rhs);
        let id = UJet::exp_linear(&a, 8).mul(&UJet::exp_linear(&-a.clone(), 8));
        assert_eq!(id, UJet::one(8));
        assert_eq!(UJet::exp_linear(&big(q(0, 1)), 5), UJet::one(5));
    }

    #[test]
    fn inverse_and_sqrt() {
        let j = UJet::exp_linear(&big(q(2, 1)), 6).add(&UJet::one(6));
        let inv = j.inverse().unwrap();
        assert_eq!(j.mul(&inv), UJet::one(6));
        let sq = UJet::exp_linear(&big(q(1, 3)), 6);
        let s2 = sq.mul(&sq);
        assert_eq!(s2.sqrt_unit().unwrap(), sq);
    }

    #[test]
    fn shift() {
        let mut j = UJet::zero(4);
        j.c[2] = GaussQ::one();
        assert_eq!(j.valuation(), Some(2));
        let s = j.shift_down(2).unwrap();
        assert_eq!(s.order(), 2);
        assert!(j.shift_down(3).is_none());
    }
}
