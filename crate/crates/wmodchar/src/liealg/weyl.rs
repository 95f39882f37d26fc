use super::roots::RootSystem;
use crate::{Error, Result, Q};
use num_traits::Zero;
use std::collections::HashSet;

pub const DEFAULT_WEYL_CAP: u128 = 10_000_000;

/// A Weyl group element as an integer matrix acting on simple-root coordinates:
/// column `c` holds the coordinates of `w(α_c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub rank: usize,
    pub matrix: Vec<i8>,
    pub sign: i8,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut m = vec![0i8; rank * rank];
        for i in 0..rank {
            m[i * rank + i] = 1;
        }
        WeylElement { rank, matrix: m, sign: 1 }
    }

    /// The reflection in a root β (root coordinates).
    pub fn reflection(rs: &RootSystem, beta: &[i64]) -> Self {
        let l = rs.rank();
        let bv = rs.coroot(beta);
        let mut m = vec![0i8; l * l];
        for c in 0..l {
            let mut e = vec![Q::zero(); l];
            e[c] = Q::from_integer(1);
            let pairing = rs.ip(&e, &bv);
            for r in 0..l {
                let v = e[r] - pairing * Q::from_integer(beta[r]);
                m[r * l + c] = v.to_integer() as i8;
            }
        }
        WeylElement { rank: l, matrix: m, sign: -1 }
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        apply_q(&self.matrix, self.rank, v)
    }

    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        apply_int(&self.matrix, self.rank, v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let l = self.rank;
        let mut m = vec![0i8; l * l];
        for r in 0..l {
            for c in 0..l {
                let mut s = 0i32;
                for k in 0..l {
                    s += self.matrix[r * l + k] as i32 * other.matrix[k * l + c] as i32;
                }
                m[r * l + c] = s as i8;
            }
        }
        WeylElement { rank: l, matrix: m, sign: self.sign * other.sign }
    }

    /// Inverse via `w^{-1} = G^{-1} wᵀ G` (w is an isometry).
    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let l = self.rank;
        let g = &rs.gram;
        let gi = rs.gram_inverse();
        let mut m = vec![0i8; l * l];
        for r in 0..l {
            for c in 0..l {
                let mut s = Q::zero();
                for a in 0..l {
                    if gi[r][a].is_zero() {
                        continue;
                    }
                    for b in 0..l {
                        s += gi[r][a] * Q::from_integer(self.matrix[b * l + a] as i64) * g[b][c];
                    }
                }
                m[r * l + c] = s.to_integer() as i8;
            }
        }
        WeylElement { rank: l, matrix: m, sign: self.sign }
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank)
    }
}

pub(crate) fn apply_q(m: &[i8], l: usize, v: &[Q]) -> Vec<Q> {
    (0..l)
        .map(|r| {
            let mut s = Q::zero();
            for c in 0..l {
                let a = m[r * l + c];
                if a != 0 && !v[c].is_zero() {
                    s += v[c] * Q::from_integer(a as i64);
                }
            }
            s
        })
        .collect()
}

pub(crate) fn apply_int(m: &[i8], l: usize, v: &[i64]) -> Vec<i64> {
    (0..l)
        .map(|r| (0..l).map(|c| m[r * l + c] as i64 * v[c]).sum())
        .collect()
}

/// The full Weyl group, stored flat. Enumeration is a breadth-first search from
/// the identity over left multiplication by simple reflections, keyed by the
/// image of the regular vector 2ρ, so the order is deterministic.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub rank: usize,
    mats: Vec<i8>,
    signs: Vec<i8>,
}

impl WeylGroup {
    pub fn new(rs: &RootSystem, cap: u128) -> Result<Self> {
        let order = rs.weyl_order();
        if order > cap {
            return Err(Error::WeylCap { order, cap });
        }
        let l = rs.rank();
        let two_rho: Vec<i64> = rs.rho.iter().map(|c| (c * 2).to_integer()).collect();
        let gens: Vec<WeylElement> = (0..l)
            .map(|i| {
                let mut e = vec![0i64; l];
                e[i] = 1;
                WeylElement::reflection(rs, &e)
            })
            .collect();
        let id = WeylElement::identity(l);
        let mut seen: HashSet<Vec<i64>> = HashSet::with_capacity(order as usize);
        seen.insert(two_rho.clone());
        let mut mats = id.matrix.clone();
        let mut signs = vec![1i8];
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for g in &gens {
                    let n = g.compose(w);
                    if seen.insert(n.apply_int(&two_rho)) {
                        mats.extend_from_slice(&n.matrix);
                        signs.push(n.sign);
                        next.push(n);
                    }
                }
            }
            frontier = next;
        }
        assert_eq!(signs.len() as u128, order, "orbit enumeration disagrees with degree formula");
        Ok(WeylGroup { rank: l, mats, signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn matrix(&self, i: usize) -> &[i8] {
        let l2 = self.rank * self.rank;
        &self.mats[i * l2..(i + 1) * l2]
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn element(&self, i: usize) -> WeylElement {
        WeylElement { rank: self.rank, matrix: self.matrix(i).to_vec(), sign: self.sign(i) }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i8], i8)> + '_ {
        (0..self.len()).map(move |i| (self.matrix(i), self.sign(i)))
    }

    pub fn apply(&self, i: usize, v: &[Q]) -> Vec<Q> {
        apply_q(self.matrix(i), self.rank, v)
    }
}

/// Checks that `w` maps Δ into Δ and preserves the form on simple roots.
pub fn is_isometry_of_roots(rs: &RootSystem, w: &WeylElement) -> bool {
    let l = rs.rank();
    for r in rs.all_roots() {
        if !rs.is_root(&w.apply_int(&r)) {
            return false;
        }
    }
    for i in 0..l {
        for j in 0..l {
            let mut ei = vec![Q::zero(); l];
            ei[i] = Q::from_integer(1);
            let mut ej = vec![Q::zero(); l];
            ej[j] = Q::from_integer(1);
            if rs.ip(&w.apply(&ei), &w.apply(&ej)) != rs.gram[i][j] {
                return false;
            }
        }
    }
    true
}
