use super::linalg;
use super::roots::RootSystem;
use crate::{qi, Error, Result, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceKind {
    Minimal,
    Principal,
    /// Weighted Dynkin diagram: `αᵢ(x) = labelᵢ / 2`.
    Labels(Vec<u8>),
}

/// The sl₂-grading data attached to a nilpotent element f: the grading element
/// `x` (so α(x) = (α|x)), graded root sets, a basis of 𝔥^f when it is known,
/// and the root β of condition (5).
#[derive(Clone, Debug)]
pub struct NilpotentSlice {
    pub kind: SliceKind,
    pub x: Vec<Q>,
    /// `grades[i] = α(x)` for `rs.positive[i]`.
    pub grades: Vec<Q>,
    /// Basis of 𝔥^f (root coordinates); `None` when not derivable from the labels.
    pub hf_basis: Option<Vec<Vec<Q>>>,
    pub beta: Vec<i64>,
    pub rank: usize,
}

impl NilpotentSlice {
    pub fn minimal(rs: &RootSystem) -> Self {
        let theta = rs.theta_q();
        let x = linalg::scale(Q::new(1, 2), &theta);
        let l = rs.rank();
        // θ^⊥: eliminate along a coordinate where (αᵢ|θ) ≠ 0.
        let t: Vec<Q> = (0..l)
            .map(|i| {
                let mut e = vec![Q::zero(); l];
                e[i] = Q::one();
                rs.ip(&e, &theta)
            })
            .collect();
        let pivot = t.iter().position(|v| !v.is_zero()).unwrap_or(0);
        let mut basis = Vec::new();
        if l > 1 {
            for i in (0..l).filter(|&i| i != pivot) {
                let mut e = vec![Q::zero(); l];
                e[i] = Q::one();
                e[pivot] = -t[i] / t[pivot];
                basis.push(e);
            }
        }
        Self::build(rs, SliceKind::Minimal, x, Some(basis), Some(rs.theta.clone()))
    }

    pub fn principal(rs: &RootSystem) -> Self {
        Self::build(
            rs,
            SliceKind::Principal,
            rs.rho_vee.clone(),
            Some(Vec::new()),
            Some(rs.theta.clone()),
        )
    }

    /// Slice from a weighted Dynkin diagram. Labels matching the minimal or the
    /// principal grading delegate to those constructors. For even labels with
    /// dim 𝔤₀ = dim 𝔤₁ the element is distinguished and 𝔥^f = 0; otherwise 𝔥^f
    /// is unavailable and downstream code must use z = 0.
    pub fn dynkin(rs: &RootSystem, labels: &[u8]) -> Result<Self> {
        let l = rs.rank();
        if labels.len() != l || labels.iter().any(|&v| v > 2) {
            return Err(Error::Precondition(format!(
                "Dynkin labels must be {l} values in {{0,1,2}}"
            )));
        }
        if labels.iter().all(|&v| v == 0) {
            return Err(Error::Precondition("labels all zero describe f = 0".into()));
        }
        let half: Vec<Q> = labels.iter().map(|&v| Q::new(v as i64, 2)).collect();
        let x = linalg::mat_vec(rs.gram_inverse(), &half);
        let min = Self::minimal(rs);
        let grades = grades_of(rs, &x);
        if grades == min.grades {
            return Ok(min);
        }
        if labels.iter().all(|&v| v == 2) {
            return Ok(Self::principal(rs));
        }
        let even = labels.iter().all(|&v| v % 2 == 0);
        let count = |j: Q| grades.iter().filter(|g| **g == j).count();
        let dim0 = l + 2 * count(Q::zero());
        let dim1 = count(Q::one());
        let hf = if even && dim0 == dim1 { Some(Vec::new()) } else { None };
        let mut best: Option<(i64, Vec<i64>)> = None;
        for (r, g) in rs.positive.iter().zip(&grades) {
            if g.is_integer() && *g > Q::zero() {
                let key = (RootSystem::height(r), r.clone());
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        let beta = best
            .ok_or_else(|| Error::Precondition("no beta with beta(x) a positive integer".into()))?
            .1;
        Ok(Self::build(rs, SliceKind::Labels(labels.to_vec()), x, hf, Some(beta)))
    }

    fn build(
        rs: &RootSystem,
        kind: SliceKind,
        x: Vec<Q>,
        hf_basis: Option<Vec<Vec<Q>>>,
        beta: Option<Vec<i64>>,
    ) -> Self {
        let grades = grades_of(rs, &x);
        NilpotentSlice {
            kind,
            x,
            grades,
            hf_basis,
            beta: beta.unwrap_or_else(|| rs.theta.clone()),
            rank: rs.rank(),
        }
    }

    /// Replaces β after checking condition (5): β ∈ Δ₊, β(x) ∈ ℤ, β|𝔥^f = 0.
    pub fn with_beta(mut self, rs: &RootSystem, beta: &[i64]) -> Result<Self> {
        let idx = rs
            .positive
            .iter()
            .position(|r| r == beta)
            .ok_or_else(|| Error::Precondition("beta must be a positive root".into()))?;
        if !self.grades[idx].is_integer() {
            return Err(Error::Precondition("beta(x) must be an integer".into()));
        }
        let hf = self
            .hf_basis
            .as_ref()
            .ok_or_else(|| Error::Precondition("h^f unavailable: cannot check beta|h^f = 0".into()))?;
        let bq = rs.root_q(beta);
        if hf.iter().any(|h| !rs.ip(&bq, h).is_zero()) {
            return Err(Error::Precondition("beta must vanish on h^f".into()));
        }
        self.beta = beta.to_vec();
        Ok(self)
    }

    pub fn grade_of(&self, rs: &RootSystem, root: &[i64]) -> Q {
        rs.ip(&rs.root_q(root), &self.x)
    }

    pub fn beta_x(&self, rs: &RootSystem) -> Q {
        self.grade_of(rs, &self.beta)
    }

    pub fn theta_x(&self) -> Q {
        *self.grades.last().unwrap()
    }

    /// dim 𝔤_j for any j ∈ ½ℤ.
    pub fn dim_graded(&self, j: Q) -> usize {
        let a = if j < Q::zero() { -j } else { j };
        let c = self.grades.iter().filter(|g| **g == a).count();
        if a.is_zero() {
            self.rank + 2 * c
        } else {
            c
        }
    }

    pub fn graded_dims(&self) -> BTreeMap<Q, usize> {
        let mut m = BTreeMap::new();
        m.insert(Q::zero(), self.dim_graded(Q::zero()));
        for g in &self.grades {
            if !g.is_zero() {
                m.insert(*g, self.dim_graded(*g));
                m.insert(-*g, self.dim_graded(*g));
            }
        }
        m
    }

    pub fn dim_g0(&self) -> usize {
        self.dim_graded(Q::zero())
    }

    pub fn dim_g_half(&self) -> usize {
        self.dim_graded(Q::new(1, 2))
    }

    /// dim 𝔤^f = dim 𝔤₀ + dim 𝔤_{1/2}.
    pub fn dim_gf(&self) -> usize {
        self.dim_g0() + self.dim_g_half()
    }

    /// dim 𝔤_{>0}.
    pub fn dim_g_positive(&self) -> usize {
        self.grades.iter().filter(|g| **g > Q::zero()).count()
    }

    /// Positive roots in 𝔤₀.
    pub fn delta0_positive(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        self.roots_with_grade(rs, Q::zero())
    }

    /// Roots of 𝔤_{1/2} (all positive).
    pub fn delta_half(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        self.roots_with_grade(rs, Q::new(1, 2))
    }

    pub fn roots_with_grade(&self, rs: &RootSystem, j: Q) -> Vec<Vec<i64>> {
        rs.positive
            .iter()
            .zip(&self.grades)
            .filter(|(_, g)| **g == j)
            .map(|(r, _)| r.clone())
            .collect()
    }

    /// ρ(x) style pairing of any vector with x.
    pub fn pair_x(&self, rs: &RootSystem, v: &[Q]) -> Q {
        rs.ip(v, &self.x)
    }

    pub fn has_hf(&self) -> bool {
        self.hf_basis.as_ref().is_some_and(|b| !b.is_empty())
    }

    /// Whether a root vanishes identically on 𝔥^f (true for every root when 𝔥^f = 0).
    pub fn vanishes_on_hf(&self, rs: &RootSystem, root: &[i64]) -> bool {
        match &self.hf_basis {
            Some(b) => {
                let r = rs.root_q(root);
                b.iter().all(|h| rs.ip(&r, h).is_zero())
            }
            None => false,
        }
    }

    pub fn kind_name(&self) -> String {
        match &self.kind {
            SliceKind::Minimal => "minimal".into(),
            SliceKind::Principal => "principal".into(),
            SliceKind::Labels(l) => {
                let s: Vec<String> = l.iter().map(|v| v.to_string()).collect();
                format!("labels({})", s.join(","))
            }
        }
    }

    /// Checks 2α(x) ∈ ℤ for every root.
    pub fn half_integral(&self) -> bool {
        self.grades.iter().all(|g| (g * qi(2)).is_integer())
    }
}

fn grades_of(rs: &RootSystem, x: &[Q]) -> Vec<Q> {
    rs.positive.iter().map(|r| rs.ip(&rs.root_q(r), x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_name(s).unwrap()
    }

    fn check_dims(rs: &RootSystem, s: &NilpotentSlice) {
        let dims = s.graded_dims();
        assert_eq!(dims.values().sum::<usize>(), rs.dim());
        for (j, d) in &dims {
            assert_eq!(dims[&-*j], *d);
        }
        assert!(s.half_integral());
    }

    #[test]
    fn minimal_d4() {
        let r = rs("D4");
        let s = NilpotentSlice::minimal(&r);
        assert_eq!(s.dim_graded(q(1, 1)), 1);
        assert_eq!(s.dim_g_half(), 8);
        assert_eq!(s.delta0_positive(&r).len(), 3);
        assert_eq!(s.hf_basis.as_ref().unwrap().len(), 3);
        for h in s.hf_basis.as_ref().unwrap() {
            assert_eq!(r.ip(h, &r.theta_q()), q(0, 1));
        }
        assert_eq!(s.beta, r.theta);
        assert_eq!(s.beta_x(&r), q(1, 1));
        check_dims(&r, &s);
    }

    #[test]
    fn minimal_a1_has_trivial_hf() {
        let r = rs("A1");
        let s = NilpotentSlice::minimal(&r);
        assert!(s.hf_basis.as_ref().unwrap().is_empty());
        assert!(s.delta0_positive(&r).is_empty());
        assert_eq!(s.theta_x(), q(1, 1));
        assert_eq!(s.dim_gf(), 1);
    }

    #[test]
    fn principal_gradings() {
        let r = rs("A2");
        let s = NilpotentSlice::principal(&r);
        assert_eq!(s.theta_x(), q(2, 1));
        let r = rs("D4");
        let s = NilpotentSlice::principal(&r);
        assert_eq!(s.dim_g0(), 4);
        assert_eq!(s.dim_g_half(), 0);
        assert_eq!(s.theta_x(), qi(r.coxeter - 1));
        check_dims(&r, &s);
        let r = rs("G2");
        check_dims(&r, &NilpotentSlice::principal(&r));
    }

    #[test]
    fn dynkin_delegation() {
        let r = rs("A1");
        assert_eq!(NilpotentSlice::dynkin(&r, &[2]).unwrap().kind, SliceKind::Minimal);
        let r = rs("D4");
        let s = NilpotentSlice::dynkin(&r, &[0, 1, 0, 0]).unwrap();
        assert_eq!(s.kind, SliceKind::Minimal);
        let r = rs("A2");
        let s = NilpotentSlice::dynkin(&r, &[1, 1]).unwrap();
        assert_eq!(s.kind, SliceKind::Minimal);
        let s = NilpotentSlice::dynkin(&r, &[2, 2]).unwrap();
        assert_eq!(s.kind, SliceKind::Principal);
    }

    #[test]
    fn distinguished_subregular_d4() {
        let r = rs("D4");
        let s = NilpotentSlice::dynkin(&r, &[2, 0, 2, 2]).unwrap();
        assert_eq!(s.hf_basis, Some(vec![]));
        assert_eq!(s.dim_g0(), 6);
        assert_eq!(s.dim_graded(q(1, 1)), 6);
        assert_eq!(s.beta_x(&r), q(1, 1));
        check_dims(&r, &s);
        let s = s.with_beta(&r, &[0, 1, 0, 0]).unwrap();
        assert_eq!(s.beta_x(&r), q(0, 1));
    }

    #[test]
    fn beta_override_checks_condition_5() {
        let r = rs("D4");
        let s = NilpotentSlice::minimal(&r);
        assert!(s.clone().with_beta(&r, &[1, 0, 0, 0]).is_err());
        assert!(s.with_beta(&r, &[1, 1, 1, 1]).is_err());
    }
}
