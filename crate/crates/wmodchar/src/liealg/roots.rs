use super::cartan::CartanType;
use super::linalg;
use crate::{qi, Error, Result, Q};
use num_traits::{One, Zero};
use std::collections::HashSet;

/// A simple Lie algebra's root data with `(θ|θ) = 2`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    /// `cartan[i][j] = ⟨αᵢ^∨, αⱼ⟩ = 2(αᵢ|αⱼ)/(αᵢ|αᵢ)`.
    pub cartan: Vec<Vec<i64>>,
    /// `gram[i][j] = (αᵢ|αⱼ)`.
    pub gram: Vec<Vec<Q>>,
    gram_inv: Vec<Vec<Q>>,
    /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
    pub positive: Vec<Vec<i64>>,
    pub theta: Vec<i64>,
    pub rho: Vec<Q>,
    pub rho_vee: Vec<Q>,
    pub coxeter: i64,
    pub dual_coxeter: i64,
    pub lacety: i64,
    /// Fundamental weights ωᵢ with `(ωᵢ|αⱼ^∨) = δᵢⱼ`, root coordinates.
    pub fundamental_weights: Vec<Vec<Q>>,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        let l = cartan_type.rank;
        let (d, edges) = cartan_type.diagram();
        let mut g0 = vec![vec![Q::zero(); l]; l];
        for i in 0..l {
            g0[i][i] = qi(d[i]);
        }
        for &(a, b) in &edges {
            let v = -Q::new(d[a].max(d[b]), 2);
            g0[a][b] = v;
            g0[b][a] = v;
        }
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let v = qi(2) * g0[i][j] / g0[i][i];
                        assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let positive = generate_positive_roots(&cartan);
        let theta = positive.last().unwrap().clone();
        let theta_q = linalg::to_q(&theta);
        let theta_sq0 = quad(&g0, &theta_q, &theta_q);
        let c = qi(2) / theta_sq0;
        let gram: Vec<Vec<Q>> = g0.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        let gram_inv = linalg::inverse(&gram).expect("Cartan matrix is nondegenerate");
        let mut rho = vec![Q::zero(); l];
        for r in &positive {
            for (x, &c) in rho.iter_mut().zip(r) {
                *x += Q::new(c, 2);
            }
        }
        let rho_vee = linalg::mat_vec(&gram_inv, &vec![Q::one(); l]);
        let coxeter = positive.last().unwrap().iter().sum::<i64>() + 1;
        let hv = quad(&gram, &rho, &theta_q) + Q::one();
        assert!(hv.is_integer());
        let min_len = (0..l).map(|i| gram[i][i]).min().unwrap();
        let lacety = (qi(2) / min_len).to_integer();
        let fundamental_weights = (0..l)
            .map(|i| {
                let mut e = vec![Q::zero(); l];
                e[i] = gram[i][i] / 2;
                linalg::mat_vec(&gram_inv, &e)
            })
            .collect();
        Ok(RootSystem {
            cartan_type,
            cartan,
            gram,
            gram_inv,
            positive,
            theta,
            rho,
            rho_vee,
            coxeter,
            dual_coxeter: hv.to_integer(),
            lacety,
            fundamental_weights,
        })
    }

    pub fn from_name(name: &str) -> Result<Self> {
        RootSystem::new(name.parse()?)
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn dim(&self) -> usize {
        self.rank() + 2 * self.positive.len()
    }

    pub fn gram_inverse(&self) -> &[Vec<Q>] {
        &self.gram_inv
    }

    pub fn ip(&self, a: &[Q], b: &[Q]) -> Q {
        quad(&self.gram, a, b)
    }

    pub fn norm2(&self, a: &[Q]) -> Q {
        self.ip(a, a)
    }

    pub fn theta_q(&self) -> Vec<Q> {
        linalg::to_q(&self.theta)
    }

    pub fn root_q(&self, r: &[i64]) -> Vec<Q> {
        linalg::to_q(r)
    }

    /// All roots, positive ones first then their negatives.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut v = self.positive.clone();
        v.extend(self.positive.iter().map(|r| r.iter().map(|c| -c).collect()));
        v
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        let abs: Vec<i64> = if r.iter().all(|&c| c >= 0) {
            r.to_vec()
        } else if r.iter().all(|&c| c <= 0) {
            r.iter().map(|c| -c).collect()
        } else {
            return false;
        };
        self.positive.contains(&abs)
    }

    pub fn height(r: &[i64]) -> i64 {
        r.iter().sum()
    }

    pub fn coroot(&self, r: &[i64]) -> Vec<Q> {
        let rq = linalg::to_q(r);
        let n = self.norm2(&rq);
        linalg::scale(qi(2) / n, &rq)
    }

    /// Simple coroot αᵢ^∨ in root coordinates.
    pub fn simple_coroot(&self, i: usize) -> Vec<Q> {
        let mut e = vec![Q::zero(); self.rank()];
        e[i] = qi(2) / self.gram[i][i];
        e
    }

    /// Converts coroot-lattice coordinates (γ = Σ yᵢ αᵢ^∨) to root coordinates.
    pub fn coroot_coords_to_root(&self, y: &[i64]) -> Vec<Q> {
        y.iter()
            .enumerate()
            .map(|(i, &c)| qi(2 * c) / self.gram[i][i])
            .collect()
    }

    /// Converts root coordinates to (rational) coroot coordinates.
    pub fn root_to_coroot_coords(&self, v: &[Q]) -> Vec<Q> {
        v.iter()
            .enumerate()
            .map(|(i, c)| c * self.gram[i][i] / 2)
            .collect()
    }

    /// Gram matrix of the simple coroots.
    pub fn coroot_gram(&self) -> Vec<Vec<Q>> {
        let l = self.rank();
        (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| qi(4) * self.gram[i][j] / (self.gram[i][i] * self.gram[j][j]))
                    .collect()
            })
            .collect()
    }

    /// Pairings `(v|αᵢ^∨)` with the simple coroots.
    pub fn dynkin_labels(&self, v: &[Q]) -> Vec<Q> {
        (0..self.rank())
            .map(|i| self.ip(v, &self.simple_coroot(i)))
            .collect()
    }

    pub fn is_in_coroot_lattice(&self, v: &[Q]) -> bool {
        self.root_to_coroot_coords(v).iter().all(|c| c.is_integer())
    }

    pub fn is_integral_weight(&self, v: &[Q]) -> bool {
        self.dynkin_labels(v).iter().all(|c| c.is_integer())
    }

    /// Exponents of the Weyl group, read off the height distribution of Δ₊.
    pub fn exponents(&self) -> Vec<i64> {
        let hmax = self.coxeter - 1;
        let mut count = vec![0i64; (hmax + 2) as usize];
        for r in &self.positive {
            count[Self::height(r) as usize] += 1;
        }
        let mut ex = Vec::new();
        for k in 1..=hmax as usize {
            for _ in 0..(count[k] - count[k + 1]) {
                ex.push(k as i64);
            }
        }
        ex
    }

    /// |W| = Π (mᵢ + 1).
    pub fn weyl_order(&self) -> u128 {
        self.exponents().iter().map(|&m| (m + 1) as u128).product()
    }

    /// Length of the longest leg of the affine diagram for D and E types.
    pub fn deligne_b(&self) -> Result<i64> {
        match self.cartan_type.letter {
            'D' => Ok(2),
            'E' => Ok(self.dual_coxeter / 6 + 1),
            _ => Err(Error::Precondition(format!(
                "b is defined only for D_n (n>=4) and E_6,7,8, not {}",
                self.cartan_type
            ))),
        }
    }

    /// The root α^{(j)} = θ − α_{i₁} − … − α_{i_{j−1}}, found by exhaustive
    /// search over sequences of simple roots and checked to be unique.
    pub fn alpha_j(&self, j: i64) -> Result<Vec<i64>> {
        let b = self.deligne_b()?;
        if j < 1 || j > b {
            return Err(Error::Precondition(format!(
                "alpha^(j) needs 1 <= j <= b = {b}, got j = {j}"
            )));
        }
        let l = self.rank();
        let mut found: HashSet<Vec<i64>> = HashSet::new();
        let steps = (j - 1) as u32;
        let total = (l as u64).pow(steps);
        for code in 0..total {
            let mut r = self.theta.clone();
            let mut c = code;
            for _ in 0..steps {
                r[(c % l as u64) as usize] -= 1;
                c /= l as u64;
            }
            if self.is_root(&r) {
                found.insert(r);
            }
        }
        if found.len() != 1 {
            return Err(Error::Precondition(format!(
                "alpha^({j}) is not unique: {} candidates",
                found.len()
            )));
        }
        Ok(found.into_iter().next().unwrap())
    }
}

pub(crate) fn quad(g: &[Vec<Q>], a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() && !g[i][j].is_zero() {
                s += ai * g[i][j] * bj;
            }
        }
    }
    s
}

/// Positive roots by the root-string algorithm from the Cartan matrix.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let simple: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut set: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier = simple;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for i in 0..l {
                let mut p = 0;
                let mut v = b.clone();
                loop {
                    v[i] -= 1;
                    if set.contains(&v) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..l).map(|j| b[j] * cartan[i][j]).sum();
                if p - pairing > 0 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if set.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut pos: Vec<Vec<i64>> = set.into_iter().collect();
    pos.sort_by(|a, b| (RootSystem::height(a), a).cmp(&(RootSystem::height(b), b)));
    pos
}
