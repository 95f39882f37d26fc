use crate::liealg::RootSystem;
use crate::{Error, Result, Q};
use std::collections::HashMap;

/// Representatives of P / nQ^∨, in Dynkin-label coordinates reduced against a
/// lower-triangular (Hermite) basis of nQ^∨. Ordering is lexicographic in the labels.
#[derive(Clone, Debug)]
pub struct Cosets {
    pub n: i64,
    hnf: Vec<Vec<i64>>,
    labels: Vec<Vec<i64>>,
    reps: Vec<Vec<Q>>,
    index: HashMap<Vec<i64>, usize>,
}

fn hermite_lower(mut m: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let l = m.len();
    let col_op = |m: &mut Vec<Vec<i64>>, dst: usize, src: usize, k: i64| {
        for row in m.iter_mut() {
            row[dst] -= k * row[src];
        }
    };
    for i in 0..l {
        for j in i + 1..l {
            while m[i][j] != 0 {
                let k = m[i][i].div_euclid(m[i][j]);
                col_op(&mut m, i, j, k);
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
            }
        }
        if m[i][i] < 0 {
            for row in m.iter_mut() {
                row[i] = -row[i];
            }
        }
    }
    m
}

impl Cosets {
    pub fn new(rs: &RootSystem, n: i64, cap: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Precondition("level n must be a positive integer".into()));
        }
        let l = rs.rank();
        let cg = rs.coroot_gram();
        // Column i: Dynkin labels of n·α_i^∨.
        let m: Vec<Vec<i64>> = (0..l).map(|r| (0..l).map(|c| n * cg[c][r].to_integer()).collect()).collect();
        let hnf = hermite_lower(m);
        let diag: Vec<i64> = (0..l).map(|i| hnf[i][i]).collect();
        let count: i64 = diag.iter().product();
        if count as usize > cap {
            return Err(Error::LatticeCap { needed: count as usize, cap });
        }
        let mut labels = vec![vec![0i64; l]];
        for (i, &d) in diag.iter().enumerate() {
            labels = labels
                .into_iter()
                .flat_map(|c| {
                    (0..d).map(move |v| {
                        let mut c = c.clone();
                        c[i] = v;
                        c
                    })
                })
                .collect();
        }
        labels.sort();
        let reps = labels
            .iter()
            .map(|c| {
                let mut v = vec![Q::from_integer(0); l];
                for (j, cj) in c.iter().enumerate() {
                    for (vk, wk) in v.iter_mut().zip(&rs.fundamental_weights[j]) {
                        *vk += wk * *cj;
                    }
                }
                v
            })
            .collect();
        let index = labels.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(Cosets { n, hnf, labels, reps, index })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Vec<Q>] {
        &self.reps
    }

    pub fn labels(&self) -> &[Vec<i64>] {
        &self.labels
    }

    /// Canonical labels of c modulo nQ^∨.
    pub fn reduce(&self, mut c: Vec<i64>) -> Vec<i64> {
        for i in 0..c.len() {
            let k = c[i].div_euclid(self.hnf[i][i]);
            if k != 0 {
                for (r, cr) in c.iter_mut().enumerate() {
                    *cr -= k * self.hnf[r][i];
                }
            }
        }
        c
    }

    /// Index of the coset of an integral weight given in root coordinates.
    pub fn index_of(&self, rs: &RootSystem, v: &[Q]) -> usize {
        let c: Vec<i64> = rs.dynkin_labels(v).iter().map(|x| x.to_integer()).collect();
        self.index[&self.reduce(c)]
    }
}
