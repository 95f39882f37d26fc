//! Enumeration of coroot-lattice points in ellipsoids (Fincke–Pohst).

use super::roots::RootSystem;
use crate::{Error, Result, Q};
use num_traits::ToPrimitive;

pub const DEFAULT_POINT_CAP: usize = 5_000_000;

/// Fincke–Pohst coefficients of a positive definite form.
#[derive(Clone, Debug)]
pub struct Ellipsoid {
    q: Vec<Vec<f64>>,
    l: usize,
}

impl Ellipsoid {
    pub fn new(a: &[Vec<f64>]) -> Self {
        let l = a.len();
        let mut q: Vec<Vec<f64>> = a.to_vec();
        for i in 0..l {
            for j in i + 1..l {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..l {
                for j in k..l {
                    q[k][j] -= q[k][i] * q[i][j];
                }
            }
        }
        Ellipsoid { q, l }
    }

    /// Integer points y with (y−c)ᵀA(y−c) ≤ r (a small relative slack is added;
    /// callers needing exactness filter afterwards).
    pub fn points(&self, c: &[f64], r: f64, cap: usize) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        if r < 0.0 {
            return Ok(out);
        }
        let r = r * (1.0 + 1e-9) + 1e-9;
        let mut y = vec![0i64; self.l];
        self.rec(self.l, c, r, 0.0, &mut y, &mut out, cap)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        i: usize,
        c: &[f64],
        r: f64,
        acc: f64,
        y: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
        cap: usize,
    ) -> Result<()> {
        if i == 0 {
            if out.len() >= cap {
                return Err(Error::LatticeCap { needed: out.len() + 1, cap });
            }
            out.push(y.clone());
            return Ok(());
        }
        let i = i - 1;
        let mut center = c[i];
        for j in i + 1..self.l {
            center -= self.q[i][j] * (y[j] as f64 - c[j]);
        }
        let rem = (r - acc) / self.q[i][i];
        if rem < 0.0 {
            return Ok(());
        }
        let s = rem.sqrt();
        let lo = (center - s).ceil() as i64;
        let hi = (center + s).floor() as i64;
        for v in lo..=hi {
            y[i] = v;
            let d = v as f64 - center;
            self.rec(i, c, r, acc + self.q[i][i] * d * d, y, out, cap)?;
        }
        y[i] = 0;
        Ok(())
    }
}

/// Coroot-lattice enumeration bound to a root system.
#[derive(Clone, Debug)]
pub struct CorootLattice {
    ell: Ellipsoid,
    /// (αᵢ|αᵢ)/2, converting root coordinates to coroot coordinates.
    half_len: Vec<Q>,
}

impl CorootLattice {
    pub fn new(rs: &RootSystem) -> Self {
        let g = rs.coroot_gram();
        let gf: Vec<Vec<f64>> = g
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect())
            .collect();
        CorootLattice {
            ell: Ellipsoid::new(&gf),
            half_len: (0..rs.rank()).map(|i| rs.gram[i][i] / 2).collect(),
        }
    }

    /// Points γ (coroot coordinates) with |γ − center|² ≤ radius2 up to float
    /// slack; `center` in root coordinates.
    pub fn ball_f64(&self, center_root: &[f64], radius2: f64, cap: usize) -> Result<Vec<Vec<i64>>> {
        let c: Vec<f64> = center_root
            .iter()
            .zip(&self.half_len)
            .map(|(x, h)| x * h.to_f64().unwrap())
            .collect();
        self.ell.points(&c, radius2, cap)
    }

    /// Exact version: returns γ with |γ − center|² ≤ radius2 exactly.
    pub fn ball(&self, rs: &RootSystem, center: &[Q], radius2: Q, cap: usize) -> Result<Vec<Vec<i64>>> {
        let cf: Vec<f64> = center.iter().map(|x| x.to_f64().unwrap()).collect();
        let cand = self.ball_f64(&cf, radius2.to_f64().unwrap(), cap)?;
        Ok(cand
            .into_iter()
            .filter(|y| {
                let g = rs.coroot_coords_to_root(y);
                let d: Vec<Q> = g.iter().zip(center).map(|(a, b)| a - b).collect();
                rs.norm2(&d) <= radius2
            })
            .collect())
    }

    /// Smallest |γ − center|² over γ ∈ Q^∨.
    pub fn min_dist2(&self, rs: &RootSystem, center: &[Q]) -> Q {
        let mut r = Q::from_integer(1);
        loop {
            let pts = self.ball(rs, center, r, DEFAULT_POINT_CAP).unwrap_or_default();
            if let Some(m) = pts
                .iter()
                .map(|y| {
                    let g = rs.coroot_coords_to_root(y);
                    let d: Vec<Q> = g.iter().zip(center).map(|(a, b)| a - b).collect();
                    rs.norm2(&d)
                })
                .min()
            {
                return m;
            }
            r *= 2;
        }
    }
}
