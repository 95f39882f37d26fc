//! Batched evaluation of Σ_v weight(v) Σ_{γ∈Q^∨} e^{2πi(μ|v z)} q^{…} with
//! μ = λ̄ + nγ along z = s·z₀ + c₁x + c₂τx, the common shape of Θ_λ, the
//! f-functions and the B-numerators.

use crate::liealg::lattice::{CorootLattice, DEFAULT_POINT_CAP};
use crate::liealg::RootSystem;
use crate::qlaurent::{BigQ, GaussQ, QJetSeries, UJet};
use crate::{qi, Error, Result, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// The substitution z ↦ z + c₁x + c₂τx together with a q^{pre·n|x|²/2} prefactor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shift {
    pub c1: Q,
    pub c2: Q,
    pub pre: Q,
}

impl Shift {
    pub const PLAIN: Shift = Shift { c1: Q::new_raw(0, 1), c2: Q::new_raw(0, 1), pre: Q::new_raw(0, 1) };
}

#[derive(Clone, Debug)]
pub struct SumSpec<'a> {
    pub rs: &'a RootSystem,
    pub lambda_bar: &'a [Q],
    pub n: i64,
    pub x: &'a [Q],
    pub z0: &'a [Q],
    pub shift: Shift,
    /// Terms with q-exponent above this are dropped.
    pub emax: Q,
    pub jet: usize,
    pub cap: usize,
}

impl<'a> SumSpec<'a> {
    pub fn new(rs: &'a RootSystem, lambda_bar: &'a [Q], n: i64, x: &'a [Q], z0: &'a [Q], emax: Q, jet: usize) -> Self {
        SumSpec { rs, lambda_bar, n, x, z0, shift: Shift::PLAIN, emax, jet, cap: DEFAULT_POINT_CAP }
    }

    pub fn with_shift(mut self, shift: Shift) -> Self {
        self.shift = shift;
        self
    }
}

/// Output of a lattice sum: the series and the number of lattice points used.
#[derive(Clone, Debug)]
pub struct LatticeSum {
    pub series: QJetSeries,
    pub points: usize,
}

struct Ball {
    pts: Vec<(Vec<i64>, Q)>,
}

/// Σ_v weight(v) Σ_γ e^{u(μ|v z₀)} e^{2πi c₁(μ|v x)} q^{E}, where
/// E = |μ|²/2n + (c₂ − 1)(μ|v x) + (1 + pre)·n|x|²/2. Each `v` is an
/// integer matrix (column c = v(α_c)) and its weight is an integer.
pub fn weyl_theta_sum<'b>(spec: &SumSpec, terms: impl IntoIterator<Item = (&'b [i8], i64)>) -> Result<LatticeSum> {
    let rs = spec.rs;
    let l = rs.rank();
    if spec.n <= 0 {
        return Err(Error::Precondition(format!("level n = {} must be a positive integer", spec.n)));
    }
    let n = qi(spec.n);
    let lat = CorootLattice::new(rs);
    let a = Q::one() - spec.shift.c2;
    let x2 = rs.norm2(spec.x);
    let k_const = n * x2 / 2 * (Q::one() - a * a + spec.shift.pre);
    let radius2 = (spec.emax - k_const) * 2 / n;
    let lam_over_n: Vec<Q> = spec.lambda_bar.iter().map(|c| c / n).collect();
    let coroots: Vec<Vec<Q>> = (0..l).map(|i| rs.simple_coroot(i)).collect();

    let mut balls: HashMap<Vec<Q>, Ball> = HashMap::new();
    let mut acc: HashMap<(Q, Q), (i64, i64)> = HashMap::new();
    let mut points = 0usize;
    for (m, weight) in terms {
        if weight == 0 {
            continue;
        }
        let vx = crate::liealg::weyl_apply_q(m, l, spec.x);
        let vz = crate::liealg::weyl_apply_q(m, l, spec.z0);
        let center: Vec<Q> = vx.iter().zip(&lam_over_n).map(|(v, c)| a * v - c).collect();
        if !balls.contains_key(&center) {
            let pts = if radius2 < Q::zero() {
                Vec::new()
            } else {
                lat.ball(rs, &center, radius2, spec.cap)?
            };
            let pts = pts
                .into_iter()
                .map(|y| {
                    let g = rs.coroot_coords_to_root(&y);
                    let d: Vec<Q> = g.iter().zip(&center).map(|(p, c)| p - c).collect();
                    let e = n * rs.norm2(&d) / 2 + k_const;
                    (y, e)
                })
                .collect();
            balls.insert(center.clone(), Ball { pts });
        }
        let ball = &balls[&center];
        points += ball.pts.len();
        let lz = rs.ip(spec.lambda_bar, &vz);
        let lx = rs.ip(spec.lambda_bar, &vx);
        let cz: Vec<Q> = coroots.iter().map(|c| n * rs.ip(c, &vz)).collect();
        let cx: Vec<Q> = coroots.iter().map(|c| n * rs.ip(c, &vx)).collect();
        for (y, e) in &ball.pts {
            let mut c = lz;
            let mut px = lx;
            for i in 0..l {
                if y[i] != 0 {
                    c += cz[i] * y[i];
                    px += cx[i] * y[i];
                }
            }
            let ph4 = px * spec.shift.c1 * 4;
            if !ph4.is_integer() {
                return Err(Error::PhaseOutsideGaussian(format!("{}", px * spec.shift.c1)));
            }
            let (re, im) = match ph4.to_integer().rem_euclid(4) {
                0 => (weight, 0),
                1 => (0, weight),
                2 => (-weight, 0),
                _ => (0, -weight),
            };
            let ent = acc.entry((*e, c)).or_insert((0, 0));
            ent.0 += re;
            ent.1 += im;
        }
    }
    let mut by_e: BTreeMap<Q, Vec<(Q, i64, i64)>> = BTreeMap::new();
    for ((e, c), (re, im)) in acc {
        if re != 0 || im != 0 {
            by_e.entry(e).or_default().push((c, re, im));
        }
    }
    let mut series = QJetSeries::zero(spec.jet, Some(spec.emax));
    for (e, list) in by_e {
        series.push(e, power_sum_jet(&list, spec.jet));
    }
    Ok(LatticeSum { series, points })
}

/// Lower bound for the q-exponents of [`weyl_theta_sum`] (the emax field is ignored).
pub fn weyl_theta_sum_lower_bound(spec: &SumSpec, terms: &[(&[i8], i64)]) -> Q {
    let rs = spec.rs;
    let l = rs.rank();
    let n = qi(spec.n);
    let lat = CorootLattice::new(rs);
    let a = Q::one() - spec.shift.c2;
    let x2 = rs.norm2(spec.x);
    let k_const = n * x2 / 2 * (Q::one() - a * a + spec.shift.pre);
    let mut seen: HashMap<Vec<Q>, Q> = HashMap::new();
    let mut best: Option<Q> = None;
    for (m, weight) in terms {
        if *weight == 0 {
            continue;
        }
        let vx = crate::liealg::weyl_apply_q(m, l, spec.x);
        let center: Vec<Q> = vx.iter().zip(spec.lambda_bar).map(|(v, c)| a * v - c / n).collect();
        let d = *seen.entry(center.clone()).or_insert_with(|| lat.min_dist2(rs, &center));
        let e = n * d / 2 + k_const;
        best = Some(best.map_or(e, |b: Q| b.min(e)));
    }
    best.unwrap_or(k_const)
}

/// [`weyl_theta_sum`] exact through (valuation + `rel`): starts from the lattice
/// lower bound and raises the cutoff when leading terms cancel.
pub fn weyl_theta_sum_relative(spec: &SumSpec, terms: &[(&[i8], i64)], rel: Q) -> Result<LatticeSum> {
    let lb = weyl_theta_sum_lower_bound(spec, terms);
    let mut emax = lb + rel;
    for _ in 0..16 {
        let mut sp = spec.clone();
        sp.emax = emax;
        let out = weyl_theta_sum(&sp, terms.iter().copied())?;
        match out.series.valuation() {
            Some(v) if v + rel > emax => emax = v + rel,
            _ => return Ok(out),
        }
    }
    Err(Error::Numerical("leading-term search did not stabilize".into()))
}

/// Σ_c (re + i·im)·exp(c·u) as a jet, using a common denominator for the c's.
fn power_sum_jet(list: &[(Q, i64, i64)], jet: usize) -> UJet {
    let d = list.iter().fold(1i64, |acc, (c, _, _)| num_integer::lcm(acc, *c.denom()));
    let mut sums_re = vec![BigInt::zero(); jet + 1];
    let mut sums_im = vec![BigInt::zero(); jet + 1];
    for (c, re, im) in list {
        let a = BigInt::from(*c.numer() * (d / *c.denom()));
        let mut pw = BigInt::one();
        for k in 0..=jet {
            if *re != 0 {
                sums_re[k] += &pw * *re;
            }
            if *im != 0 {
                sums_im[k] += &pw * *im;
            }
            pw *= &a;
        }
    }
    let mut denom = BigInt::one();
    let dd = BigInt::from(d);
    let mut out = Vec::with_capacity(jet + 1);
    for k in 0..=jet {
        if k > 0 {
            denom *= &dd * BigInt::from(k as u64);
        }
        out.push(GaussQ::new(
            BigQ::new(sums_re[k].clone(), denom.clone()),
            BigQ::new(sums_im[k].clone(), denom.clone()),
        ));
    }
    UJet { c: out }
}
