use crate::qlaurent::{GaussQ, QJetSeries, UJet};
use crate::{Error, Result, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Exact product c·q^{shift}·Π (1 − q^{e})^{m} collected from factors, with
/// negative exponents normalized as (1 − q^e) = −q^e (1 − q^{−e}).
#[derive(Clone, Debug, Default)]
pub struct EtaProduct {
    factors: BTreeMap<Q, i64>,
    shift: Q,
    sign: i64,
    zero: bool,
}

impl EtaProduct {
    pub fn new() -> Self {
        EtaProduct { factors: BTreeMap::new(), shift: Q::zero(), sign: 0, zero: false }
    }

    /// Multiplies by (1 − q^e)^m.
    pub fn factor(&mut self, e: Q, m: i64) -> &mut Self {
        if m == 0 {
            return self;
        }
        if e.is_zero() {
            if m > 0 {
                self.zero = true;
                return self;
            }
            panic!("(1 - q^0)^{m} has a pole");
        }
        if e < Q::zero() {
            self.shift += e * m;
            self.sign += m;
            *self.factors.entry(-e).or_insert(0) += m;
        } else {
            *self.factors.entry(e).or_insert(0) += m;
        }
        self
    }

    /// Multiplies by q^e.
    pub fn q_power(&mut self, e: Q) -> &mut Self {
        self.shift += e;
        self
    }

    /// Multiplies by η(rτ)^m = q^{rm/24} Π_n (1 − q^{rn})^m, with factors up to `rel`.
    pub fn eta(&mut self, r: Q, m: i64, rel: Q) -> &mut Self {
        self.shift += r * m / 24;
        let mut n = 1;
        while r * n <= rel {
            self.factor(r * n, m);
            n += 1;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn lead(&self) -> Q {
        self.shift
    }

    /// The product exact through q^{lead + rel} (jet order 0).
    pub fn series(&self, rel: Q) -> Result<QJetSeries> {
        if self.zero {
            return Ok(QJetSeries::zero(0, Some(self.shift + rel)));
        }
        let mut s = QJetSeries::one(0).with_prec(Some(rel));
        for (&e, &m) in &self.factors {
            if e > rel {
                continue;
            }
            let mut f = if m > 0 {
                let mut b = QJetSeries::one(0);
                b.push(e, UJet::constant(-GaussQ::one(), 0));
                b.with_prec(Some(rel))
            } else {
                let mut g = QJetSeries::zero(0, Some(rel));
                let mut k = 0;
                while e * k <= rel {
                    g.push(e * k, UJet::one(0));
                    k += 1;
                }
                g
            };
            f = f.pow(m.abs())?;
            s = s.mul(&f);
        }
        let sign = if self.sign.rem_euclid(2) == 1 { -GaussQ::one() } else { GaussQ::one() };
        Ok(s.scale(&sign).mul_q_power(self.shift))
    }
}

pub(crate) fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg.into()))
    }
}
