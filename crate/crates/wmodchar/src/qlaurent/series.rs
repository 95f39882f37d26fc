use super::gauss::{rational_sqrt, BigQ, GaussQ};
use super::jet::UJet;
use crate::{Error, Result, Q};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

/// A truncated bigraded series Σ_e q^e · jet_e(u).
///
/// `prec` is the absolute q-precision: every coefficient with exponent ≤ prec
/// is exact; `None` means the series is exact (a finite sum). `jet` is the
/// u-order: coefficients of u^0 … u^jet are exact.
#[derive(Clone, Debug)]
pub struct QJetSeries {
    terms: BTreeMap<Q, UJet>,
    prec: Option<Q>,
    jet: usize,
    tail_dropped: bool,
}

/// Result of inverting a series s = q^v u^m t with t a unit: `inv` equals
/// q^{-v} t^{-1}, so that s · inv = u^m up to precision.
#[derive(Clone, Debug)]
pub struct Factored {
    pub inv: QJetSeries,
    pub q_shift: Q,
    pub u_shift: usize,
}

fn pmin(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

fn padd(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

impl QJetSeries {
    pub fn zero(jet: usize, prec: Option<Q>) -> Self {
        QJetSeries { terms: BTreeMap::new(), prec, jet, tail_dropped: false }
    }

    pub fn constant(g: GaussQ, jet: usize) -> Self {
        Self::monomial(Q::zero(), UJet::constant(g, jet))
    }

    pub fn one(jet: usize) -> Self {
        Self::constant(GaussQ::one(), jet)
    }

    pub fn monomial(e: Q, coeff: UJet) -> Self {
        let jet = coeff.order();
        let mut s = QJetSeries::zero(jet, None);
        s.push(e, coeff);
        s
    }

    /// exp(c·u) as a series (q-exponent 0).
    pub fn exp_linear(c: Q, jet: usize) -> Self {
        Self::monomial(Q::zero(), UJet::exp_linear(&super::gauss::big(c), jet))
    }

    pub fn jet(&self) -> usize {
        self.jet
    }

    pub fn prec(&self) -> Option<Q> {
        self.prec
    }

    pub fn tail_dropped(&self) -> bool {
        self.tail_dropped
    }

    pub fn terms(&self) -> &BTreeMap<Q, UJet> {
        &self.terms
    }

    pub fn coefficient(&self, e: Q) -> Option<&UJet> {
        self.terms.get(&e)
    }

    /// Adds a term, dropping it (and flagging the drop) if beyond precision.
    pub fn push(&mut self, e: Q, coeff: UJet) {
        if let Some(p) = self.prec {
            if e > p {
                self.tail_dropped = true;
                return;
            }
        }
        let coeff = if coeff.order() > self.jet { coeff.truncate(self.jet) } else { coeff };
        match self.terms.get_mut(&e) {
            Some(j) => {
                j.add_assign(&coeff);
                if j.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                if !coeff.is_zero() {
                    let coeff = if coeff.order() < self.jet {
                        let mut c = coeff.c.clone();
                        c.resize(self.jet + 1, GaussQ::zero());
                        UJet { c }
                    } else {
                        coeff
                    };
                    self.terms.insert(e, coeff);
                }
            }
        }
    }

    pub fn from_terms(jet: usize, prec: Option<Q>, it: impl IntoIterator<Item = (Q, UJet)>) -> Self {
        let mut s = QJetSeries::zero(jet, prec);
        for (e, j) in it {
            s.push(e, j);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Q> {
        self.terms.keys().next().copied()
    }

    /// Lower bound on the true valuation: the valuation, or the precision when
    /// no term is known (None = +∞).
    fn effective_val(&self) -> Option<Q> {
        self.valuation().or(self.prec)
    }

    /// Minimal u-valuation over all stored terms.
    pub fn u_valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(|j| j.valuation()).min()
    }

    pub fn with_prec(mut self, prec: Option<Q>) -> Self {
        self.prec = pmin(self.prec, prec);
        if let Some(p) = self.prec {
            let before = self.terms.len();
            self.terms.retain(|e, _| *e <= p);
            if self.terms.len() != before {
                self.tail_dropped = true;
            }
        }
        self
    }

    pub fn truncate(self, prec: Q) -> Self {
        self.with_prec(Some(prec))
    }

    pub fn truncate_jet(&self, jet: usize) -> Self {
        let jet = jet.min(self.jet);
        let mut s = QJetSeries::zero(jet, self.prec);
        s.tail_dropped = self.tail_dropped;
        for (e, j) in &self.terms {
            s.push(*e, j.truncate(jet));
        }
        s
    }

    pub fn add(&self, o: &QJetSeries) -> Self {
        let jet = self.jet.min(o.jet);
        let mut s = QJetSeries::zero(jet, pmin(self.prec, o.prec));
        for (e, j) in self.terms.iter().chain(o.terms.iter()) {
            s.push(*e, j.truncate(jet));
        }
        s.tail_dropped |= self.tail_dropped || o.tail_dropped;
        s
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for j in s.terms.values_mut() {
            *j = j.neg();
        }
        s
    }

    pub fn sub(&self, o: &QJetSeries) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, g: &GaussQ) -> Self {
        let mut s = QJetSeries::zero(self.jet, self.prec);
        s.tail_dropped = self.tail_dropped;
        for (e, j) in &self.terms {
            s.push(*e, j.scale(g));
        }
        s
    }

    pub fn mul(&self, o: &QJetSeries) -> Self {
        let jet = self.jet.min(o.jet);
        let prec = pmin(padd(self.prec, o.effective_val()), padd(o.prec, self.effective_val()));
        let mut acc: BTreeMap<Q, UJet> = BTreeMap::new();
        for (ea, ja) in &self.terms {
            let ja = ja.truncate(jet);
            for (eb, jb) in &o.terms {
                let e = ea + eb;
                if let Some(p) = prec {
                    if e > p {
                        break;
                    }
                }
                let prod = ja.mul(&jb.truncate(jet));
                match acc.get_mut(&e) {
                    Some(x) => x.add_assign(&prod),
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        let mut s = QJetSeries::zero(jet, prec);
        s.tail_dropped = self.tail_dropped || o.tail_dropped;
        for (e, j) in acc {
            if !j.is_zero() {
                s.terms.insert(e, j);
            }
        }
        s
    }

    /// Multiplies by q^e.
    pub fn mul_q_power(&self, e: Q) -> Self {
        QJetSeries {
            terms: self.terms.iter().map(|(k, v)| (k + e, v.clone())).collect(),
            prec: self.prec.map(|p| p + e),
            jet: self.jet,
            tail_dropped: self.tail_dropped,
        }
    }

    /// Substitution τ → kτ (every exponent multiplied by k > 0).
    pub fn rescale_q(&self, k: i64) -> Self {
        assert!(k > 0, "rescale factor must be positive");
        let kq = Q::from_integer(k);
        QJetSeries {
            terms: self.terms.iter().map(|(e, v)| (e * kq, v.clone())).collect(),
            prec: self.prec.map(|p| p * kq),
            jet: self.jet,
            tail_dropped: self.tail_dropped,
        }
    }

    /// Divides every coefficient by u^m.
    pub fn shift_u_down(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Ok(self.clone());
        }
        if m > self.jet {
            return Err(Error::ZeroToJetOrder(self.jet));
        }
        let mut s = QJetSeries::zero(self.jet - m, self.prec);
        s.tail_dropped = self.tail_dropped;
        for (e, j) in &self.terms {
            let d = j.shift_down(m).ok_or(Error::UPole {
                num: j.valuation().unwrap_or(self.jet + 1),
                den: m,
            })?;
            s.push(*e, d);
        }
        Ok(s)
    }

    /// Inverts s = q^v u^m t where the leading q-coefficient of t is a unit jet.
    pub fn invert_factored(&self) -> Result<Factored> {
        let v = self.valuation().ok_or(Error::ZeroToJetOrder(self.jet))?;
        let lead = &self.terms[&v];
        let m = lead.valuation().ok_or(Error::ZeroToJetOrder(self.jet))?;
        if self.u_valuation().unwrap_or(m) < m {
            return Err(Error::Incompatible(
                "a higher q-term has lower u-order than the leading term; not invertible as a power series in u".into(),
            ));
        }
        let t = self.mul_q_power(-v).shift_u_down(m)?;
        if t.terms.len() > 1 && t.prec.is_none() {
            return Err(Error::Incompatible("inverting an exact multi-term series needs a precision".into()));
        }
        let jet = t.jet;
        let t0inv = t.terms[&Q::zero()].inverse().expect("unit leading jet");
        let prec_rel = t.prec;
        let mut inv = QJetSeries::zero(jet, prec_rel);
        inv.terms.insert(Q::zero(), t0inv.clone());
        if let Some(p) = prec_rel {
            let den = t
                .terms
                .keys()
                .fold(1i64, |a, e| num_integer::lcm(a, *e.denom()));
            let kmax = (p * den).floor().to_integer();
            let rest: Vec<(&Q, &UJet)> = t.terms.iter().filter(|(e, _)| **e > Q::zero()).collect();
            for k in 1..=kmax {
                let e = Q::new(k, den);
                let mut acc: Option<UJet> = None;
                for (e1, j1) in &rest {
                    if **e1 > e {
                        break;
                    }
                    if let Some(j2) = inv.terms.get(&(e - **e1)) {
                        let p = j1.mul(j2);
                        match acc.as_mut() {
                            Some(a) => a.add_assign(&p),
                            None => acc = Some(p),
                        }
                    }
                }
                if let Some(a) = acc {
                    let c = a.mul(&t0inv).neg();
                    if !c.is_zero() {
                        inv.terms.insert(e, c);
                    }
                }
            }
        }
        inv.tail_dropped = self.tail_dropped;
        Ok(Factored { inv: inv.mul_q_power(-v), q_shift: v, u_shift: m })
    }

    /// Inverse of a series whose leading coefficient is a unit (u-order 0).
    pub fn invert(&self) -> Result<Self> {
        let f = self.invert_factored()?;
        if f.u_shift != 0 {
            return Err(Error::UPole { num: 0, den: f.u_shift });
        }
        Ok(f.inv)
    }

    /// num / den, cancelling the common u^m; returns the quotient and m.
    pub fn divide(num: &QJetSeries, den: &QJetSeries) -> Result<(QJetSeries, usize)> {
        let f = den.invert_factored()?;
        let m = f.u_shift;
        if let Some(nv) = num.u_valuation() {
            if nv < m {
                return Err(Error::UPole { num: nv, den: m });
            }
        }
        let n = num.shift_u_down(m)?;
        Ok((n.mul(&f.inv), m))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.invert()?.pow(-k);
        }
        let mut result = QJetSeries::one(self.jet);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Square root of a series with constant term exactly 1.
    pub fn sqrt_unit(&self) -> Result<Self> {
        let c = self.coefficient(Q::zero()).map(|j| j.c[0].clone());
        if self.valuation() != Some(Q::zero()) || c != Some(GaussQ::one()) {
            return Err(Error::Precondition("sqrt_unit needs constant term exactly 1".into()));
        }
        self.sqrt()
    }

    /// Square root of q^v·c·(1 + …) with c a positive rational square; the
    /// branch with leading coefficient +√c.
    pub fn sqrt(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::ZeroToJetOrder(self.jet))?;
        let lead = &self.terms[&v];
        let c0 = lead.c[0].clone();
        if !c0.is_real() {
            return Err(Error::Precondition("sqrt needs a real leading coefficient".into()));
        }
        let r = rational_sqrt(&c0.re)
            .ok_or_else(|| Error::Precondition(format!("leading coefficient {c0} is not a rational square")))?;
        let t = self.mul_q_power(-v).scale(&GaussQ::from_big(BigQ::one() / &c0.re));
        if t.terms.len() > 1 && t.prec.is_none() {
            return Err(Error::Incompatible("sqrt of an exact multi-term series needs a precision".into()));
        }
        let y0 = t.terms[&Q::zero()].sqrt_unit().expect("normalized");
        let two_y0_inv = y0.scale(&GaussQ::from_int(2)).inverse().expect("unit");
        let mut y = QJetSeries::zero(t.jet, t.prec);
        y.terms.insert(Q::zero(), y0);
        if let Some(p) = t.prec {
            let den = t
                .terms
                .keys()
                .fold(1i64, |a, e| num_integer::lcm(a, *e.denom()));
            let kmax = (p * den).floor().to_integer();
            for k in 1..=kmax {
                let e = Q::new(k, den);
                let mut s = t.terms.get(&e).cloned().unwrap_or_else(|| UJet::zero(t.jet));
                let ys: Vec<(Q, UJet)> = y
                    .terms
                    .range(Q::new(1, den)..e)
                    .map(|(a, b)| (*a, b.clone()))
                    .collect();
                for (e1, j1) in &ys {
                    if let Some(j2) = y.terms.get(&(e - e1)) {
                        s = s.sub(&j1.mul(j2));
                    }
                }
                let c = s.mul(&two_y0_inv);
                if !c.is_zero() {
                    y.terms.insert(e, c);
                }
            }
        }
        y.tail_dropped = self.tail_dropped;
        Ok(y.scale(&GaussQ::from_big(r)).mul_q_power(v / 2))
    }

    /// self^a for a with denominator 1 or 2.
    pub fn pow_rational(&self, a: Q) -> Result<Self> {
        match *a.denom() {
            1 => self.pow(a.to_integer()),
            2 => self.sqrt()?.pow(*a.numer()),
            d => Err(Error::Precondition(format!("rational power with denominator {d} unsupported"))),
        }
    }

    /// The u⁰ part (jet order 0).
    pub fn u0_part(&self) -> Self {
        self.truncate_jet(0)
    }

    /// Exact agreement of all coefficients with exponent ≤ upto and jet
    /// order ≤ min(jets); both series must be known through `upto`.
    pub fn agrees_with(&self, o: &QJetSeries, upto: Q) -> bool {
        if self.prec.is_some_and(|p| p < upto) || o.prec.is_some_and(|p| p < upto) {
            return false;
        }
        let jet = self.jet.min(o.jet);
        let a = self.truncate_jet(jet);
        let b = o.truncate_jet(jet);
        let ka: Vec<_> = a.terms.iter().filter(|(e, _)| **e <= upto).collect();
        let kb: Vec<_> = b.terms.iter().filter(|(e, _)| **e <= upto).collect();
        ka == kb
    }

    pub fn is_zero_upto(&self, upto: Q) -> bool {
        self.prec.map_or(true, |p| p >= upto) && self.terms.keys().all(|e| *e > upto)
    }

    /// Numerical value at q = e^{2πiτ}, u = 2πi·s.
    pub fn eval(&self, tau: Complex64, s: Complex64) -> Complex64 {
        let u = Complex64::new(0.0, 2.0 * PI) * s;
        let mut total = Complex64::zero();
        for (e, j) in &self.terms {
            let qe = (Complex64::new(0.0, 2.0 * PI) * tau * e.to_f64().unwrap()).exp();
            let mut up = Complex64::one();
            let mut acc = Complex64::zero();
            for c in &j.c {
                acc += c.to_c64() * up;
                up *= u;
            }
            total += qe * acc;
        }
        total
    }

    /// All nonzero coefficients as (q-exponent, u-power, coefficient), sorted.
    pub fn coefficients(&self) -> Vec<(Q, usize, GaussQ)> {
        let mut out = Vec::new();
        for (e, j) in &self.terms {
            for (k, c) in j.c.iter().enumerate() {
                if !c.is_zero() {
                    out.push((*e, k, c.clone()));
                }
            }
        }
        out
    }

    /// Whether every stored coefficient is a Gaussian integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|j| j.c.iter().all(|c| c.is_integer()))
    }
}

impl fmt::Display for QJetSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.coefficients();
        if cs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, k, c)) in cs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if !e.is_zero() {
                write!(f, "*q^({e})")?;
            }
            if *k > 0 {
                write!(f, "*u^{k}")?;
            }
        }
        match self.prec {
            Some(p) => write!(f, " + O(q^({p}))"),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};

    fn poly(jet: usize, prec: Option<Q>, ts: &[(Q, i64)]) -> QJetSeries {
        QJetSeries::from_terms(jet, prec, ts.iter().map(|(e, c)| (*e, UJet::constant(GaussQ::from_int(*c), jet))))
    }

    fn euler(n: i64) -> QJetSeries {
        let mut s = QJetSeries::one(0).with_prec(Some(qi(n)));
        for k in 1..=n {
            s = s.mul(&poly(0, None, &[(qi(0), 1), (qi(k), -1)]));
        }
        s
    }

    #[test]
    fn monomials_and_identity() {
        let h = poly(0, None, &[(q(1, 2), 1)]);
        assert!(h.mul(&h).agrees_with(&poly(0, None, &[(qi(1), 1)]), qi(5)));
        let s = poly(2, Some(qi(4)), &[(qi(0), 3), (q(1, 3), -2)]);
        assert!(QJetSeries::one(2).mul(&s).agrees_with(&s, qi(4)));
    }

    #[test]
    fn geometric_inverse() {
        let s = poly(0, Some(qi(6)), &[(qi(0), 1), (qi(1), -1)]);
        let inv = s.invert().unwrap();
        let expect = poly(0, Some(qi(6)), &(0..=6).map(|k| (qi(k), 1)).collect::<Vec<_>>());
        assert!(inv.agrees_with(&expect, qi(6)));
    }

    #[test]
    fn euler_product_and_inverse() {
        let e = euler(8);
        // pentagonal numbers 0,1,2,5,7 with signs + - - + +
        let expect = poly(0, Some(qi(8)), &[(qi(0), 1), (qi(1), -1), (qi(2), -1), (qi(5), 1), (qi(7), 1)]);
        assert!(e.agrees_with(&expect, qi(8)));
        let prod = e.mul(&e.invert().unwrap());
        assert!(prod.agrees_with(&QJetSeries::one(0), qi(8)));
    }

    #[test]
    fn u_factored_inverse() {
        // u(1 + q)
        let mut j = UJet::zero(3);
        j.c[1] = GaussQ::one();
        let s = QJetSeries::from_terms(3, Some(qi(5)), [(qi(0), j.clone()), (qi(1), j)]);
        let f = s.invert_factored().unwrap();
        assert_eq!(f.u_shift, 1);
        assert_eq!(f.inv.jet(), 2);
        let expect = poly(2, Some(qi(5)), &(0..=5).map(|k| (qi(k), if k % 2 == 0 { 1 } else { -1 })).collect::<Vec<_>>());
        assert!(f.inv.agrees_with(&expect, qi(5)));
    }

    #[test]
    fn square_roots() {
        let s = poly(0, Some(qi(6)), &[(qi(0), 1), (qi(1), 2), (qi(2), 1)]);
        let r = s.sqrt_unit().unwrap();
        assert!(r.agrees_with(&poly(0, None, &[(qi(0), 1), (qi(1), 1)]), qi(6)));
        let e = euler(6).mul_q_power(q(1, 8)).scale(&GaussQ::from_int(4));
        let r = e.sqrt().unwrap();
        assert!(r.mul(&r).agrees_with(&e, e.prec().unwrap()));
        assert!(poly(0, Some(qi(3)), &[(qi(0), 2)]).sqrt().is_err());
    }

    #[test]
    fn rescale() {
        let e = euler(6).mul_q_power(q(1, 24)).rescale_q(3);
        assert_eq!(e.valuation(), Some(q(1, 8)));
        assert!(e.coefficient(q(1, 8) + qi(3)).is_some());
        let s = poly(0, None, &[(qi(1), 1)]);
        assert!(s.rescale_q(2).agrees_with(&poly(0, None, &[(qi(2), 1)]), qi(3)));
    }

    #[test]
    fn precision_propagates() {
        let a = poly(0, Some(qi(3)), &[(qi(1), 1)]);
        let b = poly(0, Some(qi(2)), &[(q(1, 2), 1)]);
        assert_eq!(a.mul(&b).prec(), Some(qi(3) + q(1, 2)).min(Some(qi(3))));
        assert!(a.add(&b).prec() == Some(qi(2)));
    }

    #[test]
    fn exp_linear_series() {
        let a = QJetSeries::exp_linear(q(2, 3), 6);
        let b = QJetSeries::exp_linear(q(-2, 3), 6);
        assert!(a.mul(&b).agrees_with(&QJetSeries::one(6), qi(1)));
    }

    #[test]
    fn eval_matches_terms() {
        let s = poly(0, None, &[(qi(0), 1), (qi(1), -1)]);
        let tau = Complex64::new(0.1, 1.0);
        let v = s.eval(tau, Complex64::zero());
        let qv = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
        assert!((v - (Complex64::one() - qv)).norm() < 1e-15);
    }
}
