use super::*;
use crate::Q;
use proptest::prelude::*;

fn jet_strategy(order: usize) -> impl Strategy<Value = UJet> {
    prop::collection::vec((-4i64..=4, -4i64..=4, 1i64..=3), order + 1).prop_map(|cs| UJet {
        c: cs.into_iter().map(|(a, b, d)| GaussQ::from_parts(Q::new(a, d), Q::new(b, d))).collect(),
    })
}

/// Series with exponents in (1/6)ℤ ∩ [−1, 4], jet order 2, either exact or truncated.
fn series_strategy() -> impl Strategy<Value = QJetSeries> {
    (
        prop::collection::vec((-6i64..=24, jet_strategy(2)), 0..6),
        prop::option::of(6i64..=30),
    )
        .prop_map(|(ts, p)| QJetSeries::from_terms(2, p.map(|p| Q::new(p, 6)), ts.into_iter().map(|(e, j)| (Q::new(e, 6), j))))
}

fn common(a: &QJetSeries, b: &QJetSeries) -> Q {
    match (a.prec(), b.prec()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => Q::from_integer(100),
    }
}

proptest! {
    #[test]
    fn addition_and_product_commute(a in series_strategy(), b in series_strategy()) {
        prop_assert!(a.add(&b).agrees_with(&b.add(&a), common(&a, &b)));
        let (ab, ba) = (a.mul(&b), b.mul(&a));
        prop_assert_eq!(ab.prec(), ba.prec());
        let upto = ab.prec().unwrap_or(Q::from_integer(100));
        prop_assert!(ab.agrees_with(&ba, upto));
    }

    #[test]
    fn product_is_associative_and_distributive(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        let l = a.mul(&b).mul(&c);
        let r = a.mul(&b.mul(&c));
        let upto = common(&l, &r);
        prop_assert!(l.agrees_with(&r, upto));
        let l = a.mul(&b.add(&c));
        let r = a.mul(&b).add(&a.mul(&c));
        let upto = common(&l, &r);
        prop_assert!(l.agrees_with(&r, upto));
    }

    #[test]
    fn unit_inverse(mut a in series_strategy(), c in jet_strategy(2)) {
        // Force an invertible leading coefficient at q^0.
        let mut c = c;
        c.c[0] = GaussQ::from_int(1);
        a = a.mul_q_power(Q::new(7, 6));
        a.push(Q::from_integer(0), c);
        let a = a.truncate(Q::from_integer(3));
        let inv = a.invert().unwrap();
        let one = QJetSeries::one(2);
        let prod = a.mul(&inv);
        prop_assert!(prod.agrees_with(&one, prod.prec().unwrap()));
    }

    /// Raising the truncation never changes coefficients that were already known,
    /// and never lowers the known precision.
    #[test]
    fn truncation_monotonicity(a in series_strategy(), b in series_strategy(), p1 in 0i64..=12, dp in 0i64..=12) {
        let (p1, p2) = (Q::new(p1, 6), Q::new(p1 + dp, 6));
        let lo = a.clone().truncate(p1).mul(&b.clone().truncate(p1));
        let hi = a.clone().truncate(p2).mul(&b.clone().truncate(p2));
        let (lp, hp) = (lo.prec().unwrap(), hi.prec().unwrap());
        prop_assert!(lp <= hp);
        prop_assert!(lo.agrees_with(&hi, lp));
        let exact = a.mul(&b);
        prop_assert!(hi.agrees_with(&exact, hp.min(exact.prec().unwrap_or(hp))));
        prop_assert!(a.clone().truncate(p2).truncate(p1).agrees_with(&a.clone().truncate(p1), p1.min(a.prec().unwrap_or(p1))));
    }
}
