use super::*;
use crate::characters::{admissible_vacuum_character, shifted_vacuum, wmin_character, wmin_spec, NumeratorSpec};
use crate::liealg::{AffineWeight, NilpotentSlice, RootSystem, WeylGroup, DEFAULT_WEYL_CAP};
use crate::thetaforms::FVariant;
use crate::{qi, Q};
use num_complex::Complex64 as C64;
use num_traits::Zero;

const VARIANTS: [FVariant; 3] = [FVariant::Plain, FVariant::Minus, FVariant::Star];

fn check(r: TransformReport) {
    assert!(r.pass, "{} failed: rel dev {:.3e} at tau={} (lhs {}, rhs {})", r.identity, r.rel_dev, r.tau, r.lhs, r.rhs);
}

#[test]
fn theta_transforms_a1_example_point() {
    let rs = RootSystem::from_name("A1").unwrap();
    let ev = Evaluator::new(&rs);
    let cos = Cosets::new(&rs, 2, 1 << 20).unwrap();
    let mut pt = EvalPoint::new(C64::new(0.1, 0.8), vec![C64::new(0.3, 0.0)]).unwrap();
    pt.eps = 1e-8;
    for lam in [vec![Q::zero()], vec![Q::new(1, 2)], vec![qi(1)]] {
        for r in verify_theta_transforms(&ev, &lam, 2, &cos, &pt).unwrap() {
            check(r);
        }
    }
}

#[test]
fn theta_t_phase_trivial_at_zero() {
    let rs = RootSystem::from_name("A2").unwrap();
    let ev = Evaluator::new(&rs);
    let cos = Cosets::new(&rs, 3, 1 << 20).unwrap();
    let pt = EvalPoint::new(C64::new(0.2, 0.9), vec![C64::zero(); 2]).unwrap();
    let rs_ = verify_theta_transforms(&ev, &[Q::zero(), Q::zero()], 3, &cos, &pt).unwrap();
    assert!((rs_[1].lhs - rs_[1].rhs).norm() < 1e-12);
    check(rs_[0].clone());
}

#[test]
fn f_transforms_a1_minimal() {
    let rs = RootSystem::from_name("A1").unwrap();
    let ev = Evaluator::new(&rs);
    let wg = WeylGroup::new(&rs, DEFAULT_WEYL_CAP).unwrap();
    let slice = NilpotentSlice::minimal(&rs);
    let lam = AffineWeight::new(vec![Q::new(1, 2)], qi(3), Q::zero());
    let cos = Cosets::new(&rs, 3, 1 << 20).unwrap();
    for pt in EvalPoint::samples(&ev, &[Q::zero()], 5, 7) {
        for i in 0..wg.len() {
            for t in [Transform::S, Transform::T] {
                for v in VARIANTS {
                    check(verify_f_transform(&ev, t, v, &lam, &wg.element(i), &slice, &cos, &pt).unwrap());
                }
            }
        }
    }
}

#[test]
fn f_transforms_collapse_at_x_zero() {
    // With x = 0 all three variants coincide with Θ.
    let rs = RootSystem::from_name("A2").unwrap();
    let ev = Evaluator::new(&rs);
    let wg = WeylGroup::new(&rs, DEFAULT_WEYL_CAP).unwrap();
    let mut slice = NilpotentSlice::minimal(&rs);
    slice.x = vec![Q::zero(); 2];
    let lam = AffineWeight::new(rs.fundamental_weights[0].clone(), qi(2), Q::zero());
    let pt = EvalPoint::new(C64::new(-0.2, 0.7), vec![C64::new(0.1, 0.05), C64::new(-0.2, 0.0)]).unwrap();
    let w = wg.element(3);
    let th = ev.theta(&w.apply(&lam.fin), 2, pt.tau, &pt.z).unwrap();
    for v in VARIANTS {
        let f = ev.f(v, &lam, &w, &slice, pt.tau, &pt.z).unwrap();
        assert!((f.value - th.value).norm() < 1e-12);
    }
}

#[test]
fn f_and_denominator_transforms_d4_minimal() {
    let rs = RootSystem::from_name("D4").unwrap();
    let ev = Evaluator::new(&rs);
    let wg = WeylGroup::new(&rs, DEFAULT_WEYL_CAP).unwrap();
    let spec = wmin_spec(&rs, -2).unwrap();
    let cos = Cosets::new(&rs, 4, 1 << 20).unwrap();
    for (k, pt) in EvalPoint::samples(&ev, &spec.z0, 5, 11).into_iter().enumerate() {
        let w = wg.element((37 * k + 5) % wg.len());
        for t in [Transform::S, Transform::T] {
            for v in VARIANTS {
                check(verify_f_transform(&ev, t, v, &spec.lambda, &w, &spec.slice, &cos, &pt).unwrap());
                check(verify_denominator_transform(&ev, &spec.slice, t, v, &pt).unwrap());
            }
        }
    }
}

#[test]
fn denominator_transforms_a1_minimal() {
    let rs = RootSystem::from_name("A1").unwrap();
    let ev = Evaluator::new(&rs);
    let slice = NilpotentSlice::minimal(&rs);
    for pt in EvalPoint::samples(&ev, &[Q::zero()], 5, 3) {
        for t in [Transform::S, Transform::T] {
            for v in VARIANTS {
                check(verify_denominator_transform(&ev, &slice, t, v, &pt).unwrap());
            }
        }
    }
}

#[test]
fn principal_denominator_is_eta_power() {
    let rs = RootSystem::from_name("A3").unwrap();
    let ev = Evaluator::new(&rs);
    let slice = NilpotentSlice::principal(&rs);
    let tau = C64::new(0.3, 0.8);
    let r = ev.w_denominator(&slice, FVariant::Plain, tau, &[C64::zero(); 3]).unwrap();
    let e = eta(tau).unwrap().value.powi(3);
    assert!((r.value - e).norm() < 1e-12);
    // η(−1/τ) = √(−iτ) η(τ)
    let lhs = eta(-1.0 / tau).unwrap().value;
    let rhs = (C64::new(0.0, -1.0) * tau).sqrt() * eta(tau).unwrap().value;
    assert!((lhs - rhs).norm() < 1e-12);
}

#[test]
fn psi_transforms_d4() {
    let rs = RootSystem::from_name("D4").unwrap();
    let ev = Evaluator::new(&rs);
    let wg = WeylGroup::new(&rs, DEFAULT_WEYL_CAP).unwrap();
    let spec = wmin_spec(&rs, -2).unwrap();
    let cos = Cosets::new(&rs, 4, 1 << 20).unwrap();
    assert_eq!(cos.len(), 1024);
    let z0: Vec<f64> = spec.z0.iter().map(|c| num_traits::ToPrimitive::to_f64(c).unwrap()).collect();
    let zf: Vec<C64> = z0.iter().map(|c| C64::new(*c, 0.0)).collect();
    let norm = ev.ip(&zf, &zf).re.sqrt();
    let pt = EvalPoint::new(C64::new(0.1, 0.8), zf.iter().map(|c| c * 0.3 / norm).collect()).unwrap();
    for t in [Transform::S, Transform::T] {
        for v in VARIANTS {
            check(verify_psi_transform(&ev, &wg, &spec, t, v, &cos, &pt).unwrap());
        }
    }
}

#[test]
fn psi_double_s_a1() {
    let rs = RootSystem::from_name("A1").unwrap();
    let ev = Evaluator::new(&rs);
    let wg = WeylGroup::new(&rs, DEFAULT_WEYL_CAP).unwrap();
    let spec = NumeratorSpec {
        lambda: shifted_vacuum(&rs, qi(1)),
        alpha: vec![1],
        slice: NilpotentSlice::minimal(&rs),
        z0: vec![Q::zero()],
    };
    let cos = Cosets::new(&rs, 3, 1 << 20).unwrap();
    for pt in EvalPoint::samples(&ev, &[Q::zero()], 5, 5) {
        check(verify_double_s(&ev, &wg, &spec, &cos, &pt).unwrap());
        for t in [Transform::S, Transform::T] {
            for v in VARIANTS {
                check(verify_psi_transform(&ev, &wg, &spec, t, v, &cos, &pt).unwrap());
            }
        }
    }
}

#[test]
fn vacuum_class_t_laws() {
    for (name, slice_min, p, u) in [("A1", true, 4, 3), ("A2", false, 5, 3)] {
        let rs = RootSystem::from_name(name).unwrap();
        let ev = Evaluator::new(&rs);
        let wg = WeylGroup::new(&rs, DEFAULT_WEYL_CAP).unwrap();
        let slice = if slice_min { NilpotentSlice::minimal(&rs) } else { NilpotentSlice::principal(&rs) };
        let lam0 = AffineWeight::lambda0(rs.rank(), qi(p - rs.dual_coxeter));
        for pt in EvalPoint::samples(&ev, &vec![Q::zero(); rs.rank()], 5, 13) {
            for v in VARIANTS {
                let r = verify_theorem4b(&ev, &wg, &slice, p, u, &lam0, v, &pt).unwrap();
                check(r);
            }
        }
    }
}

#[test]
fn holomorphy_smoke_checks() {
    let rs = RootSystem::from_name("D4").unwrap();
    let wg = WeylGroup::new(&rs, DEFAULT_WEYL_CAP).unwrap();
    let taus = [C64::new(0.0, 1.0), C64::new(0.3, 0.8), C64::new(-0.4, 1.1)];
    let ch = wmin_character(&rs, &wg, -1, qi(6), 0).unwrap();
    assert!(holomorphy_smoke(&ch.series, &taus));
    let a1 = RootSystem::from_name("A1").unwrap();
    let v = admissible_vacuum_character(&a1, 3, 2, qi(12)).unwrap();
    assert!(holomorphy_smoke(&v.series, &taus));
}
