use blueforge_core::cohomology::{check_blue_module, equalizer, h0_twist, module_dimension, SignedLatticeModule};
use blueforge_core::hp::Complex;
use blueforge_core::presentation::{f1n, from_ring, Bounds, RingTables, Verdict};
use blueforge_core::spectra::{is_ideal, is_prime, spectrum};
use blueforge_core::zeta::{Ext, Zeta, ZetaConfig};
use proptest::prelude::*;

#[test]
fn h0_closed_form() {
    for n in -20..=50i64 {
        assert_eq!(h0_twist(n), (n + 1).max(0) as usize, "n={n}");
        assert_eq!(module_dimension(&equalizer(n).module), h0_twist(n));
    }
}

#[test]
fn sections_multiply() {
    for m in 0..=10i64 {
        let em = equalizer(m);
        for n in 0..=10i64 {
            let en = equalizer(n);
            let emn = equalizer(m + n);
            for a in &em.sections {
                for b in &en.sections {
                    let c = a.mul(b);
                    assert!(emn.contains(&c), "O({m}) x O({n}): {a:?} * {b:?}");
                    assert_eq!(c.left.exponent, a.left.exponent + b.left.exponent);
                }
            }
        }
    }
}

#[test]
fn euler_product_within_tail_bound() {
    let z = Zeta::new(ZetaConfig { digits: 40, ..ZetaConfig::default() }).unwrap();
    let ctx = z.ctx();
    let pi = ctx.pi();
    let apery = ctx.parse("1.2020569031595942853997381615114499907649862923405").unwrap();
    let pi2 = &pi * &pi;
    let cases = [(2, &pi2 / &ctx.int(6)), (3, apery), (4, &(&pi2 * &pi2) / &ctx.int(90))];
    for (s, exact) in cases {
        let sc = Complex::real(ctx.int(s), ctx);
        let (est, tail) = z.completed_zeta(&sc, 2_000).unwrap();
        let inf = z.zeta_inf(&sc).unwrap();
        let euler = &est.value.re / &inf.value.re;
        let rel = (&euler - &exact).abs() / &exact;
        assert!(rel <= tail, "s={s}: {} > {}", ctx.to_f64(&rel), ctx.to_f64(&tail));
    }
}

#[test]
fn precision_scaling() {
    let lo = Zeta::new(ZetaConfig { digits: 40, ..ZetaConfig::default() }).unwrap();
    let hi = Zeta::new(ZetaConfig { digits: 80, ..ZetaConfig::default() }).unwrap();
    let s_lo = lo.ctx().parse_complex("2.5+1i").unwrap();
    let s_hi = hi.ctx().parse_complex("2.5+1i").unwrap();
    for p in [2, 11] {
        let a = lo.zeta_p_integral(p, &s_lo).unwrap();
        let b = hi.zeta_p_integral(p, &s_hi).unwrap();
        let ctx = hi.ctx();
        let a_hi = Complex::new(ctx.parse(&lo.ctx().format(&a.value.re)).unwrap(), ctx.parse(&lo.ctx().format(&a.value.im)).unwrap());
        let d = (&a_hi - &b.value).abs(ctx);
        assert!(d < ctx.parse("1e-35").unwrap(), "p={p}: {}", ctx.to_f64(&d));
    }
}

#[test]
fn zmod_spectra_are_prime_ideals() {
    for n in [5usize, 8, 9, 10] {
        let fb = from_ring(&RingTables::zmod(n)).unwrap().finite().unwrap();
        let spec = spectrum(&fb, Bounds::default()).unwrap();
        for p in &spec.points {
            assert!(is_ideal(&fb, p, Bounds::default()).unwrap().is_yes());
            assert!(is_prime(&fb, p));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sign_action_is_free(lattice in proptest::collection::btree_set(-8i64..8, 0..5)) {
        let m = SignedLatticeModule::new(lattice.iter().copied());
        prop_assert!(m.sign_action_is_free(Bounds::default()).unwrap());
        prop_assert_eq!(module_dimension(&m), lattice.len());
    }

    #[test]
    fn signed_modules_are_blue_modules(lattice in proptest::collection::btree_set(-4i64..4, 0..3)) {
        let m = SignedLatticeModule::new(lattice);
        prop_assert!(check_blue_module(&m.to_blue_module().unwrap(), Bounds::default()).unwrap().is_yes());
    }

    #[test]
    fn holds_is_reflexive_and_never_contradicts_symmetry(
        n in 2u64..5,
        a in proptest::collection::vec(0u32..3, 4),
        b in proptest::collection::vec(0u32..3, 4),
    ) {
        let fb = f1n(n).unwrap().finite().unwrap();
        let dim = fb.dim();
        let (a, b) = (&a[..dim], &b[..dim]);
        let cong = fb.congruence();
        prop_assert!(cong.holds(a, a, Bounds::default()).unwrap().is_yes());
        let ab = cong.holds(a, b, Bounds::default()).unwrap();
        let ba = cong.holds(b, a, Bounds::default()).unwrap();
        prop_assert!(!(ab.is_yes() && ba.is_no()) && !(ab.is_no() && ba.is_yes()));
    }

    #[test]
    fn holds_is_additive(
        a in proptest::collection::vec(0u32..3, 2),
        b in proptest::collection::vec(0u32..3, 2),
        c in proptest::collection::vec(0u32..2, 2),
    ) {
        let fb = f1n(2).unwrap().finite().unwrap();
        let cong = fb.congruence();
        if let Verdict::Yes(_) = cong.holds(&a, &b, Bounds::default()).unwrap() {
            let ac: Vec<u32> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            let bc: Vec<u32> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
            prop_assert!(!cong.holds(&ac, &bc, Bounds::default()).unwrap().is_no());
        }
    }

    #[test]
    fn finite_place_measure_is_additive(p in prop::sample::select(vec![2u64, 3, 5, 7]), b in 0u64..6, len in 0u64..5, tail in 1u64..6) {
        let z = Zeta::new(ZetaConfig { digits: 40, ..ZetaConfig::default() }).unwrap();
        let ctx = z.ctx();
        let s = ctx.complex(2.5, 0.5);
        let m = b + len;
        let c = m + tail;
        for upper in [Ext::Finite(c), Ext::Infinite] {
            let left = z.mu_p(p, &s, Ext::Finite(b), Ext::Finite(m)).unwrap();
            let right = z.mu_p(p, &s, Ext::Finite(m + 1), upper).unwrap();
            let all = z.mu_p(p, &s, Ext::Finite(b), upper).unwrap();
            prop_assert!((&(&left + &right) - &all).abs(ctx) < ctx.parse("1e-35").unwrap());
        }
    }

    #[test]
    fn archimedean_measure_is_additive(b in 0.0f64..0.45, m in 0.5f64..0.7, c in 0.75f64..1.0) {
        let z = Zeta::new(ZetaConfig { digits: 30, ..ZetaConfig::default() }).unwrap();
        let ctx = z.ctx();
        let s = ctx.complex(2.0, 1.0);
        let (b, m, c) = (ctx.f64(b), ctx.f64(m), ctx.f64(c));
        let left = z.mu_inf(&s, &b, &m).unwrap();
        let right = z.mu_inf(&s, &m, &c).unwrap();
        let all = z.mu_inf(&s, &b, &c).unwrap();
        let budget = &(&left.error + &right.error) + &all.error;
        prop_assert!((&(&left.value + &right.value) - &all.value).abs(ctx) <= budget * ctx.int(2) + ctx.parse("1e-25").unwrap());
    }
}
