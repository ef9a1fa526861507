mod oracles;

use multispace::cosmology::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn sum_rules_hold_for_all_m() {
    for m in 1..=50 {
        for branch in [KasnerBranch::Plus, KasnerBranch::Minus] {
            let k = kasner_exponents(m, branch).unwrap();
            let (linear, quadratic) = k.sum_rule_residuals();
            assert!(linear.abs() <= 1e-12 && quadratic.abs() <= 1e-12, "m = {m} {branch}");
        }
    }
}

#[test]
fn negative_branch_accelerates_under_time_shift() {
    for m in 2..=50 {
        let mu = kasner_exponents(m, KasnerBranch::Minus).unwrap().mu;
        for i in 0..100 {
            let t = -50.0 + 59.9 * i as f64 / 99.0;
            let k = time_shift_scale(mu, 10.0, t).unwrap();
            assert!(k.da_dt > 0.0 && k.d2a_dt2 > 0.0, "m = {m}, t = {t}");
        }
    }
}

fn random_config<R: Rng>(rng: &mut R) -> TwCosmology {
    TwCosmology::new(
        rng.gen_range(2..=12),
        rng.gen_range(0.3..3.0),
        rng.gen_range(0.1..10.0),
        rng.gen_range(-2.0..2.0),
    )
    .unwrap()
}

/// A subinterval well inside the domain, away from the poles of `K`.
fn interior(cfg: &TwCosmology, a: f64, b: f64) -> (f64, f64) {
    let (lo, hi) = cfg.domain();
    (lo + a * (hi - lo), lo + b * (hi - lo))
}

#[test]
fn proper_time_matches_fixed_simpson() {
    let cfg = TwCosmology::new(7, 1.0, 1.0, 0.0).unwrap();
    let exact = oracles::fixed_simpson(|t| cfg.scale(t).unwrap().powi(3), 0.2, 1.2, 1_000_000);
    let got = proper_time(&cfg, 0.2, 1.2).unwrap();
    assert!(((got - exact) / exact).abs() <= 1e-7, "{got} vs {exact}");

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..5 {
        let cfg = random_config(&mut rng);
        let (a, b) = interior(&cfg, 0.1, 0.9);
        let exact = oracles::fixed_simpson(|t| cfg.scale(t).unwrap().powi(3), a, b, 1_000_000);
        let got = proper_time(&cfg, a, b).unwrap();
        assert!(((got - exact) / exact).abs() <= 1e-7, "{got} vs {exact}");
    }
}

#[test]
fn proper_time_rejects_outside_domain() {
    let cfg = TwCosmology::new(7, 1.0, 1.0, 0.0).unwrap();
    assert!(matches!(proper_time(&cfg, -0.5, 1.0), Err(CosmologyError::OutsideDomain { .. })));
    assert!(matches!(proper_time(&cfg, 0.5, 2.0), Err(CosmologyError::OutsideDomain { .. })));
}

#[test]
fn window_invariances() {
    let base = tw_acceleration_window(&TwCosmology::new(7, 1.0, 1.0, 0.0).unwrap(), 100_000).unwrap();
    for (r_c, t1) in [(10.0, 0.0), (0.01, 0.0), (1.0, 0.7), (3.0, -0.4)] {
        let w = tw_acceleration_window(&TwCosmology::new(7, 1.0, r_c, t1).unwrap(), 100_000).unwrap();
        assert!((w.expansion_factor - base.expansion_factor).abs() <= 1e-6);
    }
    let slow = tw_acceleration_window(&TwCosmology::new(7, 0.25, 1.0, 0.0).unwrap(), 100_000).unwrap();
    assert!((slow.expansion_factor - base.expansion_factor).abs() <= 1e-6);
}

#[test]
fn window_is_accelerating_inside() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let cfg = random_config(&mut rng);
        let w = tw_acceleration_window(&cfg, 20_000).unwrap();
        let (lo, hi) = cfg.domain();
        assert!(lo < w.t_enter && w.t_enter < w.t_exit && w.t_exit < hi);
        assert!(w.expansion_factor >= 1.0);
        for i in 1..50 {
            let t = w.t_enter + (w.t_exit - w.t_enter) * i as f64 / 50.0;
            assert!(cfg.ds_dproper(t).unwrap() > 0.0);
            assert!(cfg.d2s_dproper2(t).unwrap() > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn state_is_self_consistent(m in 2u32..20, lambda0 in 0.1f64..5.0, r_c in 0.01f64..100.0, t1 in -3.0f64..3.0, u in 0.001f64..0.999) {
        let cfg = TwCosmology::new(m, lambda0, r_c, t1).unwrap();
        let (lo, hi) = cfg.domain();
        let t = lo + u * (hi - lo);
        let s = tw_state(&cfg, t).unwrap();
        prop_assert!(s.k > 0.0 && s.s > 0.0);
        let mf = m as f64;
        let s2 = s.k.powf(mf / (mf - 1.0)) * (-(mf + 2.0) / (mf - 1.0) * lambda0 * t).exp();
        prop_assert!((s.s * s.s - s2).abs() <= 1e-9 * s2);
        prop_assert!((s.phi - (s.k.ln() - 3.0 * lambda0 * t) / (mf - 1.0)).abs() <= 1e-12 * s.phi.abs().max(1.0));
    }

    #[test]
    fn proper_time_is_additive(m in 2u32..12, lambda0 in 0.3f64..3.0, r_c in 0.1f64..10.0, a in 0.05f64..0.95, b in 0.05f64..0.95, c in 0.05f64..0.95) {
        let cfg = TwCosmology::new(m, lambda0, r_c, 0.0).unwrap();
        let (lo, hi) = cfg.domain();
        let at = |u: f64| lo + u * (hi - lo);
        let (ta, tb, tc) = (at(a), at(b), at(c));
        let whole = proper_time(&cfg, ta, tc).unwrap();
        let split = proper_time(&cfg, ta, tb).unwrap() + proper_time(&cfg, tb, tc).unwrap();
        prop_assert!((whole - split).abs() <= 1e-10 * whole.abs().max(1.0), "{} vs {}", whole, split);
    }

    #[test]
    fn chain_rule_against_proper_time(m in 2u32..12, lambda0 in 0.3f64..3.0, r_c in 0.1f64..10.0, u in 0.1f64..0.9) {
        let cfg = TwCosmology::new(m, lambda0, r_c, 0.0).unwrap();
        let (lo, hi) = cfg.domain();
        let t = lo + u * (hi - lo);
        let h = 1e-5 * (hi - lo);
        let ds = cfg.scale(t + h).unwrap() - cfg.scale(t - h).unwrap();
        let dvs = proper_time(&cfg, t - h, t + h).unwrap();
        let analytic = cfg.ds_dproper(t).unwrap();
        let central = cfg.ds_dproper_central(t, 1e-6 * (hi - lo)).unwrap();
        let scale = analytic.abs().max(1e-3 * cfg.scale(t).unwrap().powi(-2));
        prop_assert!((ds / dvs - analytic).abs() <= 1e-4 * scale);
        prop_assert!((central - analytic).abs() <= 1e-4 * scale);
    }
}
