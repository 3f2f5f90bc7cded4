use plate_lab::decay_lab::{DatumKind, DatumSpec};
use plate_lab::multiplier_theory::Rational;
use plate_lab::nonexistence::{holder_check, holder_constant, SpaceTimeField};
use plate_lab::semilinear::{
    auxiliary_integral, contraction_diagnostic, run, QuadratureRule, RunStatus, SemilinearConfig,
};

fn small(eps: f64) -> SemilinearConfig {
    SemilinearConfig { points: 2048, half_width: 512.0, samples: 16, ..SemilinearConfig::new(6.0, eps, 40.0) }
}

#[test]
fn weighted_history_grows_with_epsilon() {
    let eps = [0.05, 0.1, 0.2, 0.4, 0.8];
    let records: Vec<_> = eps.iter().map(|&e| run(&small(e)).unwrap()).collect();
    for pair in records.windows(2) {
        assert_eq!(pair[1].status, RunStatus::CompletedGlobal);
        for (q, hist) in &pair[0].weighted_history {
            let next = &pair[1].weighted_history[q];
            assert!(hist.iter().zip(next).all(|(a, b)| b >= a), "1/q = {q}");
        }
    }
}

#[test]
fn simpson_and_trapezoid_agree_on_small_data() {
    let trap = run(&small(0.5)).unwrap();
    let simp = run(&SemilinearConfig { quadrature: QuadratureRule::Simpson, ..small(0.5) }).unwrap();
    let q = Rational::from_integer(0);
    for (a, b) in trap.series.norms[&q].iter().zip(&simp.series.norms[&q]) {
        assert!((a - b).abs() <= 1e-4 * a, "{a} vs {b}");
    }
}

#[test]
fn holder_chain_on_simulated_field() {
    let cfg = SemilinearConfig {
        points: 8192,
        half_width: 24.0,
        dt: 1.0 / 512.0,
        t_min: 0.01,
        samples: 4,
        u1: DatumSpec::new(DatumKind::Gaussian { width: 0.5 }),
        u0: Some(DatumSpec::new(DatumKind::Gaussian { width: 0.5 })),
        ..SemilinearConfig::new(3.0, 2.0, 1.0)
    };
    let field = SpaceTimeField::from_run(&cfg, 1.0).unwrap();
    let mut worst = 0.0_f64;
    for k in 0..=4 {
        let tau = 0.0625 * 2f64.powi(k);
        let check = holder_check(&field, tau, cfg.alpha).unwrap();
        assert!(check.pairing.i_tau > 0.0);
        assert!(check.holds(), "tau = {tau}: |lhs| = {} > {}", check.pairing.lhs.abs(), check.bound);
        worst = worst.max(check.needed_constant(1, cfg.alpha));
    }
    assert!(worst <= holder_constant(1, cfg.alpha));
}

#[test]
fn auxiliary_ratio_is_bounded() {
    for (nu, mu) in [(0.0, -2.0), (0.0, -1.0), (0.0, 0.0), (-0.5, -1.0), (-0.5, -1.5)] {
        let ratios: Vec<f64> =
            (0..=16).map(|k| auxiliary_integral(nu, mu, 10f64.powf(k as f64 / 4.0)).unwrap().ratio()).collect();
        let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0_f64), |(l, h), &r| (l.min(r), h.max(r)));
        assert!(lo > 0.0 && hi < 10.0, "({nu}, {mu}): {ratios:?}");
    }
}

#[test]
fn contraction_weakens_with_data_size() {
    let cfg = |eps: f64| SemilinearConfig {
        points: 256,
        half_width: 16.0,
        dt: 0.05,
        t_min: 0.01,
        ..SemilinearConfig::new(6.0, eps, 0.5)
    };
    let a = contraction_diagnostic(&cfg(1e-3), 3).unwrap();
    let b = contraction_diagnostic(&cfg(1e-2), 3).unwrap();
    assert!(b.ratios[0] > a.ratios[0] && b.ratios[0] < 1.0);
}
