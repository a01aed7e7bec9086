//! Randomized cross-checks between the solver, the translation results and
//! the oracles.

mod common;

use common::{inside, random_game, random_two_point, rel};
use gamepricing::oracle::{grid_argmax_growth, simulate_wealth, two_point_closed_form};
use gamepricing::translation::{price_translated, threshold_shift};
use gamepricing::{Game64, KellySolver64, Regime};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn monte_carlo_within_three_standard_errors() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let solver = KellySolver64::default();
    let trials = 60;
    let mut hits = 0;
    for seed in 0..trials {
        let g = random_game(&mut rng);
        let u = inside(&mut rng, g.fair_price(), g.expectation());
        let t = solver.pre_optimal_proportion(&g, u).unwrap().proportion;
        let expected = solver.growth_rate(&g, u, t).unwrap().ln();
        let sim = simulate_wealth(&g, u, t, 500, 20, seed).unwrap();
        if (sim.mean_log_growth - expected).abs() <= 3.0 * sim.std_error {
            hits += 1;
        }
    }
    assert!(hits as f64 >= 0.95 * trials as f64, "{hits}/{trials}");
}

#[test]
fn grid_maximum_tracks_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let solver = KellySolver64::default();
    for _ in 0..50 {
        let g = random_game(&mut rng);
        let u = inside(&mut rng, g.fair_price(), g.expectation());
        let s = solver.pre_optimal_proportion(&g, u).unwrap();
        let m = grid_argmax_growth(&g, u, 20_000).unwrap();
        assert!((m.proportion - s.proportion).abs() <= m.step, "u={u}");
    }
}

#[test]
fn closed_form_translates_with_price() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let solver = KellySolver64::default();
    for _ in 0..200 {
        let tp = random_two_point(&mut rng);
        let g = tp.to_game().unwrap();
        let u = inside(&mut rng, tp.low, tp.expectation());
        let n = inside(&mut rng, -tp.low + 1e-3, 100.0);
        let (t, growth) = two_point_closed_form(&tp, u, n).unwrap();
        let shifted = g.translate(n).unwrap();
        let s = solver.pre_optimal_proportion(&shifted, u + n).unwrap();
        assert!(rel(s.proportion, t) <= 1e-9, "{} vs {t}", s.proportion);
        assert!(rel(s.growth, growth) <= 1e-9);
    }
}

#[test]
fn prices_translate_below_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let solver = KellySolver64::default();
    let r = 0.05;
    let mut tested = 0;
    for _ in 0..100 {
        let g = random_game(&mut rng);
        let th = threshold_shift(&solver, &g, r).unwrap();
        let Some(n0) = th.n0 else { continue };
        assert!(th.residual.unwrap() <= 1e-10);
        let base = solver.optimal_price(&g, r).unwrap();
        assert_eq!(base.regime, Regime::Interior);
        for frac in [0.1, 0.5, 0.9] {
            let n = -0.9 * g.ess_inf() + frac * (n0 + 0.9 * g.ess_inf());
            let p = price_translated(&solver, &g, r, n).unwrap();
            assert!((p.optimal_price - (base.optimal_price + n)).abs() <= 1e-6);
        }
        let beyond = price_translated(&solver, &g, r, 1.5 * n0 + 1.0).unwrap();
        assert_eq!(beyond.regime, Regime::FullInvestment);
        tested += 1;
    }
    assert!(tested > 20);
}

#[test]
fn floor_games_keep_the_price_gap() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let solver = KellySolver64::default();
    for _ in 0..50 {
        let g = random_game(&mut rng);
        let floor = inside(&mut rng, 0.0, g.ess_inf());
        let g: Game64 = g.with_support_floor(floor).unwrap();
        assert!(g.h_xi().is_finite());
        let n = inside(&mut rng, -floor + 1e-3, 50.0);
        let t = g.translate(n).unwrap();
        let gap = |g: &Game64| g.expectation() - g.lower_price_bound();
        assert!((gap(&t) - gap(&g)).abs() <= 1e-12 * t.expectation().max(1.0));

        let u = inside(&mut rng, g.lower_price_bound(), g.expectation());
        let a = solver.pre_optimal_proportion(&g, u).unwrap();
        let b = solver.pre_optimal_proportion(&t, u + n).unwrap();
        assert!(rel(b.proportion / (u + n), a.proportion / u) <= 1e-8);
    }
}
