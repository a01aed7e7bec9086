#![allow(dead_code)]

use gamepricing::{Game64, Outcome, TwoPointGame64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// 3 to 8 outcomes, payouts log-uniform on [0.1, 100], uniform weights
/// normalized to one.
pub fn random_game(rng: &mut ChaCha8Rng) -> Game64 {
    loop {
        let k = rng.gen_range(3..=8);
        let outcomes: Vec<Outcome<f64>> = (0..k)
            .map(|_| Outcome::new(log_uniform(rng, 0.1, 100.0), rng.gen_range(0.0..1.0)))
            .collect();
        if let Ok(g) = Game64::normalized(outcomes, None) {
            return g;
        }
    }
}

pub fn random_two_point(rng: &mut ChaCha8Rng) -> TwoPointGame64 {
    loop {
        let x = log_uniform(rng, 0.1, 100.0);
        let y = log_uniform(rng, 0.1, 100.0);
        let p = rng.gen_range(0.05..0.95);
        if let Ok(g) = TwoPointGame64::new(x.max(y), x.min(y), p) {
            return g;
        }
    }
}

/// Uniform point of the open interval (lo, hi).
pub fn inside(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    loop {
        let x = lo + rng.gen_range(0.0..1.0) * (hi - lo);
        if x > lo && x < hi {
            return x;
        }
    }
}
