//! Independent checks on the solver: closed forms for two-point games, brute
//! force maximization of the growth rate, and seeded Monte Carlo simulation of
//! repeated play.
//!
//! Nothing here calls into [`crate::solver`].

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Game, Outcome};
use crate::scalar::{pairwise_sum, Scalar};

/// Game paying `high` with probability `p_high`, otherwise `low`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoPointGame<T> {
    pub high: T,
    pub low: T,
    pub p_high: T,
}

impl<T: Scalar> TwoPointGame<T> {
    pub fn new(high: T, low: T, p_high: T) -> Result<Self> {
        if !(low > T::zero() && high > low && high.is_finite()) {
            return Err(Error::domain(
                "low payout",
                low.as_f64(),
                format!("(0, high) = (0, {})", high.as_f64()),
            ));
        }
        if !(p_high > T::zero() && p_high < T::one()) {
            return Err(Error::domain("p_high", p_high.as_f64(), "(0, 1)"));
        }
        Ok(TwoPointGame { high, low, p_high })
    }

    pub fn expectation(&self) -> T {
        self.p_high * self.high + (T::one() - self.p_high) * self.low
    }

    pub fn to_game(&self) -> Result<Game<T>> {
        Game::new(
            vec![
                Outcome::new(self.high, self.p_high),
                Outcome::new(self.low, T::one() - self.p_high),
            ],
            None,
        )
    }
}

/// `(t~_{u+n}, G~_{u+n}(t~_{u+n}))` for the two-point game translated by `n`,
/// priced at `u + n`:
///
/// ```text
/// t = (E - u)(n + u) / ((a - u)(u - b))
/// G = (a - b) (p / (u - b))^p ((1 - p) / (a - u))^(1 - p)
/// ```
pub fn two_point_closed_form<T: Scalar>(g: &TwoPointGame<T>, u: T, n: T) -> Result<(T, T)> {
    let (a, b, p) = (g.high, g.low, g.p_high);
    let e = g.expectation();
    if !(u > b && u < e) {
        return Err(Error::domain(
            "price u",
            u.as_f64(),
            format!("(b, E) = ({}, {})", b.as_f64(), e.as_f64()),
        ));
    }
    if !(n > -b) {
        return Err(Error::domain(
            "shift n",
            n.as_f64(),
            format!("(-b, inf) = ({}, inf)", (-b).as_f64()),
        ));
    }
    let q = T::one() - p;
    let t = (e - u) * (n + u) / ((a - u) * (u - b));
    let growth = (a - b) * (p / (u - b)).powf(p) * (q / (a - u)).powf(q);
    Ok((t, growth))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridMaximum<T> {
    pub proportion: T,
    /// Grid spacing.
    pub step: T,
    pub log_growth: T,
}

/// Brute-force maximizer of `t -> E[log(a t / u - t + 1)]` on `grid_points`
/// equally spaced interior points of `(0, min(1, (1 - 1e-9) u / (u - xi)))`.
/// Ties go to the smaller proportion.
pub fn grid_argmax_growth<T: Scalar>(game: &Game<T>, u: T, grid_points: usize) -> Result<GridMaximum<T>> {
    let (fair, e) = (game.fair_price(), game.expectation());
    if !(u > fair && u < e) {
        return Err(Error::domain(
            "price u",
            u.as_f64(),
            format!("(1/H, E) = ({}, {})", fair.as_f64(), e.as_f64()),
        ));
    }
    if grid_points == 0 {
        return Err(Error::domain("grid points", 0.0, "[1, inf)"));
    }
    let xi = game.ess_inf();
    let upper = T::one().min((T::one() - T::lit(1e-9)) * u / (u - xi));
    let step = upper / T::from_usize(grid_points + 1).expect("grid size fits scalar");
    let outcomes = game.outcomes();
    let log_growth = |t: T| -> T {
        pairwise_sum(outcomes.len(), |i| {
            outcomes[i].prob * (outcomes[i].payout * t / u - t + T::one()).ln()
        })
    };
    let (best, k) = (1..=grid_points)
        .into_par_iter()
        .map(|k| (log_growth(step * T::from_usize(k).unwrap()), k))
        .reduce(
            || (T::neg_infinity(), usize::MAX),
            |x, y| {
                if x.0 > y.0 || (x.0 == y.0 && x.1 < y.1) {
                    x
                } else {
                    y
                }
            },
        );
    Ok(GridMaximum {
        proportion: step * T::from_usize(k).unwrap(),
        step,
        log_growth: best,
    })
}

/// SplitMix64 generator.
///
/// ```text
/// state <- state + 0x9E3779B97F4A7C15
/// z <- state
/// z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z <- (z ^ (z >> 27)) * 0x94D049BB133111EB
/// output z ^ (z >> 31)
/// ```
///
/// All arithmetic wraps modulo 2^64. Uniform doubles take the top 53 bits:
/// `(x >> 11) * 2^-53`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Generator for path `index` of a run seeded with `seed`: initial state
    /// `seed ^ mix64((index + 1) * GOLDEN_GAMMA)`.
    pub fn for_path(seed: u64, index: u64) -> Self {
        SplitMix64::new(seed ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationResult<T> {
    /// Mean of `log(a t / u - t + 1)` over all draws.
    pub mean_log_growth: T,
    /// Standard error of that mean; zero only for degenerate (constant) draws.
    pub std_error: T,
    pub paths: usize,
    pub periods_per_path: usize,
    pub seed: u64,
}

/// Running mean and sum of squared deviations.
#[derive(Clone, Copy)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    const EMPTY: Moments = Moments { count: 0.0, mean: 0.0, m2: 0.0 };

    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let d = x - self.mean;
        self.mean += d / self.count;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let d = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + d * other.count / count,
            m2: self.m2 + other.m2 + d * d * self.count * other.count / count,
        }
    }
}

/// Plays the game repeatedly at proportion `t` and price `u`, multiplying
/// wealth by `a t / u - t + 1` each period. Outcomes are drawn by inverse CDF
/// over the payout-sorted outcome list. Paths are independent streams of
/// [`SplitMix64`], so the result does not depend on thread scheduling.
pub fn simulate_wealth<T: Scalar>(
    game: &Game<T>,
    u: T,
    t: T,
    periods: usize,
    paths: usize,
    seed: u64,
) -> Result<SimulationResult<T>> {
    if !(u.is_finite() && u > T::zero()) {
        return Err(Error::domain("price u", u.as_f64(), "(0, inf)"));
    }
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::domain("proportion t", t.as_f64(), "[0, 1]"));
    }
    if periods == 0 || paths == 0 {
        return Err(Error::domain(
            "draws (periods * paths)",
            (periods * paths) as f64,
            "[1, inf)",
        ));
    }
    let outcomes = game.outcomes();
    let mut log_factors = Vec::with_capacity(outcomes.len());
    for (index, o) in outcomes.iter().enumerate() {
        let factor = o.payout * t / u - t + T::one();
        if !(factor > T::zero()) {
            return Err(Error::NonPositiveFactor {
                index,
                payout: o.payout.as_f64(),
                factor: factor.as_f64(),
                price: u.as_f64(),
                proportion: t.as_f64(),
            });
        }
        log_factors.push((t * (o.payout - u) / u).ln_1p().as_f64());
    }
    let cumulative: Vec<f64> = outcomes
        .iter()
        .scan(0.0, |acc, o| {
            *acc += o.prob.as_f64();
            Some(*acc)
        })
        .collect();
    let last = outcomes.len() - 1;

    let per_path: Vec<Moments> = (0..paths)
        .into_par_iter()
        .map(|path| {
            let mut rng = SplitMix64::for_path(seed, path as u64);
            let mut m = Moments::EMPTY;
            for _ in 0..periods {
                let x = rng.next_f64();
                let i = cumulative.partition_point(|&c| c <= x).min(last);
                m.push(log_factors[i]);
            }
            m
        })
        .collect();
    let total = per_path.into_iter().fold(Moments::EMPTY, Moments::merge);
    let variance = if total.count > 1.0 { total.m2 / (total.count - 1.0) } else { 0.0 };
    Ok(SimulationResult {
        mean_log_growth: T::lit(total.mean),
        std_error: T::lit((variance / total.count).sqrt()),
        paths,
        periods_per_path: periods,
        seed,
    })
}
