//! Discrete payoff games, their validation, summary statistics and
//! parallel translation.
//!
//! A game pays `payout` gross dollars per dollar staked with probability
//! `prob`. Games are kept in canonical form: zero-weight outcomes dropped,
//! equal payouts merged, outcomes sorted by payout.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Outcome<T> {
    pub payout: T,
    pub prob: T,
}

impl<T> Outcome<T> {
    pub fn new(payout: T, prob: T) -> Self {
        Outcome { payout, prob }
    }
}

/// A single broken assumption found by [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    Empty,
    NonFinitePayout { index: usize, payout: f64 },
    NonPositivePayout { index: usize, payout: f64 },
    InvalidWeight { index: usize, weight: f64 },
    WeightSum { sum: f64, tolerance: f64 },
    ConstantProfit { payout: f64 },
    SupportFloor { floor: f64, min_payout: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "game has no outcomes"),
            Violation::NonFinitePayout { index, payout } => {
                write!(f, "outcome {index}: payout {payout} is not finite")
            }
            Violation::NonPositivePayout { index, payout } => write!(
                f,
                "outcome {index}: payout {payout} is not strictly positive (essential infimum must be > 0)"
            ),
            Violation::InvalidWeight { index, weight } => write!(
                f,
                "outcome {index}: probability {weight} must be finite and nonnegative"
            ),
            Violation::WeightSum { sum, tolerance } => write!(
                f,
                "probabilities sum to {sum}, expected 1 within {tolerance:e} (use normalization to rescale)"
            ),
            Violation::ConstantProfit { payout } => write!(
                f,
                "constant profit: all probability mass sits on payout {payout}, need at least two distinct payouts"
            ),
            Violation::SupportFloor { floor, min_payout } => write!(
                f,
                "support floor {floor} must lie in (0, {min_payout}]"
            ),
        }
    }
}

/// Outcome of validating a candidate game; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Validation(self))
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the standing assumptions on a raw outcome list: finite, strictly
/// positive payouts; nonnegative weights summing to one; non-constant profit.
pub fn validate<T: Scalar>(outcomes: &[Outcome<T>]) -> Verdict {
    let mut violations = Vec::new();
    if outcomes.is_empty() {
        violations.push(Violation::Empty);
        return Verdict { violations };
    }
    for (index, o) in outcomes.iter().enumerate() {
        if !o.payout.is_finite() {
            violations.push(Violation::NonFinitePayout {
                index,
                payout: o.payout.as_f64(),
            });
        } else if o.payout <= T::zero() {
            violations.push(Violation::NonPositivePayout {
                index,
                payout: o.payout.as_f64(),
            });
        }
        if !o.prob.is_finite() || o.prob < T::zero() {
            violations.push(Violation::InvalidWeight {
                index,
                weight: o.prob.as_f64(),
            });
        }
    }
    let sum: T = pairwise_sum(outcomes.len(), |i| outcomes[i].prob);
    let tol = T::default_tol();
    if !((sum - T::one()).abs() <= tol) {
        violations.push(Violation::WeightSum {
            sum: sum.as_f64(),
            tolerance: tol.as_f64(),
        });
    }
    let canonical = canonicalize(outcomes);
    if canonical.len() == 1 {
        violations.push(Violation::ConstantProfit {
            payout: canonical[0].payout.as_f64(),
        });
    }
    Verdict { violations }
}

/// Drops zero (or invalid) weights, merges equal payouts, sorts by payout.
fn canonicalize<T: Scalar>(outcomes: &[Outcome<T>]) -> Vec<Outcome<T>> {
    let mut kept: Vec<Outcome<T>> = outcomes
        .iter()
        .copied()
        .filter(|o| o.prob > T::zero() && o.payout.is_finite())
        .collect();
    kept.sort_by(|a, b| a.payout.partial_cmp(&b.payout).expect("finite payouts"));
    let mut merged: Vec<Outcome<T>> = Vec::with_capacity(kept.len());
    for o in kept {
        match merged.last_mut() {
            Some(last) if last.payout == o.payout => last.prob = last.prob + o.prob,
            _ => merged.push(o),
        }
    }
    merged
}

/// A validated game `(a(x), F(x))` in canonical discrete form.
///
/// Translated games remember the payouts they were built from and the
/// accumulated shift, so translating by `n1` then `n2` yields exactly the
/// same payouts as translating once by `n1 + n2`.
#[derive(Debug, Clone)]
pub struct Game<T> {
    label: Option<String>,
    base: Vec<T>,
    outcomes: Vec<Outcome<T>>,
    shift: T,
    base_floor: Option<T>,
}

impl<T: Scalar> Game<T> {
    /// Validates and canonicalizes `outcomes`.
    pub fn new(outcomes: Vec<Outcome<T>>, label: Option<String>) -> Result<Self> {
        validate(&outcomes).into_result()?;
        let outcomes = canonicalize(&outcomes);
        Ok(Game {
            label,
            base: outcomes.iter().map(|o| o.payout).collect(),
            outcomes,
            shift: T::zero(),
            base_floor: None,
        })
    }

    /// Like [`Game::new`] but rescales weights to sum to one first.
    pub fn normalized(mut outcomes: Vec<Outcome<T>>, label: Option<String>) -> Result<Self> {
        let sum: T = pairwise_sum(outcomes.len(), |i| outcomes[i].prob);
        if sum.is_finite() && sum > T::zero() && outcomes.iter().all(|o| o.prob >= T::zero()) {
            for o in &mut outcomes {
                o.prob = o.prob / sum;
            }
        }
        Self::new(outcomes, label)
    }

    /// Convenience constructor from `(payout, prob)` pairs.
    pub fn from_pairs(pairs: &[(T, T)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(a, p)| Outcome::new(a, p)).collect(), None)
    }

    /// Builds a game from quadrature nodes of a continuous distribution.
    ///
    /// Outcome `i` pays `payouts[i]` with weight proportional to
    /// `quad_weights[i] * density[i]`. `support_floor`, when given, is the
    /// essential infimum of the continuous payoff; it may sit strictly below
    /// every node, in which case `H_xi` is finite.
    pub fn from_density_samples(
        payouts: &[T],
        quad_weights: &[T],
        density: &[T],
        support_floor: Option<T>,
        label: Option<String>,
    ) -> Result<Self> {
        if payouts.len() != quad_weights.len() || payouts.len() != density.len() {
            return Err(Error::domain(
                "density sample count",
                density.len() as f64,
                format!(
                    "must equal node count {} and weight count {}",
                    payouts.len(),
                    quad_weights.len()
                ),
            ));
        }
        let outcomes = payouts
            .iter()
            .zip(quad_weights.iter().zip(density))
            .map(|(&a, (&w, &f))| Outcome::new(a, w * f))
            .collect();
        let game = Self::normalized(outcomes, label)?;
        match support_floor {
            Some(floor) => game.with_support_floor(floor),
            None => Ok(game),
        }
    }

    /// Declares the essential infimum of the underlying payoff to be `floor`,
    /// which may lie below the smallest discrete payout.
    pub fn with_support_floor(mut self, floor: T) -> Result<Self> {
        let min_payout = self.outcomes[0].payout;
        let base_floor = floor - self.shift;
        if !(floor > T::zero() && floor <= min_payout) || !base_floor.is_finite() {
            return Err(Error::Validation(Verdict {
                violations: vec![Violation::SupportFloor {
                    floor: floor.as_f64(),
                    min_payout: min_payout.as_f64(),
                }],
            }));
        }
        self.base_floor = if floor == min_payout { None } else { Some(base_floor) };
        Ok(self)
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn outcomes(&self) -> &[Outcome<T>] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Accumulated parallel shift relative to the game this one was built from.
    pub fn shift(&self) -> T {
        self.shift
    }

    /// Essential infimum `xi` of the payout.
    pub fn ess_inf(&self) -> T {
        match self.base_floor {
            Some(f) => f + self.shift,
            None => self.outcomes[0].payout,
        }
    }

    /// True when probability mass sits at the essential infimum.
    pub fn has_mass_at_inf(&self) -> bool {
        self.base_floor.is_none()
    }

    /// `sum p_i * f(a_i)` with pairwise summation.
    pub fn expect<F: Fn(T) -> T>(&self, f: F) -> T {
        let o = &self.outcomes;
        pairwise_sum(o.len(), |i| o[i].prob * f(o[i].payout))
    }

    pub fn expectation(&self) -> T {
        self.expect(|a| a)
    }

    /// `H = E[1/a]`.
    pub fn harmonic_integral(&self) -> T {
        self.expect(|a| a.recip())
    }

    pub fn fair_price(&self) -> T {
        self.harmonic_integral().recip()
    }

    /// `E[log a]`.
    pub fn log_moment(&self) -> T {
        self.expect(|a| a.ln())
    }

    /// `E[1/(a - xi)]`, infinite when mass sits at `xi`.
    pub fn h_xi(&self) -> T {
        if self.has_mass_at_inf() {
            T::infinity()
        } else {
            let xi = self.ess_inf();
            self.expect(|a| (a - xi).recip())
        }
    }

    /// `xi + 1/H_xi`: the left end of the interval on which the pre-optimal
    /// proportion is defined.
    pub fn lower_price_bound(&self) -> T {
        self.ess_inf() + self.h_xi().recip()
    }

    /// `H * exp(E[log a])`, the growth rate at the fair price with full
    /// investment.
    pub fn boundary_growth(&self) -> T {
        self.harmonic_integral() * self.log_moment().exp()
    }

    pub fn stats(&self) -> GameStats<T> {
        GameStats {
            expectation: self.expectation(),
            harmonic_integral: self.harmonic_integral(),
            ess_inf: self.ess_inf(),
            h_xi: self.h_xi(),
            lower_price_bound: self.lower_price_bound(),
            fair_price: self.fair_price(),
            log_moment: self.log_moment(),
        }
    }

    /// Parallel translation `a(x) -> a(x) + n`, requires `n > -xi`.
    pub fn translate(&self, n: T) -> Result<Self> {
        let xi = self.ess_inf();
        if !(n.is_finite() && n > -xi) {
            return Err(Error::domain(
                "shift n",
                n.as_f64(),
                format!("(-xi, inf) = ({}, inf)", (-xi).as_f64()),
            ));
        }
        let shift = self.shift + n;
        let outcomes: Vec<Outcome<T>> = self
            .base
            .iter()
            .zip(&self.outcomes)
            .map(|(&b, o)| Outcome::new(b + shift, o.prob))
            .collect();
        let translated = Game {
            label: self.label.clone(),
            base: self.base.clone(),
            shift,
            base_floor: self.base_floor,
            outcomes,
        };
        // Float rounding may push a payout near -n to zero; reject rather than
        // hand the solvers a degenerate game.
        if translated.outcomes.iter().any(|o| o.payout <= T::zero())
            || translated.ess_inf() <= T::zero()
        {
            return Err(Error::domain(
                "shift n",
                n.as_f64(),
                format!("(-xi, inf) = ({}, inf)", (-xi).as_f64()),
            ));
        }
        Ok(translated)
    }
}

impl<T: Scalar> PartialEq for Game<T> {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
            && self.outcomes == other.outcomes
            && self.has_mass_at_inf() == other.has_mass_at_inf()
            && self.ess_inf() == other.ess_inf()
    }
}

/// Summary statistics of a game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GameStats<T> {
    /// `E`
    pub expectation: T,
    /// `H`
    pub harmonic_integral: T,
    /// `xi`
    pub ess_inf: T,
    /// `H_xi`, `+inf` when mass sits at `xi`
    pub h_xi: T,
    /// `xi + 1/H_xi`
    pub lower_price_bound: T,
    /// `1/H`
    pub fair_price: T,
    pub log_moment: T,
}

/// Gauss–Legendre nodes and weights on `[lo, hi]`.
pub fn gauss_legendre<T: Scalar>(n: usize, lo: T, hi: T) -> Vec<(T, T)> {
    let half = (hi.as_f64() - lo.as_f64()) / 2.0;
    let mid = (hi.as_f64() + lo.as_f64()) / 2.0;
    let mut nodes = vec![(0.0_f64, 0.0_f64); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(z) and its derivative.
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = (mid - half * z, half * w);
        nodes[n - 1 - i] = (mid + half * z, half * w);
    }
    nodes
        .into_iter()
        .map(|(x, w)| (T::lit(x), T::lit(w)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn example2() -> Game<f64> {
        Game::from_pairs(&[(1.0, 0.5), (19.0, 0.5)]).unwrap()
    }

    #[test]
    fn example_two_is_valid_with_expected_stats() {
        let s = example2().stats();
        assert_eq!(s.expectation, 10.0);
        assert!((s.harmonic_integral - 10.0 / 19.0).abs() < 1e-15);
        assert_eq!(s.ess_inf, 1.0);
        assert!(s.h_xi.is_infinite());
        assert_eq!(s.lower_price_bound, 1.0);
        assert!((s.fair_price - 1.9).abs() < 1e-14);
    }

    #[test]
    fn three_point_stats_by_hand() {
        let g: Game<f64> = Game::from_pairs(&[(2.0, 0.25), (4.0, 0.25), (8.0, 0.5)]).unwrap();
        let s = g.stats();
        assert_eq!(s.expectation, 5.5);
        // 0.25/2 + 0.25/4 + 0.5/8
        assert_eq!(s.harmonic_integral, 0.25);
        assert_eq!(s.ess_inf, 2.0);
        assert!(s.h_xi.is_infinite());
    }

    #[test]
    fn constant_profit_rejected() {
        let v = validate(&[Outcome::new(5.0, 1.0)]);
        assert!(matches!(v.violations[..], [Violation::ConstantProfit { .. }]));
        // a zero-weight second point does not rescue it
        let err = Game::from_pairs(&[(2.0, 1.0), (3.0, 0.0)]).unwrap_err();
        assert!(err.to_string().contains("constant profit"), "{err}");
    }

    #[test]
    fn nonpositive_payout_rejected() {
        let v = validate(&[Outcome::new(-1.0, 0.5), Outcome::new(3.0, 0.5)]);
        assert!(v
            .violations
            .iter()
            .any(|x| matches!(x, Violation::NonPositivePayout { index: 0, .. })));
    }

    #[test]
    fn weight_sum_and_normalization() {
        let pairs = [Outcome::new(1.0, 0.45), Outcome::new(19.0, 0.45)];
        assert!(matches!(
            validate(&pairs).violations[..],
            [Violation::WeightSum { .. }]
        ));
        let g = Game::normalized(pairs.to_vec(), None).unwrap();
        assert_eq!(g, example2());
    }

    #[test]
    fn duplicates_merge_and_sort() {
        let g = Game::from_pairs(&[(19.0, 0.25), (1.0, 0.5), (19.0, 0.25), (7.0, 0.0)]).unwrap();
        assert_eq!(g, example2());
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn translate_example_two() {
        let g = example2();
        assert_eq!(g.translate(0.0).unwrap(), g);
        let t = g.translate(99.0).unwrap();
        assert_eq!(t.outcomes()[0].payout, 100.0);
        assert_eq!(t.outcomes()[1].payout, 118.0);
        assert_eq!(t.expectation(), 109.0);
        for n in [-0.5, 0.0, 3.0, 99.0, 1e4] {
            let h = g.translate(n).unwrap().harmonic_integral();
            let closed = (n + 10.0) / ((n + 1.0) * (n + 19.0));
            assert!((h - closed).abs() <= 1e-15 * closed, "n={n}");
        }
    }

    #[test]
    fn translate_rejects_shift_at_bound() {
        let err = example2().translate(-1.0).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
        assert!(err.to_string().contains("-1"), "{err}");
    }

    #[test]
    fn support_floor_gives_finite_h_xi() {
        let g: Game<f64> = Game::from_pairs(&[(2.0, 0.5), (4.0, 0.5)])
            .unwrap()
            .with_support_floor(1.0)
            .unwrap();
        let s = g.stats();
        assert_eq!(s.ess_inf, 1.0);
        assert!((s.h_xi - (0.5 + 0.5 / 3.0)).abs() < 1e-15);
        assert!(s.lower_price_bound > s.ess_inf && s.lower_price_bound < s.fair_price);
        assert!(g.clone().with_support_floor(2.5).is_err());
        // floor moves with the translation
        let t = g.translate(3.0).unwrap();
        assert_eq!(t.ess_inf(), 4.0);
        let gap = |g: &Game<f64>| g.expectation() - g.lower_price_bound();
        assert!((gap(&t) - gap(&g)).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let nodes = gauss_legendre::<f64>(5, 0.0, 2.0);
        let w: f64 = nodes.iter().map(|&(_, w)| w).sum();
        assert!((w - 2.0).abs() < 1e-14);
        // degree 9 is exact for 5 nodes: int_0^2 x^9 = 2^10 / 10
        let i9: f64 = nodes.iter().map(|&(x, w)| w * x.powi(9)).sum();
        assert!((i9 - 102.4).abs() < 1e-11);
    }

    #[test]
    fn density_samples_build_a_floor_game() {
        // payoff a(x) = 1 + x on [0, 1] with uniform density
        let q = gauss_legendre::<f64>(16, 0.0, 1.0);
        let payouts: Vec<f64> = q.iter().map(|&(x, _)| 1.0 + x).collect();
        let weights: Vec<f64> = q.iter().map(|&(_, w)| w).collect();
        let dens = vec![1.0; q.len()];
        let g = Game::from_density_samples(&payouts, &weights, &dens, Some(1.0), None).unwrap();
        assert!((g.expectation() - 1.5).abs() < 1e-14);
        assert!((g.harmonic_integral() - 2f64.ln()).abs() < 1e-14);
        assert!(!g.has_mass_at_inf());
        assert!(g.h_xi().is_finite());
    }

    fn arb_game() -> impl Strategy<Value = Game<f64>> {
        prop::collection::vec((0.1f64..100.0, 0.01f64..1.0), 2..8).prop_filter_map(
            "needs two distinct payouts",
            |pairs| {
                let outcomes = pairs.into_iter().map(|(a, p)| Outcome::new(a, p)).collect();
                Game::normalized(outcomes, None).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn price_bound_chain(g in arb_game()) {
            let s = g.stats();
            prop_assert!(s.ess_inf <= s.lower_price_bound);
            prop_assert!(s.lower_price_bound < s.fair_price);
            prop_assert!(s.fair_price < s.expectation);
            prop_assert!(s.log_moment.is_finite());
        }

        #[test]
        fn translation_composes_exactly(g in arb_game(), f1 in 0.0f64..1.0, n2 in -0.5f64..50.0) {
            let n1 = -g.ess_inf() * 0.9 * f1;
            let a = g.translate(n1).unwrap();
            prop_assume!(n2 > -a.ess_inf());
            let twice = a.translate(n2).unwrap();
            let once = g.translate(n1 + n2).unwrap();
            prop_assert_eq!(twice, once);
        }

        #[test]
        fn translated_expectation_and_gap(g in arb_game(), n in -0.99f64..100.0) {
            let n = n * if n < 0.0 { g.ess_inf() } else { 1.0 };
            let t = g.translate(n).unwrap();
            let e = g.expectation();
            prop_assert!((t.expectation() - (e + n)).abs() <= 1e-12 * (e + n.abs()).max(1.0));
            prop_assert!(t.log_moment().is_finite());
            let gap0 = e - g.lower_price_bound();
            let gap1 = t.expectation() - t.lower_price_bound();
            prop_assert!((gap1 - gap0).abs() <= 1e-12 * (e + n.abs()).max(1.0));
        }

        #[test]
        fn fair_price_minus_shift_increases(g in arb_game()) {
            let xi = g.ess_inf();
            let grid: Vec<f64> = (0..40).map(|k| -0.95 * xi + (k as f64).powi(2) * 0.1).collect();
            let e = g.expectation();
            let w: Vec<f64> = grid.iter().map(|&n| g.translate(n).unwrap().fair_price() - n).collect();
            for pair in w.windows(2) {
                prop_assert!(pair[1] > pair[0], "{:?}", pair);
            }
            prop_assert!(w.iter().all(|&x| x < e));
        }
    }
}
