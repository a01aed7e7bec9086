//! Behaviour of games under parallel translation `a(x) -> a(x) + n`.
//!
//! Translating a game and its price by the same `n` leaves the ratio
//! `t~_u / u` and the growth rate `G~_u(t~_u)` unchanged, so interior optimal
//! prices translate additively. Once the shift is large enough that `e^r`
//! exceeds the boundary growth `H exp(E[log a])` of the translated game,
//! pricing switches to full investment and `u_r / E` tends to `e^-r`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::scalar::Scalar;
use crate::solver::{KellySolver, PricingSolution};

/// Side-by-side comparison of a game at price `u` and its translate at `u + n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TranslationReport<T> {
    pub shift: T,
    pub price: T,
    /// `t~_u / u`
    pub ratio_original: T,
    /// `t~_{u+n} / (u + n)` on the translated game
    pub ratio_translated: T,
    pub growth_original: T,
    pub growth_translated: T,
    pub ratio_residual: T,
    pub growth_residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThresholdNote {
    Found,
    /// `e^r` already exceeds the boundary growth of the untranslated game.
    AlreadyFullInvestmentAtZeroShift,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdResult<T> {
    pub rate: T,
    /// Smallest nonnegative shift at which full investment becomes optimal.
    pub n0: Option<T>,
    /// `|boundary_growth(n0) - e^r|`
    pub residual: Option<T>,
    pub regime_note: ThresholdNote,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticRow<T> {
    pub shift: T,
    /// `E_n - 1/H_n`
    pub gap: T,
    /// `H_n exp(E[log(a + n)])`
    pub boundary_growth: T,
    /// `u_r(n) / E_n`
    pub price_ratio: T,
    /// `1/H_n - n`
    pub monotone_witness: T,
}

fn compare<T: Scalar>(
    solver: &KellySolver<T>,
    game: &Game<T>,
    u: T,
    n: T,
) -> Result<TranslationReport<T>> {
    let original = solver.pre_optimal_proportion(game, u)?;
    let shifted_game = game.translate(n)?;
    let shifted = solver.pre_optimal_proportion(&shifted_game, u + n)?;
    let ratio_original = original.proportion / u;
    let ratio_translated = shifted.proportion / (u + n);
    Ok(TranslationReport {
        shift: n,
        price: u,
        ratio_original,
        ratio_translated,
        growth_original: original.growth,
        growth_translated: shifted.growth,
        ratio_residual: (ratio_original - ratio_translated).abs(),
        growth_residual: (original.growth - shifted.growth).abs(),
    })
}

/// Compares `t~_u / u` against `t~_{u+n} / (u + n)` on the translated game.
pub fn check_ratio_invariance<T: Scalar>(
    solver: &KellySolver<T>,
    game: &Game<T>,
    u: T,
    n: T,
) -> Result<TranslationReport<T>> {
    compare(solver, game, u, n)
}

/// Compares `G~_u(t~_u)` against the translated game's `G~_{u+n}(t~_{u+n})`.
/// Fills the same report as [`check_ratio_invariance`].
pub fn check_growth_invariance<T: Scalar>(
    solver: &KellySolver<T>,
    game: &Game<T>,
    u: T,
    n: T,
) -> Result<TranslationReport<T>> {
    compare(solver, game, u, n)
}

/// Boundary growth `H_n exp(E[log(a + n)])` of the game translated by `n`.
pub fn boundary_growth_at<T: Scalar>(game: &Game<T>, n: T) -> Result<T> {
    Ok(game.translate(n)?.boundary_growth())
}

const THRESHOLD_DOUBLINGS: usize = 60;

/// Shift `n0 >= 0` at which the translated boundary growth falls to `e^r`.
pub fn threshold_shift<T: Scalar>(
    solver: &KellySolver<T>,
    game: &Game<T>,
    r: T,
) -> Result<ThresholdResult<T>> {
    if !(r.is_finite() && r > T::zero()) {
        return Err(Error::domain("rate r", r.as_f64(), "(0, inf)"));
    }
    let target = r.exp();
    let excess = |n: T| -> Result<T> { Ok(boundary_growth_at(game, n)? - target) };
    let at_zero = excess(T::zero())?;
    if at_zero.abs() <= solver.tol_res * target {
        return Ok(ThresholdResult {
            rate: r,
            n0: Some(T::zero()),
            residual: Some(at_zero.abs()),
            regime_note: ThresholdNote::Found,
        });
    }
    if at_zero < T::zero() {
        return Ok(ThresholdResult {
            rate: r,
            n0: None,
            residual: None,
            regime_note: ThresholdNote::AlreadyFullInvestmentAtZeroShift,
        });
    }

    let mut hi = T::one().max(T::lit(10.0) * game.expectation());
    let mut doublings = 0;
    while excess(hi)? >= T::zero() {
        doublings += 1;
        if doublings > THRESHOLD_DOUBLINGS {
            return Err(Error::NoBracket {
                what: "threshold shift",
                lo: 0.0,
                hi: hi.as_f64(),
                f_lo: at_zero.as_f64(),
                f_hi: excess(hi)?.as_f64(),
            });
        }
        hi = hi * T::lit(2.0);
    }

    let (mut lo, mut f_lo) = (T::zero(), at_zero);
    let mut n0 = hi;
    let mut best = excess(hi)?;
    for _ in 0..solver.max_iter.max(1) {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            if f_lo.abs() < best.abs() {
                n0 = lo;
                best = f_lo;
            }
            break;
        }
        let fm = excess(mid)?;
        if fm.abs() <= best.abs() {
            n0 = mid;
            best = fm;
        }
        if fm == T::zero() || (fm.abs() <= solver.tol_res * target && hi - lo <= solver.tol_t * mid.max(T::one())) {
            break;
        }
        if fm > T::zero() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdResult {
        rate: r,
        n0: Some(n0),
        residual: Some(best.abs()),
        regime_note: ThresholdNote::Found,
    })
}

/// Prices the game translated by `n`. When `e^r` is below the boundary growth
/// of both the original and the translated game, also checks that the price
/// equals the original optimal price plus `n`.
pub fn price_translated<T: Scalar>(
    solver: &KellySolver<T>,
    game: &Game<T>,
    r: T,
    n: T,
) -> Result<PricingSolution<T>> {
    if !(r.is_finite() && r > T::zero()) {
        return Err(Error::domain("rate r", r.as_f64(), "(0, inf)"));
    }
    let shifted = game.translate(n)?;
    let priced = solver.optimal_price(&shifted, r)?;
    let target = r.exp();
    if target < game.boundary_growth() && target < shifted.boundary_growth() {
        let base = solver.optimal_price(game, r)?;
        let expected = base.optimal_price + n;
        let scale = T::one().max(expected.abs());
        let tol = T::lit(1e-8).max(T::lit(1e4) * solver.tol_t) * scale;
        if (priced.optimal_price - expected).abs() > tol {
            return Err(Error::Consistency(format!(
                "translated price {} differs from original price {} + shift {} by more than {}",
                priced.optimal_price.as_f64(),
                base.optimal_price.as_f64(),
                n.as_f64(),
                tol.as_f64()
            )));
        }
    }
    Ok(priced)
}

/// Tracks the large-shift quantities over increasing shifts. Rows are
/// computed in parallel and returned in input order.
pub fn asymptotic_sweep<T: Scalar>(
    solver: &KellySolver<T>,
    game: &Game<T>,
    r: T,
    shifts: &[T],
) -> Result<Vec<AsymptoticRow<T>>> {
    if let Some(w) = shifts.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::domain(
            "shift",
            w[1].as_f64(),
            format!("strictly greater than the previous shift {}", w[0].as_f64()),
        ));
    }
    shifts
        .par_iter()
        .map(|&n| {
            let g = game.translate(n)?;
            let price = solver.optimal_price(&g, r)?;
            let e = g.expectation();
            let fair = g.fair_price();
            Ok(AsymptoticRow {
                shift: n,
                gap: e - fair,
                boundary_growth: g.boundary_growth(),
                price_ratio: price.optimal_price / e,
                monotone_witness: fair - n,
            })
        })
        .collect()
}
