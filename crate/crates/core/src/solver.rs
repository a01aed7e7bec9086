//! Log-optimal proportion of investment and growth-rate pricing.
//!
//! At price `u` and proportion `t`, one period multiplies wealth by
//! `a t / u - t + 1`. The pre-optimal proportion `t~_u` is the unique root in
//! `(0, u / (u - xi))` of
//!
//! ```text
//! R_u(t) = sum_i p_i (a_i - u) / ((a_i - u) t + u)
//! ```
//!
//! which is strictly decreasing in `t` with `R_u(0) = (E - u) / u > 0`. The
//! pre-growth rate is `G~_u(t) = exp(sum_i p_i log(a_i t / u - t + 1))`.
//! Above the fair price `1/H` the optimal proportion is `t~_u`; at or below
//! it the investor stakes everything and the growth rate is
//! `exp(E[log a]) / u`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::scalar::{pairwise_sum, Scalar};

/// Root of the proportion equation at a given price, or the capped
/// full-investment proportion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProportionSolution<T> {
    pub price: T,
    pub proportion: T,
    pub growth: T,
    /// `R_u(proportion)`
    pub residual: T,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// Price above the fair price; proportion is `t~_u < 1`.
    Interior,
    /// Price at or below the fair price; proportion is 1.
    FullInvestment,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PricingSolution<T> {
    /// Continuously compounded riskless rate per period.
    pub rate: T,
    pub optimal_price: T,
    pub regime: Regime,
    pub proportion: T,
    /// Growth rate recomputed at `(optimal_price, proportion)`; equals `e^rate`.
    pub growth_check: T,
}

/// Bisection-based solver. All methods are pure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KellySolver<T> {
    /// Residual tolerance for the proportion equation.
    pub tol_res: T,
    /// Relative bracket width at which bisection stops.
    pub tol_t: T,
    pub max_iter: usize,
}

impl<T: Scalar> Default for KellySolver<T> {
    fn default() -> Self {
        KellySolver {
            tol_res: T::default_tol(),
            tol_t: T::default_tol(),
            max_iter: 200,
        }
    }
}

/// Relative offset that keeps the proportion bracket off the pole at
/// `u / (u - xi)`.
const POLE_GUARD: f64 = 1e-13;
/// Relative offset of the price bracket from `1/H` and `E`.
const PRICE_GUARD: f64 = 1e-12;

struct Root<T> {
    x: T,
    fx: T,
    iterations: usize,
}

/// Bisection for a strictly decreasing `f` with `f(lo) > 0 > f(hi)`.
/// Stops when `done(lo, hi, mid, f(mid))` or the bracket can no longer be
/// split in floating point.
fn bisect_decreasing<T, F, D>(
    what: &'static str,
    mut lo: T,
    mut hi: T,
    mut f: F,
    done: D,
    max_iter: usize,
) -> Result<Root<T>>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
    D: Fn(T, T, T, T) -> bool,
{
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == T::zero() {
        return Ok(Root { x: lo, fx: f_lo, iterations: 0 });
    }
    if f_hi == T::zero() {
        return Ok(Root { x: hi, fx: f_hi, iterations: 0 });
    }
    if !(f_lo > T::zero() && f_hi < T::zero()) {
        return Err(Error::NoBracket {
            what,
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            f_lo: f_lo.as_f64(),
            f_hi: f_hi.as_f64(),
        });
    }
    let (mut best, mut best_f) = if f_lo.abs() <= f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
    for iterations in 1..=max_iter {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            // adjacent floats: the bracket is as tight as it gets
            return Ok(Root { x: best, fx: best_f, iterations });
        }
        let fm = f(mid)?;
        if fm.abs() <= best_f.abs() {
            best = mid;
            best_f = fm;
        }
        if fm == T::zero() || done(lo, hi, mid, fm) {
            return Ok(Root { x: mid, fx: fm, iterations });
        }
        if fm > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence {
        what,
        iterations: max_iter,
        lo: lo.as_f64(),
        hi: hi.as_f64(),
    })
}

fn guard<T: Scalar>(rel: f64) -> T {
    T::lit(rel).max(T::epsilon() * T::lit(4.0))
}

fn fmt_interval<T: Scalar>(lo: T, hi: T) -> String {
    format!("({}, {})", lo.as_f64(), hi.as_f64())
}

impl<T: Scalar> KellySolver<T> {
    pub fn new(tol: T, max_iter: usize) -> Self {
        KellySolver {
            tol_res: tol,
            tol_t: tol,
            max_iter,
        }
    }

    fn residual_unchecked(game: &Game<T>, u: T, t: T) -> T {
        let o = game.outcomes();
        pairwise_sum(o.len(), |i| {
            let d = o[i].payout - u;
            o[i].prob * d / (d * t + u)
        })
    }

    fn log_growth_unchecked(game: &Game<T>, u: T, t: T) -> T {
        let o = game.outcomes();
        pairwise_sum(o.len(), |i| {
            o[i].prob * (t * (o[i].payout - u) / u).ln_1p()
        })
    }

    /// Upper end `u / (u - xi)` of the proportion interval.
    fn proportion_pole(game: &Game<T>, u: T) -> T {
        u / (u - game.ess_inf())
    }

    /// `R_u(t)`; requires `xi < u` and `0 <= t < u / (u - xi)`.
    pub fn proportion_residual(&self, game: &Game<T>, u: T, t: T) -> Result<T> {
        let xi = game.ess_inf();
        if !(u.is_finite() && u > xi) {
            return Err(Error::domain(
                "price u",
                u.as_f64(),
                format!("(xi, inf) = ({}, inf)", xi.as_f64()),
            ));
        }
        let pole = Self::proportion_pole(game, u);
        if !(t >= T::zero() && t < pole) {
            return Err(Error::domain(
                "proportion t",
                t.as_f64(),
                format!("[0, u/(u-xi)) = [0, {})", pole.as_f64()),
            ));
        }
        Ok(Self::residual_unchecked(game, u, t))
    }

    /// `G~_u(t)`; every wealth factor `a_i t / u - t + 1` must be positive.
    pub fn growth_rate(&self, game: &Game<T>, u: T, t: T) -> Result<T> {
        if !(u.is_finite() && u > T::zero()) {
            return Err(Error::domain("price u", u.as_f64(), "(0, inf)"));
        }
        if !(t.is_finite() && t >= T::zero()) {
            return Err(Error::domain("proportion t", t.as_f64(), "[0, inf)"));
        }
        for (index, o) in game.outcomes().iter().enumerate() {
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
        }
        Ok(Self::log_growth_unchecked(game, u, t).exp())
    }

    /// Unique root `t~_u` of the proportion equation for
    /// `u` in `(xi + 1/H_xi, E)`. Not capped at 1: below the fair price the
    /// root exceeds 1.
    pub fn pre_optimal_proportion(&self, game: &Game<T>, u: T) -> Result<ProportionSolution<T>> {
        let lower = game.lower_price_bound();
        let e = game.expectation();
        if !(u > lower && u < e) {
            return Err(Error::domain(
                "price u",
                u.as_f64(),
                format!("(xi + 1/H_xi, E) = {}", fmt_interval(lower, e)),
            ));
        }
        let hi = Self::proportion_pole(game, u) * (T::one() - guard::<T>(POLE_GUARD));
        let (tol_res, tol_t) = (self.tol_res, self.tol_t);
        let root = bisect_decreasing(
            "pre-optimal proportion",
            T::zero(),
            hi,
            |t| Ok(Self::residual_unchecked(game, u, t)),
            |lo, hi, mid, fm| fm.abs() <= tol_res && hi - lo <= tol_t * mid,
            self.max_iter,
        )?;
        Ok(ProportionSolution {
            price: u,
            proportion: root.x,
            growth: self.growth_rate(game, u, root.x)?,
            residual: root.fx,
            iterations: root.iterations,
        })
    }

    /// Growth-maximizing proportion at price `u` in `(0, E)`, capped at 1.
    pub fn optimal_proportion(&self, game: &Game<T>, u: T) -> Result<ProportionSolution<T>> {
        let e = game.expectation();
        if !(u > T::zero() && u < e) {
            return Err(Error::domain(
                "price u",
                u.as_f64(),
                format!("(0, E) = {}", fmt_interval(T::zero(), e)),
            ));
        }
        if u <= game.fair_price() {
            Ok(ProportionSolution {
                price: u,
                proportion: T::one(),
                growth: game.log_moment().exp() / u,
                residual: Self::residual_unchecked(game, u, T::one()),
                iterations: 0,
            })
        } else {
            self.pre_optimal_proportion(game, u)
        }
    }

    /// Price at which the maximized growth rate equals `e^r`.
    pub fn optimal_price(&self, game: &Game<T>, r: T) -> Result<PricingSolution<T>> {
        if !(r.is_finite() && r > T::zero()) {
            return Err(Error::domain("rate r", r.as_f64(), "(0, inf)"));
        }
        let target = r.exp();
        if target >= game.boundary_growth() {
            let price = (game.log_moment() - r).exp();
            return Ok(PricingSolution {
                rate: r,
                optimal_price: price,
                regime: Regime::FullInvestment,
                proportion: T::one(),
                growth_check: self.growth_rate(game, price, T::one())?,
            });
        }

        let guard = guard::<T>(PRICE_GUARD);
        let lo = game.fair_price() * (T::one() + guard);
        let hi = game.expectation() * (T::one() - guard);
        let (tol_res, tol_t) = (self.tol_res, self.tol_t);
        let excess = |u: T| -> Result<T> { Ok(self.pre_optimal_proportion(game, u)?.growth - target) };
        let u = if excess(lo)? <= T::zero() {
            // e^r within the guard of the boundary growth
            lo
        } else {
            bisect_decreasing(
                "optimal price",
                lo,
                hi,
                excess,
                |lo, hi, mid, fm| fm.abs() <= tol_res * target && hi - lo <= tol_t * mid,
                self.max_iter,
            )?
            .x
        };
        let sol = self.pre_optimal_proportion(game, u)?;
        Ok(PricingSolution {
            rate: r,
            optimal_price: u,
            regime: Regime::Interior,
            proportion: sol.proportion,
            growth_check: sol.growth,
        })
    }
}

/// [`KellySolver::proportion_residual`] with default tolerances.
pub fn proportion_residual<T: Scalar>(game: &Game<T>, u: T, t: T) -> Result<T> {
    KellySolver::default().proportion_residual(game, u, t)
}

pub fn pre_optimal_proportion<T: Scalar>(game: &Game<T>, u: T) -> Result<ProportionSolution<T>> {
    KellySolver::default().pre_optimal_proportion(game, u)
}

pub fn growth_rate<T: Scalar>(game: &Game<T>, u: T, t: T) -> Result<T> {
    KellySolver::default().growth_rate(game, u, t)
}

pub fn optimal_proportion<T: Scalar>(game: &Game<T>, u: T) -> Result<ProportionSolution<T>> {
    KellySolver::default().optimal_proportion(game, u)
}

pub fn optimal_price<T: Scalar>(game: &Game<T>, r: T) -> Result<PricingSolution<T>> {
    KellySolver::default().optimal_price(game, r)
}
