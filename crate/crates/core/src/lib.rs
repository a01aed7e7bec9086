//! Growth-optimal (Kelly) proportions and prices for stochastic payoff games,
//! and the behaviour of both under parallel translation of the payoff.
//!
//! A game pays `a` gross dollars per dollar staked, with `a` drawn from a
//! finite distribution. Given a price `u`, the investor stakes a proportion
//! `t` of wealth each period; [`solver`] finds the proportion maximizing the
//! long-run growth rate and inverts the growth curve to price the game at a
//! riskless rate `r`. [`translation`] compares a game with its translate
//! `a + n`, and [`oracle`] holds independent checks (closed forms, grid
//! search, Monte Carlo).
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the `*64` and
//! `*32` aliases below fix the precision.
//!
//! ```
//! use gamepricing::{Game64, KellySolver64, Regime};
//!
//! let game = Game64::from_pairs(&[(1.0, 0.5), (19.0, 0.5)]).unwrap();
//! let price = KellySolver64::default().optimal_price(&game, 0.05).unwrap();
//! assert_eq!(price.regime, Regime::Interior);
//! assert!((price.optimal_price - 7.224).abs() < 1e-3);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod document;
pub mod error;
pub mod game;
pub mod oracle;
pub mod scalar;
pub mod solver;
pub mod translation;

pub use document::{load_game_spec, save_game_spec, GameDocument};
pub use error::{Error, Result};
pub use game::{validate, Game, GameStats, Outcome, Verdict, Violation};
pub use oracle::{SimulationResult, SplitMix64, TwoPointGame};
pub use scalar::Scalar;
pub use solver::{KellySolver, PricingSolution, ProportionSolution, Regime};
pub use translation::{AsymptoticRow, ThresholdNote, ThresholdResult, TranslationReport};

pub type Game64 = Game<f64>;
pub type Game32 = Game<f32>;
pub type GameStats64 = GameStats<f64>;
pub type GameStats32 = GameStats<f32>;
pub type KellySolver64 = KellySolver<f64>;
pub type KellySolver32 = KellySolver<f32>;
pub type ProportionSolution64 = ProportionSolution<f64>;
pub type PricingSolution64 = PricingSolution<f64>;
pub type TranslationReport64 = TranslationReport<f64>;
pub type ThresholdResult64 = ThresholdResult<f64>;
pub type AsymptoticRow64 = AsymptoticRow<f64>;
pub type TwoPointGame64 = TwoPointGame<f64>;
pub type SimulationResult64 = SimulationResult<f64>;
