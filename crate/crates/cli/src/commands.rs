use gamepricing::oracle::{grid_argmax_growth, simulate_wealth, two_point_closed_form};
use gamepricing::translation::{
    asymptotic_sweep, check_ratio_invariance, price_translated, threshold_shift,
};
use gamepricing::{
    Error, Game64, GameDocument, GameStats64, KellySolver64, PricingSolution64, ThresholdResult64,
    TranslationReport64, TwoPointGame64,
};
use serde::Serialize;

use crate::config::{Command, Format, RunConfig};
use crate::output::{to_csv, to_json};

pub const DEFAULT_SEED: u64 = 20_070_307;

const SWEEP_COLUMNS: [&str; 5] = ["n", "gap", "boundary_growth", "price_ratio", "monotone_witness"];

#[derive(Serialize)]
struct Report<'a, R> {
    config: &'a RunConfig,
    #[serde(flatten)]
    result: R,
}

#[derive(Serialize)]
struct Analysis {
    game: GameDocument,
    stats: GameStats64,
    /// `H exp(E[log a])`
    boundary_growth: f64,
}

#[derive(Serialize)]
struct Pricing {
    pricing: PricingSolution64,
    expectation: f64,
    expectation_over_growth: f64,
}

#[derive(Serialize)]
struct Translated {
    pricing: PricingSolution64,
    base_pricing: PricingSolution64,
    translated_expectation: f64,
    expectation_over_growth: f64,
    invariance: Option<TranslationReport64>,
    invariance_note: Option<String>,
}

#[derive(Serialize)]
struct Threshold {
    threshold: ThresholdResult64,
}

#[derive(Serialize)]
struct Sweep {
    columns: [&'static str; 5],
    rows: Vec<[f64; 5]>,
}

#[derive(Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
struct Verification {
    checks: Vec<Check>,
    all_passed: bool,
}

/// Successful command output plus whether every verification check passed.
pub struct Output {
    pub text: String,
    pub all_passed: bool,
}

fn json<R: Serialize>(config: &RunConfig, result: R) -> String {
    to_json(&Report { config, result })
}

pub fn run(config: &RunConfig, game: &Game64) -> Result<Output, Error> {
    let solver = KellySolver64::new(config.tol, config.max_iter);
    let rate = config.rate.unwrap_or_default();
    let text = match config.command {
        Command::Analyze => json(
            config,
            Analysis {
                game: GameDocument::from_game(game),
                stats: game.stats(),
                boundary_growth: game.boundary_growth(),
            },
        ),
        Command::Price => {
            let pricing = solver.optimal_price(game, rate)?;
            json(
                config,
                Pricing {
                    pricing,
                    expectation: game.expectation(),
                    expectation_over_growth: game.expectation() / rate.exp(),
                },
            )
        }
        Command::Translate => json(config, translate(&solver, game, rate, config.shift.unwrap_or_default())?),
        Command::Threshold => json(
            config,
            Threshold {
                threshold: threshold_shift(&solver, game, rate)?,
            },
        ),
        Command::Sweep => {
            let shifts = config.shifts.as_deref().unwrap_or_default();
            let rows: Vec<[f64; 5]> = asymptotic_sweep(&solver, game, rate, shifts)?
                .into_iter()
                .map(|r| [r.shift, r.gap, r.boundary_growth, r.price_ratio, r.monotone_witness])
                .collect();
            match config.format {
                Format::Csv => {
                    let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
                    return Ok(Output {
                        text: to_csv(&SWEEP_COLUMNS, &rows),
                        all_passed: true,
                    });
                }
                Format::Json => json(config, Sweep { columns: SWEEP_COLUMNS, rows }),
            }
        }
        Command::Verify => {
            let checks = verify(&solver, game, config)?;
            let all_passed = checks.iter().all(|c| c.passed);
            return Ok(Output {
                text: json(config, Verification { checks, all_passed }),
                all_passed,
            });
        }
    };
    Ok(Output { text, all_passed: true })
}

fn translate(solver: &KellySolver64, game: &Game64, rate: f64, shift: f64) -> Result<Translated, Error> {
    let pricing = price_translated(solver, game, rate, shift)?;
    let base_pricing = solver.optimal_price(game, rate)?;
    let translated_expectation = game.expectation() + shift;
    let u = base_pricing.optimal_price;
    let (invariance, invariance_note) = if u > game.lower_price_bound() && u < game.expectation() {
        (Some(check_ratio_invariance(solver, game, u, shift)?), None)
    } else {
        (
            None,
            Some(format!(
                "base price {u} lies outside (xi + 1/H_xi, E) = ({}, {}); no pre-optimal proportion",
                game.lower_price_bound(),
                game.expectation()
            )),
        )
    };
    Ok(Translated {
        pricing,
        base_pricing,
        translated_expectation,
        expectation_over_growth: translated_expectation / rate.exp(),
        invariance,
        invariance_note,
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Evenly spaced interior points of `(lo, hi)`.
fn interior_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (1..=points)
        .map(|k| lo + (hi - lo) * k as f64 / (points + 1) as f64)
        .collect()
}

fn verify(solver: &KellySolver64, game: &Game64, config: &RunConfig) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    let (lower, fair, e) = (game.lower_price_bound(), game.fair_price(), game.expectation());

    let grid = interior_grid(lower, e, 50);
    let sols = grid
        .iter()
        .map(|&u| solver.pre_optimal_proportion(game, u))
        .collect::<Result<Vec<_>, _>>()?;
    let worst_residual = sols.iter().map(|s| s.residual.abs()).fold(0.0, f64::max);
    checks.push(Check {
        name: "root_correctness",
        passed: worst_residual <= 1e-10,
        detail: format!("max |residual| {worst_residual:e} over 50 prices"),
    });
    let monotone = sols
        .windows(2)
        .all(|w| w[1].proportion < w[0].proportion && w[1].growth < w[0].growth);
    checks.push(Check {
        name: "monotonicity",
        passed: monotone,
        detail: "proportion and growth strictly decreasing in price over 50 prices".into(),
    });

    let at_fair = solver.pre_optimal_proportion(game, fair)?;
    checks.push(Check {
        name: "fair_price_boundary",
        passed: (at_fair.proportion - 1.0).abs() <= 1e-9,
        detail: format!("proportion at 1/H = {fair}: {}", at_fair.proportion),
    });

    let mut worst_steps = 0.0f64;
    for u in interior_grid(fair, e, 3) {
        let m = grid_argmax_growth(game, u, 100_000)?;
        let s = solver.pre_optimal_proportion(game, u)?;
        worst_steps = worst_steps.max((m.proportion - s.proportion).abs() / m.step);
    }
    checks.push(Check {
        name: "grid_argmax",
        passed: worst_steps <= 1.0,
        detail: format!("grid maximizer within {worst_steps:.3} steps of the root at 3 prices"),
    });

    if let [low, high] = game.outcomes() {
        let tp = TwoPointGame64::new(high.payout, low.payout, high.prob)?;
        let (mut worst_t, mut worst_g) = (0.0f64, 0.0f64);
        for u in interior_grid(low.payout, e, 20) {
            let (t, g) = two_point_closed_form(&tp, u, 0.0)?;
            let s = solver.pre_optimal_proportion(game, u)?;
            worst_t = worst_t.max(rel(s.proportion, t));
            worst_g = worst_g.max(rel(s.growth, g));
        }
        checks.push(Check {
            name: "two_point_closed_form",
            passed: worst_t <= 1e-9 && worst_g <= 1e-9,
            detail: format!("max relative error: proportion {worst_t:e}, growth {worst_g:e}"),
        });
    }

    let shifts = match config.shift {
        Some(n) => vec![n],
        None => vec![-0.5 * game.ess_inf(), 1.0, 10.0, 100.0],
    };
    let (mut worst_ratio, mut worst_growth) = (0.0f64, 0.0f64);
    for &n in &shifts {
        for u in interior_grid(lower, e, 5) {
            let rep = check_ratio_invariance(solver, game, u, n)?;
            worst_ratio = worst_ratio.max(rep.ratio_residual / rep.ratio_original.max(1.0));
            worst_growth = worst_growth.max(rep.growth_residual / rep.growth_original);
        }
    }
    checks.push(Check {
        name: "translation_invariance",
        passed: worst_ratio <= 1e-8 && worst_growth <= 1e-8,
        detail: format!(
            "shifts {shifts:?}: max relative residual ratio {worst_ratio:e}, growth {worst_growth:e}"
        ),
    });

    let (u, t) = match config.rate {
        Some(r) => {
            let p = solver.optimal_price(game, r)?;
            let s = solver.optimal_proportion(game, p.optimal_price)?;
            checks.push(Check {
                name: "pricing_consistency",
                passed: rel(s.growth, r.exp()) <= 1e-8,
                detail: format!(
                    "growth at optimal price {} is {} vs e^r {}",
                    p.optimal_price,
                    s.growth,
                    r.exp()
                ),
            });
            (p.optimal_price, p.proportion)
        }
        None => {
            let u = 0.5 * (fair + e);
            (u, solver.pre_optimal_proportion(game, u)?.proportion)
        }
    };
    let seed = config.seed.unwrap_or(DEFAULT_SEED);
    let sim = simulate_wealth(game, u, t, 1000, 100, seed)?;
    let expected = solver.growth_rate(game, u, t)?.ln();
    let z = (sim.mean_log_growth - expected).abs() / sim.std_error.max(f64::MIN_POSITIVE);
    checks.push(Check {
        name: "monte_carlo",
        passed: z <= 3.0 || sim.mean_log_growth == expected,
        detail: format!(
            "1e5 draws at u = {u}, t = {t}: mean log growth {} +- {} vs {expected} ({z:.2} se)",
            sim.mean_log_growth, sim.std_error
        ),
    });
    Ok(checks)
}
