//! JSON game documents:
//! `{"label": "...", "outcomes": [{"payout": 1.0, "prob": 0.5}, ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Game, Outcome};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub outcomes: Vec<OutcomeEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeEntry {
    pub payout: f64,
    pub prob: f64,
}

impl GameDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_game<T: Scalar>(&self, normalize: bool) -> Result<Game<T>> {
        let outcomes = self
            .outcomes
            .iter()
            .map(|o| Outcome::new(T::lit(o.payout), T::lit(o.prob)))
            .collect();
        if normalize {
            Game::normalized(outcomes, self.label.clone())
        } else {
            Game::new(outcomes, self.label.clone())
        }
    }

    pub fn from_game<T: Scalar>(game: &Game<T>) -> Self {
        GameDocument {
            label: game.label().map(str::to_owned),
            outcomes: game
                .outcomes()
                .iter()
                .map(|o| OutcomeEntry {
                    payout: o.payout.as_f64(),
                    prob: o.prob.as_f64(),
                })
                .collect(),
        }
    }
}

/// Parses and validates a game document.
pub fn load_game_spec<T: Scalar>(text: &str, normalize: bool) -> Result<Game<T>> {
    GameDocument::parse(text)?.to_game(normalize)
}

/// Serializes a game in canonical form. A declared support floor below the
/// smallest payout is not part of the document format and is not written.
pub fn save_game_spec<T: Scalar>(game: &Game<T>) -> String {
    serde_json::to_string_pretty(&GameDocument::from_game(game)).expect("document serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Violation;

    const EXAMPLE2: &str = r#"{"label": "example 2", "outcomes": [
        {"payout": 1, "prob": 0.5}, {"payout": 19, "prob": 0.5}]}"#;

    #[test]
    fn minimal_document() {
        let g: Game<f64> =
            load_game_spec(r#"{"outcomes":[{"payout":2,"prob":0.5},{"payout":3,"prob":0.5}]}"#, false)
                .unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.label(), None);
    }

    #[test]
    fn weights_short_of_one() {
        let text = r#"{"outcomes":[{"payout":2,"prob":0.45},{"payout":3,"prob":0.45}]}"#;
        match load_game_spec::<f64>(text, false) {
            Err(Error::Validation(v)) => {
                assert!(matches!(v.violations[..], [Violation::WeightSum { .. }]))
            }
            other => panic!("expected validation error, got {other:?}"),
        }
        assert!(load_game_spec::<f64>(text, true).is_ok());
    }

    #[test]
    fn round_trip_example_two() {
        let g: Game<f64> = load_game_spec(EXAMPLE2, false).unwrap();
        let text = save_game_spec(&g);
        let back: Game<f64> = load_game_spec(&text, false).unwrap();
        assert_eq!(back, g);
        assert_eq!(save_game_spec(&back), text);
    }

    #[test]
    fn malformed_text_reports_position() {
        let err = load_game_spec::<f64>("{\"outcomes\": [\n  {\"payout\": 1,, }]}", false).unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            load_game_spec::<f64>(r#"{"outcomes":[{"payout":1,"probability":1}]}"#, false),
            Err(Error::Parse { .. })
        ));
    }
}
