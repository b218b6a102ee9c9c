use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::LcsError;
use crate::fsm::CalibratedFsm;
use crate::sequence::BinarySequence;
use crate::{dp, poset, rows};

/// The four independent ways of computing `L(X, Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Quadratic table recurrence.
    Dp,
    /// Fused prefix-max row operator.
    #[default]
    Rows,
    /// Published four-state machine under the frozen calibration.
    Fsm,
    /// Longest chain in the match poset.
    Poset,
}

impl Engine {
    pub const ALL: [Engine; 4] = [Engine::Dp, Engine::Rows, Engine::Fsm, Engine::Poset];

    pub fn lcs_length(self, x: &BinarySequence, y: &BinarySequence) -> usize {
        match self {
            Engine::Dp => dp::lcs_length(x, y),
            Engine::Rows => rows::lcs_length(x, y),
            Engine::Fsm => CalibratedFsm::published().lcs_length(x, y),
            Engine::Poset => poset::lcs_length(x, y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Engine::Dp => "dp",
            Engine::Rows => "rows",
            Engine::Fsm => "fsm",
            Engine::Poset => "poset",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = LcsError;

    fn from_str(s: &str) -> Result<Self, LcsError> {
        Engine::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| LcsError::UnknownEngine(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for e in Engine::ALL {
            assert_eq!(e.name().parse::<Engine>(), Ok(e));
        }
        assert_eq!("gpu".parse::<Engine>(), Err(LcsError::UnknownEngine("gpu".into())));
    }

    #[test]
    fn engines_agree_on_worked_example() {
        let x: BinarySequence = "01101110".parse().unwrap();
        let y: BinarySequence = "101001011".parse().unwrap();
        for e in Engine::ALL {
            assert_eq!(e.lcs_length(&x, &y), 6, "{e}");
        }
    }
}
