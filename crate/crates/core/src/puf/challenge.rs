//! Challenges and responses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DeviceLibrary, StateClass};

/// An ordered selection of distinct 1-based dot positions. Order matters:
/// the response lists states in challenge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Challenge {
    positions: Vec<u32>,
}

impl Challenge {
    pub fn new(positions: Vec<u32>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::EmptyChallenge);
        }
        for (i, &p) in positions.iter().enumerate() {
            if p == 0 {
                return Err(Error::PositionOutOfRange {
                    position: 0,
                    len: usize::MAX,
                });
            }
            if positions[..i].contains(&p) {
                return Err(Error::DuplicatePosition(p));
            }
        }
        Ok(Challenge { positions })
    }

    /// Parses a comma-separated position list such as `13,7,9,18,17`.
    pub fn parse(text: &str) -> Result<Self> {
        let positions = text
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Schema(format!("bad challenge position `{part}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Challenge::new(positions)
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Checks every position exists in the library.
    pub fn validate_against(&self, library: &DeviceLibrary) -> Result<()> {
        for &p in &self.positions {
            library.dot(p)?;
        }
        Ok(())
    }
}

impl std::fmt::Display for Challenge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for p in &self.positions {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// Majority-voted SD/vortex answer per challenged position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Response {
    pub states: Vec<StateClass>,
    pub trials_used: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_keeps_order() {
        let c = Challenge::parse("13,7,9,18,17").unwrap();
        assert_eq!(c.positions(), &[13, 7, 9, 18, 17]);
        assert_eq!(c.to_string(), "13,7,9,18,17");
    }

    #[test]
    fn duplicates_and_empty_rejected() {
        assert!(matches!(
            Challenge::new(vec![1, 2, 1]),
            Err(Error::DuplicatePosition(1))
        ));
        assert!(matches!(Challenge::new(vec![]), Err(Error::EmptyChallenge)));
        assert!(Challenge::parse("1,x").is_err());
    }
}
