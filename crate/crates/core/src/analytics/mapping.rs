//! Symbol mappings applied to degaussed states before analysis.

use crate::error::{Error, Result};
use crate::model::MagneticState;

/// How the four settled states collapse into subclasses. Analytics over
/// both directionality groupings give identical Hamming statistics (the
/// two are complement relabelings); only bitstream polarity differs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DirectionGrouping {
    /// Right-oriented SD with CW vortex against left-oriented SD with CCW.
    #[default]
    RightWithCw,
    /// Alternative pairing: right-oriented SD with CCW vortex.
    RightWithCcw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateMapping {
    /// Each of the four settled states is its own symbol.
    FourState,
    /// Two directionality subclasses; the `1` bit is the grouping's
    /// right-handed set.
    BinaryDirection(DirectionGrouping),
}

impl StateMapping {
    /// Binary mapping with the default grouping.
    pub fn binary() -> Self {
        StateMapping::BinaryDirection(DirectionGrouping::default())
    }

    pub fn arity(self) -> usize {
        match self {
            StateMapping::FourState => 4,
            StateMapping::BinaryDirection(_) => 2,
        }
    }

    /// Symbol of a settled state, or `None` for OFF.
    pub fn symbol(self, state: MagneticState) -> Option<u8> {
        if state.is_off() {
            return None;
        }
        Some(match self {
            StateMapping::FourState => state.code() - 1,
            StateMapping::BinaryDirection(grouping) => u8::from(grouping.bit(state)),
        })
    }

    /// Bit value of a settled state under a binary mapping.
    pub fn bit(self, state: MagneticState, position: usize) -> Result<bool> {
        match self {
            StateMapping::FourState => Err(Error::BinaryMappingRequired),
            StateMapping::BinaryDirection(grouping) => {
                if state.is_off() {
                    Err(Error::OffState(position))
                } else {
                    Ok(grouping.bit(state))
                }
            }
        }
    }
}

impl DirectionGrouping {
    fn bit(self, state: MagneticState) -> bool {
        match self {
            DirectionGrouping::RightWithCw => matches!(
                state,
                MagneticState::SdRight | MagneticState::VortexCw
            ),
            DirectionGrouping::RightWithCcw => matches!(
                state,
                MagneticState::SdRight | MagneticState::VortexCcw
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grouping_matches_direction_subclass() {
        let m = StateMapping::binary();
        assert_eq!(m.symbol(MagneticState::SdRight), Some(1));
        assert_eq!(m.symbol(MagneticState::VortexCw), Some(1));
        assert_eq!(m.symbol(MagneticState::SdLeft), Some(0));
        assert_eq!(m.symbol(MagneticState::VortexCcw), Some(0));
        assert_eq!(m.symbol(MagneticState::ParamagneticOff), None);
    }

    #[test]
    fn alternative_grouping_flips_vortex_polarity() {
        let m = StateMapping::BinaryDirection(DirectionGrouping::RightWithCcw);
        assert_eq!(m.symbol(MagneticState::SdRight), Some(1));
        assert_eq!(m.symbol(MagneticState::VortexCcw), Some(1));
        assert_eq!(m.symbol(MagneticState::VortexCw), Some(0));
    }

    #[test]
    fn four_state_keeps_all_symbols() {
        let m = StateMapping::FourState;
        let symbols: Vec<_> = [
            MagneticState::SdRight,
            MagneticState::SdLeft,
            MagneticState::VortexCw,
            MagneticState::VortexCcw,
        ]
        .iter()
        .map(|&s| m.symbol(s).unwrap())
        .collect();
        assert_eq!(symbols, vec![0, 1, 2, 3]);
        assert!(m.bit(MagneticState::SdRight, 1).is_err());
    }
}
