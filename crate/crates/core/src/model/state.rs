//! Observable magnetic states of a dot after a degauss cycle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Settled state of one dot after AC demagnetization.
///
/// A never-gated dot stays paramagnetic (`ParamagneticOff`). A gated dot
/// settles into a single-domain state with one of two in-plane orientations,
/// or a vortex with one of two chiralities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MagneticState {
    ParamagneticOff,
    SdRight,
    SdLeft,
    VortexCw,
    VortexCcw,
}

impl MagneticState {
    /// Numeric code used in trace CSV files: 0=OFF, 1=SDR, 2=SDL, 3=VCW, 4=VCCW.
    pub fn code(self) -> u8 {
        match self {
            MagneticState::ParamagneticOff => 0,
            MagneticState::SdRight => 1,
            MagneticState::SdLeft => 2,
            MagneticState::VortexCw => 3,
            MagneticState::VortexCcw => 4,
        }
    }

    pub fn from_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(MagneticState::ParamagneticOff),
            1 => Ok(MagneticState::SdRight),
            2 => Ok(MagneticState::SdLeft),
            3 => Ok(MagneticState::VortexCw),
            4 => Ok(MagneticState::VortexCcw),
            other => Err(Error::Schema(format!("unknown state code {other}"))),
        }
    }

    /// SD/vortex class, or `None` for the OFF state.
    pub fn class(self) -> Option<StateClass> {
        match self {
            MagneticState::ParamagneticOff => None,
            MagneticState::SdRight | MagneticState::SdLeft => Some(StateClass::Sd),
            MagneticState::VortexCw | MagneticState::VortexCcw => Some(StateClass::Vortex),
        }
    }

    /// Orientation/chirality subclass, or `None` for the OFF state.
    pub fn direction(self) -> Option<Direction> {
        match self {
            MagneticState::ParamagneticOff => None,
            MagneticState::SdRight | MagneticState::VortexCw => Some(Direction::RightCw),
            MagneticState::SdLeft | MagneticState::VortexCcw => Some(Direction::LeftCcw),
        }
    }

    pub fn is_off(self) -> bool {
        self == MagneticState::ParamagneticOff
    }
}

/// SD vs vortex class of a degaussed state. This is the bit the PUF
/// machinery votes on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateClass {
    Sd,
    Vortex,
}

impl StateClass {
    pub fn other(self) -> StateClass {
        match self {
            StateClass::Sd => StateClass::Vortex,
            StateClass::Vortex => StateClass::Sd,
        }
    }
}

impl std::fmt::Display for StateClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateClass::Sd => write!(f, "SD"),
            StateClass::Vortex => write!(f, "V"),
        }
    }
}

/// Orientation (SD) or chirality (vortex) subclass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Right-oriented SD or clockwise vortex.
    RightCw,
    /// Left-oriented SD or counterclockwise vortex.
    LeftCcw,
}

/// Composes class and direction into the settled four-state outcome.
pub fn compose(class: StateClass, direction: Direction) -> MagneticState {
    match (class, direction) {
        (StateClass::Sd, Direction::RightCw) => MagneticState::SdRight,
        (StateClass::Sd, Direction::LeftCcw) => MagneticState::SdLeft,
        (StateClass::Vortex, Direction::RightCw) => MagneticState::VortexCw,
        (StateClass::Vortex, Direction::LeftCcw) => MagneticState::VortexCcw,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip() {
        for code in 0..=4u8 {
            assert_eq!(MagneticState::from_code(code).unwrap().code(), code);
        }
        assert!(MagneticState::from_code(5).is_err());
    }

    #[test]
    fn class_and_direction_split() {
        assert_eq!(MagneticState::SdRight.class(), Some(StateClass::Sd));
        assert_eq!(MagneticState::VortexCcw.class(), Some(StateClass::Vortex));
        assert_eq!(MagneticState::SdLeft.direction(), Some(Direction::LeftCcw));
        assert_eq!(MagneticState::VortexCw.direction(), Some(Direction::RightCw));
        assert_eq!(MagneticState::ParamagneticOff.class(), None);
    }

    #[test]
    fn compose_inverts_split() {
        for s in [
            MagneticState::SdRight,
            MagneticState::SdLeft,
            MagneticState::VortexCw,
            MagneticState::VortexCcw,
        ] {
            assert_eq!(compose(s.class().unwrap(), s.direction().unwrap()), s);
        }
    }
}
