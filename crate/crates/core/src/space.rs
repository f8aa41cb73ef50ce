use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The two function spaces the toolkit works with.
///
/// Several geometric quantities depend on the space only through an
/// exponent: Carleson boxes are compared against `m(I)` for Hardy and
/// `m(I)^2` for Bergman, and the canonical atom weights are `1 - |z|`
/// and `(1 - |z|)^2` respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Hardy,
    Bergman,
}

impl Space {
    /// 1 for Hardy, 2 for Bergman.
    pub fn exponent(self) -> i32 {
        match self {
            Space::Hardy => 1,
            Space::Bergman => 2,
        }
    }

    /// Maps a box exponent back to its space.
    pub fn from_exponent(alpha: u32) -> Option<Space> {
        match alpha {
            1 => Some(Space::Hardy),
            2 => Some(Space::Bergman),
            _ => None,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Hardy => f.write_str("hardy"),
            Space::Bergman => f.write_str("bergman"),
        }
    }
}

impl FromStr for Space {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hardy" => Ok(Space::Hardy),
            "bergman" => Ok(Space::Bergman),
            other => Err(format!("unknown space `{other}` (expected hardy or bergman)")),
        }
    }
}
