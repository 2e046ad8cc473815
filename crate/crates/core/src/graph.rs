use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signature::MAX_WIDTH;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Grid,
    Cylinder,
    Torus,
    King,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Grid, Family::Cylinder, Family::Torus, Family::King];

    pub fn name(self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::Cylinder => "cylinder",
            Family::Torus => "torus",
            Family::King => "king",
        }
    }

    /// Whether rows wrap around (width direction).
    pub fn cyclic_rows(self) -> bool {
        matches!(self, Family::Cylinder | Family::Torus)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grid" => Ok(Family::Grid),
            "cylinder" => Ok(Family::Cylinder),
            "torus" => Ok(Family::Torus),
            "king" => Ok(Family::King),
            other => Err(Error::Unsupported(format!("unknown family {other:?}"))),
        }
    }
}

/// A member of one of the four lattice families: `m` is the row width (the
/// wrapped direction for cylinder and torus), `n` the number of rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphSpec {
    pub family: Family,
    pub m: usize,
    pub n: usize,
}

impl GraphSpec {
    pub fn new(family: Family, m: usize, n: usize) -> Result<Self> {
        if m == 0 || m > MAX_WIDTH {
            return Err(Error::WidthOutOfRange { width: m, max: MAX_WIDTH });
        }
        if n == 0 {
            return Err(Error::Inconsistent("graph needs at least one row".into()));
        }
        Ok(GraphSpec { family, m, n })
    }

    pub fn vertex_count(&self) -> usize {
        self.m * self.n
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}x{}", self.family, self.m, self.n)
    }
}
