use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::symbol::HomogeneousSymbol;

/// The two submodules with closed forms: `[z − w]` and `[(z − w)²]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Submodule {
    #[serde(rename = "zw")]
    Zw,
    #[serde(rename = "zw2")]
    Zw2,
}

impl Submodule {
    pub const ALL: [Submodule; 2] = [Submodule::Zw, Submodule::Zw2];

    /// Generator in the `c_0, …, c_k` convention (ascending powers of `z`).
    pub fn symbol(self) -> HomogeneousSymbol {
        match self {
            Submodule::Zw => HomogeneousSymbol::from_integers(&[-1, 1]),
            Submodule::Zw2 => HomogeneousSymbol::from_integers(&[1, -2, 1]),
        }
        .expect("named generators are nonzero")
    }

    pub fn name(self) -> &'static str {
        match self {
            Submodule::Zw => "zw",
            Submodule::Zw2 => "zw2",
        }
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Submodule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "zw" => Ok(Submodule::Zw),
            "zw2" => Ok(Submodule::Zw2),
            other => Err(Error::InvalidSymbol(format!("unknown submodule {other:?} (expected zw or zw2)"))),
        }
    }
}

/// Either a named submodule (closed forms available) or an arbitrary
/// homogeneous generator (generic exact route only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Named(Submodule),
    Symbol(HomogeneousSymbol),
}

impl Generator {
    pub fn symbol(&self) -> HomogeneousSymbol {
        match self {
            Generator::Named(s) => s.symbol(),
            Generator::Symbol(p) => p.clone(),
        }
    }

    pub fn submodule(&self) -> Option<Submodule> {
        match self {
            Generator::Named(s) => Some(*s),
            Generator::Symbol(_) => None,
        }
    }
}

impl From<Submodule> for Generator {
    fn from(s: Submodule) -> Self {
        Generator::Named(s)
    }
}

impl From<HomogeneousSymbol> for Generator {
    fn from(p: HomogeneousSymbol) -> Self {
        Generator::Symbol(p)
    }
}
