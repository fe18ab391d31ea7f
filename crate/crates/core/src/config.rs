use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Strategy;

/// Size bounds and execution strategy shared by the enumeration kernels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Largest `kn` for tableau enumeration.
    pub max_cells: usize,
    /// Largest `n` for direct enumeration of `S_n`.
    pub max_perm_n: usize,
    /// Canon-polynomial bounds (`n! * |SYT(k^n)|` evaluations).
    pub canon_max_n: usize,
    pub canon_max_k: usize,
    /// Truncation order of the generating-function checks.
    pub series_order: usize,
    pub strategy: Strategy,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_cells: crate::tableaux::DEFAULT_MAX_CELLS,
            max_perm_n: 10,
            canon_max_n: 5,
            canon_max_k: 4,
            series_order: 8,
            strategy: Strategy::default(),
        }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config {
            strategy: Strategy::Sequential,
            ..Config::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("max_cells", self.max_cells),
            ("max_perm_n", self.max_perm_n),
            ("canon_max_n", self.canon_max_n),
            ("canon_max_k", self.canon_max_k),
            ("series_order", self.series_order),
        ];
        match caps.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(Error::InvalidParameter(format!("{name} must be positive"))),
            None => Ok(()),
        }
    }
}
