//! Operation-size caps. `OSTROWSKI_BUDGET` overrides every cap at once.

use crate::error::{Error, Result};

/// Default cap on scanned integers and on `q_k·H`-style work per call.
pub const DEFAULT_CAP: u64 = 100_000_000;

/// Default cap on `q_kmax` for the single-system decay experiment.
pub const DECAY_CAP: u64 = 10_000_000;

pub const ENV_VAR: &str = "OSTROWSKI_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    cap: u64,
}

impl Budget {
    pub const fn new(cap: u64) -> Self {
        Budget { cap }
    }

    /// `OSTROWSKI_BUDGET` if set and parseable, else `default`.
    pub fn from_env_or(default: u64) -> Result<Self> {
        match std::env::var(ENV_VAR) {
            Ok(v) => {
                v.trim().parse::<u64>().map(Budget::new).map_err(|_| {
                    Error::InvalidParameter(format!("{ENV_VAR}={v:?} is not an integer"))
                })
            }
            Err(_) => Ok(Budget::new(default)),
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn check(&self, what: &'static str, requested: u128) -> Result<()> {
        if requested > u128::from(self.cap) {
            Err(Error::BudgetExceeded {
                what,
                requested,
                cap: u128::from(self.cap),
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_CAP)
    }
}
