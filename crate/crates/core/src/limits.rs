use std::time::Duration;

use crate::error::{Error, Result};

/// Caps for the exhaustive operations. Every routine that enumerates a
/// word space or a matrix family checks its size against `max_space`
/// before allocating anything, and long enumerations poll `time_budget`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub max_space: u64,
    pub time_budget: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_space: 1 << 20,
            time_budget: Duration::from_secs(60),
        }
    }
}

impl Limits {
    pub fn with_max_space(self, max_space: u64) -> Self {
        Limits { max_space, ..self }
    }

    pub fn with_time_budget(self, time_budget: Duration) -> Self {
        Limits {
            time_budget,
            ..self
        }
    }

    /// Errors unless `needed` objects fit under `max_space`.
    pub fn check_space(&self, needed: u128) -> Result<()> {
        if needed > self.max_space as u128 {
            Err(Error::SpaceExceeded {
                needed,
                max_space: self.max_space,
            })
        } else {
            Ok(())
        }
    }
}
