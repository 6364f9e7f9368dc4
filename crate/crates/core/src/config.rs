//! Process-wide limits.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Largest degree any permutation may have (inversion sets live in a `u128`).
pub const HARD_MAX_DEGREE: usize = 16;

static MAX_DEGREE: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DEGREE);

/// Current cap on enumeration degree.
pub fn max_degree() -> usize {
    MAX_DEGREE.load(Ordering::Relaxed)
}

/// Set the enumeration cap; values above `HARD_MAX_DEGREE` are clamped.
pub fn set_max_degree(n: usize) {
    MAX_DEGREE.store(n.min(HARD_MAX_DEGREE), Ordering::Relaxed);
}

/// Refuse enumeration at degrees above the cap.
pub fn check_degree(n: usize) -> Result<()> {
    let max = max_degree();
    if n > max {
        Err(Error::DegreeTooLarge { degree: n, max })
    } else {
        Ok(())
    }
}
