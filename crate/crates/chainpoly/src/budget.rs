use crate::error::{Error, Result};

/// Environment variable overriding the default visit cap.
pub const MAX_VISITS_ENV: &str = "CHAINPOLY_MAX_VISITS";

/// Work limits for the exponential enumerations.
///
/// `max_visits` bounds the number of chain / assignment visits an operation
/// may perform; operations that would exceed it refuse up front with
/// [`Error::SizeCap`] carrying the required budget. `max_flats_ground`
/// bounds the ground-set size for which the full lattice of flats may be
/// materialised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_visits: u64,
    pub max_flats_ground: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_visits: 1_000_000_000,
            max_flats_ground: 20,
        }
    }
}

impl Budget {
    pub fn with_max_visits(mut self, max_visits: u64) -> Self {
        self.max_visits = max_visits;
        self
    }

    /// Default budget with `CHAINPOLY_MAX_VISITS` applied when set.
    pub fn from_env() -> Result<Self> {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var(MAX_VISITS_ENV) {
            let parsed = raw.trim().parse::<u64>().map_err(|e| {
                Error::Parse(format!("{MAX_VISITS_ENV}={raw:?} is not a valid cap: {e}"))
            })?;
            budget.max_visits = parsed;
        }
        Ok(budget)
    }

    /// Errors with `SizeCap` unless `required <= max_visits`.
    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.max_visits as u128 {
            Err(Error::SizeCap {
                required,
                cap: self.max_visits,
            })
        } else {
            Ok(())
        }
    }
}

/// `base^exp` without overflow; saturates at `u128::MAX`.
pub(crate) fn pow_saturating(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_cap_is_a_billion() {
        assert_eq!(Budget::default().max_visits, 1_000_000_000);
        assert_eq!(Budget::default().max_flats_ground, 20);
    }

    #[test]
    fn check_is_inclusive() {
        let b = Budget::default().with_max_visits(10);
        assert!(b.check(10).is_ok());
        assert!(matches!(b.check(11), Err(Error::SizeCap { required: 11, cap: 10 })));
    }

    #[test]
    fn pow_saturates() {
        assert_eq!(pow_saturating(3, 4), 81);
        assert_eq!(pow_saturating(u128::MAX, 2), u128::MAX);
        assert_eq!(pow_saturating(7, 0), 1);
    }
}
