//! Size and tolerance settings for the truncated Fock representation.
//!
//! A configuration keeps `n_max` (highest retained number state per mode),
//! `margin` (buffer between the interior subspace and the truncation edge),
//! and `tol` (Hermiticity/unitarity tolerance for realized operators).
//! Quantitative claims are only evaluated on the interior levels
//! `n ≤ n_max − margin`, where the truncated ladder algebra is exact.

use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_N_MAX: usize = 16;
pub const DEFAULT_MARGIN: usize = 6;
pub const DEFAULT_TOL: f64 = 1e-8;
/// Cap on the flattened two-mode dimension `(n_max+1)²`, i.e. `n_max ≤ 63`.
pub const DIMENSION_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ConfigError {
    #[error("n_max = {0} is below the minimum of 4")]
    NMaxTooSmall(usize),
    #[error("margin = {0} is below the minimum of 2")]
    MarginTooSmall(usize),
    #[error("margin = {margin} must be smaller than n_max = {n_max}")]
    MarginTooLarge { margin: usize, n_max: usize },
    #[error("tol = {0} must be positive and finite")]
    BadTol(f64),
    #[error("dimension (n_max+1)^2 = {0} exceeds the cap of {DIMENSION_CAP}")]
    DimensionTooLarge(usize),
}

/// Validated truncation settings; see the module docs for the semantics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncationConfig {
    n_max: usize,
    margin: usize,
    tol: f64,
}

impl TruncationConfig {
    pub fn new(n_max: usize, margin: usize, tol: f64) -> Result<Self, ConfigError> {
        if n_max < 4 {
            return Err(ConfigError::NMaxTooSmall(n_max));
        }
        if margin < 2 {
            return Err(ConfigError::MarginTooSmall(margin));
        }
        if margin >= n_max {
            return Err(ConfigError::MarginTooLarge { margin, n_max });
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(ConfigError::BadTol(tol));
        }
        let dim = (n_max + 1) * (n_max + 1);
        if dim > DIMENSION_CAP {
            return Err(ConfigError::DimensionTooLarge(dim));
        }
        Ok(Self { n_max, margin, tol })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Retained levels per mode: `n_max + 1`.
    pub fn per_mode(&self) -> usize {
        self.n_max + 1
    }

    /// Flattened two-mode dimension `(n_max+1)²`.
    pub fn dim(&self) -> usize {
        self.per_mode() * self.per_mode()
    }

    /// Highest level counted as interior: `n_max − margin`.
    pub fn interior_max(&self) -> usize {
        self.n_max - self.margin
    }

    /// Whether `|n₁, n₂⟩` lies in the interior subspace.
    pub fn is_interior(&self, n1: usize, n2: usize) -> bool {
        n1 <= self.interior_max() && n2 <= self.interior_max()
    }

    /// Same `margin` and `tol` with a different `n_max` (used by sweeps).
    pub fn with_n_max(&self, n_max: usize) -> Result<Self, ConfigError> {
        Self::new(n_max, self.margin, self.tol)
    }

    /// Same `n_max` and `tol` with a different `margin`.
    pub fn with_margin(&self, margin: usize) -> Result<Self, ConfigError> {
        Self::new(self.n_max, margin, self.tol)
    }
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self { n_max: DEFAULT_N_MAX, margin: DEFAULT_MARGIN, tol: DEFAULT_TOL }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let c = TruncationConfig::default();
        assert_eq!(c.n_max(), 16);
        assert_eq!(c.margin(), 6);
        assert_eq!(c.tol(), 1e-8);
        assert_eq!(c.dim(), 289);
        assert_eq!(c.interior_max(), 10);
        TruncationConfig::new(c.n_max(), c.margin(), c.tol()).unwrap();
    }

    #[test]
    fn rejects_out_of_range_settings() {
        assert!(matches!(
            TruncationConfig::new(3, 2, 1e-8),
            Err(ConfigError::NMaxTooSmall(3))
        ));
        assert!(matches!(
            TruncationConfig::new(8, 1, 1e-8),
            Err(ConfigError::MarginTooSmall(1))
        ));
        assert!(matches!(
            TruncationConfig::new(8, 8, 1e-8),
            Err(ConfigError::MarginTooLarge { .. })
        ));
        assert!(matches!(
            TruncationConfig::new(8, 2, 0.0),
            Err(ConfigError::BadTol(_))
        ));
        assert!(matches!(
            TruncationConfig::new(64, 2, 1e-8),
            Err(ConfigError::DimensionTooLarge(4225))
        ));
        // Largest admissible n_max.
        assert!(TruncationConfig::new(63, 2, 1e-8).is_ok());
    }

    #[test]
    fn interior_predicate_matches_bounds() {
        let c = TruncationConfig::new(10, 4, 1e-8).unwrap();
        assert!(c.is_interior(6, 0));
        assert!(c.is_interior(6, 6));
        assert!(!c.is_interior(7, 0));
        assert!(!c.is_interior(0, 7));
    }
}
