//! Parameter domain types: ABCD ray-transfer parameters and the squeeze
//! parameter of the plain two-mode squeezer.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance on the unit-determinant constraint `ad − bc = 1`.
pub const DET_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("determinant ad - bc deviates from 1 by {deviation:.3e}")]
    DeterminantViolation { deviation: f64 },
    #[error("diagonal parameter {name} = {value} must be positive")]
    NonpositiveDiagonal { name: char, value: f64 },
    #[error("parameters must be finite")]
    NonFinite,
    #[error("squeeze parameter mu = {mu} must be positive")]
    NonpositiveMu { mu: f64 },
    #[error("mu = {mu} and lambda = {lambda} disagree: |mu - e^lambda| = {deviation:.3e}")]
    MuLambdaMismatch { mu: f64, lambda: f64, deviation: f64 },
}

/// ABCD parameters of a generalized two-mode squeezing operator.
///
/// Constraints: `ad − bc = 1` (to [`DET_TOL`]), `a > 0`, `d > 0`. The pair
/// `(b, c)` may have either sign. `(1,0,0,1)` is the identity operator and
/// `(1/μ, 0, 0, μ)` is the plain squeezer with `μ = e^λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbcdParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl AbcdParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, ParamError> {
        if ![a, b, c, d].iter().all(|x| x.is_finite()) {
            return Err(ParamError::NonFinite);
        }
        if a <= 0.0 {
            return Err(ParamError::NonpositiveDiagonal { name: 'a', value: a });
        }
        if d <= 0.0 {
            return Err(ParamError::NonpositiveDiagonal { name: 'd', value: d });
        }
        let deviation = (a * d - b * c - 1.0).abs();
        if deviation > DET_TOL {
            return Err(ParamError::DeterminantViolation { deviation });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// `|ad − bc − 1|`.
    pub fn det_deviation(&self) -> f64 {
        (self.a * self.d - self.b * self.c - 1.0).abs()
    }

    /// Parameters of the inverse operator: the 2×2 blocks invert to
    /// `(d, −b, −c, a)`, which stays inside the family.
    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }
}

/// Squeeze parameter `λ` with its scale factor `μ = e^λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeParam {
    pub lambda: f64,
    pub mu: f64,
}

impl SqueezeParam {
    pub fn from_lambda(lambda: f64) -> Result<Self, ParamError> {
        if !lambda.is_finite() {
            return Err(ParamError::NonFinite);
        }
        Ok(Self { lambda, mu: lambda.exp() })
    }

    pub fn from_mu(mu: f64) -> Result<Self, ParamError> {
        if !mu.is_finite() {
            return Err(ParamError::NonFinite);
        }
        if mu <= 0.0 {
            return Err(ParamError::NonpositiveMu { mu });
        }
        Ok(Self { lambda: mu.ln(), mu })
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let deviation = (self.mu - self.lambda.exp()).abs();
        if self.mu <= 0.0 {
            return Err(ParamError::NonpositiveMu { mu: self.mu });
        }
        if deviation > 1e-14 * self.mu.max(1.0) {
            return Err(ParamError::MuLambdaMismatch {
                mu: self.mu,
                lambda: self.lambda,
                deviation,
            });
        }
        Ok(())
    }

    /// ABCD parameters of the operator `exp[λ(a₁†a₂† − a₁a₂)]`: it stretches
    /// q₋ and p₊ by μ and shrinks q₊ and p₋ by 1/μ, i.e. `(1/μ, 0, 0, μ)`.
    pub fn gtso_params(&self) -> AbcdParams {
        AbcdParams { a: 1.0 / self.mu, b: 0.0, c: 0.0, d: self.mu }
    }
}

/// Seeded rejection sampler over the numerically well-conditioned parameter
/// range: `|ln a|, |ln d| ≤ 0.5` and `|b|, |c| ≤ 1` with `c = (ad − 1)/b`.
/// Deterministic for a given seed.
pub fn sample_params(seed: u64, count: usize) -> Vec<AbcdParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.random_range(-0.5..=0.5f64).exp();
        let d = rng.random_range(-0.5..=0.5f64).exp();
        let b: f64 = rng.random_range(-1.0..=1.0);
        if b.abs() < 0.05 {
            continue;
        }
        let c = (a * d - 1.0) / b;
        if c.abs() > 1.0 {
            continue;
        }
        out.push(AbcdParams::new(a, b, c, d).expect("sampler keeps ad - bc = 1 exactly"));
    }
    out
}
