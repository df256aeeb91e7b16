//! The pluggable clean-field predictor the sampling chains call at every
//! step, plus the built-in implementations.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::grid::{Channel, GridSpec, PairSample, ScalarField};
use crate::scalar::Scalar;
use crate::spectral::SineBasis;

/// Predicts the clean field from a noisy field at level `sigma_t`.
///
/// Implementations must be pure functions of their inputs (no hidden state
/// across calls) and safe for concurrent use; the chain runner calls
/// `predict` once per step. `context` carries the conditioning channel (the
/// observation the chain is conditioned on); implementations may ignore it.
pub trait Denoiser<F: Scalar>: Sync {
    fn predict(
        &self,
        noisy: &ScalarField<F>,
        sigma_t: F,
        channel: Channel,
        context: Option<&ScalarField<F>>,
    ) -> Result<ScalarField<F>>;
}

/// Returns the noisy input unchanged: the "dry" chains, where the model
/// contributes nothing beyond the observation.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityDenoiser;

impl<F: Scalar> Denoiser<F> for IdentityDenoiser {
    fn predict(
        &self,
        noisy: &ScalarField<F>,
        _sigma_t: F,
        _channel: Channel,
        _context: Option<&ScalarField<F>>,
    ) -> Result<ScalarField<F>> {
        Ok(noisy.clone())
    }
}

/// Returns the true clean field of the requested channel; the idealized
/// predictor used by harness comparisons and the marginal-property checks.
#[derive(Debug, Clone)]
pub struct OracleDenoiser<F> {
    truth: PairSample<F>,
}

impl<F: Scalar> OracleDenoiser<F> {
    pub fn new(truth: PairSample<F>) -> Self {
        OracleDenoiser { truth }
    }
}

impl<F: Scalar> Denoiser<F> for OracleDenoiser<F> {
    fn predict(
        &self,
        _noisy: &ScalarField<F>,
        _sigma_t: F,
        channel: Channel,
        _context: Option<&ScalarField<F>>,
    ) -> Result<ScalarField<F>> {
        Ok(match channel {
            Channel::U => self.truth.u.clone(),
            Channel::F => self.truth.f.clone(),
        })
    }
}

/// Per-mode Wiener shrinkage against empirical prior statistics.
///
/// Fitting records the second moment `v_{n,m}` of each channel's raw sine
/// coefficients over a training set; prediction shrinks the noisy field's
/// coefficients by `v/(v + σ_t²)`. A desk-scale stand-in for a trained
/// model: exact posterior mean when coefficients are Gaussian with the
/// fitted variances.
#[derive(Debug, Clone)]
pub struct SpectralPriorDenoiser<F> {
    grid: GridSpec,
    basis: SineBasis<F>,
    var_u: Array2<F>,
    var_f: Array2<F>,
}

impl<F: Scalar> SpectralPriorDenoiser<F> {
    /// Fit the per-mode prior variances on a training set.
    pub fn fit(train: &[PairSample<F>]) -> Result<Self> {
        let first = train.first().ok_or(Error::EmptyBatch)?;
        let grid = first.grid();
        let n = grid.n_interior();
        let basis = SineBasis::new(grid);
        let mut var_u = Array2::zeros((n, n));
        let mut var_f = Array2::zeros((n, n));
        for pair in train {
            if pair.grid() != grid {
                return Err(Error::GridMismatch {
                    expected: grid.n_interior(),
                    got: pair.grid().n_interior(),
                });
            }
            let cu = basis.forward_matrix(&pair.u);
            let cf = basis.forward_matrix(&pair.f);
            var_u += &(&cu * &cu);
            var_f += &(&cf * &cf);
        }
        let count = F::from_index(train.len());
        var_u.mapv_inplace(|v| v / count);
        var_f.mapv_inplace(|v| v / count);
        Ok(SpectralPriorDenoiser {
            grid,
            basis,
            var_u,
            var_f,
        })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Fitted second moment of a mode's coefficient for a channel.
    pub fn prior_variance(&self, channel: Channel, n: usize, m: usize) -> F {
        match channel {
            Channel::U => self.var_u[[n - 1, m - 1]],
            Channel::F => self.var_f[[n - 1, m - 1]],
        }
    }
}

impl<F: Scalar> Denoiser<F> for SpectralPriorDenoiser<F> {
    fn predict(
        &self,
        noisy: &ScalarField<F>,
        sigma_t: F,
        channel: Channel,
        _context: Option<&ScalarField<F>>,
    ) -> Result<ScalarField<F>> {
        if noisy.grid() != self.grid {
            return Err(Error::GridMismatch {
                expected: self.grid.n_interior(),
                got: noisy.grid().n_interior(),
            });
        }
        let prior = match channel {
            Channel::U => &self.var_u,
            Channel::F => &self.var_f,
        };
        let s2 = sigma_t * sigma_t;
        let mut c = self.basis.forward_matrix(noisy);
        ndarray::Zip::from(&mut c).and(prior).for_each(|c, &v| {
            let denom = v + s2;
            *c = if denom > F::zero() { *c * v / denom } else { F::zero() };
        });
        Ok(self.basis.inverse_matrix(&c))
    }
}
