//! Measurement-noise models and the restoration noise-level schedule.
//!
//! Forcing observations carry i.i.d. Gaussian noise per grid point; solution
//! observations carry a Brownian bridge, a random sine series with
//! independent Gaussian coefficients so the noise respects the boundary
//! conditions. The schedule supplies the strictly increasing levels
//! `σ_0 = 0 < σ_1 < … < σ_T` both sampling chains run over.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, ScalarField};
use crate::rng::{domain, substream};
use crate::scalar::Scalar;
use crate::spectral::{SineBasis, Space, SpectralCoeffs};

/// Per-mode standard deviations of the Brownian-bridge coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeSpec<F> {
    grid: GridSpec,
    sigma: Array2<F>,
}

impl<F: Scalar> BridgeSpec<F> {
    /// Constant `σ_{n,m} = sigma` for all modes.
    pub fn constant(grid: GridSpec, sigma: F) -> Result<Self> {
        if !(sigma > F::zero()) || !sigma.is_finite() {
            return Err(Error::invalid("bridge spec", format!("sigma = {sigma}")));
        }
        let n = grid.n_interior();
        Ok(BridgeSpec {
            grid,
            sigma: Array2::from_elem((n, n), sigma),
        })
    }

    /// Arbitrary per-mode table; every entry must be positive.
    pub fn new(grid: GridSpec, sigma: Array2<F>) -> Result<Self> {
        let n = grid.n_interior();
        if sigma.dim() != (n, n) {
            return Err(Error::GridMismatch {
                expected: n,
                got: sigma.dim().0.max(sigma.dim().1),
            });
        }
        if sigma.iter().any(|s| !(*s > F::zero()) || !s.is_finite()) {
            return Err(Error::invalid("bridge spec", "non-positive sigma entry"));
        }
        Ok(BridgeSpec { grid, sigma })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// `σ_{n,m}` (1-based mode indices).
    pub fn sigma(&self, n: usize, m: usize) -> F {
        self.sigma[[n - 1, m - 1]]
    }

    pub fn matrix(&self) -> &Array2<F> {
        &self.sigma
    }

    /// Pointwise variance of the bridge at `(x, y)`:
    /// `Σ_{n,m} σ_{n,m}²·sin²(nπx)·sin²(mπy)`.
    pub fn pointwise_variance(&self, x: F, y: F) -> F {
        let n = self.grid.n_interior();
        let sx: Vec<F> = (1..=n)
            .map(|k| {
                let s = (F::from_index(k) * F::PI() * x).sin();
                s * s
            })
            .collect();
        let sy: Vec<F> = (1..=n)
            .map(|k| {
                let s = (F::from_index(k) * F::PI() * y).sin();
                s * s
            })
            .collect();
        let mut acc = F::zero();
        for (i, &sxi) in sx.iter().enumerate() {
            let mut row = F::zero();
            for (j, &syj) in sy.iter().enumerate() {
                let s = self.sigma[[i, j]];
                row += s * s * syj;
            }
            acc += sxi * row;
        }
        acc
    }
}

/// Strictly increasing noise levels with `σ_0 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSchedule<F> {
    sigmas: Vec<F>,
}

/// Supported schedule shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    /// `σ_t = σ_min·(σ_max/σ_min)^{(t−1)/(T−1)}` for `t = 1..=T`.
    Geometric,
}

impl<F: Scalar> NoiseSchedule<F> {
    /// Validate and wrap an explicit level sequence (including `σ_0 = 0`).
    pub fn from_sigmas(sigmas: Vec<F>) -> Result<Self> {
        if sigmas.len() < 2 {
            return Err(Error::invalid("schedule", "needs at least sigma_0, sigma_1"));
        }
        if sigmas[0] != F::zero() {
            return Err(Error::invalid("schedule", "sigma_0 must be exactly 0"));
        }
        for w in sigmas.windows(2) {
            if !(w[1] > w[0]) || !w[1].is_finite() {
                return Err(Error::invalid("schedule", "levels must strictly increase"));
            }
        }
        Ok(NoiseSchedule { sigmas })
    }

    /// Number of transition steps `T`.
    pub fn t_max(&self) -> usize {
        self.sigmas.len() - 1
    }

    /// `σ_t` for `t = 0..=T`.
    pub fn sigma(&self, t: usize) -> F {
        self.sigmas[t]
    }

    /// Top level `σ_T`.
    pub fn sigma_top(&self) -> F {
        *self.sigmas.last().expect("schedule is never empty")
    }

    pub fn sigmas(&self) -> &[F] {
        &self.sigmas
    }
}

/// Build a schedule of `t_steps` levels between `sigma_min` and `sigma_max`.
///
/// A single-step schedule uses `sigma_max` alone (the interpolation exponent
/// is indeterminate at `T = 1`).
pub fn make_schedule<F: Scalar>(
    t_steps: usize,
    sigma_min: F,
    sigma_max: F,
    kind: ScheduleKind,
) -> Result<NoiseSchedule<F>> {
    if t_steps < 1 {
        return Err(Error::invalid("schedule", "T must be >= 1"));
    }
    if !(sigma_min > F::zero()) || !(sigma_max > sigma_min) {
        return Err(Error::invalid(
            "schedule",
            format!("need 0 < sigma_min < sigma_max, got {sigma_min}..{sigma_max}"),
        ));
    }
    let ScheduleKind::Geometric = kind;
    let mut sigmas = Vec::with_capacity(t_steps + 1);
    sigmas.push(F::zero());
    if t_steps == 1 {
        sigmas.push(sigma_max);
    } else {
        let ratio = sigma_max / sigma_min;
        let denom = F::from_index(t_steps - 1);
        for t in 1..=t_steps {
            let expo = F::from_index(t - 1) / denom;
            sigmas.push(sigma_min * ratio.powf(expo));
        }
    }
    NoiseSchedule::from_sigmas(sigmas)
}

/// I.i.d. Gaussian field with standard deviation `sigma_f` per grid point.
///
/// Deterministic in `(seed)`; `sigma_f = 0` yields the zero field.
pub fn sample_iid_gaussian<F: Scalar>(grid: GridSpec, sigma_f: F, seed: u64) -> ScalarField<F> {
    assert!(
        sigma_f >= F::zero() && sigma_f.is_finite(),
        "sigma_f must be a finite non-negative number"
    );
    let n = grid.n_interior();
    let mut rng = substream(seed, domain::IID_NOISE, 0, 0);
    let values = Array2::from_shape_simple_fn((n, n), || F::standard_normal(&mut rng) * sigma_f);
    ScalarField::from_values_unchecked(grid, values)
}

/// One Brownian-bridge draw: `z_u = Σ_{n,m} w_{n,m}·s_{n,m}` with
/// `w_{n,m} ~ N(0, σ_{n,m}²)`.
///
/// The field vanishes on the boundary by construction, and its transform
/// returns the drawn coefficients exactly (to round-off).
pub fn sample_brownian_bridge<F: Scalar>(
    grid: GridSpec,
    spec: &BridgeSpec<F>,
    seed: u64,
) -> ScalarField<F> {
    assert_eq!(spec.grid(), grid, "bridge spec grid mismatch");
    let n = grid.n_interior();
    let mut rng = substream(seed, domain::BRIDGE, 0, 0);
    let w = Array2::from_shape_fn((n, n), |(i, j)| {
        F::standard_normal(&mut rng) * spec.sigma[[i, j]]
    });
    let coeffs = SpectralCoeffs::new(grid, Space::Raw, w).expect("dims match by construction");
    SineBasis::new(grid).inverse(&coeffs)
}
