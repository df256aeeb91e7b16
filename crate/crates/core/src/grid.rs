//! Grid geometry, scalar fields, sample pairs, and the MAE metric.
//!
//! The domain is the unit square with homogeneous Dirichlet conditions, so
//! only interior points are stored: an `N`-point axis has coordinates
//! `x_i = i·h` for `i = 1..=N` with spacing `h = 1/(N+1)`. Boundary values
//! are identically zero and never materialized.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::datagen::AnalyticalKind;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Interior grid of the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    n_interior: usize,
}

impl GridSpec {
    /// Grid with `n_interior` points per axis (at least 2).
    pub fn new(n_interior: usize) -> Result<Self> {
        if n_interior < 2 {
            return Err(Error::invalid(
                "grid",
                format!("n_interior must be >= 2, got {n_interior}"),
            ));
        }
        Ok(GridSpec { n_interior })
    }

    /// Interior points per axis.
    pub fn n_interior(&self) -> usize {
        self.n_interior
    }

    /// Grid spacing `h = 1/(N+1)`.
    pub fn spacing<F: Scalar>(&self) -> F {
        F::one() / F::from_index(self.n_interior + 1)
    }

    /// Coordinate of the interior point with 0-based index `i`:
    /// `x = (i+1)·h`.
    pub fn coord<F: Scalar>(&self, i: usize) -> F {
        debug_assert!(i < self.n_interior);
        F::from_index(i + 1) * self.spacing::<F>()
    }
}

/// A real-valued function sampled on the interior grid.
///
/// `values[[i, j]]` holds `g(x_{i+1}, y_{j+1})` (row index `i` runs along
/// `x`). All stored values are finite; the dimensions match the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField<F> {
    grid: GridSpec,
    values: Array2<F>,
}

impl<F: Scalar> ScalarField<F> {
    /// Wrap a value matrix, checking dimensions and finiteness.
    pub fn new(grid: GridSpec, values: Array2<F>) -> Result<Self> {
        let n = grid.n_interior();
        if values.dim() != (n, n) {
            return Err(Error::GridMismatch {
                expected: n,
                got: values.dim().0.max(values.dim().1),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("field", "non-finite value"));
        }
        Ok(ScalarField { grid, values })
    }

    /// All-zero field.
    pub fn zeros(grid: GridSpec) -> Self {
        let n = grid.n_interior();
        ScalarField {
            grid,
            values: Array2::zeros((n, n)),
        }
    }

    /// Sample `g(x, y)` at every interior point.
    pub fn from_fn(grid: GridSpec, mut g: impl FnMut(F, F) -> F) -> Self {
        let n = grid.n_interior();
        let values = Array2::from_shape_fn((n, n), |(i, j)| g(grid.coord(i), grid.coord(j)));
        ScalarField { grid, values }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &Array2<F> {
        &self.values
    }

    /// Consume the field, returning the raw matrix.
    pub fn into_values(self) -> Array2<F> {
        self.values
    }

    /// Construct from a matrix known to satisfy the invariants (used by the
    /// transforms, whose outputs are finite by construction).
    pub(crate) fn from_values_unchecked(grid: GridSpec, values: Array2<F>) -> Self {
        debug_assert_eq!(values.dim(), (grid.n_interior(), grid.n_interior()));
        ScalarField { grid, values }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> F {
        self.values
            .iter()
            .fold(F::zero(), |acc, v| acc.max(v.abs()))
    }
}

/// Mean absolute error over the N² interior points.
///
/// Symmetric in its arguments and invariant under a common constant shift.
pub fn mae<F: Scalar>(a: &ScalarField<F>, b: &ScalarField<F>) -> Result<F> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch {
            expected: a.grid.n_interior(),
            got: b.grid.n_interior(),
        });
    }
    let n = a.grid.n_interior();
    let total: F = a
        .values
        .iter()
        .zip(b.values.iter())
        .map(|(&x, &y)| (x - y).abs())
        .sum();
    Ok(total / F::from_index(n * n))
}

/// All-zero field on `grid`.
pub fn zero_field<F: Scalar>(grid: GridSpec) -> ScalarField<F> {
    ScalarField::zeros(grid)
}

/// Where a sample pair came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// One of the closed-form families.
    Analytical(AnalyticalKind),
    /// Random smooth pair built from a tanh network times the boundary bump.
    NeuralNet,
    /// Loaded from a file or otherwise of unknown origin.
    External,
}

/// An `(f, u)` pair satisfying `Δu = f` with `u = 0` on the boundary.
#[derive(Debug, Clone)]
pub struct PairSample<F> {
    pub f: ScalarField<F>,
    pub u: ScalarField<F>,
    pub provenance: Provenance,
}

impl<F: Scalar> PairSample<F> {
    pub fn new(f: ScalarField<F>, u: ScalarField<F>, provenance: Provenance) -> Result<Self> {
        if f.grid() != u.grid() {
            return Err(Error::GridMismatch {
                expected: f.grid().n_interior(),
                got: u.grid().n_interior(),
            });
        }
        Ok(PairSample { f, u, provenance })
    }

    pub fn grid(&self) -> GridSpec {
        self.f.grid()
    }
}

/// Which channel of a pair an operation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Channel {
    /// The solution `u`.
    U,
    /// The forcing `f`.
    F,
}

/// Estimation method an evaluation record refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DryForward,
    DryInverse,
    DdrmForward,
    DdrmInverse,
    FdForward,
    FdInverse,
    SpectralForward,
    SpectralInverse,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::DryForward => "dry-forward",
            Method::DryInverse => "dry-inverse",
            Method::DdrmForward => "ddrm-forward",
            Method::DdrmInverse => "ddrm-inverse",
            Method::FdForward => "fd-forward",
            Method::FdInverse => "fd-inverse",
            Method::SpectralForward => "spectral-forward",
            Method::SpectralInverse => "spectral-inverse",
        }
    }
}

/// Batch evaluation summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub method: Method,
    pub mae: f64,
    pub sample_count: usize,
}

/// Mean over samples of the per-sample MAE against the chosen target channel.
pub fn eval_batch<F: Scalar>(
    pairs: &[PairSample<F>],
    predictions: &[ScalarField<F>],
    target: Channel,
    method: Method,
) -> Result<EvalRecord> {
    if pairs.is_empty() || pairs.len() != predictions.len() {
        return Err(Error::EmptyBatch);
    }
    let mut total = F::zero();
    for (pair, pred) in pairs.iter().zip(predictions) {
        let truth = match target {
            Channel::U => &pair.u,
            Channel::F => &pair.f,
        };
        total += mae(pred, truth)?;
    }
    let batch = total / F::from_index(pairs.len());
    Ok(EvalRecord {
        method,
        mae: batch.to_f64().expect("mae fits f64"),
        sample_count: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn grid64() -> GridSpec {
        GridSpec::new(64).unwrap()
    }

    #[test]
    fn grid_rejects_tiny() {
        assert!(GridSpec::new(1).is_err());
        assert!(GridSpec::new(2).is_ok());
    }

    #[test]
    fn coords_are_interior() {
        let g = GridSpec::new(4).unwrap();
        assert_abs_diff_eq!(g.spacing::<f64>(), 0.2);
        assert_abs_diff_eq!(g.coord::<f64>(0), 0.2);
        assert_abs_diff_eq!(g.coord::<f64>(3), 0.8);
    }

    #[test]
    fn mae_identity_and_offset() {
        let g = grid64();
        let a = ScalarField::from_fn(g, |x: f64, y: f64| x * y + 1.0);
        assert_eq!(mae(&a, &a).unwrap(), 0.0);
        let b = ScalarField::from_fn(g, |x: f64, y: f64| x * y + 1.5);
        assert_abs_diff_eq!(mae(&a, &b).unwrap(), 0.5, epsilon = 1e-14);
    }

    // Independent oracle: direct summation of |sin(πx_i)sin(πy_j)| over the
    // 64² interior grid. The separable closed form cot²(π/130)/64² must agree.
    #[test]
    fn mae_against_zero_matches_direct_summation() {
        let g = grid64();
        let u = ScalarField::from_fn(g, |x: f64, y: f64| {
            (std::f64::consts::PI * x).sin() * (std::f64::consts::PI * y).sin()
        });
        let z = zero_field::<f64>(g);

        let mut oracle = 0.0;
        for i in 0..64 {
            for j in 0..64 {
                let x = (i as f64 + 1.0) / 65.0;
                let y = (j as f64 + 1.0) / 65.0;
                oracle += ((std::f64::consts::PI * x).sin() * (std::f64::consts::PI * y).sin())
                    .abs();
            }
        }
        oracle /= 64.0 * 64.0;

        let closed_form = {
            let c = 1.0 / (std::f64::consts::PI / 130.0).tan();
            (c / 64.0) * (c / 64.0)
        };
        assert_abs_diff_eq!(oracle, closed_form, epsilon = 1e-12);
        assert_abs_diff_eq!(mae(&u, &z).unwrap(), oracle, epsilon = 1e-13);
        // Frozen from the oracle above.
        assert_abs_diff_eq!(mae(&u, &z).unwrap(), 0.417_886_078, epsilon = 1e-9);
    }

    #[test]
    fn mae_rejects_grid_mismatch() {
        let a = zero_field::<f64>(grid64());
        let b = zero_field::<f64>(GridSpec::new(32).unwrap());
        assert!(matches!(mae(&a, &b), Err(Error::GridMismatch { .. })));
    }

    #[test]
    fn zero_field_is_zero() {
        let g = GridSpec::new(2).unwrap();
        let z = zero_field::<f64>(g);
        assert_eq!(z.values().dim(), (2, 2));
        assert!(z.values().iter().all(|&v| v == 0.0));
        assert_eq!(mae(&z, &z).unwrap(), 0.0);
    }

    #[test]
    fn field_rejects_non_finite() {
        let g = GridSpec::new(2).unwrap();
        let mut m = Array2::zeros((2, 2));
        m[[0, 0]] = f64::NAN;
        assert!(ScalarField::new(g, m).is_err());
    }

    #[test]
    fn eval_batch_means_per_sample_maes() {
        let g = GridSpec::new(8).unwrap();
        let mk = |c: f64| ScalarField::from_fn(g, |_: f64, _: f64| c);
        let pair = |c: f64| PairSample::new(mk(c), mk(c), Provenance::External).unwrap();

        // Per-sample MAEs 0.1 and 0.3 → batch 0.2.
        let pairs = vec![pair(0.0), pair(0.0)];
        let preds = vec![mk(0.1), mk(0.3)];
        let rec = eval_batch(&pairs, &preds, Channel::U, Method::FdForward).unwrap();
        assert_abs_diff_eq!(rec.mae, 0.2, epsilon = 1e-14);
        assert_eq!(rec.sample_count, 2);

        // Predictions equal to targets → 0.
        let preds = vec![mk(0.0), mk(0.0)];
        let rec = eval_batch(&pairs, &preds, Channel::F, Method::FdInverse).unwrap();
        assert_eq!(rec.mae, 0.0);
    }

    #[test]
    fn eval_batch_rejects_empty_or_ragged() {
        let g = GridSpec::new(8).unwrap();
        let z = zero_field::<f64>(g);
        let pair = PairSample::new(z.clone(), z.clone(), Provenance::External).unwrap();
        assert!(eval_batch::<f64>(&[], &[], Channel::U, Method::FdForward).is_err());
        assert!(eval_batch(&[pair], &[], Channel::U, Method::FdForward).is_err());
    }

    proptest! {
        #[test]
        fn mae_symmetric_and_shift_invariant(vals in proptest::collection::vec(-1e3f64..1e3, 32), c in -10.0f64..10.0) {
            let g = GridSpec::new(4).unwrap();
            let a = ScalarField::new(g, Array2::from_shape_vec((4, 4), vals[..16].to_vec()).unwrap()).unwrap();
            let b = ScalarField::new(g, Array2::from_shape_vec((4, 4), vals[16..].to_vec()).unwrap()).unwrap();
            let ab = mae(&a, &b).unwrap();
            let ba = mae(&b, &a).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-15 * ab.max(1.0));

            let shift = |f: &ScalarField<f64>| ScalarField::new(g, f.values() + c).unwrap();
            let shifted = mae(&shift(&a), &shift(&b)).unwrap();
            prop_assert!((ab - shifted).abs() <= 1e-12 * ab.max(1.0));
        }

        #[test]
        fn mae_zero_iff_equal(vals in proptest::collection::vec(-1e3f64..1e3, 16)) {
            let g = GridSpec::new(4).unwrap();
            let a = ScalarField::new(g, Array2::from_shape_vec((4, 4), vals.clone()).unwrap()).unwrap();
            prop_assert_eq!(mae(&a, &a).unwrap(), 0.0);
            let mut bumped = vals;
            bumped[7] += 1.0;
            let b = ScalarField::new(g, Array2::from_shape_vec((4, 4), bumped).unwrap()).unwrap();
            prop_assert!(mae(&a, &b).unwrap() > 0.0);
        }
    }
}
