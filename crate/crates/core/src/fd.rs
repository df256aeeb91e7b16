//! Five-point finite-difference Laplacian and its exact Poisson solver.
//!
//! The stencil `(g_E + g_W + g_N + g_S − 4g)/h²` with zero ghost values on
//! the boundary is diagonalized exactly by the sine basis with eigenvalues
//! `μ_{n,m} = −(4/h²)·(sin²(nπh/2) + sin²(mπh/2))`, so the discrete system
//! is solved by one transform round trip instead of an iterative method.

use ndarray::Array2;

use crate::grid::{GridSpec, ScalarField};
use crate::scalar::Scalar;
use crate::spectral::SineBasis;

/// Eigenvalues of the discrete five-point Laplacian for every grid mode.
///
/// `|μ_{n,m}| ≤ |λ_{n,m}|`, with equality only in the `h → 0` limit.
#[derive(Debug, Clone, PartialEq)]
pub struct FdEigenTable<F> {
    grid: GridSpec,
    mu: Array2<F>,
}

impl<F: Scalar> FdEigenTable<F> {
    pub fn new(grid: GridSpec) -> Self {
        let n = grid.n_interior();
        let h = grid.spacing::<F>();
        let four_over_h2 = F::from_index(4) / (h * h);
        let half_pi_h = F::PI() * h / F::from_index(2);
        let axis: Vec<F> = (1..=n)
            .map(|k| {
                let s = (F::from_index(k) * half_pi_h).sin();
                s * s
            })
            .collect();
        let mu = Array2::from_shape_fn((n, n), |(i, j)| -four_over_h2 * (axis[i] + axis[j]));
        FdEigenTable { grid, mu }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// `μ_{n,m}` (1-based mode indices; always negative).
    pub fn mu(&self, n: usize, m: usize) -> F {
        self.mu[[n - 1, m - 1]]
    }

    pub fn matrix(&self) -> &Array2<F> {
        &self.mu
    }
}

/// Five-point discrete Laplacian with zero ghost cells outside the boundary.
pub fn fd_laplacian<F: Scalar>(field: &ScalarField<F>) -> ScalarField<F> {
    let n = field.grid().n_interior();
    let h = field.grid().spacing::<F>();
    let inv_h2 = F::one() / (h * h);
    let g = field.values();
    let four = F::from_index(4);
    let values = Array2::from_shape_fn((n, n), |(i, j)| {
        let west = if i > 0 { g[[i - 1, j]] } else { F::zero() };
        let east = if i + 1 < n { g[[i + 1, j]] } else { F::zero() };
        let south = if j > 0 { g[[i, j - 1]] } else { F::zero() };
        let north = if j + 1 < n { g[[i, j + 1]] } else { F::zero() };
        (west + east + south + north - four * g[[i, j]]) * inv_h2
    });
    ScalarField::from_values_unchecked(field.grid(), values)
}

/// Solve the discrete system `fd_laplacian(u) = f` exactly via the sine
/// transform and the discrete eigenvalues.
pub fn fd_poisson_solve<F: Scalar>(f: &ScalarField<F>) -> ScalarField<F> {
    let basis = SineBasis::new(f.grid());
    let mu = FdEigenTable::new(f.grid());
    let scaled = basis.forward_matrix(f) / &mu.mu;
    basis.inverse_matrix(&scaled)
}

/// Finite-difference estimate of the forcing from an observed solution:
/// `f̂ = fd_laplacian(u)`.
pub fn fd_inverse_estimate<F: Scalar>(u: &ScalarField<F>) -> ScalarField<F> {
    fd_laplacian(u)
}
