//! Discrete sine transform, the Dirichlet Laplacian eigensystem, and exact
//! spectral Poisson solves.
//!
//! The basis functions are `s_{n,m}(x,y) = sin(nπx)·sin(mπy)` for
//! `n, m = 1..=N`. On the interior grid `x_i = i/(N+1)` they are exactly
//! orthogonal: `Σ_i sin(nπx_i)·sin(n'πx_i) = (N+1)/2 · δ_{nn'}`. With the
//! forward scaling `4h²` the transform pair below is mutually inverse to
//! machine precision.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, ScalarField};
use crate::scalar::Scalar;

/// Which coefficient scaling a matrix carries.
///
/// `Raw` means plain transform coefficients `c[n][m] = 4h²·⟨g, s_{n,m}⟩`.
/// `USpace` marks forcing coefficients divided by the eigenvalues (the
/// solution scale); `FSpace` marks solution coefficients multiplied by the
/// eigenvalues (the forcing scale).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Raw,
    USpace,
    FSpace,
}

/// Sine-basis coefficients indexed by mode `(n, m)`, `n, m = 1..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs<F> {
    grid: GridSpec,
    space: Space,
    c: Array2<F>,
}

impl<F: Scalar> SpectralCoeffs<F> {
    pub fn new(grid: GridSpec, space: Space, c: Array2<F>) -> Result<Self> {
        let n = grid.n_interior();
        if c.dim() != (n, n) {
            return Err(Error::GridMismatch {
                expected: n,
                got: c.dim().0.max(c.dim().1),
            });
        }
        Ok(SpectralCoeffs { grid, space, c })
    }

    pub fn zeros(grid: GridSpec, space: Space) -> Self {
        let n = grid.n_interior();
        SpectralCoeffs {
            grid,
            space,
            c: Array2::zeros((n, n)),
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Coefficient of `s_{n,m}` (1-based mode indices).
    pub fn coeff(&self, n: usize, m: usize) -> F {
        self.c[[n - 1, m - 1]]
    }

    pub fn matrix(&self) -> &Array2<F> {
        &self.c
    }

    pub fn matrix_mut(&mut self) -> &mut Array2<F> {
        &mut self.c
    }

    pub fn into_matrix(self) -> Array2<F> {
        self.c
    }
}

/// Laplacian eigenvalues `λ_{n,m} = −(nπ)² − (mπ)²` on the unit square.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenTable<F> {
    grid: GridSpec,
    lambda: Array2<F>,
}

impl<F: Scalar> EigenTable<F> {
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// `λ_{n,m}` (1-based mode indices; always negative).
    pub fn lambda(&self, n: usize, m: usize) -> F {
        self.lambda[[n - 1, m - 1]]
    }

    pub fn matrix(&self) -> &Array2<F> {
        &self.lambda
    }
}

/// Eigenvalue table of the continuous Laplacian for every grid mode.
pub fn eigenvalues<F: Scalar>(grid: GridSpec) -> EigenTable<F> {
    let n = grid.n_interior();
    let pi2 = F::PI() * F::PI();
    let lambda = Array2::from_shape_fn((n, n), |(i, j)| {
        let nn = F::from_index((i + 1) * (i + 1));
        let mm = F::from_index((j + 1) * (j + 1));
        -pi2 * (nn + mm)
    });
    EigenTable { grid, lambda }
}

/// `sin(πk/(N+1))` for `k = 0..2(N+1)`, with the argument reduced to the
/// first quadrant by exact integer arithmetic so every entry is accurate to
/// about one ulp even for large mode·index products.
fn sine_table<F: Scalar>(n_plus_1: usize) -> Vec<F> {
    let period = 2 * n_plus_1;
    let mut table = Vec::with_capacity(period);
    for k in 0..period {
        let (k1, negate) = if k >= n_plus_1 {
            (k - n_plus_1, true)
        } else {
            (k, false)
        };
        // sin(π k1/(N+1)) with k1 in [0, N+1); fold onto [0, (N+1)/2].
        let k2 = if 2 * k1 > n_plus_1 { n_plus_1 - k1 } else { k1 };
        let angle = F::PI() * F::from_index(k2) / F::from_index(n_plus_1);
        let s = angle.sin();
        table.push(if negate { -s } else { s });
    }
    table
}

/// Precomputed sine matrix for one grid, reused across transforms.
///
/// `s[[n-1, i]] = sin(nπ·x_{i+1})`; the matrix is symmetric.
#[derive(Debug, Clone)]
pub struct SineBasis<F> {
    grid: GridSpec,
    s: Array2<F>,
}

impl<F: Scalar> SineBasis<F> {
    pub fn new(grid: GridSpec) -> Self {
        let n = grid.n_interior();
        let table = sine_table::<F>(n + 1);
        let period = 2 * (n + 1);
        let s = Array2::from_shape_fn((n, n), |(row, col)| {
            table[((row + 1) * (col + 1)) % period]
        });
        SineBasis { grid, s }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// `sin(nπ·x_i)` for 1-based mode `n` and 0-based grid index `i`.
    pub fn value(&self, n: usize, i: usize) -> F {
        self.s[[n - 1, i]]
    }

    /// Raw transform: `c[n][m] = 4h²·Σ_{ij} g_{ij}·sin(nπx_i)·sin(mπy_j)`.
    pub fn forward(&self, field: &ScalarField<F>) -> SpectralCoeffs<F> {
        debug_assert_eq!(field.grid(), self.grid);
        let h = self.grid.spacing::<F>();
        let scale = F::from_index(4) * h * h;
        let c = self.s.dot(field.values()).dot(&self.s) * scale;
        SpectralCoeffs {
            grid: self.grid,
            space: Space::Raw,
            c,
        }
    }

    /// Reconstruction `g(x_i, y_j) = Σ_{nm} c[n][m]·sin(nπx_i)·sin(mπy_j)`.
    pub fn inverse(&self, coeffs: &SpectralCoeffs<F>) -> ScalarField<F> {
        debug_assert_eq!(coeffs.grid(), self.grid);
        let values = self.s.dot(&coeffs.c).dot(&self.s);
        ScalarField::from_values_unchecked(self.grid, values)
    }

    /// Reconstruction straight from a coefficient matrix.
    pub fn inverse_matrix(&self, c: &Array2<F>) -> ScalarField<F> {
        let values = self.s.dot(c).dot(&self.s);
        ScalarField::from_values_unchecked(self.grid, values)
    }

    /// Raw coefficient matrix of a field.
    pub fn forward_matrix(&self, field: &ScalarField<F>) -> Array2<F> {
        self.forward(field).c
    }
}

/// The sampled eigenfunction `s_{n,m}` on the grid, accurate to ~1 ulp.
pub fn mode_field<F: Scalar>(grid: GridSpec, n: usize, m: usize) -> ScalarField<F> {
    let size = grid.n_interior();
    assert!(
        (1..=size).contains(&n) && (1..=size).contains(&m),
        "mode ({n},{m}) outside 1..={size}"
    );
    let table = sine_table::<F>(size + 1);
    let period = 2 * (size + 1);
    let values = Array2::from_shape_fn((size, size), |(i, j)| {
        table[(n * (i + 1)) % period] * table[(m * (j + 1)) % period]
    });
    ScalarField::from_values_unchecked(grid, values)
}

/// Evaluate the sine series of `coeffs` at an arbitrary point of the square.
pub fn eval_sine_series<F: Scalar>(coeffs: &SpectralCoeffs<F>, x: F, y: F) -> F {
    let n = coeffs.grid().n_interior();
    let sx: Vec<F> = (1..=n)
        .map(|k| (F::from_index(k) * F::PI() * x).sin())
        .collect();
    let sy: Vec<F> = (1..=n)
        .map(|k| (F::from_index(k) * F::PI() * y).sin())
        .collect();
    let mut acc = F::zero();
    for (i, &sxi) in sx.iter().enumerate() {
        let mut row = F::zero();
        for (j, &syj) in sy.iter().enumerate() {
            row += coeffs.c[[i, j]] * syj;
        }
        acc += sxi * row;
    }
    acc
}

/// Forward DST with the raw scaling.
pub fn dst_forward<F: Scalar>(field: &ScalarField<F>) -> SpectralCoeffs<F> {
    SineBasis::new(field.grid()).forward(field)
}

/// Inverse of [`dst_forward`].
pub fn dst_inverse<F: Scalar>(coeffs: &SpectralCoeffs<F>) -> ScalarField<F> {
    SineBasis::new(coeffs.grid()).inverse(coeffs)
}

/// Forcing field to solution-scale coefficients: `c = ⟨f, s_{n,m}⟩/λ_{n,m}`.
///
/// These are the targets of the forward restoration chain; they equal the
/// raw coefficients of the Poisson solution `Δ⁻¹f`.
pub fn to_u_space_from_f<F: Scalar>(
    field_f: &ScalarField<F>,
    eig: &EigenTable<F>,
) -> SpectralCoeffs<F> {
    debug_assert_eq!(field_f.grid(), eig.grid);
    let raw = dst_forward(field_f);
    SpectralCoeffs {
        grid: raw.grid,
        space: Space::USpace,
        c: raw.c / &eig.lambda,
    }
}

/// Solution field to forcing-scale coefficients: `c = λ_{n,m}·⟨u, s_{n,m}⟩`.
///
/// These are the targets of the inverse restoration chain; they equal the
/// raw coefficients of the Laplacian `Δu`.
pub fn to_f_space_from_u<F: Scalar>(
    field_u: &ScalarField<F>,
    eig: &EigenTable<F>,
) -> SpectralCoeffs<F> {
    debug_assert_eq!(field_u.grid(), eig.grid);
    let raw = dst_forward(field_u);
    SpectralCoeffs {
        grid: raw.grid,
        space: Space::FSpace,
        c: raw.c * &eig.lambda,
    }
}

/// Laplacian applied in the eigenbasis: exact for band-limited fields.
pub fn spectral_laplacian<F: Scalar>(
    field: &ScalarField<F>,
    eig: &EigenTable<F>,
) -> ScalarField<F> {
    let basis = SineBasis::new(field.grid());
    let scaled = basis.forward(field).c * &eig.lambda;
    basis.inverse_matrix(&scaled)
}

/// Exact inverse of [`spectral_laplacian`]: solves `Δu = f` with `u = 0` on
/// the boundary.
pub fn spectral_poisson_solve<F: Scalar>(
    f: &ScalarField<F>,
    eig: &EigenTable<F>,
) -> ScalarField<F> {
    let basis = SineBasis::new(f.grid());
    let scaled = basis.forward(f).c / &eig.lambda;
    basis.inverse_matrix(&scaled)
}
