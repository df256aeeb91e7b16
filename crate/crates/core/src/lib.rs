//! Forward and inverse solvers for the 2-D Poisson equation `Δu = f` on the
//! unit square with homogeneous Dirichlet boundary conditions.
//!
//! Everything operates on the interior points of an N×N grid and on the sine
//! eigenbasis of the Dirichlet Laplacian, `s_{n,m}(x,y) = sin(nπx)·sin(mπy)`
//! with eigenvalues `λ_{n,m} = −(nπ)² − (mπ)²`. The crate provides:
//!
//! - [`grid`]: grid geometry, scalar fields, sample pairs, and the MAE metric;
//! - [`spectral`]: the discrete sine transform, the eigensystem, and exact
//!   spectral Laplacian / Poisson solves;
//! - [`fd`]: the five-point finite-difference Laplacian and its exact
//!   (DST-diagonalized) Poisson solver, used as a baseline;
//! - [`datagen`]: analytical and random-smooth `(f, u)` pair generators with
//!   exact Laplacians via second-order forward-mode jets;
//! - [`noise`]: i.i.d. Gaussian and Brownian-bridge measurement noise and the
//!   geometric noise-level schedule;
//! - [`greens`]: the free-space Green's-function variance kernel, its
//!   per-mode upper bound, and Monte-Carlo checks of both;
//! - [`ddrm`]: restoration sampling chains over sine coefficients that
//!   estimate `u` conditioned on `f` (forward) and `f` conditioned on `u`
//!   (inverse), driven by a pluggable [`ddrm::Denoiser`].
//!
//! Core math is generic over the scalar type through [`Scalar`]; the type
//! aliases at the crate root fix `f64`, which is what the command-line tools
//! and the file formats use.

pub mod datagen;
pub mod ddrm;
mod error;
pub mod fd;
pub mod greens;
pub mod grid;
pub mod noise;
pub mod rng;
mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use grid::{EvalRecord, GridSpec, Method, PairSample, Provenance, ScalarField};

/// `f64` scalar field on the interior grid.
pub type Field64 = grid::ScalarField<f64>;
/// `f64` sample pair.
pub type Pair64 = grid::PairSample<f64>;
/// `f64` sine-basis coefficient matrix.
pub type Coeffs64 = spectral::SpectralCoeffs<f64>;
/// `f64` Laplacian eigenvalue table.
pub type EigenTable64 = spectral::EigenTable<f64>;
/// `f64` noise-level schedule.
pub type NoiseSchedule64 = noise::NoiseSchedule<f64>;
/// `f64` restoration-chain configuration.
pub type DdrmConfig64 = ddrm::DdrmConfig<f64>;
