use std::fmt::{Debug, Display};
use std::iter::Sum;

use ndarray::ScalarOperand;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use rand::distributions::uniform::SampleUniform;
use rand::Rng;
use rand_distr::StandardNormal;

/// Floating-point scalar the solvers are generic over: `f32` or `f64`.
///
/// The bounds cover arithmetic, the float constants (π), conversions from
/// primitive integers, and uniform sampling; standard-normal sampling is a
/// trait method so callers need no `rand_distr` bounds of their own.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + SampleUniform
    + ScalarOperand
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// One draw from N(0, 1).
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Conversion from `usize` grid indices and counts.
    fn from_index(i: usize) -> Self {
        Self::from_usize(i).expect("index out of scalar range")
    }
}

impl Scalar for f32 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl Scalar for f64 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}
