//! Second-order forward-mode derivative carrier in two variables.
//!
//! A [`Jet2`] propagates a value together with its gradient and Hessian
//! through arithmetic and `tanh`, giving exact-to-round-off Laplacians of
//! composite expressions without any numerical differencing.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Value, gradient, and (symmetric) Hessian of a scalar function at a point.
///
/// The mixed partial is stored once, so `hess` is symmetric by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2<F> {
    pub value: F,
    pub dx: F,
    pub dy: F,
    pub dxx: F,
    pub dxy: F,
    pub dyy: F,
}

impl<F: Scalar> Jet2<F> {
    /// Constant jet: all derivatives zero.
    pub fn constant(value: F) -> Self {
        Jet2 {
            value,
            dx: F::zero(),
            dy: F::zero(),
            dxx: F::zero(),
            dxy: F::zero(),
            dyy: F::zero(),
        }
    }

    /// The `x` variable seeded at `value`.
    pub fn x_var(value: F) -> Self {
        Jet2 {
            dx: F::one(),
            ..Jet2::constant(value)
        }
    }

    /// The `y` variable seeded at `value`.
    pub fn y_var(value: F) -> Self {
        Jet2 {
            dy: F::one(),
            ..Jet2::constant(value)
        }
    }

    /// Gradient as a 2-vector.
    pub fn grad(&self) -> [F; 2] {
        [self.dx, self.dy]
    }

    /// Hessian as a symmetric 2×2 matrix.
    pub fn hess(&self) -> [[F; 2]; 2] {
        [[self.dxx, self.dxy], [self.dxy, self.dyy]]
    }

    /// Trace of the Hessian: the Laplacian of the carried function.
    pub fn laplacian(&self) -> F {
        self.dxx + self.dyy
    }

    /// Scale by a constant.
    pub fn scale(&self, c: F) -> Self {
        Jet2 {
            value: self.value * c,
            dx: self.dx * c,
            dy: self.dy * c,
            dxx: self.dxx * c,
            dxy: self.dxy * c,
            dyy: self.dyy * c,
        }
    }

    /// `tanh` with first and second derivatives chained through:
    /// `tanh' = 1 − t²`, `tanh'' = −2t(1 − t²)`.
    pub fn tanh(&self) -> Self {
        let t = self.value.tanh();
        let d1 = F::one() - t * t;
        let d2 = -(t + t) * d1;
        Jet2 {
            value: t,
            dx: d1 * self.dx,
            dy: d1 * self.dy,
            dxx: d1 * self.dxx + d2 * self.dx * self.dx,
            dxy: d1 * self.dxy + d2 * self.dx * self.dy,
            dyy: d1 * self.dyy + d2 * self.dy * self.dy,
        }
    }
}

impl<F: Scalar> Add for Jet2<F> {
    type Output = Jet2<F>;
    fn add(self, rhs: Jet2<F>) -> Jet2<F> {
        Jet2 {
            value: self.value + rhs.value,
            dx: self.dx + rhs.dx,
            dy: self.dy + rhs.dy,
            dxx: self.dxx + rhs.dxx,
            dxy: self.dxy + rhs.dxy,
            dyy: self.dyy + rhs.dyy,
        }
    }
}

impl<F: Scalar> Sub for Jet2<F> {
    type Output = Jet2<F>;
    fn sub(self, rhs: Jet2<F>) -> Jet2<F> {
        Jet2 {
            value: self.value - rhs.value,
            dx: self.dx - rhs.dx,
            dy: self.dy - rhs.dy,
            dxx: self.dxx - rhs.dxx,
            dxy: self.dxy - rhs.dxy,
            dyy: self.dyy - rhs.dyy,
        }
    }
}

impl<F: Scalar> Neg for Jet2<F> {
    type Output = Jet2<F>;
    fn neg(self) -> Jet2<F> {
        self.scale(-F::one())
    }
}

/// Leibniz product rule up to second order.
impl<F: Scalar> Mul for Jet2<F> {
    type Output = Jet2<F>;
    fn mul(self, b: Jet2<F>) -> Jet2<F> {
        let a = self;
        Jet2 {
            value: a.value * b.value,
            dx: a.dx * b.value + a.value * b.dx,
            dy: a.dy * b.value + a.value * b.dy,
            dxx: a.dxx * b.value + (a.dx * b.dx + a.dx * b.dx) + a.value * b.dxx,
            dxy: a.dxy * b.value + a.dx * b.dy + a.dy * b.dx + a.value * b.dxy,
            dyy: a.dyy * b.value + (a.dy * b.dy + a.dy * b.dy) + a.value * b.dyy,
        }
    }
}
