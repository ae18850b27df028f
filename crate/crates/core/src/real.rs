use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type of the exponent calculus: f32 or f64.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an f64 literal into the working scalar.
#[inline]
pub(crate) fn lit<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("literal representable in scalar type")
}

/// Heaviside step with the convention theta(0) = 1.
#[inline]
pub fn heaviside<F: Real>(x: F) -> F {
    if x >= F::zero() {
        F::one()
    } else {
        F::zero()
    }
}
