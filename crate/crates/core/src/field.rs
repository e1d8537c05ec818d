//! Coefficient fields.
//!
//! Everything up to and including the Hilbert computations is generic over
//! a [`Field`]. The geometric layer needs integer structure (rational roots)
//! and is fixed to [`Q`](crate::Q).

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Num;

/// An exact field usable as polynomial coefficients.
///
/// Floating-point types satisfy the `num-traits` bounds but are not exact;
/// Gröbner computations over them are meaningless, so they get no impl.
pub trait Field: Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Field for Ratio<T> where T: Clone + Integer + Neg<Output = T> + Debug + Display + Send + Sync + 'static {}
