//! Coordinate scalars for root-system realizations.
//!
//! Crystallographic families are realized over exact rationals; the
//! non-crystallographic ones (`I2(m)`, `H3`, `H4`) need cosines of `pi/m`
//! and are realized over floats with an absolute tolerance. Everything
//! downstream of table construction is integer combinatorics on root
//! indices, so the scalar only matters for building tables and for
//! fixed-space linear algebra.

use std::fmt::Debug;

use num_rational::Rational64;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Field-like scalar used for root coordinates.
pub trait Scalar:
    Num + Signed + Clone + Debug + PartialOrd + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// True for scalars that carry rounding error.
    const INEXACT: bool;

    /// Zero test: exact for rationals, `|x| < tol` for floats.
    fn is_negligible(&self) -> bool;

    /// Hashable key for de-duplication; equal keys for values that compare
    /// equal under [`Scalar::is_negligible`] of their difference.
    fn snap(&self) -> (i64, i64);

    /// Textual form used in serialized documents.
    fn render(&self) -> String;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("small integer") / Self::from_i64(den).expect("small integer")
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    /// Strictly negative beyond tolerance.
    fn is_strictly_negative(&self) -> bool {
        !self.is_negligible() && self.is_negative()
    }
}

/// Tolerance for `f64` realizations.
pub const F64_TOLERANCE: f64 = 1e-9;
/// Tolerance for `f32` realizations.
pub const F32_TOLERANCE: f32 = 1e-4;

impl Scalar for f64 {
    const INEXACT: bool = true;

    fn is_negligible(&self) -> bool {
        self.abs() < F64_TOLERANCE
    }

    fn snap(&self) -> (i64, i64) {
        // Root coordinates are separated by far more than 1e-6.
        ((self * 1e6).round() as i64, 0)
    }

    fn render(&self) -> String {
        format!("{:.15}", if self.is_negligible() { 0.0 } else { *self })
    }
}

impl Scalar for f32 {
    const INEXACT: bool = true;

    fn is_negligible(&self) -> bool {
        self.abs() < F32_TOLERANCE
    }

    fn snap(&self) -> (i64, i64) {
        ((self * 1e3).round() as i64, 0)
    }

    fn render(&self) -> String {
        format!("{:.7}", if self.is_negligible() { 0.0 } else { *self })
    }
}

impl Scalar for Rational64 {
    const INEXACT: bool = false;

    fn is_negligible(&self) -> bool {
        *self.numer() == 0
    }

    fn snap(&self) -> (i64, i64) {
        (*self.numer(), *self.denom())
    }

    fn render(&self) -> String {
        if *self.denom() == 1 {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Parses the output of [`Scalar::render`].
pub fn parse_scalar<T: Scalar>(text: &str) -> Option<T> {
    let text = text.trim();
    if T::INEXACT {
        return text.parse::<f64>().ok().and_then(T::from_f64);
    }
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| T::ratio(n, d))
        }
        None => text.parse::<i64>().ok().and_then(T::from_i64),
    }
}
