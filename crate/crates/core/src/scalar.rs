//! Scalar fields the workbench computes over.
//!
//! Every measure, density and function value is generic over [`Scalar`].
//! The exact field [`Rational`] is the default everywhere; `f64` is
//! supported for quick numerical experiments, with equality relaxed to a
//! relative tolerance.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

/// Gaussian rationals `a + bi` with `a, b` rational.
pub type Gaussian<S = Rational> = Complex<S>;

/// An ordered field usable as the value type of measures and functions.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// Whether arithmetic in this type is exact.
    const EXACT: bool;

    /// Equality as the workbench understands it: exact for exact fields,
    /// within a small relative tolerance for floats.
    fn same(&self, other: &Self) -> bool;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Canonical text form (`p/q` in lowest terms for rationals).
    fn to_text(&self) -> String;

    fn from_text(text: &str) -> Option<Self>;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn same(&self, other: &Self) -> bool {
        self == other
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_text(&self) -> String {
        // `Ratio` keeps itself reduced with a positive denominator.
        self.to_string()
    }

    fn from_text(text: &str) -> Option<Self> {
        let text = text.trim();
        match text.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).ok()?;
                let q = BigInt::from_str(q.trim()).ok()?;
                if q.is_zero() {
                    return None;
                }
                Some(BigRational::new(p, q))
            }
            None => BigInt::from_str(text).ok().map(BigRational::from_integer),
        }
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn same(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs()).max(1.0);
                (self - other).abs() <= $eps * scale
            }

            fn from_ratio(numer: i64, denom: i64) -> Self {
                numer as $t / denom as $t
            }

            fn to_text(&self) -> String {
                format!("{}", self)
            }

            fn from_text(text: &str) -> Option<Self> {
                let text = text.trim();
                match text.split_once('/') {
                    Some((p, q)) => {
                        let p: $t = p.trim().parse().ok()?;
                        let q: $t = q.trim().parse().ok()?;
                        (q != 0.0).then(|| p / q)
                    }
                    None => text.parse().ok(),
                }
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-5);

/// Σ of an iterator of scalars.
pub fn sum<'a, S: Scalar>(values: impl IntoIterator<Item = &'a S>) -> S {
    values.into_iter().fold(S::zero(), |acc, v| acc + v.clone())
}

pub fn is_unit_total<S: Scalar>(values: &[S]) -> bool {
    sum(values).same(&S::one())
}

/// `|z|²` for a complex scalar; stays inside the field.
pub fn norm_sqr<S: Scalar>(z: &Complex<S>) -> S {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

pub fn complex_same<S: Scalar>(a: &Complex<S>, b: &Complex<S>) -> bool {
    a.re.same(&b.re) && a.im.same(&b.im)
}

pub fn real<S: Scalar>(value: S) -> Complex<S> {
    Complex::new(value, S::zero())
}

pub fn is_one<S: Scalar>(value: &S) -> bool {
    value.same(&S::one())
}

pub fn is_zero<S: Scalar>(value: &S) -> bool {
    value.same(&S::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_is_lowest_terms() {
        let q = Rational::from_text("2/6").unwrap();
        assert_eq!(q.to_text(), "1/3");
        assert_eq!(Rational::from_text("-4/2").unwrap().to_text(), "-2");
        assert_eq!(Rational::from_text("0").unwrap().to_text(), "0");
        assert!(Rational::from_text("1/0").is_none());
        assert!(Rational::from_text("x").is_none());
    }

    #[test]
    fn float_equality_is_tolerant() {
        let third = f64::from_ratio(1, 3);
        assert!((third * 3.0).same(&1.0));
        assert!(!0.5f64.same(&0.5001));
        assert_eq!(f64::from_text("1/4"), Some(0.25));
    }

    #[test]
    fn totals() {
        let v: Vec<Rational> = vec![Rational::from_ratio(1, 3), Rational::from_ratio(2, 3)];
        assert!(is_unit_total(&v));
        assert!(!is_unit_total(&v[..1]));
    }
}
