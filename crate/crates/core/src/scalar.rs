//! Exact arithmetic in the real quadratic field ℚ(√3).
//!
//! Every coefficient produced by the constructions in this crate (the halves
//! of the pseudoscalar idempotents, the `-1/2` and `√3/2` entries of the
//! order-three map) lives in this field, so all identity checks are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ScalarError;

/// `a + b·√3` with `a`, `b` reduced rationals.
///
/// `BigRational` keeps its fractions reduced with a positive denominator, so
/// the derived structural equality coincides with numeric equality (√3 is
/// irrational).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QS3Scalar {
    a: BigRational,
    b: BigRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

impl QS3Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self {
            a: BigRational::from_integer(BigInt::from(n)),
            b: BigRational::zero(),
        }
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
        }
    }

    /// `(a_num/a_den) + (b_num/b_den)·√3`.
    pub fn from_parts(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        Self {
            a: BigRational::new(a_num.into(), a_den.into()),
            b: BigRational::new(b_num.into(), b_den.into()),
        }
    }

    pub fn sqrt3() -> Self {
        Self {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt3_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b√3`.
    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a² - 3b²`, zero only for zero.
    pub fn field_norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(3.into()) * &self.b * &self.b
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.field_norm();
        Ok(Self {
            a: &self.a / &n,
            b: -(&self.b / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.recip()?)
    }

    /// One-stop arithmetic entry point; `Neg` ignores `y`.
    pub fn arith(x: &Self, y: &Self, op: ArithOp) -> Result<Self, ScalarError> {
        Ok(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => x.checked_div(y)?,
            ArithOp::Neg => -x,
        })
    }

    /// Exact sign of the real number `a + b√3`.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the term with larger square wins.
        let a2 = &self.a * &self.a;
        let b2 = BigRational::from_integer(3.into()) * &self.b * &self.b;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("a² = 3b² has no nonzero rational solution"),
        }
    }

    pub fn to_f64(&self) -> Result<f64, ScalarError> {
        let a = self.a.to_f64().ok_or(ScalarError::Overflow)?;
        let b = self.b.to_f64().ok_or(ScalarError::Overflow)?;
        let v = a + b * 3f64.sqrt();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ScalarError::Overflow)
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        Self {
            a: &self.a * &k,
            b: &self.b * &k,
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for QS3Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by real value.
impl Ord for QS3Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl From<i64> for QS3Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for QS3Scalar {
    fn from(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
        }
    }
}

impl<'a> Add<&'a QS3Scalar> for &'a QS3Scalar {
    type Output = QS3Scalar;
    fn add(self, rhs: &QS3Scalar) -> QS3Scalar {
        QS3Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a QS3Scalar> for &'a QS3Scalar {
    type Output = QS3Scalar;
    fn sub(self, rhs: &QS3Scalar) -> QS3Scalar {
        QS3Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a QS3Scalar> for &'a QS3Scalar {
    type Output = QS3Scalar;
    fn mul(self, rhs: &QS3Scalar) -> QS3Scalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return QS3Scalar {
                a: &self.a * &rhs.a,
                b: BigRational::zero(),
            };
        }
        let three = BigRational::from_integer(3.into());
        QS3Scalar {
            a: &self.a * &rhs.a + three * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &QS3Scalar {
    type Output = QS3Scalar;
    fn neg(self) -> QS3Scalar {
        QS3Scalar {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QS3Scalar> for QS3Scalar {
            type Output = QS3Scalar;
            fn $m(self, rhs: QS3Scalar) -> QS3Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QS3Scalar> for QS3Scalar {
            type Output = QS3Scalar;
            fn $m(self, rhs: &QS3Scalar) -> QS3Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QS3Scalar {
    type Output = QS3Scalar;
    fn neg(self) -> QS3Scalar {
        QS3Scalar {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl AddAssign<&QS3Scalar> for QS3Scalar {
    fn add_assign(&mut self, rhs: &QS3Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QS3Scalar> for QS3Scalar {
    fn sub_assign(&mut self, rhs: &QS3Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl std::iter::Sum for QS3Scalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Text form `p/q`, `p/q s3` or `p/q + r/s s3`.
impl fmt::Display for QS3Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write_rational(f, &self.a),
            (true, false) => {
                write_rational(f, &self.b)?;
                write!(f, " s3")
            }
            (false, false) => {
                write_rational(f, &self.a)?;
                if self.b.is_negative() {
                    write!(f, " - ")?;
                    write_rational(f, &-&self.b)?;
                } else {
                    write!(f, " + ")?;
                    write_rational(f, &self.b)?;
                }
                write!(f, " s3")
            }
        }
    }
}

impl serde::Serialize for QS3Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for QS3Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QS3({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> QS3Scalar {
        QS3Scalar::from_parts(a, 1, b, 1)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&q(1, 1) * &q(1, -1), QS3Scalar::from_int(-2));
    }

    #[test]
    fn reciprocal_of_two_plus_sqrt3() {
        let r = QS3Scalar::one().checked_div(&q(2, 1)).unwrap();
        assert_eq!(r, q(2, -1));
        // multiplication oracle
        assert!((&r * &q(2, 1)).is_one());
    }

    #[test]
    fn negating_zero() {
        assert!((-QS3Scalar::zero()).is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            QS3Scalar::one().checked_div(&QS3Scalar::zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert!(QS3Scalar::arith(&q(1, 0), &q(0, 0), ArithOp::Div).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(q(2, -1).signum(), 1);
        assert_eq!(q(1, -1).signum(), -1);
        assert_eq!(QS3Scalar::zero().signum(), 0);
        assert_eq!(q(-2, 1).signum(), -1);
        assert_eq!(q(-1, 1).signum(), 1);
    }

    #[test]
    fn float_conversion() {
        assert_eq!(QS3Scalar::frac(1, 2).to_f64().unwrap(), 0.5);
        assert_eq!(QS3Scalar::sqrt3().to_f64().unwrap(), 1.7320508075688772);
        assert_eq!(QS3Scalar::from_int(-2).to_f64().unwrap(), -2.0);
    }

    #[test]
    fn display_forms() {
        assert_eq!(QS3Scalar::from_parts(-1, 2, 1, 2).to_string(), "-1/2 + 1/2 s3");
        assert_eq!(QS3Scalar::from_parts(0, 1, -3, 2).to_string(), "-3/2 s3");
        assert_eq!(QS3Scalar::from_parts(5, 1, -1, 1).to_string(), "5 - 1 s3");
    }

    fn arb() -> impl Strategy<Value = QS3Scalar> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
            .prop_map(|(a, b, c, d)| QS3Scalar::from_parts(a, b, c, d))
    }

    proptest! {
        #[test]
        fn reciprocal_is_exact(x in arb()) {
            prop_assume!(!x.is_zero());
            prop_assert!((&x * &x.recip().unwrap()).is_one());
        }

        #[test]
        fn sign_is_multiplicative(x in arb(), y in arb()) {
            prop_assert_eq!((&x * &y).signum(), x.signum() * y.signum());
        }

        #[test]
        fn float_of_sum_tracks_float_addition(x in arb(), y in arb()) {
            let s = (&x + &y).to_f64().unwrap();
            let t = x.to_f64().unwrap() + y.to_f64().unwrap();
            prop_assert!((s - t).abs() <= 1e-12 * (1.0 + t.abs()));
        }

        #[test]
        fn no_nonzero_rational_root_of_three(a in -200i64..200, b in 1i64..60, c in -200i64..200, d in 1i64..60) {
            let x = QS3Scalar::from_parts(a, b, c, d);
            if !x.is_zero() {
                prop_assert!(!x.field_norm().is_zero());
                prop_assert!(x.signum() != 0);
            }
        }
    }
}
