//! Rational quaternions `q0 + i q1 + j q2 + k q3`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::exactla::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub q0: Rational,
    pub q1: Rational,
    pub q2: Rational,
    pub q3: Rational,
}

impl Quaternion {
    pub fn new(q0: Rational, q1: Rational, q2: Rational, q3: Rational) -> Self {
        Quaternion { q0, q1, q2, q3 }
    }

    pub fn from_ints(q0: i64, q1: i64, q2: i64, q3: i64) -> Self {
        Quaternion::new(q0.into(), q1.into(), q2.into(), q3.into())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    /// The units `1, i, j, k` in order.
    pub fn units() -> [Quaternion; 4] {
        [Self::one(), Self::i(), Self::j(), Self::k()]
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.q0.clone(), -&self.q1, -&self.q2, -&self.q3)
    }

    pub fn norm_sqr(&self) -> Rational {
        let mut s = Rational::zero();
        for c in [&self.q0, &self.q1, &self.q2, &self.q3] {
            s.add_mul(c, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.q0.is_zero() && self.q1.is_zero() && self.q2.is_zero() && self.q3.is_zero()
    }

    pub fn real_part(&self) -> &Rational {
        &self.q0
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Quaternion::new(&self.q0 * c, &self.q1 * c, &self.q2 * c, &self.q3 * c)
    }
}

impl<'a> Mul<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn mul(self, h: &'a Quaternion) -> Quaternion {
        let (a0, a1, a2, a3) = (&self.q0, &self.q1, &self.q2, &self.q3);
        let (b0, b1, b2, b3) = (&h.q0, &h.q1, &h.q2, &h.q3);
        Quaternion::new(
            &(&(a0 * b0) - &(a1 * b1)) - &(&(a2 * b2) + &(a3 * b3)),
            &(&(a0 * b1) + &(a1 * b0)) + &(&(a2 * b3) - &(a3 * b2)),
            &(&(a0 * b2) - &(a1 * b3)) + &(&(a2 * b0) + &(a3 * b1)),
            &(&(a0 * b3) + &(a1 * b2)) + &(&(a3 * b0) - &(a2 * b1)),
        )
    }
}

impl<'a> Add<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn add(self, h: &'a Quaternion) -> Quaternion {
        Quaternion::new(
            &self.q0 + &h.q0,
            &self.q1 + &h.q1,
            &self.q2 + &h.q2,
            &self.q3 + &h.q3,
        )
    }
}

impl<'a> Sub<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn sub(self, h: &'a Quaternion) -> Quaternion {
        Quaternion::new(
            &self.q0 - &h.q0,
            &self.q1 - &h.q1,
            &self.q2 - &h.q2,
            &self.q3 - &h.q3,
        )
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.q0, -&self.q1, -&self.q2, -&self.q3)
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}i + {}j + {}k)",
            self.q0, self.q1, self.q2, self.q3
        )
    }
}
