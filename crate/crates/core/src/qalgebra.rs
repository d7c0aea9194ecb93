//! Complex scalars and quaternions in the symplectic representation.
//!
//! A quaternion is held as the complex pair (c1, c2) meaning q = c1 + j*c2.
//! Complex numbers commute with each other but not with j: moving a complex
//! factor through j conjugates it, j*z = conj(z)*j. That single rule fixes
//! the product law of the pair and is the reason the coupled spinor
//! equations mix a component with the conjugate of its partner.

use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;

/// Quaternion q = c1 + j*c2 with complex c1, c2.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    /// Complex part (spanned by 1 and i).
    pub c1: C64,
    /// Symplectic partner (spanned by j and k after the left j factor).
    pub c2: C64,
}

impl Quaternion {
    pub const fn new(c1: C64, c2: C64) -> Self {
        Self { c1, c2 }
    }

    pub fn zero() -> Self {
        Self::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        Self::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn i() -> Self {
        Self::new(C64::new(0.0, 1.0), C64::new(0.0, 0.0))
    }

    pub fn j() -> Self {
        Self::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0))
    }

    /// k = i*j = j*(-i).
    pub fn k() -> Self {
        Self::new(C64::new(0.0, 0.0), C64::new(0.0, -1.0))
    }

    pub fn from_real(x: f64) -> Self {
        Self::new(C64::new(x, 0.0), C64::new(0.0, 0.0))
    }

    pub fn from_complex(z: C64) -> Self {
        Self::new(z, C64::new(0.0, 0.0))
    }

    /// Quaternion conjugate: reverses the sign of the i, j and k parts.
    pub fn conj(self) -> Self {
        Self::new(self.c1.conj(), -self.c2)
    }

    /// Squared norm |c1|^2 + |c2|^2.
    pub fn norm_sqr(self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Real (scalar) part.
    pub fn scalar(self) -> f64 {
        self.c1.re
    }

    /// Magnitude of the non-scalar (i, j, k) part.
    pub fn non_scalar_norm(self) -> f64 {
        (self.c1.im * self.c1.im + self.c2.norm_sqr()).sqrt()
    }

    /// Symplectic split; the inverse of [`Quaternion::join`], bit-exact.
    pub fn split(self) -> (C64, C64) {
        (self.c1, self.c2)
    }

    /// Rebuild from a symplectic pair; bit-exact inverse of [`Quaternion::split`].
    pub fn join(parts: (C64, C64)) -> Self {
        Self::new(parts.0, parts.1)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Self {
        Self::new(-self.c1, -self.c2)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    /// (a1 + j a2)(b1 + j b2) = (a1 b1 - conj(a2) b2) + j (conj(a1) b2 + a2 b1),
    /// obtained by pushing every j to the left with j*z = conj(z)*j.
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.c1 * rhs.c1 - self.c2.conj() * rhs.c2,
            self.c1.conj() * rhs.c2 + self.c2 * rhs.c1,
        )
    }
}

/// Left multiplication by a complex scalar: z*(c1 + j c2) = z c1 + j conj(z) c2.
impl Mul<Quaternion> for C64 {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self * rhs.c1, self.conj() * rhs.c2)
    }
}

/// Right multiplication by a complex scalar: (c1 + j c2)*z = c1 z + j c2 z.
impl Mul<C64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: C64) -> Quaternion {
        Quaternion::new(self.c1 * rhs, self.c2 * rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: f64) -> Quaternion {
        Quaternion::new(self.c1 * rhs, self.c2 * rhs)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self * rhs.c1, self * rhs.c2)
    }
}
