//! Stabilizer of the reference momentum p0 = (1,0,0,1) and its characters.
//!
//! Elements are upper triangular [[z, b], [0, conj z]] with |z| = 1. The group
//! double covers the Euclidean group E(2) through (z, b) -> (z b, z^2).

use std::fmt;

use crate::linalg::cmax;
use crate::error::{Error, Result};
use crate::lorentz::{FourVector, Mat2, Sl2c};
use crate::tolerances::LITTLE_GROUP_TOL;
use crate::C64;

pub fn reference_momentum() -> FourVector {
    FourVector::new(1.0, 0.0, 0.0, 1.0)
}

/// Helicity s stored as the integer 2s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Helicity(i32);

impl Helicity {
    pub fn from_twice(two_s: i32) -> Self {
        Helicity(two_s)
    }

    /// Accepts values whose double is an integer.
    pub fn from_value(s: f64) -> Result<Self> {
        let t = 2.0 * s;
        if !t.is_finite() || (t - t.round()).abs() > 1e-12 || t.abs() > 1e6 {
            return Err(Error::InvalidHelicity(s.to_string()));
        }
        Ok(Helicity(t.round() as i32))
    }

    pub fn twice(&self) -> i32 {
        self.0
    }

    pub fn value(&self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn negate(&self) -> Helicity {
        Helicity(-self.0)
    }
}

impl fmt::Display for Helicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Integer power of a unit complex number, renormalized first.
pub fn unit_pow(z: C64, n: i32) -> C64 {
    let u = z / z.norm();
    if n >= 0 {
        u.powi(n)
    } else {
        u.conj().powi(-n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LittleGroupElement {
    pub z: C64,
    pub b: C64,
}

impl LittleGroupElement {
    pub fn new(z: C64, b: C64) -> Result<Self> {
        if (z.norm() - 1.0).abs() > LITTLE_GROUP_TOL {
            return Err(Error::Membership(format!("|z| = {}", z.norm())));
        }
        Ok(LittleGroupElement { z, b })
    }

    pub fn to_sl2c(&self) -> Sl2c {
        Sl2c::from_unchecked(Mat2::new(self.z, self.b, C64::new(0.0, 0.0), self.z.conj()))
    }

    pub fn mul(&self, o: &LittleGroupElement) -> LittleGroupElement {
        LittleGroupElement {
            z: self.z * o.z,
            b: self.z * o.b + self.b * o.z.conj(),
        }
    }
}

/// Reads (z, b) off a matrix, checking that it fixes p0.
pub fn decompose_little(a: &Sl2c) -> Result<LittleGroupElement> {
    let m = a.matrix();
    let scale = 1.0 + cmax(m);
    if m[(1, 0)].norm() > LITTLE_GROUP_TOL * scale {
        return Err(Error::Membership(format!("lower-left entry {:e}", m[(1, 0)].norm())));
    }
    LittleGroupElement::new(m[(0, 0)], m[(0, 1)])
}

/// Image in E(2) = C x U(1): translation z b, rotation z^2.
pub fn e2_cover(k: &LittleGroupElement) -> (C64, C64) {
    (k.z * k.b, k.z * k.z)
}

/// Product in E(2) acting on the plane by lambda -> a + w lambda.
pub fn e2_mul(x: (C64, C64), y: (C64, C64)) -> (C64, C64) {
    (x.0 + x.1 * y.0, x.1 * y.1)
}

/// One-dimensional character eta_s(B) = z^{2s}.
pub fn eta(s: Helicity, k: &LittleGroupElement) -> C64 {
    unit_pow(k.z, s.twice())
}

/// eta_s (+) eta_{-s} acting on C^2.
pub fn eta_tilde(s: Helicity, k: &LittleGroupElement) -> [C64; 2] {
    let e = eta(s, k);
    [e, e.conj()]
}

pub fn j3_eigenvalue(s: Helicity) -> f64 {
    s.value()
}

/// Lower triangular stabilizer of P p0 = (1,0,0,-1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerLittleElement {
    pub z: C64,
    pub b: C64,
}

impl LowerLittleElement {
    pub fn to_sl2c(&self) -> Sl2c {
        Sl2c::from_unchecked(Mat2::new(self.z, C64::new(0.0, 0.0), self.b, self.z.conj()))
    }
}

pub fn decompose_lower_little(a: &Sl2c) -> Result<LowerLittleElement> {
    let m = a.matrix();
    let scale = 1.0 + cmax(m);
    if m[(0, 1)].norm() > LITTLE_GROUP_TOL * scale {
        return Err(Error::Membership(format!("upper-right entry {:e}", m[(0, 1)].norm())));
    }
    if (m[(0, 0)].norm() - 1.0).abs() > LITTLE_GROUP_TOL {
        return Err(Error::Membership(format!("|z| = {}", m[(0, 0)].norm())));
    }
    Ok(LowerLittleElement { z: m[(0, 0)], b: m[(1, 0)] })
}

pub fn eta_bar(s: Helicity, k: &LowerLittleElement) -> C64 {
    unit_pow(k.z, s.twice())
}
