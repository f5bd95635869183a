//! SL(2,C), Minkowski space and the double cover onto the Lorentz group.
//!
//! Metric signature is (+,-,-,-). A four-vector x is encoded as the Hermitian
//! matrix `tilde(x)` and SL(2,C) acts by `A tilde(x) A^dagger`.

use nalgebra::{Matrix2, Matrix4, Vector4};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::cmax;
use crate::error::{Error, Result};
use crate::tolerances::{DET_TOL, EXP_SERIES_CUTOFF};
use crate::C64;

pub type Mat2 = Matrix2<C64>;

pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        FourVector([x0, x1, x2, x3])
    }

    pub fn from_spatial(x0: f64, v: [f64; 3]) -> Self {
        FourVector([x0, v[0], v[1], v[2]])
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn minkowski(&self, other: &FourVector) -> f64 {
        minkowski_inner(self, other)
    }

    /// Spatial reflection (x0, x) -> (x0, -x).
    pub fn parity(&self) -> FourVector {
        FourVector([self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }

    /// Index-lowered components x_mu.
    pub fn lower(&self) -> [f64; 4] {
        [self.0[0], -self.0[1], -self.0[2], -self.0[3]]
    }

    pub fn as_vector(&self) -> Vector4<f64> {
        Vector4::from(self.0)
    }

    pub fn add(&self, o: &FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    pub fn norm_max(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

pub fn minkowski_inner(x: &FourVector, y: &FourVector) -> f64 {
    x.0[0] * y.0[0] - x.0[1] * y.0[1] - x.0[2] * y.0[2] - x.0[3] * y.0[3]
}

pub fn tilde(x: &FourVector) -> Mat2 {
    let [x0, x1, x2, x3] = x.0;
    Mat2::new(
        C64::new(x0 + x3, 0.0),
        C64::new(x1, -x2),
        C64::new(x1, x2),
        C64::new(x0 - x3, 0.0),
    )
}

pub fn utilde(x: &FourVector) -> Mat2 {
    tilde(&x.parity())
}

/// Inverse of `tilde` on Hermitian matrices. Anti-Hermitian parts are dropped.
pub fn untilde(m: &Mat2) -> FourVector {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let c = (m[(1, 0)] + m[(0, 1)].conj()) * 0.5;
    FourVector([(a + d) / 2.0, c.re, c.im, (a - d) / 2.0])
}

/// Element of SL(2,C).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sl2c(Mat2);

impl Sl2c {
    pub fn new(m: Mat2) -> Result<Self> {
        let det = m.determinant();
        if (det - C64::new(1.0, 0.0)).norm() > DET_TOL {
            return Err(Error::NotUnimodular { re: det.re, im: det.im });
        }
        Ok(Sl2c(m))
    }

    /// Wraps a matrix known to have unit determinant up to rounding.
    pub fn from_unchecked(m: Mat2) -> Self {
        Sl2c(m)
    }

    /// Divides by a square root of the determinant.
    pub fn normalized(m: Mat2) -> Result<Self> {
        let det = m.determinant();
        if det.norm() < 1e-300 {
            return Err(Error::NotUnimodular { re: det.re, im: det.im });
        }
        Ok(Sl2c(m / det.sqrt()))
    }

    pub fn identity() -> Self {
        Sl2c(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn inverse(&self) -> Sl2c {
        let m = &self.0;
        Sl2c(Mat2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]))
    }

    pub fn adjoint(&self) -> Mat2 {
        self.0.adjoint()
    }

    /// (A^dagger)^{-1}, the image of A under the parity automorphism.
    pub fn dagger_inverse(&self) -> Sl2c {
        Sl2c(self.inverse().0.adjoint())
    }

    pub fn mul(&self, o: &Sl2c) -> Sl2c {
        Sl2c(self.0 * o.0)
    }

    pub fn neg(&self) -> Sl2c {
        Sl2c(-self.0)
    }

    pub fn dist(&self, o: &Sl2c) -> f64 {
        cmax(&(self.0 - o.0))
    }

    pub fn act(&self, x: &FourVector) -> FourVector {
        untilde(&(self.0 * tilde(x) * self.0.adjoint()))
    }
}

/// Real 4x4 matrix preserving the Minkowski metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix(pub Matrix4<f64>);

impl LorentzMatrix {
    pub fn apply(&self, x: &FourVector) -> FourVector {
        let y = self.0 * x.as_vector();
        FourVector([y[0], y[1], y[2], y[3]])
    }

    pub fn mul(&self, o: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * o.0)
    }

    pub fn eta() -> Matrix4<f64> {
        Matrix4::from_diagonal(&Vector4::from(ETA))
    }

    /// max |Lambda^T eta Lambda - eta|.
    pub fn metric_defect(&self) -> f64 {
        let eta = Self::eta();
        (self.0.transpose() * eta * self.0 - eta).abs().max()
    }

    pub fn is_orthochronous(&self) -> bool {
        self.0[(0, 0)] >= 1.0 - 1e-12
    }

    pub fn dist(&self, o: &LorentzMatrix) -> f64 {
        (self.0 - o.0).abs().max()
    }

    pub fn to_complex(&self) -> Matrix4<C64> {
        self.0.map(|v| C64::new(v, 0.0))
    }
}

/// Double cover SL(2,C) -> SO+(1,3).
pub fn kappa(a: &Sl2c) -> LorentzMatrix {
    let mut out = Matrix4::zeros();
    for nu in 0..4 {
        let mut e = [0.0; 4];
        e[nu] = 1.0;
        let col = a.act(&FourVector(e));
        for mu in 0..4 {
            out[(mu, nu)] = col.0[mu];
        }
    }
    LorentzMatrix(out)
}

fn pauli(k: usize) -> Mat2 {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match k {
        1 => Mat2::new(z, one, one, z),
        2 => Mat2::new(z, -i, i, z),
        3 => Mat2::new(one, z, z, -one),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// Rotation generator J^k = -(i/2) sigma_k, k in 1..=3.
pub fn rotation_generator(k: usize) -> Mat2 {
    pauli(k) * C64::new(0.0, -0.5)
}

/// Boost generator K^k = sigma_k / 2.
pub fn boost_generator(k: usize) -> Mat2 {
    pauli(k) * C64::new(0.5, 0.0)
}

/// Exponential of a traceless 2x2 matrix.
///
/// Uses X^2 = d I with d = -det X, so exp X = cosh(w) I + sinh(w)/w X for
/// w^2 = d. Near d = 0 the ratio is taken from its series.
pub fn exp_algebra(x: &Mat2) -> Result<Sl2c> {
    let tr = x.trace().norm();
    if tr > 1e-10 * (1.0 + cmax(x)) {
        return Err(Error::NotTraceless(tr));
    }
    let d = -x.determinant();
    let (ch, sh_over) = if (x * x).trace().norm() < EXP_SERIES_CUTOFF {
        (
            C64::new(1.0, 0.0) + d / 2.0 + d * d / 24.0 + d * d * d / 720.0,
            C64::new(1.0, 0.0) + d / 6.0 + d * d / 120.0 + d * d * d / 5040.0,
        )
    } else {
        let w = d.sqrt();
        (w.cosh(), w.sinh() / w)
    };
    let m = Mat2::identity() * ch + x * sh_over;
    Sl2c::normalized(m)
}

pub fn rotation(axis: usize, theta: f64) -> Sl2c {
    exp_algebra(&(rotation_generator(axis) * C64::new(theta, 0.0))).expect("generator is traceless")
}

pub fn boost(axis: usize, rapidity: f64) -> Sl2c {
    exp_algebra(&(boost_generator(axis) * C64::new(rapidity, 0.0))).expect("generator is traceless")
}

/// Random SU(2) element, Haar distributed.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Sl2c {
    let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    let a = C64::new(q[0] / n, q[1] / n);
    let b = C64::new(q[2] / n, q[3] / n);
    Sl2c::from_unchecked(Mat2::new(a, -b.conj(), b, a.conj()))
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Pure boost of the given rapidity along a unit direction.
pub fn boost_along(n: [f64; 3], rapidity: f64) -> Sl2c {
    let x = (boost_generator(1) * C64::new(n[0], 0.0)
        + boost_generator(2) * C64::new(n[1], 0.0)
        + boost_generator(3) * C64::new(n[2], 0.0))
        * C64::new(rapidity, 0.0);
    exp_algebra(&x).expect("generator combination is traceless")
}

/// Random element R B with R Haar in SU(2) and B a boost with rapidity in
/// [0, rapidity_bound] along a uniform direction.
pub fn random_sl2c<R: Rng + ?Sized>(rng: &mut R, rapidity_bound: f64) -> Sl2c {
    let r = random_su2(rng);
    let n = random_unit_vector(rng);
    let u = rng.random::<f64>() * rapidity_bound;
    r.mul(&boost_along(n, u))
}

pub fn random_c2<R: Rng + ?Sized>(rng: &mut R) -> [C64; 2] {
    let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    [C64::new(v[0] / n, v[1] / n), C64::new(v[2] / n, v[3] / n)]
}
