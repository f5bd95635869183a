//! First Chern number of the helicity line bundles over the sphere of
//! directions, from the curvature of the little-group connection.
//!
//! Two local sections cover the sphere: R(x) away from -z and the left
//! translate Q R(kappa(Q)^{-1} x) with Q = exp(pi J1) away from +z. The
//! Chern form pulled back by a section e is (s / 2 pi) c(X, Y) with
//! X = e^{-1} de(u) and c(X, Y) = 2 Im(X12 Y21 - X21 Y12).

use std::f64::consts::PI;

use serde::Serialize;

use crate::boosting::standard_rotation;
use crate::error::{Error, Result};
use crate::little_group::Helicity;
use crate::lorentz::{kappa, rotation, FourVector, Mat2, Sl2c};
use crate::quadrature::gauss_legendre;
use crate::tolerances::CHERN_STABILITY;
use crate::C64;

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// zeta_p(u, v) = p . (u x v) / (4 pi |p|).
pub fn zeta_eval(p: [f64; 3], u: [f64; 3], v: [f64; 3]) -> f64 {
    dot(p, cross(u, v)) / (4.0 * PI * dot(p, p).sqrt())
}

/// zeta pulled back by the action of A on the light cone, at p.
pub fn zeta_pullback(a: &Sl2c, p: [f64; 3], u: [f64; 3], v: [f64; 3]) -> f64 {
    let k = kappa(a);
    let r = dot(p, p).sqrt();
    let push = |w: [f64; 3]| k.apply(&FourVector::from_spatial(dot(p, w) / r, w)).spatial();
    let q = k.apply(&FourVector::from_spatial(r, p)).spatial();
    zeta_eval(q, push(u), push(v))
}

/// Curvature coefficient c(X, Y): Omega(AX, AY) = c J3.
pub fn curvature_eval(x: &Mat2, y: &Mat2) -> f64 {
    2.0 * (x[(0, 1)] * y[(1, 0)] - x[(1, 0)] * y[(0, 1)]).im
}

/// Local section of SL(2,C) over the sphere with its derivative.
pub trait LocalSection {
    fn eval(&self, x: [f64; 3]) -> Result<Mat2>;
    /// Derivative along a tangent vector u at the unit vector x.
    fn derivative(&self, x: [f64; 3], u: [f64; 3]) -> Result<Mat2>;
}

/// x -> R(x), singular at -z.
pub struct MainSection;

impl LocalSection for MainSection {
    fn eval(&self, x: [f64; 3]) -> Result<Mat2> {
        Ok(*standard_rotation(x)?.matrix())
    }

    fn derivative(&self, x: [f64; 3], u: [f64; 3]) -> Result<Mat2> {
        standard_rotation(x)?;
        let a = 1.0 + x[2];
        let f = (2.0 * a).powf(-0.5);
        let df = -(2.0 * a).powf(-1.5) * u[2];
        let m = Mat2::new(C64::new(a, 0.0), -C64::new(x[0], -x[1]), C64::new(x[0], x[1]), C64::new(a, 0.0));
        let dm = Mat2::new(C64::new(u[2], 0.0), -C64::new(u[0], -u[1]), C64::new(u[0], u[1]), C64::new(u[2], 0.0));
        Ok(m * C64::new(df, 0.0) + dm * C64::new(f, 0.0))
    }
}

/// x -> Q R(kappa(Q)^{-1} x), singular at +z.
pub struct CapSection {
    q: Sl2c,
    back: nalgebra::Matrix3<f64>,
}

impl Default for CapSection {
    fn default() -> Self {
        let q = rotation(1, PI);
        let k = kappa(&q.inverse()).0;
        let back = k.fixed_view::<3, 3>(1, 1).into_owned();
        CapSection { q, back }
    }
}

impl CapSection {
    fn pull(&self, x: [f64; 3]) -> [f64; 3] {
        let v = self.back * nalgebra::Vector3::from(x);
        [v[0], v[1], v[2]]
    }
}

impl LocalSection for CapSection {
    fn eval(&self, x: [f64; 3]) -> Result<Mat2> {
        Ok(self.q.matrix() * MainSection.eval(self.pull(x))?)
    }

    fn derivative(&self, x: [f64; 3], u: [f64; 3]) -> Result<Mat2> {
        Ok(self.q.matrix() * MainSection.derivative(self.pull(x), self.pull(u))?)
    }
}

/// Pulled-back Chern form (s / 2 pi) c(e^{-1} de(u), e^{-1} de(v)).
pub fn chern_form_eval(s: Helicity, e: &dyn LocalSection, x: [f64; 3], u: [f64; 3], v: [f64; 3]) -> Result<f64> {
    let inv = Sl2c::from_unchecked(e.eval(x)?).inverse();
    let xm = inv.matrix() * e.derivative(x, u)?;
    let ym = inv.matrix() * e.derivative(x, v)?;
    Ok(s.value() * curvature_eval(&xm, &ym) / (2.0 * PI))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphereMesh {
    /// Angular radius of the cap around -z handled by the second section.
    pub cap: f64,
    pub main_bands: usize,
    pub cap_bands: usize,
    pub sectors: usize,
    /// Gauss-Legendre order per cell in each direction.
    pub order: usize,
}

impl SphereMesh {
    pub fn new(level: usize, cap: f64) -> Result<Self> {
        if !(cap > 0.0 && cap < PI / 2.0) {
            return Err(Error::InvalidGrid(format!("cap radius {cap} outside (0, pi/2)")));
        }
        let scale = 1usize << level.min(10);
        Ok(SphereMesh { cap, main_bands: 4 * scale, cap_bands: scale, sectors: 8 * scale, order: 6 })
    }

    fn bands(&self, patch: Patch) -> (f64, f64, usize) {
        match patch {
            Patch::Main => (0.0, PI - self.cap, self.main_bands),
            Patch::Cap => (PI - self.cap, PI, self.cap_bands),
        }
    }

    /// Cells (theta0, theta1, phi0, phi1) of a patch.
    pub fn cells(&self, patch: Patch) -> Vec<[f64; 4]> {
        let (t0, t1, nb) = self.bands(patch);
        let dt = (t1 - t0) / nb as f64;
        let dp = 2.0 * PI / self.sectors as f64;
        let mut out = Vec::with_capacity(nb * self.sectors);
        for i in 0..nb {
            for j in 0..self.sectors {
                out.push([t0 + i as f64 * dt, t0 + (i + 1) as f64 * dt, j as f64 * dp, (j + 1) as f64 * dp]);
            }
        }
        out
    }

    pub fn cell_area(c: &[f64; 4]) -> f64 {
        (c[0].cos() - c[1].cos()) * (c[3] - c[2])
    }

    /// Integral over a patch of f(x, d/dtheta, d/dphi) d theta d phi.
    pub fn integrate<F>(&self, patch: Patch, f: F) -> Result<f64>
    where
        F: Fn([f64; 3], [f64; 3], [f64; 3]) -> Result<f64>,
    {
        let (gx, gw) = gauss_legendre(self.order, 0.0, 1.0);
        let mut total = 0.0;
        for c in self.cells(patch) {
            let mut cell = 0.0;
            for (a, wa) in gx.iter().zip(&gw) {
                let th = c[0] + a * (c[1] - c[0]);
                for (b, wb) in gx.iter().zip(&gw) {
                    let ph = c[2] + b * (c[3] - c[2]);
                    let (st, ct, sp, cp) = (th.sin(), th.cos(), ph.sin(), ph.cos());
                    let x = [st * cp, st * sp, ct];
                    let dth = [ct * cp, ct * sp, -st];
                    let dph = [-st * sp, st * cp, 0.0];
                    cell += wa * wb * f(x, dth, dph)?;
                }
            }
            total += cell * (c[1] - c[0]) * (c[3] - c[2]);
        }
        Ok(total)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Patch {
    Main,
    Cap,
}

/// Integral of the invariant two-form over the unit sphere.
pub fn zeta_total(mesh: &SphereMesh) -> Result<f64> {
    let z = |x, u, v| Ok(zeta_eval(x, u, v));
    Ok(mesh.integrate(Patch::Main, z)? + mesh.integrate(Patch::Cap, z)?)
}

pub fn chern_number(s: Helicity, mesh: &SphereMesh) -> Result<f64> {
    let main = mesh.integrate(Patch::Main, |x, u, v| chern_form_eval(s, &MainSection, x, u, v))?;
    let cap_section = CapSection::default();
    let cap = mesh.integrate(Patch::Cap, |x, u, v| chern_form_eval(s, &cap_section, x, u, v))?;
    Ok(main + cap)
}

/// Chern numbers at levels 0..levels; errors if the last two disagree.
pub fn chern_refinement(s: Helicity, levels: usize, cap: f64) -> Result<Vec<f64>> {
    let vals = (0..levels.max(1))
        .map(|l| chern_number(s, &SphereMesh::new(l, cap)?))
        .collect::<Result<Vec<_>>>()?;
    if let [.., a, b] = vals[..] {
        if (a - b).abs() > CHERN_STABILITY {
            return Err(Error::NonConvergence(format!("levels differ by {:e}", (a - b).abs())));
        }
    }
    Ok(vals)
}
