//! Boosting bundle: a global section L(p) of SL(2,C) -> light cone, Wigner
//! elements, and the helicity representations it induces.

use nalgebra::{Matrix2, Matrix4};
use rayon::prelude::*;

use crate::linalg::cmax;
use crate::error::{Error, Result};
use crate::little_group::{decompose_little, eta, Helicity, LittleGroupElement};
use crate::lorentz::{kappa, FourVector, Mat2, Sl2c};
use crate::mass_shell::{pairwise_sum, MomentumPoint, ShellGrid};
use crate::tolerances::{DENSITY, SINGULAR_ANGLE};
use crate::C64;

/// SU(2) element rotating +z onto the direction of p. Singular on the -z ray.
///
/// 1 + cos(theta) is formed without cancellation so the section stays
/// accurate close to the singular ray.
pub fn standard_rotation(p: [f64; 3]) -> Result<Sl2c> {
    let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    if !(r > 0.0) {
        return Err(Error::ZeroMomentum);
    }
    let rho2 = p[0] * p[0] + p[1] * p[1];
    if p[2] < 0.0 && rho2.sqrt() / r < SINGULAR_ANGLE {
        return Err(Error::SingularRay(p));
    }
    let a = if p[2] >= 0.0 { (r + p[2]) / r } else { rho2 / (r * (r - p[2])) };
    let f = 1.0 / (2.0 * a).sqrt();
    let n1 = p[0] / r;
    let n2 = p[1] / r;
    Ok(Sl2c::from_unchecked(Mat2::new(
        C64::new(a * f, 0.0),
        -C64::new(n1, -n2) * f,
        C64::new(n1, n2) * f,
        C64::new(a * f, 0.0),
    )))
}

pub fn standard_boost_along_z(r: f64) -> Sl2c {
    let s = r.sqrt();
    Sl2c::from_unchecked(Mat2::new(C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0 / s, 0.0)))
}

/// L(p) = R(p_hat) B0(|p|); maps p0 = (1,0,0,1) to p.
pub fn standard_boost(p: &MomentumPoint) -> Result<Sl2c> {
    Ok(standard_rotation(p.spatial())?.mul(&standard_boost_along_z(p.energy())))
}

/// W(A, p) = L(A p)^{-1} A L(p), an element of the little group.
pub fn wigner(a: &Sl2c, p: &MomentumPoint) -> Result<LittleGroupElement> {
    let q = p.transform(a)?;
    let w = standard_boost(&q)?.inverse().mul(a).mul(&standard_boost(p)?);
    decompose_little(&w)
}

/// Theta = 2 arg z for W(A, p); eta_s(W) = exp(i s Theta) for every s.
pub fn wigner_phase(a: &Sl2c, p: &MomentumPoint) -> Result<f64> {
    Ok(2.0 * wigner(a, p)?.z.arg())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoostingWaveFunction {
    pub grid: ShellGrid,
    pub values: Vec<[C64; 2]>,
}

impl BoostingWaveFunction {
    pub fn new(grid: ShellGrid, values: Vec<[C64; 2]>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::GridMismatch(format!("{} values for {} nodes", values.len(), grid.len())));
        }
        Ok(BoostingWaveFunction { grid, values })
    }

    pub fn from_fn<F: Fn(&MomentumPoint) -> [C64; 2]>(grid: ShellGrid, f: F) -> Self {
        let values = grid.nodes.iter().map(f).collect();
        BoostingWaveFunction { grid, values }
    }

    pub fn norm_sqr(&self) -> f64 {
        let t: Vec<C64> = self
            .values
            .iter()
            .zip(&self.grid.weights)
            .map(|(v, w)| C64::new(w * (v[0].norm_sqr() + v[1].norm_sqr()), 0.0))
            .collect();
        pairwise_sum(&t).re
    }
}

/// Boosting representation U_{L,s}(a, A) on a wave function. The result lives
/// on the pushforward grid: node A p carries
/// exp(-i <A p, a>) diag(eta_s, eta_{-s})(W(A, p)) psi(p).
pub fn apply_boosting_rep(a: &FourVector, l: &Sl2c, s: Helicity, psi: &BoostingWaveFunction) -> Result<BoostingWaveFunction> {
    let k = kappa(l);
    let out: Vec<(MomentumPoint, [C64; 2])> = psi
        .grid
        .nodes
        .par_iter()
        .zip(psi.values.par_iter())
        .map(|(p, v)| {
            let q = MomentumPoint::from_four(&k.apply(&p.four()))?;
            let w = wigner(l, p)?;
            let e = eta(s, &w);
            let phase = C64::from_polar(1.0, -q.four().minkowski(a));
            Ok((q, [phase * e * v[0], phase * e.conj() * v[1]]))
        })
        .collect::<Result<Vec<_>>>()?;
    let (nodes, values): (Vec<_>, Vec<_>) = out.into_iter().unzip();
    Ok(BoostingWaveFunction { grid: ShellGrid { nodes, weights: psi.grid.weights.clone() }, values })
}

/// tau = integral of psi psi^dagger, normalized to unit trace.
pub fn helicity_reduced_density(psi: &BoostingWaveFunction) -> Result<Matrix2<C64>> {
    let mut acc = Matrix2::<C64>::zeros();
    for (v, w) in psi.values.iter().zip(&psi.grid.weights) {
        for i in 0..2 {
            for j in 0..2 {
                acc[(i, j)] += v[i] * v[j].conj() * *w;
            }
        }
    }
    let tr = acc.trace().re;
    if !(tr > 0.0) {
        return Err(Error::ZeroNorm);
    }
    Ok(acc / C64::new(tr, 0.0))
}

/// Two-particle helicity wave function on a product grid. Node (i, j) sits at
/// index i * grid_b.len() + j; helicity components are ordered ++, +-, -+, --.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoParticleState {
    pub grid_a: ShellGrid,
    pub grid_b: ShellGrid,
    pub values: Vec<[C64; 4]>,
}

impl TwoParticleState {
    pub fn new(grid_a: ShellGrid, grid_b: ShellGrid, values: Vec<[C64; 4]>) -> Result<Self> {
        if values.len() != grid_a.len() * grid_b.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for {}x{} nodes",
                values.len(),
                grid_a.len(),
                grid_b.len()
            )));
        }
        Ok(TwoParticleState { grid_a, grid_b, values })
    }
}

pub fn two_particle_reduced(state: &TwoParticleState) -> Result<Matrix4<C64>> {
    let nb = state.grid_b.len();
    let mut acc = Matrix4::<C64>::zeros();
    for (idx, v) in state.values.iter().enumerate() {
        let w = state.grid_a.weights[idx / nb] * state.grid_b.weights[idx % nb];
        for i in 0..4 {
            for j in 0..4 {
                acc[(i, j)] += v[i] * v[j].conj() * w;
            }
        }
    }
    let tr = acc.trace().re;
    if !(tr > 0.0) {
        return Err(Error::ZeroNorm);
    }
    Ok(acc / C64::new(tr, 0.0))
}

pub fn partial_transpose_second(rho: &Matrix4<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|r, c| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (c / 2, c % 2);
        rho[(2 * i + l, 2 * k + j)]
    })
}

/// log2 of the trace norm of the partial transpose.
pub fn log_negativity(rho: &Matrix4<C64>) -> Result<f64> {
    let herm = cmax(&(rho - rho.adjoint()));
    if herm > 1e-10 {
        return Err(Error::NotDensity(format!("not Hermitian ({herm:e})")));
    }
    if (rho.trace() - C64::new(1.0, 0.0)).norm() > 1e-10 {
        return Err(Error::NotDensity(format!("trace {}", rho.trace())));
    }
    let ev = rho.symmetric_eigen().eigenvalues;
    if ev.iter().any(|e| *e < -1e-10) {
        return Err(Error::NotDensity("negative eigenvalue".into()));
    }
    let pt = partial_transpose_second(rho);
    let norm: f64 = pt.symmetric_eigen().eigenvalues.iter().map(|e| e.abs()).sum();
    Ok(norm.log2())
}

/// Checks tau is Hermitian, positive and of unit trace.
pub fn density_defect(tau: &Matrix2<C64>) -> f64 {
    let herm = cmax(&(tau - tau.adjoint()));
    let tr = (tau.trace() - C64::new(1.0, 0.0)).norm();
    let ev = tau.symmetric_eigen().eigenvalues;
    let neg = ev.iter().fold(0.0_f64, |m, e| m.max(-e));
    herm.max(tr).max(neg)
}

pub fn is_density(tau: &Matrix2<C64>) -> bool {
    density_defect(tau) < DENSITY
}
