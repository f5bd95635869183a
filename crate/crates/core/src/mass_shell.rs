//! Forward light cone, its invariant measure d^3p / p0, and product grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{kappa, FourVector, Sl2c};
use crate::quadrature::gauss_legendre;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumPoint {
    p: [f64; 3],
    energy: f64,
}

impl MomentumPoint {
    pub fn lift(p: [f64; 3]) -> Result<Self> {
        let e = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        if !(e > 0.0) || !e.is_finite() {
            return Err(Error::ZeroMomentum);
        }
        Ok(MomentumPoint { p, energy: e })
    }

    /// Lifts the spatial part of a null four-vector.
    pub fn from_four(x: &FourVector) -> Result<Self> {
        Self::lift(x.spatial())
    }

    pub fn spatial(&self) -> [f64; 3] {
        self.p
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn four(&self) -> FourVector {
        FourVector::from_spatial(self.energy, self.p)
    }

    pub fn direction(&self) -> [f64; 3] {
        [self.p[0] / self.energy, self.p[1] / self.energy, self.p[2] / self.energy]
    }

    pub fn transform(&self, a: &Sl2c) -> Result<Self> {
        Self::from_four(&kappa(a).apply(&self.four()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialSpec {
    pub nodes: usize,
    pub r_min: f64,
    pub r_max: f64,
}

impl Default for RadialSpec {
    fn default() -> Self {
        RadialSpec { nodes: 12, r_min: 0.5, r_max: 4.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AngularSpec {
    /// Golden-angle spiral with equal weights 4 pi / n.
    Spiral { points: usize },
    /// Gauss-Legendre in cos(theta) times uniform azimuth.
    Product { polar: usize, azimuthal: usize },
}

impl Default for AngularSpec {
    fn default() -> Self {
        AngularSpec::Spiral { points: 200 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShellGrid {
    pub nodes: Vec<MomentumPoint>,
    pub weights: Vec<f64>,
}

impl ShellGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

pub fn sphere_nodes(spec: &AngularSpec) -> Result<Vec<([f64; 3], f64)>> {
    match *spec {
        AngularSpec::Spiral { points } => {
            if points == 0 {
                return Err(Error::InvalidGrid("spiral needs at least one point".into()));
            }
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            let w = 4.0 * std::f64::consts::PI / points as f64;
            Ok((0..points)
                .map(|i| {
                    let z = 1.0 - (2.0 * i as f64 + 1.0) / points as f64;
                    let rho = (1.0 - z * z).sqrt();
                    let phi = golden * i as f64;
                    ([rho * phi.cos(), rho * phi.sin(), z], w)
                })
                .collect())
        }
        AngularSpec::Product { polar, azimuthal } => {
            if polar == 0 || azimuthal == 0 {
                return Err(Error::InvalidGrid("product rule needs nonzero sizes".into()));
            }
            let (cz, wz) = gauss_legendre(polar, -1.0, 1.0);
            let dphi = 2.0 * std::f64::consts::PI / azimuthal as f64;
            let mut out = Vec::with_capacity(polar * azimuthal);
            for (z, w) in cz.iter().zip(&wz) {
                let rho = (1.0 - z * z).sqrt();
                for k in 0..azimuthal {
                    let phi = (k as f64 + 0.5) * dphi;
                    out.push(([rho * phi.cos(), rho * phi.sin(), *z], w * dphi));
                }
            }
            Ok(out)
        }
    }
}

/// Product grid; each node weight is w_r * w_sphere * r so that sums
/// approximate integrals against d^3p / p0.
pub fn build_grid(radial: &RadialSpec, angular: &AngularSpec) -> Result<ShellGrid> {
    if radial.nodes == 0 || !(radial.r_min > 0.0) || !(radial.r_max > radial.r_min) || !radial.r_max.is_finite() {
        return Err(Error::InvalidGrid(format!("radial window {radial:?}")));
    }
    let (rs, wr) = gauss_legendre(radial.nodes, radial.r_min, radial.r_max);
    let sph = sphere_nodes(angular)?;
    let mut nodes = Vec::with_capacity(rs.len() * sph.len());
    let mut weights = Vec::with_capacity(rs.len() * sph.len());
    for (r, w) in rs.iter().zip(&wr) {
        for (n, ws) in &sph {
            nodes.push(MomentumPoint::lift([r * n[0], r * n[1], r * n[2]])?);
            weights.push(w * ws * r);
        }
    }
    Ok(ShellGrid { nodes, weights })
}

/// Pairwise summation keeps results independent of thread count.
pub fn pairwise_sum(v: &[C64]) -> C64 {
    if v.len() <= 16 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

pub fn integrate(values: &[C64], grid: &ShellGrid) -> Result<C64> {
    if values.len() != grid.len() {
        return Err(Error::GridMismatch(format!("{} values for {} nodes", values.len(), grid.len())));
    }
    let terms: Vec<C64> = values.iter().zip(&grid.weights).map(|(v, w)| v * *w).collect();
    Ok(pairwise_sum(&terms))
}

pub fn integrate_fn<F: Fn(&MomentumPoint) -> f64>(f: F, grid: &ShellGrid) -> f64 {
    let v: Vec<C64> = grid.nodes.iter().map(|p| C64::new(f(p), 0.0)).collect();
    integrate(&v, grid).expect("lengths agree").re
}

/// Relabels nodes by kappa(A) and keeps the weights. Exact for the
/// invariant measure, so discrete norms are preserved node by node.
pub fn pushforward_grid(grid: &ShellGrid, a: &Sl2c) -> Result<ShellGrid> {
    let k = kappa(a);
    let nodes = grid
        .nodes
        .iter()
        .map(|p| MomentumPoint::from_four(&k.apply(&p.four())))
        .collect::<Result<Vec<_>>>()?;
    Ok(ShellGrid { nodes, weights: grid.weights.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lift_is_null() {
        let p = MomentumPoint::lift([0.0, 0.0, 1.0]).unwrap();
        assert_eq!(p.four(), FourVector::new(1.0, 0.0, 0.0, 1.0));
        assert_eq!(MomentumPoint::lift([0.0; 3]), Err(Error::ZeroMomentum));
        let q = MomentumPoint::lift([0.3, -1.2, 2.0]).unwrap().four();
        assert!(q.minkowski(&q).abs() < 1e-14);
    }

    #[test]
    fn exponential_integrates_to_four_pi() {
        let g = build_grid(
            &RadialSpec { nodes: 60, r_min: 1e-3, r_max: 40.0 },
            &AngularSpec::Spiral { points: 50 },
        )
        .unwrap();
        let v = integrate_fn(|p| (-p.energy()).exp(), &g);
        assert!((v - 4.0 * PI).abs() < 1e-4, "{v}");
    }

    #[test]
    fn spiral_avoids_poles() {
        for (n, _) in sphere_nodes(&AngularSpec::Spiral { points: 1000 }).unwrap() {
            assert!(n[2] > -1.0 && n[2] < 1.0);
        }
    }

    #[test]
    fn bad_windows_rejected() {
        assert!(build_grid(&RadialSpec { nodes: 4, r_min: 0.0, r_max: 1.0 }, &AngularSpec::default()).is_err());
        assert!(build_grid(&RadialSpec { nodes: 4, r_min: 2.0, r_max: 1.0 }, &AngularSpec::default()).is_err());
    }
}
