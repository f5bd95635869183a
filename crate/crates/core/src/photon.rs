//! Photon: vector model on C^4 with Phi = kappa, gauge line C p.

use std::sync::Arc;

use crate::error::Result;
use crate::linalg::{c, from_real4, CMat, CVec};
use crate::little_group::{reference_momentum, Helicity};
use crate::lorentz::{kappa, FourVector};
use crate::mass_shell::{MomentumPoint, ShellGrid};
use crate::perception::{PerceptionModel, PerceptionWaveFunction};
use crate::spacetime::{scan_interior, Concat, SliceSource, SpacetimeGrid, Synthesizer};
use crate::C64;

/// Normalized circular polarizations (0, 1, +-i, 0) / sqrt 2.
pub fn polarization(plus: bool) -> CVec {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let sgn = if plus { 1.0 } else { -1.0 };
    CVec::from_vec(vec![c(0.0), c(h), C64::new(0.0, sgn * h), c(0.0)])
}

/// Unnormalized circular polarizations (0, 1, +-i, 0).
pub fn polarization_unnormalized(plus: bool) -> CVec {
    polarization(plus) * c(std::f64::consts::SQRT_2)
}

pub fn four_to_cvec(x: &FourVector) -> CVec {
    CVec::from_iterator(4, x.0.iter().map(|v| c(*v)))
}

pub fn build_photon_model() -> PerceptionModel {
    let eps = CMat::from_columns(&[polarization(true), polarization(false)]);
    let w = four_to_cvec(&reference_momentum()) * c(std::f64::consts::FRAC_1_SQRT_2);
    PerceptionModel {
        name: "photon".into(),
        helicity: Helicity::from_twice(2),
        dim: 4,
        phi: Arc::new(|a| from_real4(&kappa(a).0)),
        epsilon: eps,
        w_basis: CMat::from_columns(&[w]),
    }
}

/// Minkowski contraction p_mu z^mu with complex z.
pub fn contract(p: &FourVector, z: &CVec) -> C64 {
    let l = p.lower();
    (0..4).map(|i| z[i] * l[i]).sum()
}

/// |p_mu z^mu|; zero exactly on the fiber F_p.
pub fn transversality_check(p: &MomentumPoint, z: &CVec) -> f64 {
    contract(&p.four(), z).norm()
}

/// Spanning vector of D_p = C p.
pub fn gauge_line(p: &MomentumPoint) -> CVec {
    four_to_cvec(&p.four())
}

pub fn synthesize_potential(psi: &PerceptionWaveFunction, grid: SpacetimeGrid) -> Result<Synthesizer> {
    Synthesizer::new(&psi.grid, &psi.values, grid)
}

/// Scalar gauge function g = synth(i f) so that shifting the section by f p
/// shifts the potential by d^mu g.
pub fn synthesize_gauge_scalar(grid_m: &ShellGrid, f: &[C64], grid: SpacetimeGrid) -> Result<Synthesizer> {
    let v: Vec<CVec> = f.iter().map(|x| CVec::from_vec(vec![x * C64::new(0.0, 1.0)])).collect();
    Synthesizer::new(grid_m, &v, grid)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhotonResiduals {
    /// max |box A^mu| / max |A|.
    pub wave: f64,
    /// max |d_mu A^mu| / max |A|.
    pub lorenz: f64,
}

pub fn pde_residuals<S: SliceSource + ?Sized>(a: &S) -> PhotonResiduals {
    let ([w, l], peak) = scan_interior(a, |st| {
        let mut wave = 0.0_f64;
        let mut div = C64::new(0.0, 0.0);
        for mu in 0..4 {
            wave = wave.max(st.box_op(mu).norm());
            div += st.d(mu, mu);
        }
        [wave, div.norm()]
    });
    let peak = peak.max(f64::MIN_POSITIVE);
    PhotonResiduals { wave: w / peak, lorenz: l / peak }
}

/// max |(A' - A)^mu - d^mu g| over interior points, relative to max |A' - A|.
pub fn gauge_gradient_defect(diff: &dyn SliceSource, g: &dyn SliceSource) -> Result<f64> {
    let pair = Concat::new(diff, g)?;
    let eta = [1.0, -1.0, -1.0, -1.0];
    let ([d, m], _) = scan_interior(&pair, |st| {
        let mut worst = 0.0_f64;
        let mut mag = 0.0_f64;
        for mu in 0..4 {
            let grad = st.d(mu, 4) * eta[mu];
            worst = worst.max((st.value(mu) - grad).norm());
            mag = mag.max(st.value(mu).norm());
        }
        [worst, mag]
    });
    Ok(d / m.max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perception::fiber_at;

    #[test]
    fn fiber_is_transverse_and_gauge_line_matches() {
        let m = build_photon_model();
        let p = MomentumPoint::lift([0.4, -1.1, 0.7]).unwrap();
        let f = fiber_at(&m, &p).unwrap();
        for j in 0..3 {
            let col: CVec = f.f_basis.column(j).into_owned();
            assert!(transversality_check(&p, &col) < 1e-12);
        }
        let d: CVec = f.d_basis.column(0).into_owned();
        let g = gauge_line(&p);
        let ratio = d[0] / g[0];
        assert!((d - g * ratio).norm() < 1e-12);
    }

    #[test]
    fn unnormalized_polarization_has_norm_two() {
        let e = polarization_unnormalized(true);
        assert!((e.norm_squared() - 2.0).abs() < 1e-15);
    }
}
