//! Graviton: rank-two tensors on C^4 (x) C^4 with Phi = kappa (x) kappa.
//!
//! Components are stored row-major, index 4 mu + nu for M^{mu nu}.

use std::sync::Arc;

use crate::error::Result;
use crate::linalg::{c, from_real4, CMat, CVec};
use crate::little_group::{reference_momentum, Helicity};
use crate::lorentz::{kappa, ETA};
use crate::mass_shell::{MomentumPoint, ShellGrid};
use crate::perception::{fiber_at, PerceptionModel, PerceptionWaveFunction};
use crate::photon::{build_photon_model, four_to_cvec, polarization};
use crate::spacetime::{scan_interior, Concat, SliceSource, SpacetimeGrid, Synthesizer};
use crate::C64;

pub fn tensor(a: &CVec, b: &CVec) -> CVec {
    a.kronecker(b)
}

pub fn build_graviton_model() -> PerceptionModel {
    let ep = polarization(true);
    let em = polarization(false);
    let p0 = four_to_cvec(&reference_momentum());
    let eps = CMat::from_columns(&[tensor(&ep, &ep), tensor(&em, &em)]);
    let half = c(0.5);
    let w = CMat::from_columns(&[
        tensor(&p0, &p0) * half,
        (tensor(&p0, &ep) + tensor(&ep, &p0)) * half,
        (tensor(&p0, &em) + tensor(&em, &p0)) * half,
    ]);
    PerceptionModel {
        name: "graviton".into(),
        helicity: Helicity::from_twice(4),
        dim: 16,
        phi: Arc::new(|a| {
            let k = from_real4(&kappa(a).0);
            k.kronecker(&k)
        }),
        epsilon: eps,
        w_basis: w,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TensorResiduals {
    pub symmetry: f64,
    pub transverse: f64,
    pub trace: f64,
}

impl TensorResiduals {
    pub fn worst(&self) -> f64 {
        self.symmetry.max(self.transverse).max(self.trace)
    }
}

/// Symmetry, p_mu M^{mu nu} = 0 and eta_{mu nu} M^{mu nu} = 0.
pub fn tensor_conditions(p: &MomentumPoint, m: &CVec) -> TensorResiduals {
    let pl = p.four().lower();
    let mut r = TensorResiduals::default();
    for mu in 0..4 {
        for nu in 0..4 {
            r.symmetry = r.symmetry.max((m[4 * mu + nu] - m[4 * nu + mu]).norm());
        }
    }
    for nu in 0..4 {
        let t: C64 = (0..4).map(|mu| m[4 * mu + nu] * pl[mu]).sum();
        r.transverse = r.transverse.max(t.norm());
    }
    let tr: C64 = (0..4).map(|mu| m[5 * mu] * ETA[mu]).sum();
    r.trace = tr.norm();
    r
}

/// Spanning set {p (x) x + x (x) p : x in F_e(p)} of D_g(p), three columns.
pub fn gauge_subspace(p: &MomentumPoint) -> Result<CMat> {
    let f = fiber_at(&build_photon_model(), p)?;
    let pv = four_to_cvec(&p.four());
    let cols: Vec<CVec> = (0..3)
        .map(|j| {
            let x: CVec = f.f_basis.column(j).into_owned();
            tensor(&pv, &x) + tensor(&x, &pv)
        })
        .collect();
    Ok(CMat::from_columns(&cols))
}

pub fn synthesize_perturbation(psi: &PerceptionWaveFunction, grid: SpacetimeGrid) -> Result<Synthesizer> {
    Synthesizer::new(&psi.grid, &psi.values, grid)
}

/// Vector gauge field B = synth(i a) so that shifting the section by
/// p (x) a + a (x) p shifts h by d^mu B^nu + d^nu B^mu.
pub fn synthesize_gauge_vector(grid_m: &ShellGrid, a: &[CVec], grid: SpacetimeGrid) -> Result<Synthesizer> {
    let v: Vec<CVec> = a.iter().map(|x| x * C64::new(0.0, 1.0)).collect();
    Synthesizer::new(grid_m, &v, grid)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GravitonResiduals {
    pub wave: f64,
    pub divergence: f64,
    pub trace: f64,
    pub symmetry: f64,
}

/// Residuals of box h = 0, d_mu h^{mu nu} = 0, trace and symmetry, each
/// relative to max |h|.
pub fn tt_residuals<S: SliceSource + ?Sized>(h: &S) -> GravitonResiduals {
    let ([w, d, t, s], peak) = scan_interior(h, |st| {
        let mut wave = 0.0_f64;
        let mut sym = 0.0_f64;
        for i in 0..16 {
            wave = wave.max(st.box_op(i).norm());
        }
        let mut div = 0.0_f64;
        for nu in 0..4 {
            let v: C64 = (0..4).map(|mu| st.d(mu, 4 * mu + nu)).sum();
            div = div.max(v.norm());
            for mu in 0..4 {
                sym = sym.max((st.value(4 * mu + nu) - st.value(4 * nu + mu)).norm());
            }
        }
        let tr: C64 = (0..4).map(|mu| st.value(5 * mu) * ETA[mu]).sum();
        [wave, div, tr.norm(), sym]
    });
    let peak = peak.max(f64::MIN_POSITIVE);
    GravitonResiduals { wave: w / peak, divergence: d / peak, trace: t / peak, symmetry: s / peak }
}

/// max |(h' - h)^{mu nu} - (d^mu B^nu + d^nu B^mu)|, relative to max |h' - h|.
pub fn gauge_gradient_defect(diff: &dyn SliceSource, b: &dyn SliceSource) -> Result<f64> {
    let pair = Concat::new(diff, b)?;
    let ([d, m], _) = scan_interior(&pair, |st| {
        let mut worst = 0.0_f64;
        let mut mag = 0.0_f64;
        for mu in 0..4 {
            for nu in 0..4 {
                let g = st.d(mu, 16 + nu) * ETA[mu] + st.d(nu, 16 + mu) * ETA[nu];
                worst = worst.max((st.value(4 * mu + nu) - g).norm());
                mag = mag.max(st.value(4 * mu + nu).norm());
            }
        }
        [worst, mag]
    });
    Ok(d / m.max(f64::MIN_POSITIVE))
}
