//! Perception bundles: gauge-redundant fibers F_p with degenerate subspace
//! D_p and a Hermitian metric that only sees F_p / D_p.
//!
//! A model is a representation Phi of SL(2,C) on V, an isometric embedding
//! epsilon of C^2, and a subspace W orthogonal to epsilon(C^2) such that W is
//! invariant under the little group and Phi(B) epsilon(v) agrees with
//! epsilon(eta~(B) v) modulo W. Then F_p = Phi(L(p)) (W + epsilon(C^2)) and
//! D_p = Phi(L(p)) W.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::boosting::standard_boost;
use crate::error::{Error, Result};
use crate::linalg::{max_abs, numerical_rank, vec_norm, CMat, CVec};
use crate::little_group::{eta, reference_momentum, Helicity, LittleGroupElement};
use crate::lorentz::{kappa, FourVector, Sl2c};
use crate::mass_shell::{pairwise_sum, MomentumPoint, ShellGrid};
use crate::tolerances::{FIBER_TOL, ISOMETRY};
use crate::C64;

pub type PhiFn = Arc<dyn Fn(&Sl2c) -> CMat + Send + Sync>;

#[derive(Clone)]
pub struct PerceptionModel {
    pub name: String,
    pub helicity: Helicity,
    pub dim: usize,
    pub phi: PhiFn,
    /// dim x 2, columns epsilon(|+>), epsilon(|->).
    pub epsilon: CMat,
    /// dim x k, orthonormal.
    pub w_basis: CMat,
}

impl fmt::Debug for PerceptionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PerceptionModel")
            .field("name", &self.name)
            .field("helicity", &self.helicity)
            .field("dim", &self.dim)
            .field("gauge_dim", &self.w_basis.ncols())
            .finish()
    }
}

impl PerceptionModel {
    pub fn phi(&self, a: &Sl2c) -> CMat {
        (self.phi)(a)
    }

    pub fn gauge_dim(&self) -> usize {
        self.w_basis.ncols()
    }

    /// [W | epsilon], orthonormal for a valid model.
    pub fn reference_fiber(&self) -> CMat {
        let mut m = CMat::zeros(self.dim, self.gauge_dim() + 2);
        m.columns_mut(0, self.gauge_dim()).copy_from(&self.w_basis);
        m.columns_mut(self.gauge_dim(), 2).copy_from(&self.epsilon);
        m
    }

    pub fn embed(&self, v: &[C64; 2]) -> CVec {
        self.epsilon.column(0) * v[0] + self.epsilon.column(1) * v[1]
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub epsilon_isometry: f64,
    pub gauge_orthonormal: f64,
    pub homomorphism: f64,
    pub gauge_invariance: f64,
    pub congruence: f64,
    pub fiber_rank: usize,
}

impl ValidationReport {
    pub fn worst(&self) -> f64 {
        self.epsilon_isometry
            .max(self.gauge_orthonormal)
            .max(self.homomorphism)
            .max(self.gauge_invariance)
            .max(self.congruence)
    }
}

pub fn random_little<R: Rng + ?Sized>(rng: &mut R, b_scale: f64) -> LittleGroupElement {
    let t = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
    let br: f64 = rng.sample(StandardNormal);
    let bi: f64 = rng.sample(StandardNormal);
    LittleGroupElement { z: C64::from_polar(1.0, t), b: C64::new(br, bi) * b_scale }
}

fn relative(m: &CMat, scale: f64) -> f64 {
    max_abs(m) / scale.max(1.0)
}

/// Measures every model hypothesis on random samples without failing.
pub fn measure_model<R: Rng + ?Sized>(m: &PerceptionModel, rng: &mut R, samples: usize) -> ValidationReport {
    let eye2 = CMat::identity(2, 2);
    let eps_iso = max_abs(&(m.epsilon.adjoint() * &m.epsilon - eye2));
    let k = m.gauge_dim();
    let gram = m.w_basis.adjoint() * &m.w_basis - CMat::identity(k, k);
    let cross = m.w_basis.adjoint() * &m.epsilon;
    let orth = max_abs(&gram).max(max_abs(&cross));
    let p_w = &m.w_basis * m.w_basis.adjoint();
    let off_w = CMat::identity(m.dim, m.dim) - &p_w;
    let mut rep = ValidationReport { epsilon_isometry: eps_iso, gauge_orthonormal: orth, ..Default::default() };
    rep.fiber_rank = numerical_rank(&m.reference_fiber());
    for _ in 0..samples {
        let a = crate::lorentz::random_sl2c(rng, 1.0);
        let b = crate::lorentz::random_sl2c(rng, 1.0);
        let pab = m.phi(&a.mul(&b));
        let hom = relative(&(&pab - m.phi(&a) * m.phi(&b)), max_abs(&pab));
        rep.homomorphism = rep.homomorphism.max(hom);

        let kb = random_little(rng, 1.0);
        let phib = m.phi(&kb.to_sl2c());
        let scale = max_abs(&phib);
        if k > 0 {
            let leak = &off_w * &phib * &m.w_basis;
            rep.gauge_invariance = rep.gauge_invariance.max(relative(&leak, scale));
        }
        let e = eta(m.helicity, &kb);
        let mut target = m.epsilon.clone();
        let col0 = m.epsilon.column(0) * e;
        let col1 = m.epsilon.column(1) * e.conj();
        target.column_mut(0).copy_from(&col0);
        target.column_mut(1).copy_from(&col1);
        let diff = &off_w * (&phib * &m.epsilon - target);
        rep.congruence = rep.congruence.max(relative(&diff, scale));
    }
    rep
}

/// Rejects a model whose hypotheses fail on random samples.
pub fn validate_model<R: Rng + ?Sized>(m: &PerceptionModel, rng: &mut R, samples: usize) -> Result<ValidationReport> {
    let rep = measure_model(m, rng, samples);
    let checks = [
        ("epsilon is not an isometry", rep.epsilon_isometry),
        ("gauge basis is not orthonormal or not orthogonal to epsilon", rep.gauge_orthonormal),
        ("Phi is not a homomorphism", rep.homomorphism),
        ("W is not invariant under the little group", rep.gauge_invariance),
        ("Phi(B) epsilon(v) differs from epsilon(eta(B) v) outside W", rep.congruence),
    ];
    for (what, v) in checks {
        if !(v <= ISOMETRY) {
            return Err(Error::Model(format!("{}: {what} (defect {v:e})", m.name)));
        }
    }
    if rep.fiber_rank != m.gauge_dim() + 2 {
        return Err(Error::Model(format!("{}: fiber rank {} != {}", m.name, rep.fiber_rank, m.gauge_dim() + 2)));
    }
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct FiberFrame {
    pub p: MomentumPoint,
    pub phi_l: CMat,
    pub phi_l_inv: CMat,
    pub f_basis: CMat,
    pub d_basis: CMat,
    /// Kills D_p and fixes the gauge representative Phi(L(p)) epsilon(C^2).
    pub canonical_projector: CMat,
}

impl FiberFrame {
    /// Coordinates of z in the reference fiber, with the membership residual.
    fn pull_back(&self, m: &PerceptionModel, z: &CVec) -> (CVec, f64) {
        let y = &self.phi_l_inv * z;
        let q = m.reference_fiber();
        let inside = &q * (q.adjoint() * &y);
        let res = vec_norm(&(&y - inside)) / vec_norm(&y).max(1.0);
        (y, res)
    }

    pub fn contains(&self, m: &PerceptionModel, z: &CVec) -> bool {
        self.pull_back(m, z).1 <= FIBER_TOL
    }

    /// epsilon-coordinates of z modulo D_p.
    pub fn helicity_coordinates(&self, m: &PerceptionModel, z: &CVec) -> Result<[C64; 2]> {
        if z.len() != m.dim {
            return Err(Error::NotInFiber(f64::INFINITY));
        }
        let (y, res) = self.pull_back(m, z);
        if res > FIBER_TOL {
            return Err(Error::NotInFiber(res));
        }
        let cf = m.epsilon.adjoint() * y;
        Ok([cf[0], cf[1]])
    }
}

pub fn fiber_at(m: &PerceptionModel, p: &MomentumPoint) -> Result<FiberFrame> {
    let l = standard_boost(p)?;
    let phi_l = m.phi(&l);
    let phi_l_inv = m.phi(&l.inverse());
    let f_basis = &phi_l * m.reference_fiber();
    let d_basis = &phi_l * &m.w_basis;
    let canonical_projector = &phi_l * (&m.epsilon * m.epsilon.adjoint()) * &phi_l_inv;
    Ok(FiberFrame { p: *p, phi_l, phi_l_inv, f_basis, d_basis, canonical_projector })
}

/// Gauge representative of z: its component along Phi(L(p)) epsilon(C^2).
pub fn canonical_rep(m: &PerceptionModel, p: &MomentumPoint, z: &CVec) -> Result<CVec> {
    let f = fiber_at(m, p)?;
    let v = f.helicity_coordinates(m, z)?;
    Ok(&f.phi_l * m.embed(&v))
}

/// h_p(z, w): pull back by Phi(L(p))^{-1}, project onto epsilon(C^2), take
/// the standard inner product. Antilinear in the first slot.
pub fn quotient_metric(m: &PerceptionModel, p: &MomentumPoint, z: &CVec, w: &CVec) -> Result<C64> {
    let f = fiber_at(m, p)?;
    let a = f.helicity_coordinates(m, z)?;
    let b = f.helicity_coordinates(m, w)?;
    Ok(a[0].conj() * b[0] + a[1].conj() * b[1])
}

/// theta(a, A)(p, z) = (A p, exp(-i <A p, a>) Phi(A) z).
pub fn potential_action(m: &PerceptionModel, a: &FourVector, l: &Sl2c, p: &MomentumPoint, z: &CVec) -> Result<(MomentumPoint, CVec)> {
    let q = p.transform(l)?;
    let phase = C64::from_polar(1.0, -q.four().minkowski(a));
    Ok((q, m.phi(l) * z * phase))
}

/// Largest |h(Phi(A) eps(v), Phi(A) eps(w)) - <v, w>| over the samples,
/// evaluated at p = A p0.
pub fn primitive_isometry_check(m: &PerceptionModel, samples: &[(Sl2c, [C64; 2], [C64; 2])]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for (a, v, w) in samples {
        let p = MomentumPoint::from_four(&kappa(a).apply(&reference_momentum()))?;
        let phia = m.phi(a);
        let zv = &phia * m.embed(v);
        let zw = &phia * m.embed(w);
        let h = quotient_metric(m, &p, &zv, &zw)?;
        let want = v[0].conj() * w[0] + v[1].conj() * w[1];
        worst = worst.max((h - want).norm());
    }
    Ok(worst)
}

#[derive(Clone, Debug)]
pub struct PerceptionWaveFunction {
    pub grid: ShellGrid,
    pub values: Vec<CVec>,
}

impl PerceptionWaveFunction {
    pub fn new(grid: ShellGrid, values: Vec<CVec>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::GridMismatch(format!("{} values for {} nodes", values.len(), grid.len())));
        }
        Ok(PerceptionWaveFunction { grid, values })
    }
}

/// Frames for every node of a grid, built once and then shared read-only.
pub struct FrameTable {
    pub frames: Vec<FiberFrame>,
}

impl FrameTable {
    pub fn build(m: &PerceptionModel, grid: &ShellGrid) -> Result<Self> {
        let frames = grid.nodes.par_iter().map(|p| fiber_at(m, p)).collect::<Result<Vec<_>>>()?;
        Ok(FrameTable { frames })
    }
}

/// Section lifted from helicity data: node p carries Phi(L(p)) epsilon(v(p))
/// plus a gauge part Phi(L(p)) W g(p).
pub fn lift_section<F, G>(m: &PerceptionModel, grid: &ShellGrid, helicity: F, gauge: G) -> Result<PerceptionWaveFunction>
where
    F: Fn(&MomentumPoint) -> [C64; 2] + Sync,
    G: Fn(&MomentumPoint) -> Vec<C64> + Sync,
{
    let values = grid
        .nodes
        .par_iter()
        .map(|p| {
            let f = fiber_at(m, p)?;
            let mut z = &f.phi_l * m.embed(&helicity(p));
            let g = gauge(p);
            for (j, gj) in g.iter().enumerate().take(m.gauge_dim()) {
                z += f.d_basis.column(j) * *gj;
            }
            Ok(z)
        })
        .collect::<Result<Vec<_>>>()?;
    PerceptionWaveFunction::new(grid.clone(), values)
}

/// sum_i w_i h_{p_i}(psi_i, phi_i).
pub fn h_inner(m: &PerceptionModel, psi: &PerceptionWaveFunction, phi: &PerceptionWaveFunction) -> Result<C64> {
    if psi.grid.nodes != phi.grid.nodes {
        return Err(Error::GridMismatch("wave functions live on different grids".into()));
    }
    let table = FrameTable::build(m, &psi.grid)?;
    let terms = table
        .frames
        .par_iter()
        .zip(psi.values.par_iter().zip(phi.values.par_iter()))
        .zip(psi.grid.weights.par_iter())
        .map(|((f, (a, b)), w)| {
            let x = f.helicity_coordinates(m, a)?;
            let y = f.helicity_coordinates(m, b)?;
            Ok((x[0].conj() * y[0] + x[1].conj() * y[1]) * *w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&terms))
}

/// Perception representation on the pushforward grid.
pub fn apply_perception_rep(m: &PerceptionModel, a: &FourVector, l: &Sl2c, psi: &PerceptionWaveFunction) -> Result<PerceptionWaveFunction> {
    let phil = m.phi(l);
    let k = kappa(l);
    let out = psi
        .grid
        .nodes
        .par_iter()
        .zip(psi.values.par_iter())
        .map(|(p, z)| {
            let q = MomentumPoint::from_four(&k.apply(&p.four()))?;
            let phase = C64::from_polar(1.0, -q.four().minkowski(a));
            Ok((q, &phil * z * phase))
        })
        .collect::<Result<Vec<_>>>()?;
    let (nodes, values): (Vec<_>, Vec<_>) = out.into_iter().unzip();
    PerceptionWaveFunction::new(ShellGrid { nodes, weights: psi.grid.weights.clone() }, values)
}

/// Registry names: "photon", "graviton", "spin:<2s>" (tensor-spinor tower),
/// "sympow:<2s>" (symmetric powers of C^2, kept for comparison).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelName {
    Photon,
    Graviton,
    Spin(i32),
    SymPow(i32),
}

pub const MAX_TWO_S: i32 = 12;

pub fn parse_model_name(s: &str) -> Result<ModelName> {
    let bad = || Error::Model(format!("unknown model `{}`", s.escape_debug()));
    match s {
        "photon" => return Ok(ModelName::Photon),
        "graviton" => return Ok(ModelName::Graviton),
        _ => {}
    }
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    if rest.is_empty() || rest.len() > 3 || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let two_s: i32 = rest.parse().map_err(|_| bad())?;
    if !(1..=MAX_TWO_S).contains(&two_s) {
        return Err(Error::InvalidHelicity(format!("2s = {two_s} outside 1..={MAX_TWO_S}")));
    }
    match kind {
        "spin" => Ok(ModelName::Spin(two_s)),
        "sympow" => Ok(ModelName::SymPow(two_s)),
        _ => Err(bad()),
    }
}

pub fn build_model(name: ModelName) -> PerceptionModel {
    match name {
        ModelName::Photon => crate::photon::build_photon_model(),
        ModelName::Graviton => crate::graviton::build_graviton_model(),
        ModelName::Spin(t) => crate::spin_tower::build_spin_model(t),
        ModelName::SymPow(t) => crate::spin_tower::build_sympower_model(t),
    }
}

pub fn model_by_name(s: &str) -> Result<PerceptionModel> {
    parse_model_name(s).map(build_model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names() {
        assert_eq!(parse_model_name("photon").unwrap(), ModelName::Photon);
        assert_eq!(parse_model_name("spin:3").unwrap(), ModelName::Spin(3));
        assert_eq!(parse_model_name("sympow:2").unwrap(), ModelName::SymPow(2));
        for bad in ["", "spin:", "spin:0", "spin:-1", "spin:99", "spin:+3", "boson", "spin:1:2", "PHOTON"] {
            assert!(parse_model_name(bad).is_err(), "{bad}");
        }
    }
}
