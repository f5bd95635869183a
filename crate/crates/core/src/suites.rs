//! Verification suites: seeded sweeps over each module's identities, each
//! producing a `Report`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boosting::{apply_boosting_rep, helicity_reduced_density, log_negativity, two_particle_reduced, wigner, BoostingWaveFunction, TwoParticleState};
use crate::chern::{chern_form_eval, chern_number, chern_refinement, zeta_eval, zeta_pullback, zeta_total, CapSection, MainSection, SphereMesh};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::fields::{convergence_study, field_momenta, field_residuals, Packet, Particle, STUDY_POINTS, STUDY_SPACINGS};
use crate::graviton::{gauge_subspace, tensor};
use crate::linalg::{c, cmax, from_real4, max_abs, numerical_rank, projector, CMat, CVec};
use crate::little_group::{e2_cover, e2_mul, eta, reference_momentum, Helicity};
use crate::lorentz::{boost, kappa, random_c2, random_sl2c, random_unit_vector, rotation, tilde, untilde, FourVector, Sl2c};
use crate::mass_shell::{build_grid, MomentumPoint, ShellGrid};
use crate::parity::{
    delta, doubled_fiber_action, fiber_pair_distance, gamma_map, helicity_flip_check, kappa_tilde, ExtendedElement, ExtendedPoincare,
    FiberPoint, Mat4,
};
use crate::perception::{
    apply_perception_rep, build_model, canonical_rep, fiber_at, h_inner, lift_section, measure_model, primitive_isometry_check, random_little,
    ModelName,
};
use crate::photon::{four_to_cvec, gauge_line, polarization_unnormalized};
use crate::report::Report;
use crate::spin_tower::{build_sympower_model, gauge_dimension, lowering_expansion, sym_power_matrix};
use crate::C64;

pub const SUITES: [&str; 9] = ["core", "little-group", "boosting", "perception", "photon", "graviton", "spin", "chern", "parity"];

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    if name == "all" {
        let parts: Vec<Report> = SUITES.par_iter().map(|s| run_one(s, cfg)).collect::<Result<_>>()?;
        let mut out = Report::new("all", cfg.seed);
        for p in parts {
            out.extend(p);
        }
        return Ok(out);
    }
    run_one(name, cfg)
}

fn run_one(name: &str, cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new(name, cfg.seed);
    match name {
        "core" => core(cfg, &mut r),
        "little-group" => little_group(cfg, &mut r),
        "boosting" => boosting(cfg, &mut r),
        "perception" => perception(cfg, &mut r),
        "photon" => field_particle(Particle::Photon, cfg, &mut r),
        "graviton" => field_particle(Particle::Graviton, cfg, &mut r),
        "spin" => spin(cfg, &mut r),
        "chern" => chern(cfg, &mut r),
        "parity" => parity(cfg, &mut r),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    }
    Ok(r)
}

/// Each suite draws from its own stream so suites are independent of the
/// order they run in.
fn rng(cfg: &RunConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(stream);
    r
}

fn check(r: &mut Report, id: &str, anchor: &str, tol: f64, f: impl FnOnce() -> Result<f64>) {
    match f() {
        Ok(v) => r.at_most(id, anchor, v, tol),
        Err(e) => r.failed(id, anchor, &e),
    }
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, f64::max)
}

fn random_point<R: Rng>(rng: &mut R) -> Result<MomentumPoint> {
    let v = random_unit_vector(rng);
    let e = 0.5 + 3.0 * rng.random::<f64>();
    MomentumPoint::lift([e * v[0], e * v[1], e * v[2]])
}

fn random_four<R: Rng>(rng: &mut R) -> FourVector {
    FourVector::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
}

fn core(cfg: &RunConfig, r: &mut Report) {
    let mut g = rng(cfg, 1);
    let tol = cfg.tolerance("group_identity");
    let pairs: Vec<(Sl2c, Sl2c)> = (0..cfg.samples).map(|_| (random_sl2c(&mut g, 1.0), random_sl2c(&mut g, 1.0))).collect();
    r.at_most("core.metric", "kappa(A)^T eta kappa(A) = eta", max_of(pairs.iter().map(|(a, _)| kappa(a).metric_defect())), tol);
    r.at_most("core.kernel", "kappa(-A) = kappa(A) exactly", max_of(pairs.iter().map(|(a, _)| kappa(&a.neg()).dist(&kappa(a)))), 0.0);
    r.at_most(
        "core.homomorphism",
        "kappa(A B) = kappa(A) kappa(B)",
        max_of(pairs.iter().map(|(a, b)| kappa(&a.mul(b)).dist(&kappa(a).mul(&kappa(b))))),
        tol,
    );
    r.at_most(
        "core.orthochronous",
        "kappa(A) preserves the time orientation",
        pairs.iter().filter(|(a, _)| !kappa(a).is_orthochronous()).count() as f64,
        0.0,
    );
    let xs: Vec<FourVector> = (0..cfg.samples).map(|_| random_four(&mut g)).collect();
    r.at_most("core.tilde", "untilde(tilde(x)) = x", max_of(xs.iter().map(|x| untilde(&tilde(x)).sub(x).norm_max())), tol);
    r.at_most(
        "core.determinant",
        "det tilde(x) = <x, x>",
        max_of(xs.iter().map(|x| (tilde(x).determinant() - c(x.minkowski(x))).norm())),
        tol,
    );
    let full_turn = rotation(3, 2.0 * PI).dist(&Sl2c::identity().neg());
    r.at_most("core.full_turn", "rotation by 2 pi is -I", full_turn, tol);
}

fn little_group(cfg: &RunConfig, r: &mut Report) {
    let mut g = rng(cfg, 2);
    let tol = cfg.tolerance("wigner");
    let ks: Vec<_> = (0..cfg.samples).map(|_| (random_little(&mut g, 1.5), random_little(&mut g, 1.5))).collect();
    let char_defect = max_of((-4..=4).flat_map(|t| {
        let s = Helicity::from_twice(t);
        ks.iter().map(move |(a, b)| (eta(s, &a.mul(b)) - eta(s, a) * eta(s, b)).norm())
    }));
    r.at_most("little-group.character", "eta_s(k1 k2) = eta_s(k1) eta_s(k2)", char_defect, tol);
    let cover = max_of(ks.iter().map(|(a, b)| {
        let (x, y) = (e2_cover(&a.mul(b)), e2_mul(e2_cover(a), e2_cover(b)));
        (x.0 - y.0).norm().max((x.1 - y.1).norm())
    }));
    r.at_most("little-group.e2_cover", "K -> E(2) is a homomorphism", cover, tol);
    let p0 = reference_momentum();
    let fix = max_of(ks.iter().map(|(a, _)| a.to_sl2c().act(&p0).sub(&p0).norm_max()));
    r.at_most("little-group.stabilizer", "little-group elements fix p0", fix, tol);
    check(r, "little-group.wigner", "W(A, p) lies in the little group", tol, || {
        let mut worst = 0.0_f64;
        for _ in 0..cfg.samples {
            let a = random_sl2c(&mut g, 1.0);
            let p = random_point(&mut g)?;
            worst = worst.max(wigner(&a, &p)?.to_sl2c().act(&p0).sub(&p0).norm_max());
        }
        Ok(worst)
    });
}

/// Gaussian helicity packet used by the reduced-density checks.
pub fn tau_packet(grid: ShellGrid) -> BoostingWaveFunction {
    BoostingWaveFunction::from_fn(grid, |p| {
        let q = p.spatial();
        let f = (-((q[0] - 0.5).powi(2) + q[1].powi(2) + (q[2] - 1.0).powi(2))).exp();
        let th = 0.8 * q[0];
        [C64::new(th.cos() * f, 0.0), C64::new(0.0, th.sin() * f)]
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauRow {
    pub axis: usize,
    pub rapidity: f64,
    pub tau_pp: f64,
    pub tau_mm: f64,
    pub tau_pm_re: f64,
    pub tau_pm_im: f64,
    /// Frobenius distance to the unboosted density.
    pub distance: f64,
}

/// Reduced helicity density after boosts along x and along z, for a sweep
/// of rapidities.
pub fn tau_sweep(cfg: &RunConfig, steps: usize, max_rapidity: f64) -> Result<Vec<TauRow>> {
    let psi = tau_packet(build_grid(&cfg.radial, &cfg.angular)?);
    let tau = helicity_reduced_density(&psi)?;
    let s = Helicity::from_twice(2);
    let zero = FourVector::new(0.0, 0.0, 0.0, 0.0);
    let mut rows = Vec::new();
    for axis in [1, 3] {
        for i in 0..=steps {
            let u = max_rapidity * i as f64 / steps.max(1) as f64;
            let t = helicity_reduced_density(&apply_boosting_rep(&zero, &boost(axis, u), s, &psi)?)?;
            rows.push(TauRow {
                axis,
                rapidity: u,
                tau_pp: t[(0, 0)].re,
                tau_mm: t[(1, 1)].re,
                tau_pm_re: t[(0, 1)].re,
                tau_pm_im: t[(0, 1)].im,
                distance: (t - tau).norm(),
            });
        }
    }
    Ok(rows)
}

fn bell_state(grid: &ShellGrid) -> Result<TwoParticleState> {
    let n = grid.len();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let f = |i: usize| (-(grid.nodes[i].energy() - 1.0).powi(2)).exp();
    let z = C64::new(0.0, 0.0);
    let v = (0..n * n).map(|k| {
        let a = f(k / n) * f(k % n) * h;
        [c(a), z, z, c(a)]
    });
    TwoParticleState::new(grid.clone(), grid.clone(), v.collect())
}

fn product_state(grid: &ShellGrid) -> Result<TwoParticleState> {
    let n = grid.len();
    let f = |i: usize| (-(grid.nodes[i].energy() - 1.0).powi(2)).exp();
    let one = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
    let two = [C64::new(0.28, 0.0), C64::new(0.96, 0.0)];
    let v = (0..n * n).map(|k| {
        let (i, j) = (k / n, k % n);
        let a = f(i) * f(j);
        [one[0] * two[0] * a, one[0] * two[1] * a, one[1] * two[0] * a, one[1] * two[1] * a]
    });
    TwoParticleState::new(grid.clone(), grid.clone(), v.collect())
}

fn boosting(cfg: &RunConfig, r: &mut Report) {
    let mut g = rng(cfg, 3);
    check(r, "boosting.cocycle", "W(A1 A2, p) = W(A1, A2 p) W(A2, p)", cfg.tolerance("doubled_action"), || {
        let mut worst = 0.0_f64;
        for _ in 0..cfg.samples {
            let (a1, a2) = (random_sl2c(&mut g, 1.0), random_sl2c(&mut g, 1.0));
            let p = random_point(&mut g)?;
            let lhs = wigner(&a1.mul(&a2), &p)?;
            let rhs = wigner(&a1, &p.transform(&a2)?)?.mul(&wigner(&a2, &p)?);
            worst = worst.max(lhs.to_sl2c().dist(&rhs.to_sl2c()));
        }
        Ok(worst)
    });
    let grid = match build_grid(&cfg.radial, &cfg.angular) {
        Ok(gr) => gr,
        Err(e) => return r.failed("boosting.grid", "momentum grid", &e),
    };
    let psi = tau_packet(grid.clone());
    let s = Helicity::from_twice(2);
    let elems: Vec<(FourVector, Sl2c)> = (0..8).map(|_| (random_four(&mut g), random_sl2c(&mut g, 1.0))).collect();
    check(r, "boosting.norm", "U(a, A) preserves discrete norms on pushforward grids", cfg.tolerance("norm_preservation"), || {
        let n0 = psi.norm_sqr();
        let mut worst = 0.0_f64;
        for (a, l) in &elems {
            worst = worst.max((apply_boosting_rep(a, l, s, &psi)?.norm_sqr() - n0).abs() / n0);
        }
        Ok(worst)
    });
    check(r, "boosting.group_law", "U(g1) U(g2) = U(g1 g2)", cfg.tolerance("doubled_action"), || {
        let mut worst = 0.0_f64;
        for w in elems.windows(2) {
            let ((a1, l1), (a2, l2)) = (&w[0], &w[1]);
            let two = apply_boosting_rep(a1, l1, s, &apply_boosting_rep(a2, l2, s, &psi)?)?;
            let a12 = a1.add(&kappa(l1).apply(a2));
            let one = apply_boosting_rep(&a12, &l1.mul(l2), s, &psi)?;
            for (x, y) in two.values.iter().zip(&one.values) {
                worst = worst.max((x[0] - y[0]).norm()).max((x[1] - y[1]).norm());
            }
        }
        Ok(worst)
    });
    let small = build_grid(&crate::mass_shell::RadialSpec { nodes: 3, r_min: 0.5, r_max: 2.0 }, &crate::mass_shell::AngularSpec::Spiral { points: 12 });
    check(r, "boosting.bell", "log negativity of the helicity Bell state is 1", cfg.tolerance("log_negativity"), || {
        let rho = two_particle_reduced(&bell_state(small.as_ref().map_err(Clone::clone)?)?)?;
        Ok((log_negativity(&rho)? - 1.0).abs())
    });
    check(r, "boosting.product", "log negativity of a product state is 0", cfg.tolerance("density"), || {
        let rho = two_particle_reduced(&product_state(small.as_ref().map_err(Clone::clone)?)?)?;
        Ok(log_negativity(&rho)?.abs())
    });
    match tau_sweep(cfg, 1, 1.0) {
        Ok(rows) => {
            let x = rows.iter().find(|t| t.axis == 1 && t.rapidity == 1.0).map(|t| t.distance).unwrap_or(f64::NAN);
            let z = rows.iter().find(|t| t.axis == 3 && t.rapidity == 1.0).map(|t| t.distance).unwrap_or(f64::NAN);
            r.at_least("boosting.tau_frame", "reduced helicity density changes under a transverse boost of rapidity 1", x, cfg.tolerance("frame_dependence"));
            r.at_most("boosting.tau_axial", "boosts along the reference axis leave the reduced density fixed", z, cfg.tolerance("density"));
            r.values.insert("tau_distance_x_boost".into(), x);
        }
        Err(e) => r.failed("boosting.tau_frame", "reduced helicity density", &e),
    }
}

fn perception_models() -> Vec<ModelName> {
    let mut v = vec![ModelName::Photon, ModelName::Graviton];
    v.extend((1..=6).map(ModelName::Spin));
    v
}

fn model_label(n: ModelName) -> String {
    match n {
        ModelName::Photon => "photon".into(),
        ModelName::Graviton => "graviton".into(),
        ModelName::Spin(t) => format!("spin{t}"),
        ModelName::SymPow(t) => format!("sympow{t}"),
    }
}

fn perception(cfg: &RunConfig, r: &mut Report) {
    let mut g = rng(cfg, 4);
    let iso = cfg.tolerance("isometry");
    for name in perception_models() {
        let m = build_model(name);
        let label = model_label(name);
        let rep = measure_model(&m, &mut g, (cfg.samples / 20).max(5));
        r.at_most(&format!("perception.{label}.hypotheses"), "epsilon isometric, W orthonormal, Phi homomorphic, W invariant, congruence mod W", rep.worst(), iso);
        r.at_most(&format!("perception.{label}.fiber_rank"), "reference fiber has rank k + 2", (rep.fiber_rank as f64 - (m.gauge_dim() + 2) as f64).abs(), 0.0);
        let samples: Vec<(Sl2c, [C64; 2], [C64; 2])> = (0..cfg.samples).map(|_| (random_sl2c(&mut g, 1.0), random_c2(&mut g), random_c2(&mut g))).collect();
        check(r, &format!("perception.{label}.isometry"), "h(Phi(A) eps(v), Phi(A) eps(w)) = v . w", iso, || primitive_isometry_check(&m, &samples));
    }
    let m = build_model(ModelName::Photon);
    let small = build_grid(&crate::mass_shell::RadialSpec { nodes: 4, r_min: 0.5, r_max: 3.0 }, &crate::mass_shell::AngularSpec::Spiral { points: 40 });
    let lifted = small.and_then(|grid| {
        lift_section(&m, &grid, |p| [C64::new((-p.energy()).exp(), 0.0), C64::new(0.0, 0.5 * (-p.energy()).exp())], |p| vec![C64::new(p.spatial()[0], 0.2)])
    });
    let elems: Vec<(FourVector, Sl2c)> = (0..4).map(|_| (random_four(&mut g), random_sl2c(&mut g, 1.0))).collect();
    check(r, "perception.norm", "perception representation preserves the quotient norm", cfg.tolerance("perception_norm"), || {
        let psi = lifted.clone()?;
        let n0 = h_inner(&m, &psi, &psi)?.re;
        let mut worst = 0.0_f64;
        for (a, l) in &elems {
            let out = apply_perception_rep(&m, a, l, &psi)?;
            worst = worst.max((h_inner(&m, &out, &out)?.re - n0).abs() / n0);
        }
        Ok(worst)
    });
    check(r, "perception.group_law", "perception representation respects the group law", cfg.tolerance("perception_norm"), || {
        let psi = lifted.clone()?;
        let mut worst = 0.0_f64;
        for w in elems.windows(2) {
            let ((a1, l1), (a2, l2)) = (&w[0], &w[1]);
            let two = apply_perception_rep(&m, a1, l1, &apply_perception_rep(&m, a2, l2, &psi)?)?;
            let one = apply_perception_rep(&m, &a1.add(&kappa(l1).apply(a2)), &l1.mul(l2), &psi)?;
            for (x, y) in two.values.iter().zip(&one.values) {
                worst = worst.max((x - y).norm() / (1.0 + y.norm()));
            }
        }
        Ok(worst)
    });
    check(r, "perception.canonical", "canonical representative ignores gauge shifts", iso, || {
        let mg = build_model(ModelName::Graviton);
        let mut worst = 0.0_f64;
        for _ in 0..10 {
            let p = random_point(&mut g)?;
            let f = fiber_at(&mg, &p)?;
            let z: CVec = f.f_basis.column(3).into_owned() * c(0.7) + f.f_basis.column(4).into_owned();
            let shifted = &z + f.d_basis.column(1) * C64::new(g.random::<f64>(), g.random::<f64>());
            worst = worst.max((canonical_rep(&mg, &p, &z)? - canonical_rep(&mg, &p, &shifted)?).norm());
        }
        Ok(worst)
    });
}

/// Phi(B) applied to the helicity-plus vector of a tensor model versus the
/// closed-form expansion in z and b.
fn structure_defect(particle: Particle, cfg: &RunConfig, g: &mut ChaCha8Rng) -> f64 {
    let p0 = four_to_cvec(&reference_momentum());
    let e = polarization_unnormalized(true);
    max_of((0..cfg.samples).map(|_| {
        let k = random_little(g, 2.0);
        let kap = from_real4(&kappa(&k.to_sl2c()).0);
        let bz = k.b.conj() * k.z;
        let (lhs, rhs) = match particle {
            Particle::Photon => (&kap * &e, &e * (k.z * k.z) + &p0 * bz),
            Particle::Graviton => {
                let ee = tensor(&e, &e);
                let rhs = &ee * k.z.powi(4) + (tensor(&p0, &e) + tensor(&e, &p0)) * (bz * k.z * k.z) + tensor(&p0, &p0) * (bz * bz);
                (kap.kronecker(&kap) * ee, rhs)
            }
        };
        (lhs - &rhs).norm() / (1.0 + rhs.norm())
    }))
}

fn field_particle(particle: Particle, cfg: &RunConfig, r: &mut Report) {
    let mut g = rng(cfg, if particle == Particle::Photon { 5 } else { 6 });
    let id = |s: &str| format!("{particle}.{s}");
    let (structure, gauge_anchor, k) = match particle {
        Particle::Photon => ("Phi(B) e+ = z^2 e+ + conj(b) z p0", "gauge fiber is C p", 1usize),
        Particle::Graviton => ("Phi(B) e+e+ = z^4 e+e+ + conj(b) z^3 (p0 e+ + e+ p0) + (conj(b) z)^2 p0 p0", "gauge fiber is {p x + x p}", 3),
    };
    r.at_most(&id("structure"), structure, structure_defect(particle, cfg, &mut g), cfg.tolerance("structure_constants"));
    let m = particle.model();
    let mut proj = 0.0_f64;
    let mut rank = 0.0_f64;
    let mut failure = None;
    for _ in 0..10 {
        let step = (|| -> Result<(f64, f64)> {
            let p = random_point(&mut g)?;
            let f = fiber_at(&m, &p)?;
            let want = match particle {
                Particle::Photon => CMat::from_columns(&[gauge_line(&p)]),
                Particle::Graviton => gauge_subspace(&p)?,
            };
            Ok((max_abs(&(projector(&f.d_basis) - projector(&want))), (numerical_rank(&f.d_basis) as f64 - k as f64).abs()))
        })();
        match step {
            Ok((a, b)) => {
                proj = proj.max(a);
                rank = rank.max(b);
            }
            Err(e) => failure = Some(e),
        }
    }
    if let Some(e) = failure {
        r.failed(&id("gauge_projector"), gauge_anchor, &e);
    } else {
        r.at_most(&id("gauge_projector"), gauge_anchor, proj, cfg.tolerance("projector"));
        r.at_most(&id("gauge_rank"), "gauge fiber dimension", rank, 0.0);
    }
    let packet = match field_momenta().and_then(|grid| Packet::new(particle, &grid)) {
        Ok(p) => p,
        Err(e) => return r.failed(&id("packet"), "wave packet", &e),
    };
    let constraint = match particle {
        Particle::Photon => "p_mu psi^mu = 0 at every node",
        Particle::Graviton => "p_mu psi^{mu nu} = 0, psi^mu_mu = 0, psi symmetric at every node",
    };
    r.at_most(&id("momentum_constraints"), constraint, packet.momentum_constraints(), cfg.tolerance("momentum_constraint"));
    match convergence_study(&packet, STUDY_POINTS, &STUDY_SPACINGS) {
        Ok(study) => {
            r.at_least(&id("convergence_order"), "finite-difference field residuals converge at second order", study.min_order(), cfg.tolerance("min_convergence_order"));
            r.at_least(&id("halving_ratio"), "each halving of h shrinks the residuals", study.min_ratio(), cfg.tolerance("min_halving_ratio"));
            let alg = max_of(study.steps.iter().map(|s| s.algebraic));
            r.at_most(&id("algebraic"), "trace and symmetry of the synthesized field", alg, cfg.tolerance("momentum_constraint"));
        }
        Err(e) => r.failed(&id("convergence_order"), "field residual convergence", &e),
    }
    match field_residuals(&packet, cfg.spacetime) {
        Ok(fr) => {
            let tol = cfg.tolerance("field_residual");
            r.at_most(&id("wave"), "wave equation on the configured grid", fr.wave, tol);
            r.at_most(&id("divergence"), "divergence condition on the configured grid", fr.divergence, tol);
            r.at_most(&id("gauge"), "gauge shift equals the (symmetrized) gradient", fr.gauge, tol);
        }
        Err(e) => r.failed(&id("wave"), "field residuals on the configured grid", &e),
    }
}

fn spin(cfg: &RunConfig, r: &mut Report) {
    let mut g = rng(cfg, 7);
    for two_s in 1..=6 {
        let m = build_model(ModelName::Spin(two_s));
        let rep = measure_model(&m, &mut g, (cfg.samples / 40).max(5));
        r.at_most(&format!("spin.{two_s}.hypotheses"), "tensor-spinor model satisfies the perception hypotheses", rep.worst(), cfg.tolerance("isometry"));
        check(r, &format!("spin.{two_s}.gauge_rank"), "rank of the gauge fiber is 2s - 1", 0.0, || {
            let mut worst = 0.0_f64;
            for _ in 0..10 {
                let p = random_point(&mut g)?;
                let d = numerical_rank(&fiber_at(&m, &p)?.d_basis);
                worst = worst.max((d as f64 - gauge_dimension(two_s) as f64).abs());
            }
            Ok(worst)
        });
    }
    let binom = max_of((1..=6usize).flat_map(|two_s| {
        let ks: Vec<_> = (0..cfg.samples / 10).map(|_| random_little(&mut g, 1.3)).collect();
        ks.into_iter().map(move |k| {
            let direct: CVec = sym_power_matrix(two_s, &k.to_sl2c()).column(two_s).into_owned();
            (direct.clone() - lowering_expansion(two_s, &k)).norm() / (1.0 + direct.norm())
        })
    }));
    r.at_most("spin.binomial", "Sym^{2s}(B) on the lowest weight is the binomial series in conj(b), z", binom, cfg.tolerance("structure_constants"));
    for two_s in 1..=3 {
        let rep = measure_model(&build_sympower_model(two_s), &mut g, 20);
        r.at_least(
            &format!("spin.sympow{two_s}.congruence"),
            "symmetric-power model leaves the span of the intermediate weights (known defect)",
            rep.congruence,
            1e-3,
        );
    }
}

fn sphere_tangents(x: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let a = if x[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
    let cross = |u: [f64; 3], v: [f64; 3]| [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    let u = cross(x, a);
    (u, cross(x, u))
}

fn chern(cfg: &RunConfig, r: &mut Report) {
    let mut g = rng(cfg, 8);
    let last = cfg.chern_levels - 1;
    check(r, "chern.zeta_total", "the invariant two-form integrates to 1 over the sphere", cfg.tolerance("zeta_total"), || {
        Ok((zeta_total(&SphereMesh::new(last, cfg.chern_cap)?)? - 1.0).abs())
    });
    let results: Vec<(i32, Result<(Vec<f64>, f64)>)> = [-2, -1, 0, 1, 2, 4]
        .par_iter()
        .map(|&two_s| {
            let s = Helicity::from_twice(two_s);
            let run = || -> Result<(Vec<f64>, f64)> {
                let levels = chern_refinement(s, cfg.chern_levels.max(2), cfg.chern_cap)?;
                let other = chern_number(s, &SphereMesh::new(last.max(1), cfg.chern_cap / 2.0)?)?;
                Ok((levels, other))
            };
            (two_s, run())
        })
        .collect();
    for (two_s, res) in results {
        let anchor = "first Chern number of the helicity bundle is -2s";
        match res {
            Ok((levels, other)) => {
                let c1 = *levels.last().expect("at least one level");
                let prev = levels[levels.len() - 2];
                r.at_most(&format!("chern.c1.{two_s}"), anchor, (c1 + two_s as f64).abs(), cfg.tolerance("chern_integer"));
                r.at_most(&format!("chern.refine.{two_s}"), "stable under one mesh refinement", (c1 - prev).abs(), cfg.tolerance("chern_stability"));
                r.at_most(&format!("chern.cap.{two_s}"), "stable when the cap radius changes", (c1 - other).abs(), cfg.tolerance("chern_stability"));
                r.values.insert(format!("c1[2s={two_s}]"), c1);
            }
            Err(e) => r.failed(&format!("chern.c1.{two_s}"), anchor, &e),
        }
    }
    let tol = cfg.tolerance("chern_form_pointwise");
    check(r, "chern.pointwise", "pulled-back Chern form of s = -1/2 equals the invariant form on both patches", tol, || {
        let half = Helicity::from_twice(-1);
        let cap = CapSection::default();
        let mut worst = 0.0_f64;
        for _ in 0..cfg.samples {
            let x = random_unit_vector(&mut g);
            let (u, v) = sphere_tangents(x);
            let z = zeta_eval(x, u, v);
            if x[2] > -0.99 {
                worst = worst.max((chern_form_eval(half, &MainSection, x, u, v)? - z).abs());
            }
            if x[2] < 0.99 {
                worst = worst.max((chern_form_eval(half, &cap, x, u, v)? - z).abs());
            }
        }
        Ok(worst)
    });
    let inv = max_of((0..cfg.samples).map(|_| {
        let a = random_sl2c(&mut g, 1.0);
        let p: [f64; 3] = std::array::from_fn(|_| g.random::<f64>() * 2.0 - 1.0);
        let u: [f64; 3] = std::array::from_fn(|_| g.random::<f64>() - 0.5);
        let v: [f64; 3] = std::array::from_fn(|_| g.random::<f64>() - 0.5);
        let z = zeta_eval(p, u, v);
        (zeta_pullback(&a, p, u, v) - z).abs() / (1.0 + z.abs())
    }));
    r.at_most("chern.zeta_invariance", "the invariant two-form is Lorentz invariant", inv, tol);
}

fn random_extended<R: Rng>(g: &mut R) -> ExtendedPoincare {
    ExtendedPoincare { a: random_four(g), g: ExtendedElement { core: random_sl2c(g, 1.0), parity: g.random() } }
}

fn random_fiber_pair<R: Rng>(g: &mut R) -> Result<(FiberPoint, FiberPoint)> {
    Ok(((random_point(g)?, random_c2(g)), (random_point(g)?, random_c2(g))))
}

fn parity(cfg: &RunConfig, r: &mut Report) {
    let mut g = rng(cfg, 9);
    let tol = cfg.tolerance("parity");
    let elems: Vec<(FourVector, Sl2c)> = (0..cfg.samples).map(|_| (random_four(&mut g), random_sl2c(&mut g, 1.0))).collect();
    let invol = max_of(elems.iter().map(|(a, l)| {
        let (b, m) = delta(a, l);
        let (c2, n) = delta(&b, &m);
        c2.sub(a).norm_max().max(n.dist(l))
    }));
    r.at_most("parity.delta_involution", "delta o delta = identity exactly", invol, 0.0);
    let hom = max_of(elems.windows(2).map(|w| {
        let ((a1, l1), (a2, l2)) = (&w[0], &w[1]);
        let prod = (a1.add(&kappa(l1).apply(a2)), l1.mul(l2));
        let (x, y) = delta(&prod.0, &prod.1);
        let (d1, e1) = delta(a1, l1);
        let (d2, e2) = delta(a2, l2);
        let (u, v) = (d1.add(&kappa(&e1).apply(&d2)), e1.mul(&e2));
        x.sub(&u).norm_max().max(y.dist(&v)) / (1.0 + prod.0.norm_max() + cmax(prod.1.matrix()))
    }));
    r.at_most("parity.delta_homomorphism", "delta(g1 g2) = delta(g1) delta(g2)", hom, tol);
    let pk = kappa_tilde(&ExtendedElement::parity_op());
    let want = nalgebra::Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0));
    r.at_most("parity.kappa_parity", "kappa~(P~) is the spatial reflection exactly", (pk.0 - want).abs().max(), 0.0);
    let eta = [1.0, -1.0, -1.0, -1.0];
    let mut cliff = 0.0_f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let mut e = [0.0; 4];
            e[mu] = 1.0;
            let mut f = [0.0; 4];
            f[nu] = 1.0;
            let (gm, gn) = (gamma_map(&FourVector(e)), gamma_map(&FourVector(f)));
            let want = if mu == nu { 2.0 * eta[mu] } else { 0.0 };
            cliff = cliff.max(cmax(&(gm * gn + gn * gm - Mat4::identity() * c(want))));
        }
    }
    r.at_most("parity.clifford", "gamma(x) gamma(y) + gamma(y) gamma(x) = 2 <x, y>", cliff, tol);
    check(r, "parity.helicity_flip", "eta_bar_s(R B R^-1) = eta_{-s}(B) and R p0 = P p0", tol, || {
        let mut worst = 0.0_f64;
        for _ in 0..cfg.samples {
            let k = random_little(&mut g, 1.5);
            for two_s in -4..=4 {
                worst = worst.max(helicity_flip_check(Helicity::from_twice(two_s), &k)?);
            }
        }
        Ok(worst)
    });
    let kt = max_of((0..cfg.samples).map(|_| {
        let a = ExtendedElement { core: random_sl2c(&mut g, 1.0), parity: g.random() };
        let b = ExtendedElement { core: random_sl2c(&mut g, 1.0), parity: g.random() };
        let lhs = kappa_tilde(&a.mul(&b));
        lhs.dist(&kappa_tilde(&a).mul(&kappa_tilde(&b))) / (1.0 + lhs.0.abs().max())
    }));
    r.at_most("parity.kappa_tilde", "kappa~ is a homomorphism", kt, cfg.tolerance("doubled_action"));
    let s = Helicity::from_twice(3);
    let dtol = cfg.tolerance("doubled_action");
    check(r, "parity.doubled_group_law", "doubled action respects the group law", dtol, || {
        let mut worst = 0.0_f64;
        for _ in 0..cfg.samples / 10 {
            let (g1, g2) = (random_extended(&mut g), random_extended(&mut g));
            let x = random_fiber_pair(&mut g)?;
            let lhs = doubled_fiber_action(s, &g1.mul(&g2), &x)?;
            let rhs = doubled_fiber_action(s, &g1, &doubled_fiber_action(s, &g2, &x)?)?;
            worst = worst.max(fiber_pair_distance(&lhs, &rhs));
        }
        Ok(worst)
    });
    check(r, "parity.mixed_product", "(a, A)(0, P~)(b, B) = (a + P kappa(A^dagger^-1) b, Phi(A) P~ Phi(B)) acting on fibers", dtol, || {
        let p_op = ExtendedPoincare { a: FourVector::new(0.0, 0.0, 0.0, 0.0), g: ExtendedElement::parity_op() };
        let mut worst = 0.0_f64;
        for _ in 0..cfg.samples / 10 {
            let (a, l) = (random_four(&mut g), random_sl2c(&mut g, 1.0));
            let (b, m) = (random_four(&mut g), random_sl2c(&mut g, 1.0));
            let left = ExtendedPoincare { a, g: ExtendedElement::proper(l) };
            let right = ExtendedPoincare { a: b, g: ExtendedElement::proper(m) };
            let closed = ExtendedPoincare {
                a: a.add(&kappa(&l.dagger_inverse()).apply(&b).parity()),
                g: ExtendedElement { core: l.dagger_inverse().mul(&m), parity: true },
            };
            let x = random_fiber_pair(&mut g)?;
            let stepwise = doubled_fiber_action(s, &left, &doubled_fiber_action(s, &p_op, &doubled_fiber_action(s, &right, &x)?)?)?;
            let direct = doubled_fiber_action(s, &closed, &x)?;
            let composed = doubled_fiber_action(s, &left.mul(&p_op).mul(&right), &x)?;
            worst = worst.max(fiber_pair_distance(&stepwise, &direct)).max(fiber_pair_distance(&composed, &direct));
        }
        Ok(worst)
    });
}
