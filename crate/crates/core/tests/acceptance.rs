//! Acceptance criteria AC1-AC9 at their stated tolerances and sample sizes.
//! One PASS/FAIL line per criterion; the process exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::Instant;

use massless::boosting::{apply_boosting_rep, helicity_reduced_density, log_negativity, two_particle_reduced, wigner, TwoParticleState};
use massless::chern::{chern_number, chern_refinement, zeta_total, SphereMesh};
use massless::config::RunConfig;
use massless::fields::{convergence_study, field_momenta, field_residuals, Packet, Particle, STUDY_POINTS, STUDY_SPACINGS};
use massless::graviton::{gauge_subspace, tensor};
use massless::linalg::{c, cmax, from_real4, max_abs, numerical_rank, projector, CMat, CVec};
use massless::little_group::{reference_momentum, Helicity};
use massless::lorentz::{boost, kappa, random_c2, random_sl2c, random_unit_vector, FourVector, Sl2c};
use massless::mass_shell::{build_grid, AngularSpec, MomentumPoint, RadialSpec};
use massless::parity::{
    delta, doubled_fiber_action, fiber_pair_distance, gamma_map, helicity_flip_check, kappa_tilde, ExtendedElement, ExtendedPoincare, Mat4,
};
use massless::perception::{apply_perception_rep, build_model, fiber_at, h_inner, lift_section, primitive_isometry_check, random_little, ModelName};
use massless::photon::{four_to_cvec, gauge_line, polarization_unnormalized};
use massless::spacetime::SpacetimeGrid;
use massless::spin_tower::{gauge_dimension, lowering_expansion, sym_power_matrix};
use massless::suites::tau_packet;
use massless::{Result, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 1000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(0x5eed);
    r.set_stream(stream);
    r
}

fn random_point(g: &mut ChaCha8Rng) -> Result<MomentumPoint> {
    let v = random_unit_vector(g);
    let e = 0.5 + 3.0 * g.random::<f64>();
    MomentumPoint::lift([e * v[0], e * v[1], e * v[2]])
}

fn random_four(g: &mut ChaCha8Rng) -> FourVector {
    FourVector::new(g.random::<f64>() - 0.5, g.random::<f64>() - 0.5, g.random::<f64>() - 0.5, g.random::<f64>() - 0.5)
}

fn ac1() -> Result<Outcome> {
    let start = Instant::now();
    let mut g = rng(1);
    let (mut metric, mut kernel, mut hom) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..SAMPLES {
        let (a, b) = (random_sl2c(&mut g, 1.0), random_sl2c(&mut g, 1.0));
        let ka = kappa(&a);
        metric = metric.max(ka.metric_defect());
        kernel = kernel.max(kappa(&a.neg()).dist(&ka));
        hom = hom.max(kappa(&a.mul(&b)).dist(&ka.mul(&kappa(&b))));
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(outcome(
        metric <= 1e-10 && kernel == 0.0 && hom <= 1e-10 && secs < 1.0,
        format!("metric {metric:.1e}, kernel {kernel:.1e}, homomorphism {hom:.1e}, {secs:.3}s"),
    ))
}

fn ac2() -> Result<Outcome> {
    let start = Instant::now();
    let mut worst_int = 0.0_f64;
    let mut worst_stab = 0.0_f64;
    for two_s in [-2, -1, 0, 1, 2, 4] {
        let s = Helicity::from_twice(two_s);
        let levels = chern_refinement(s, 3, 0.4)?;
        let c1 = levels[2];
        let other = chern_number(s, &SphereMesh::new(2, 0.2)?)?;
        worst_int = worst_int.max((c1 + two_s as f64).abs());
        worst_stab = worst_stab.max((c1 - levels[1]).abs()).max((c1 - other).abs());
    }
    let zeta = (zeta_total(&SphereMesh::new(2, 0.4)?)? - 1.0).abs();
    let secs = start.elapsed().as_secs_f64();
    Ok(outcome(
        worst_int <= 1e-3 && worst_stab <= 2e-3 && zeta <= 1e-6 && secs < 60.0,
        format!("|c1 + 2s| {worst_int:.1e}, refinement/cap {worst_stab:.1e}, |int zeta - 1| {zeta:.1e}, {secs:.2}s"),
    ))
}

fn ac3() -> Result<Outcome> {
    let mut g = rng(3);
    let p0 = four_to_cvec(&reference_momentum());
    let e = polarization_unnormalized(true);
    let ee = tensor(&e, &e);
    let (mut ph, mut gr, mut bin) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..SAMPLES {
        let k = random_little(&mut g, 2.0);
        let kap = from_real4(&kappa(&k.to_sl2c()).0);
        let bz = k.b.conj() * k.z;
        let rhs = &e * (k.z * k.z) + &p0 * bz;
        ph = ph.max((&kap * &e - &rhs).norm() / (1.0 + rhs.norm()));
        let rhs = &ee * k.z.powi(4) + (tensor(&p0, &e) + tensor(&e, &p0)) * (bz * k.z * k.z) + tensor(&p0, &p0) * (bz * bz);
        gr = gr.max((kap.kronecker(&kap) * &ee - &rhs).norm() / (1.0 + rhs.norm()));
        for two_s in 1..=6usize {
            let direct: CVec = sym_power_matrix(two_s, &k.to_sl2c()).column(two_s).into_owned();
            let series = lowering_expansion(two_s, &k);
            bin = bin.max((direct - &series).norm() / (1.0 + series.norm()));
        }
    }
    Ok(outcome(ph <= 1e-12 && gr <= 1e-12 && bin <= 1e-12, format!("photon {ph:.1e}, graviton {gr:.1e}, binomial {bin:.1e} (relative)")))
}

fn ac4() -> Result<Outcome> {
    let mut g = rng(4);
    let mut worst = 0.0_f64;
    let mut names = vec![ModelName::Photon, ModelName::Graviton];
    names.extend((1..=6).map(ModelName::Spin));
    for name in names {
        let m = build_model(name);
        let samples: Vec<(Sl2c, [C64; 2], [C64; 2])> = (0..SAMPLES).map(|_| (random_sl2c(&mut g, 1.0), random_c2(&mut g), random_c2(&mut g))).collect();
        worst = worst.max(primitive_isometry_check(&m, &samples)?);
    }
    Ok(outcome(worst < 1e-9, format!("worst isometry defect {worst:.1e} over photon, graviton, 2s = 1..6")))
}

fn ac5() -> Result<Outcome> {
    let mut g = rng(5);
    let mut rank_ok = true;
    let mut proj = 0.0_f64;
    for two_s in 1..=6 {
        let m = build_model(ModelName::Spin(two_s));
        for _ in 0..10 {
            let p = random_point(&mut g)?;
            rank_ok &= numerical_rank(&fiber_at(&m, &p)?.d_basis) == gauge_dimension(two_s);
        }
    }
    let (mp, mg) = (build_model(ModelName::Photon), build_model(ModelName::Graviton));
    for _ in 0..10 {
        let p = random_point(&mut g)?;
        let line = CMat::from_columns(&[gauge_line(&p)]);
        proj = proj.max(max_abs(&(projector(&fiber_at(&mp, &p)?.d_basis) - projector(&line))));
        proj = proj.max(max_abs(&(projector(&fiber_at(&mg, &p)?.d_basis) - projector(&gauge_subspace(&p)?))));
    }
    Ok(outcome(rank_ok && proj <= 1e-9, format!("ranks 2s - 1 for 2s = 1..6: {rank_ok}, projector agreement {proj:.1e}")))
}

fn ac6() -> Result<Outcome> {
    let mut g = rng(6);
    let mut cocycle = 0.0_f64;
    for _ in 0..SAMPLES {
        let (a1, a2) = (random_sl2c(&mut g, 1.0), random_sl2c(&mut g, 1.0));
        let p = random_point(&mut g)?;
        let lhs = wigner(&a1.mul(&a2), &p)?;
        let rhs = wigner(&a1, &p.transform(&a2)?)?.mul(&wigner(&a2, &p)?);
        cocycle = cocycle.max(lhs.to_sl2c().dist(&rhs.to_sl2c()));
    }
    let psi = tau_packet(build_grid(&RadialSpec::default(), &AngularSpec::default())?);
    let s = Helicity::from_twice(2);
    let (mut norm, mut law) = (0.0_f64, 0.0_f64);
    let n0 = psi.norm_sqr();
    for _ in 0..5 {
        let (a1, l1, a2, l2) = (random_four(&mut g), random_sl2c(&mut g, 1.0), random_four(&mut g), random_sl2c(&mut g, 1.0));
        let once = apply_boosting_rep(&a2, &l2, s, &psi)?;
        norm = norm.max((once.norm_sqr() - n0).abs() / n0);
        let twice = apply_boosting_rep(&a1, &l1, s, &once)?;
        let direct = apply_boosting_rep(&a1.add(&kappa(&l1).apply(&a2)), &l1.mul(&l2), s, &psi)?;
        for (x, y) in twice.values.iter().zip(&direct.values) {
            law = law.max((x[0] - y[0]).norm()).max((x[1] - y[1]).norm());
        }
    }
    let m = build_model(ModelName::Graviton);
    let grid = build_grid(&RadialSpec { nodes: 3, r_min: 0.5, r_max: 3.0 }, &AngularSpec::Spiral { points: 30 })?;
    let phi = lift_section(&m, &grid, |p| [c((-p.energy()).exp()), C64::new(0.0, 0.3)], |p| vec![c(p.spatial()[2]); 3])?;
    let h0 = h_inner(&m, &phi, &phi)?.re;
    for _ in 0..3 {
        let (a1, l1, a2, l2) = (random_four(&mut g), random_sl2c(&mut g, 1.0), random_four(&mut g), random_sl2c(&mut g, 1.0));
        let once = apply_perception_rep(&m, &a2, &l2, &phi)?;
        norm = norm.max((h_inner(&m, &once, &once)?.re - h0).abs() / h0);
        let twice = apply_perception_rep(&m, &a1, &l1, &once)?;
        let direct = apply_perception_rep(&m, &a1.add(&kappa(&l1).apply(&a2)), &l1.mul(&l2), &phi)?;
        for (x, y) in twice.values.iter().zip(&direct.values) {
            law = law.max((x - y).norm() / (1.0 + y.norm()));
        }
    }
    Ok(outcome(
        cocycle <= 1e-9 && norm <= 1e-12 && law <= 1e-9,
        format!("cocycle {cocycle:.1e}, norm drift {norm:.1e}, group law {law:.1e}"),
    ))
}

fn ac7() -> Result<Outcome> {
    let start = Instant::now();
    let momenta = field_momenta()?;
    let mut constraint = 0.0_f64;
    let mut order = f64::INFINITY;
    let mut finest_gauge = 0.0_f64;
    let mut full = 0.0_f64;
    for particle in [Particle::Photon, Particle::Graviton] {
        let pk = Packet::new(particle, &momenta)?;
        constraint = constraint.max(pk.momentum_constraints());
        let study = convergence_study(&pk, STUDY_POINTS, &STUDY_SPACINGS)?;
        order = order.min(study.min_order());
        for st in &study.steps {
            constraint = constraint.max(st.algebraic);
        }
        finest_gauge = finest_gauge.max(study.steps.last().map(|s| s.gauge).unwrap_or(f64::NAN));
        let fr = field_residuals(&pk, SpacetimeGrid::default())?;
        full = full.max(fr.wave).max(fr.divergence).max(fr.gauge);
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(outcome(
        constraint <= 1e-12 && order >= 1.9 && finest_gauge <= 1e-3 && full <= 0.05 && secs < 120.0,
        format!(
            "momentum constraints {constraint:.1e}, min order {order:.3}, gauge defect at h=0.025 {finest_gauge:.1e}, 32^4 residuals {full:.1e}, {secs:.1}s"
        ),
    ))
}

fn ac8() -> Result<Outcome> {
    let mut g = rng(8);
    let mut invol = 0.0_f64;
    for _ in 0..SAMPLES {
        let (a, l) = (random_four(&mut g), random_sl2c(&mut g, 1.0));
        let (b, m) = delta(&a, &l);
        let (a2, l2) = delta(&b, &m);
        invol = invol.max(a2.sub(&a).norm_max()).max(l2.dist(&l));
    }
    let want = nalgebra::Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0));
    let kp = (kappa_tilde(&ExtendedElement::parity_op()).0 - want).abs().max();
    let eta = [1.0, -1.0, -1.0, -1.0];
    let mut cliff = 0.0_f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let (mut e, mut f) = ([0.0; 4], [0.0; 4]);
            e[mu] = 1.0;
            f[nu] = 1.0;
            let (gm, gn) = (gamma_map(&FourVector(e)), gamma_map(&FourVector(f)));
            let w = if mu == nu { 2.0 * eta[mu] } else { 0.0 };
            cliff = cliff.max(cmax(&(gm * gn + gn * gm - Mat4::identity() * c(w))));
        }
    }
    let mut flip = 0.0_f64;
    for _ in 0..SAMPLES {
        let k = random_little(&mut g, 1.5);
        for two_s in -4..=4 {
            flip = flip.max(helicity_flip_check(Helicity::from_twice(two_s), &k)?);
        }
    }
    let s = Helicity::from_twice(1);
    let p_op = ExtendedPoincare { a: FourVector::new(0.0, 0.0, 0.0, 0.0), g: ExtendedElement::parity_op() };
    let mut mixed = 0.0_f64;
    for _ in 0..100 {
        let (a, l, b, m) = (random_four(&mut g), random_sl2c(&mut g, 1.0), random_four(&mut g), random_sl2c(&mut g, 1.0));
        let left = ExtendedPoincare { a, g: ExtendedElement::proper(l) };
        let right = ExtendedPoincare { a: b, g: ExtendedElement::proper(m) };
        let closed = ExtendedPoincare {
            a: a.add(&kappa(&l.dagger_inverse()).apply(&b).parity()),
            g: ExtendedElement { core: l.dagger_inverse().mul(&m), parity: true },
        };
        let x = ((random_point(&mut g)?, random_c2(&mut g)), (random_point(&mut g)?, random_c2(&mut g)));
        let stepwise = doubled_fiber_action(s, &left, &doubled_fiber_action(s, &p_op, &doubled_fiber_action(s, &right, &x)?)?)?;
        mixed = mixed.max(fiber_pair_distance(&stepwise, &doubled_fiber_action(s, &closed, &x)?));
    }
    Ok(outcome(
        invol == 0.0 && kp == 0.0 && cliff <= 1e-12 && flip <= 1e-12 && mixed <= 1e-9,
        format!("delta^2 {invol:.1e}, kappa~(P~) {kp:.1e}, clifford {cliff:.1e}, helicity flip {flip:.1e}, mixed product {mixed:.1e}"),
    ))
}

fn ac9() -> Result<Outcome> {
    let grid = build_grid(&RadialSpec { nodes: 3, r_min: 0.5, r_max: 2.0 }, &AngularSpec::Spiral { points: 12 })?;
    let n = grid.len();
    let f = |i: usize| (-(grid.nodes[i].energy() - 1.0).powi(2)).exp();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0);
    let bell: Vec<[C64; 4]> = (0..n * n).map(|k| [c(h * f(k / n) * f(k % n)), z, z, c(h * f(k / n) * f(k % n))]).collect();
    let ln_bell = log_negativity(&two_particle_reduced(&TwoParticleState::new(grid.clone(), grid.clone(), bell)?)?)?;
    let (u, v) = ([C64::new(0.6, 0.0), C64::new(0.0, 0.8)], [c(0.28), c(0.96)]);
    let prod: Vec<[C64; 4]> = (0..n * n)
        .map(|k| {
            let a = c(f(k / n) * f(k % n));
            [u[0] * v[0] * a, u[0] * v[1] * a, u[1] * v[0] * a, u[1] * v[1] * a]
        })
        .collect();
    let ln_prod = log_negativity(&two_particle_reduced(&TwoParticleState::new(grid.clone(), grid, prod)?)?)?;
    let cfg = RunConfig::default();
    let psi = tau_packet(build_grid(&cfg.radial, &cfg.angular)?);
    let tau = helicity_reduced_density(&psi)?;
    let moved = helicity_reduced_density(&apply_boosting_rep(&FourVector::new(0.0, 0.0, 0.0, 0.0), &boost(1, 1.0), Helicity::from_twice(2), &psi)?)?;
    let dist = (tau - moved).norm();
    Ok(outcome(
        (ln_bell - 1.0).abs() <= 1e-10 && ln_prod.abs() <= 1e-12 && dist > 0.01,
        format!("Bell log negativity {ln_bell:.12}, product {ln_prod:.1e}, ||tau - tau'|| {dist:.4} (x-boost, rapidity 1)"),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("AC1 double cover", ac1),
        ("AC2 Chern numbers", ac2),
        ("AC3 structure constants", ac3),
        ("AC4 perception isometry", ac4),
        ("AC5 gauge dimension", ac5),
        ("AC6 cocycle and representation law", ac6),
        ("AC7 field equations", ac7),
        ("AC8 parity identities", ac8),
        ("AC9 entanglement and frame dependence", ac9),
    ];
    let mut all = true;
    for (name, f) in criteria {
        let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        all &= o.pass;
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
