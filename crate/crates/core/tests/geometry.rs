use massless::boosting::{
    apply_boosting_rep, helicity_reduced_density, log_negativity, two_particle_reduced, wigner, BoostingWaveFunction, TwoParticleState,
};
use massless::chern::{chern_form_eval, chern_number, chern_refinement, zeta_eval, zeta_pullback, zeta_total, CapSection, MainSection, SphereMesh};
use massless::little_group::{reference_momentum, Helicity};
use massless::lorentz::{boost, random_sl2c, random_unit_vector, FourVector};
use massless::mass_shell::{build_grid, AngularSpec, MomentumPoint, RadialSpec};
use massless::parity::{
    doubled_fiber_action, fiber_pair_distance, helicity_flip_check, kappa_tilde, ExtendedElement, ExtendedPoincare,
};
use massless::perception::random_little;
use massless::C64;
use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tangent_pair(x: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let a = if x[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
    let cross = |u: [f64; 3], v: [f64; 3]| [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    let u = cross(x, a);
    let v = cross(x, u);
    (u, v)
}

#[test]
fn zeta_integrates_to_one() {
    for level in 0..3 {
        let t = zeta_total(&SphereMesh::new(level, 0.4).unwrap()).unwrap();
        assert!((t - 1.0).abs() < 1e-6, "{t}");
    }
}

#[test]
fn pulled_back_chern_form_equals_zeta_on_both_patches() {
    let mut r = ChaCha8Rng::seed_from_u64(1);
    let half = Helicity::from_twice(-1);
    let cap = CapSection::default();
    for _ in 0..200 {
        let x = random_unit_vector(&mut r);
        let (u, v) = tangent_pair(x);
        let z = zeta_eval(x, u, v);
        if x[2] > -0.99 {
            assert!((chern_form_eval(half, &MainSection, x, u, v).unwrap() - z).abs() < 1e-10);
        }
        if x[2] < 0.99 {
            assert!((chern_form_eval(half, &cap, x, u, v).unwrap() - z).abs() < 1e-10);
        }
    }
}

#[test]
fn chern_numbers_are_minus_two_s() {
    for two_s in -6..=6 {
        let s = Helicity::from_twice(two_s);
        let v = chern_refinement(s, 2, 0.4).unwrap();
        let last = *v.last().unwrap();
        assert!((last + two_s as f64).abs() < 1e-4, "2s={two_s} {v:?}");
        let other = chern_number(s, &SphereMesh::new(1, 0.2).unwrap()).unwrap();
        assert!((other - last).abs() < 2e-3);
    }
}

#[test]
fn zeta_is_lorentz_invariant_pointwise() {
    let mut r = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let a = random_sl2c(&mut r, 1.0);
        let p: [f64; 3] = std::array::from_fn(|_| r.random::<f64>() * 2.0 - 1.0);
        let u: [f64; 3] = std::array::from_fn(|_| r.random::<f64>() - 0.5);
        let v: [f64; 3] = std::array::from_fn(|_| r.random::<f64>() - 0.5);
        let d = zeta_pullback(&a, p, u, v) - zeta_eval(p, u, v);
        assert!(d.abs() < 1e-10 * (1.0 + zeta_eval(p, u, v).abs()), "{d}");
    }
}

#[test]
fn helicity_flip() {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let k = random_little(&mut r, 1.5);
        for two_s in -4..=4 {
            assert!(helicity_flip_check(Helicity::from_twice(two_s), &k).unwrap() < 1e-12);
        }
    }
}

#[test]
fn kappa_tilde_is_a_homomorphism_into_o13() {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let eta = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0));
    for _ in 0..100 {
        let g = ExtendedElement { core: random_sl2c(&mut r, 1.0), parity: r.random() };
        let h = ExtendedElement { core: random_sl2c(&mut r, 1.0), parity: r.random() };
        let lhs = kappa_tilde(&g.mul(&h));
        let rhs = kappa_tilde(&g).mul(&kappa_tilde(&h));
        assert!((lhs.0 - rhs.0).abs().max() < 1e-11 * (1.0 + lhs.0.abs().max()));
        let gm = g.matrix() * h.matrix();
        assert!(massless::linalg::cmax(&(gm - g.mul(&h).matrix())) < 1e-12 * (1.0 + massless::linalg::cmax(&gm)));
        let k = kappa_tilde(&g).0;
        assert!((k.transpose() * eta * k - eta).abs().max() < 1e-11 * k.abs().max().powi(2));
    }
}

#[test]
fn doubled_action_respects_the_group_law() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let s = Helicity::from_twice(3);
    let rand_point = |r: &mut ChaCha8Rng| {
        let v = random_unit_vector(r);
        MomentumPoint::lift([1.5 * v[0], 1.5 * v[1], 1.5 * v[2]]).unwrap()
    };
    for _ in 0..100 {
        let mk = |r: &mut ChaCha8Rng| ExtendedPoincare {
            a: FourVector::new(r.random(), r.random(), r.random(), r.random()),
            g: ExtendedElement { core: random_sl2c(r, 1.0), parity: r.random() },
        };
        let g1 = mk(&mut r);
        let g2 = mk(&mut r);
        let x = ((rand_point(&mut r), [C64::new(0.3, 0.1), C64::new(-0.2, 0.9)]), (rand_point(&mut r), [C64::new(1.0, 0.0), C64::new(0.0, 0.5)]));
        let lhs = doubled_fiber_action(s, &g1.mul(&g2), &x).unwrap();
        let rhs = doubled_fiber_action(s, &g1, &doubled_fiber_action(s, &g2, &x).unwrap()).unwrap();
        assert!(fiber_pair_distance(&lhs, &rhs) < 1e-9);
    }
}

fn gaussian_state(two_s_grid: usize) -> BoostingWaveFunction {
    let grid = build_grid(&RadialSpec { nodes: 10, r_min: 0.2, r_max: 4.0 }, &AngularSpec::Product { polar: two_s_grid, azimuthal: 2 * two_s_grid })
        .unwrap();
    BoostingWaveFunction::from_fn(grid, |p| {
        let q = p.spatial();
        let f = (-((q[0] - 0.5).powi(2) + q[1].powi(2) + (q[2] - 1.0).powi(2))).exp();
        let th = 0.8 * q[0];
        [C64::new(th.cos() * f, 0.0), C64::new(0.0, th.sin() * f)]
    })
}

#[test]
fn reduced_density_depends_on_frame_for_transverse_boost() {
    let psi = gaussian_state(16);
    let tau = helicity_reduced_density(&psi).unwrap();
    let s = Helicity::from_twice(2);
    let zero = FourVector::new(0.0, 0.0, 0.0, 0.0);
    let along_x = apply_boosting_rep(&zero, &boost(1, 1.0), s, &psi).unwrap();
    let tx = helicity_reduced_density(&along_x).unwrap();
    assert!((tau - tx).norm() > 0.01);
    // z-boosts act with trivial Wigner phase for this section
    let along_z = apply_boosting_rep(&zero, &boost(3, 1.0), s, &psi).unwrap();
    let tz = helicity_reduced_density(&along_z).unwrap();
    assert!((tau - tz).norm() < 1e-12);
}

#[test]
fn wigner_elements_are_little() {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let a = random_sl2c(&mut r, 1.0);
        let v = random_unit_vector(&mut r);
        let p = MomentumPoint::lift([2.0 * v[0], 2.0 * v[1], 2.0 * v[2]]).unwrap();
        let w = wigner(&a, &p).unwrap();
        let img = w.to_sl2c().act(&reference_momentum());
        assert!(img.sub(&reference_momentum()).norm_max() < 1e-10);
    }
}

#[test]
fn two_particle_bell_states() {
    let grid = build_grid(&RadialSpec { nodes: 3, r_min: 0.5, r_max: 2.0 }, &AngularSpec::Spiral { points: 12 }).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let n = grid.len();
    let f = |i: usize| (-(grid.nodes[i].energy() - 1.0).powi(2)).exp();
    let common: Vec<[C64; 4]> = (0..n * n)
        .map(|k| {
            let a = f(k / n) * f(k % n) * h;
            [C64::new(a, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(a, 0.0)]
        })
        .collect();
    let rho = two_particle_reduced(&TwoParticleState::new(grid.clone(), grid.clone(), common).unwrap()).unwrap();
    assert!((log_negativity(&rho).unwrap() - 1.0).abs() < 1e-12);
    let mut ev: Vec<f64> = rho.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    assert!((ev[0] - 1.0).abs() < 1e-12);

    // orthogonal profiles of equal norm give a classically correlated mixture
    let grid = build_grid(&RadialSpec { nodes: 3, r_min: 0.5, r_max: 2.0 }, &AngularSpec::Product { polar: 4, azimuthal: 8 }).unwrap();
    let n = grid.len();
    let a = |i: usize| f(0) * grid.nodes[i].direction()[0];
    let b = |i: usize| f(0) * grid.nodes[i].direction()[1];
    let mixed: Vec<[C64; 4]> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let z = C64::new(0.0, 0.0);
            [C64::new(a(i) * a(j), 0.0), z, z, C64::new(b(i) * b(j), 0.0)]
        })
        .collect();
    let rho = two_particle_reduced(&TwoParticleState::new(grid.clone(), grid, mixed).unwrap()).unwrap();
    let mut ev: Vec<f64> = rho.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    assert!((ev[0] - 0.5).abs() < 1e-12 && (ev[1] - 0.5).abs() < 1e-12 && ev[2].abs() < 1e-12);
    assert!(log_negativity(&rho).unwrap().abs() < 1e-12);
}

#[test]
fn werner_mixture_oracle() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v = [h, 0.0, 0.0, h];
    let rho = Matrix4::from_fn(|i, j| C64::new(0.5 * v[i] * v[j] + if i == j { 0.125 } else { 0.0 }, 0.0));
    // trace norm of the partial transpose by singular values: 1.25
    let pt = massless::boosting::partial_transpose_second(&rho);
    let tn: f64 = pt.svd(false, false).singular_values.iter().sum();
    assert!((tn - 1.25).abs() < 1e-12);
    assert!((log_negativity(&rho).unwrap() - 1.25f64.log2()).abs() < 1e-12);
}
