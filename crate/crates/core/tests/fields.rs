use std::time::Instant;

use massless::fields::{convergence_study, field_momenta, field_residuals, Packet, Particle, STUDY_POINTS, STUDY_SPACINGS};
use massless::spacetime::SpacetimeGrid;

#[test]
fn momentum_space_constraints_hold_per_node() {
    let m = field_momenta().unwrap();
    for particle in [Particle::Photon, Particle::Graviton] {
        assert!(Packet::new(particle, &m).unwrap().momentum_constraints() < 1e-12);
    }
}

#[test]
fn residuals_converge_at_second_order() {
    let m = field_momenta().unwrap();
    for particle in [Particle::Photon, Particle::Graviton] {
        let pk = Packet::new(particle, &m).unwrap();
        let study = convergence_study(&pk, STUDY_POINTS, &STUDY_SPACINGS).unwrap();
        println!("{particle}: {study:?}");
        assert!(study.min_order() >= 1.9, "{particle} {study:?}");
        assert!(study.min_ratio() >= 3.6);
        for s in &study.steps {
            assert!(s.algebraic < 1e-12);
        }
        // at the finest spacing everything is small in absolute terms
        let last = study.steps.last().unwrap();
        assert!(last.wave < 1e-3 && last.divergence < 1e-3 && last.gauge < 1e-3, "{last:?}");
    }
}

#[test]
fn default_grid_photon_within_budget() {
    let m = field_momenta().unwrap();
    let pk = Packet::new(Particle::Photon, &m).unwrap();
    let start = Instant::now();
    let r = field_residuals(&pk, SpacetimeGrid::default()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    println!("32^4 photon: {r:?} in {secs:.2}s");
    assert!(secs < 120.0);
    assert!(r.wave < 0.05 && r.divergence < 0.05 && r.gauge < 0.05, "{r:?}");
}
