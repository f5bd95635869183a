//! Wave-packet field studies: lift a helicity profile into the perception
//! bundle, synthesize the spacetime field, and measure how well the field
//! equations and the gauge law hold on finite-difference grids.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graviton::{self, build_graviton_model, synthesize_gauge_vector, synthesize_perturbation, tensor, tensor_conditions};
use crate::linalg::CVec;
use crate::mass_shell::{build_grid, AngularSpec, MomentumPoint, RadialSpec, ShellGrid};
use crate::perception::{lift_section, PerceptionModel, PerceptionWaveFunction};
use crate::photon::{self, build_photon_model, contract, gauge_line, pde_residuals, synthesize_gauge_scalar, synthesize_potential, transversality_check};
use crate::spacetime::{convergence_orders, SpacetimeGrid, Synthesizer};
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Particle {
    Photon,
    Graviton,
}

impl FromStr for Particle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "photon" => Ok(Particle::Photon),
            "graviton" => Ok(Particle::Graviton),
            _ => Err(Error::Model(format!("no field study for `{}`", s.escape_debug()))),
        }
    }
}

impl fmt::Display for Particle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Particle::Photon => "photon",
            Particle::Graviton => "graviton",
        })
    }
}

impl Particle {
    pub fn model(&self) -> PerceptionModel {
        match self {
            Particle::Photon => build_photon_model(),
            Particle::Graviton => build_graviton_model(),
        }
    }
}

/// Small momentum grid for field synthesis: |p| in [0.5, 2].
pub fn field_momenta() -> Result<ShellGrid> {
    build_grid(&RadialSpec { nodes: 4, r_min: 0.5, r_max: 2.0 }, &AngularSpec::Spiral { points: 24 })
}

fn envelope(p: &MomentumPoint) -> f64 {
    (-(p.energy() - 1.2).powi(2) / 0.3).exp()
}

fn helicity_profile(p: &MomentumPoint) -> [C64; 2] {
    let e = envelope(p);
    let x = p.direction()[0];
    [C64::new(e, 0.0), C64::new(0.0, 0.5 * e * (1.0 + x))]
}

/// Scalar gauge profile f(p) for the photon shift f p.
fn gauge_scalar(p: &MomentumPoint) -> C64 {
    let q = p.spatial();
    C64::new(0.4, 0.3 * q[0]) * (-0.5 * p.energy().powi(2)).exp()
}

/// Vector gauge profile a(p) for the graviton shift p (x) a + a (x) p.
/// The time component is fixed so that p_mu a^mu = 0, which keeps the
/// shifted section traceless and transverse.
fn gauge_vector(p: &MomentumPoint) -> CVec {
    let q = p.spatial();
    let d = (-0.5 * p.energy().powi(2)).exp();
    let mut a = CVec::from_vec(vec![
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.3 * d),
        C64::new(0.1 * q[2] * d, 0.0),
        C64::new(-0.2 * d, 0.1 * q[0] * d),
    ]);
    a[0] = -contract(&p.four(), &a) / p.energy();
    a
}

/// The packet and the gauge-shifted difference section.
pub struct Packet {
    pub particle: Particle,
    pub model: PerceptionModel,
    pub psi: PerceptionWaveFunction,
    /// psi' - psi, lying in the gauge fiber at every node.
    pub shift: PerceptionWaveFunction,
    gauge: Vec<CVec>,
}

impl Packet {
    pub fn new(particle: Particle, momenta: &ShellGrid) -> Result<Self> {
        let model = particle.model();
        let psi = lift_section(&model, momenta, helicity_profile, |_| Vec::new())?;
        let (shift, gauge): (Vec<CVec>, Vec<CVec>) = momenta
            .nodes
            .iter()
            .map(|p| match particle {
                Particle::Photon => {
                    let f = gauge_scalar(p);
                    (gauge_line(p) * f, CVec::from_vec(vec![f]))
                }
                Particle::Graviton => {
                    let a = gauge_vector(p);
                    let pv = gauge_line(p);
                    (tensor(&pv, &a) + tensor(&a, &pv), a)
                }
            })
            .unzip();
        let shift = PerceptionWaveFunction::new(momenta.clone(), shift)?;
        Ok(Packet { particle, model, psi, shift, gauge })
    }

    /// Worst momentum-space constraint over the nodes of psi and psi'.
    pub fn momentum_constraints(&self) -> f64 {
        let one = |p: &MomentumPoint, z: &CVec| match self.particle {
            Particle::Photon => transversality_check(p, z),
            Particle::Graviton => tensor_conditions(p, z).worst(),
        };
        self.psi
            .grid
            .nodes
            .iter()
            .zip(self.psi.values.iter().zip(&self.shift.values))
            .map(|(p, (z, s))| one(p, z).max(one(p, &(z + s))))
            .fold(0.0, f64::max)
    }

    pub fn field(&self, grid: SpacetimeGrid) -> Result<Synthesizer> {
        match self.particle {
            Particle::Photon => synthesize_potential(&self.psi, grid),
            Particle::Graviton => synthesize_perturbation(&self.psi, grid),
        }
    }

    /// Field of psi' - psi. Synthesis is linear, so this is the difference
    /// of the two fields without holding both in memory.
    pub fn shift_field(&self, grid: SpacetimeGrid) -> Result<Synthesizer> {
        Synthesizer::new(&self.shift.grid, &self.shift.values, grid)
    }

    pub fn gauge_field(&self, grid: SpacetimeGrid) -> Result<Synthesizer> {
        match self.particle {
            Particle::Photon => {
                let f: Vec<C64> = self.gauge.iter().map(|v| v[0]).collect();
                synthesize_gauge_scalar(&self.psi.grid, &f, grid)
            }
            Particle::Graviton => synthesize_gauge_vector(&self.psi.grid, &self.gauge, grid),
        }
    }
}

/// Residuals relative to the field's peak magnitude.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct FieldResiduals {
    pub h: f64,
    /// Wave operator.
    pub wave: f64,
    /// Lorenz condition or tensor divergence.
    pub divergence: f64,
    /// Trace and symmetry; identically zero for the photon.
    pub algebraic: f64,
    /// Gauge-shifted field minus the (symmetrized) gradient.
    pub gauge: f64,
}

pub fn field_residuals(packet: &Packet, grid: SpacetimeGrid) -> Result<FieldResiduals> {
    let field = packet.field(grid)?;
    let (wave, divergence, algebraic) = match packet.particle {
        Particle::Photon => {
            let r = pde_residuals(&field);
            (r.wave, r.lorenz, 0.0)
        }
        Particle::Graviton => {
            let r = graviton::tt_residuals(&field);
            (r.wave, r.divergence, r.trace.max(r.symmetry))
        }
    };
    let diff = packet.shift_field(grid)?;
    let g = packet.gauge_field(grid)?;
    let gauge = match packet.particle {
        Particle::Photon => photon::gauge_gradient_defect(&diff, &g)?,
        Particle::Graviton => graviton::gauge_gradient_defect(&diff, &g)?,
    };
    Ok(FieldResiduals { h: grid.h, wave, divergence, algebraic, gauge })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub steps: Vec<FieldResiduals>,
    pub wave_orders: Vec<f64>,
    pub divergence_orders: Vec<f64>,
    pub gauge_orders: Vec<f64>,
}

impl ConvergenceStudy {
    pub fn min_order(&self) -> f64 {
        self.wave_orders.iter().chain(&self.divergence_orders).chain(&self.gauge_orders).fold(f64::INFINITY, |m, o| m.min(*o))
    }

    /// Smallest shrink factor of any residual over one halving.
    pub fn min_ratio(&self) -> f64 {
        self.min_order().exp2()
    }
}

/// Residuals on an n^4 grid around the origin for each spacing; the
/// spacings should halve so the observed orders are meaningful.
pub fn convergence_study(packet: &Packet, n: usize, spacings: &[f64]) -> Result<ConvergenceStudy> {
    let steps = spacings.iter().map(|&h| field_residuals(packet, SpacetimeGrid { n, h })).collect::<Result<Vec<_>>>()?;
    let col = |f: fn(&FieldResiduals) -> f64| convergence_orders(&steps.iter().map(f).collect::<Vec<_>>());
    Ok(ConvergenceStudy {
        wave_orders: col(|r| r.wave),
        divergence_orders: col(|r| r.divergence),
        gauge_orders: col(|r| r.gauge),
        steps,
    })
}

/// Spacings used by the default convergence study: three halvings.
pub const STUDY_SPACINGS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];
pub const STUDY_POINTS: usize = 5;
