//! Numeric thresholds shared by the library, the suites and the tests.

/// det(A) = 1 check when constructing SL(2,C) elements.
pub const DET_TOL: f64 = 1e-12;
/// Lower-left entry and |z| - 1 for little-group membership.
pub const LITTLE_GROUP_TOL: f64 = 1e-10;
/// Smallest angle to the -z ray the standard section accepts.
pub const SINGULAR_ANGLE: f64 = 1e-9;
/// Below this |tr X^2| the exponential switches to its power series.
pub const EXP_SERIES_CUTOFF: f64 = 1e-8;
/// Relative singular value cut for numerical rank.
pub const RANK_REL: f64 = 1e-8;
/// Fiber membership (relative residual).
pub const FIBER_TOL: f64 = 1e-10;

/// Group-level identities: homomorphism, metric preservation, kernel.
pub const GROUP_IDENTITY: f64 = 1e-12;
/// Wigner element membership and helicity characters.
pub const WIGNER: f64 = 1e-10;
/// Quotient metric isometry and invariance.
pub const ISOMETRY: f64 = 1e-10;
/// Unitarity of the discrete representations.
pub const NORM_PRESERVATION: f64 = 1e-12;
/// Perception representation norm preservation.
pub const PERCEPTION_NORM: f64 = 1e-9;
/// Fiber projector agreement.
pub const PROJECTOR: f64 = 1e-9;
/// Momentum-space transversality and tracelessness.
pub const MOMENTUM_CONSTRAINT: f64 = 1e-12;
/// Parity identities.
pub const PARITY: f64 = 1e-12;
/// Group law for the doubled action.
pub const DOUBLED_ACTION: f64 = 1e-9;

/// Chern number distance to the nearest integer.
pub const CHERN_INTEGER: f64 = 1e-4;
/// Chern number stability under refinement and cap variation.
pub const CHERN_STABILITY: f64 = 2e-3;
/// Integral of the invariant two-form over the unit sphere.
pub const ZETA_TOTAL: f64 = 1e-6;
/// Pointwise agreement of the pulled-back Chern form with the invariant form.
pub const CHERN_FORM_POINTWISE: f64 = 1e-10;

/// Minimum convergence order of finite-difference residuals.
pub const MIN_CONVERGENCE_ORDER: f64 = 1.9;
/// Minimum residual shrink factor on one halving of h.
pub const MIN_HALVING_RATIO: f64 = 3.6;

/// Density matrix trace and Hermiticity.
pub const DENSITY: f64 = 1e-12;
/// Frame dependence of the reduced helicity density must exceed this.
pub const FRAME_DEPENDENCE: f64 = 0.01;
