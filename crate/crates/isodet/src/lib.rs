//! Zeta-regularized determinants of planar Laplacians.
//!
//! Three pipelines meet in [`surgery`]: scattering phases (exact Bessel
//! series for discs in [`disc`], a combined-field Nyström solver for smooth
//! star-shaped obstacles in [`nystrom`]) feed regularized exterior heat
//! traces in [`heat`] and zeta determinants in [`zeta`]; the circle
//! Neumann-jump operator lives in [`jump`]; [`hadamard`] supplies the
//! regularized small-μ integrals that fix the additive constant. The `isodet`
//! binary exposes everything as subcommands.

pub mod analysis;
pub mod cache;
pub mod disc;
pub mod geometry;
pub mod hadamard;
pub mod heat;
pub mod jump;
pub mod phase;
pub mod report;
pub mod specfun;
pub mod zeta;

mod dd;

pub use geometry::ObstacleCurve;
pub use phase::PhaseTable;
