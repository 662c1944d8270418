//! Radial solutions: shooting from the centre, closed-form profiles, and
//! Pohozaev-type functionals.

pub mod closed;
pub mod pohozaev;
pub mod profile;
pub mod shoot;
pub mod source;

pub use closed::{uk_family, verify_closed_form, ClosedForm, ResidualReport, UkFamily};
pub use pohozaev::{pohozaev_psi, psi_scan, rellich_pohozaev_residual, resample, sphere_area, PsiScan, RpResidual};
pub use profile::{Provenance, RadialProfile};
pub use shoot::{shoot, ShootOptions, ShootOutcome};
pub use source::Source;
