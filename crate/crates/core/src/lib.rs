//! Numerical diagnostics for Carleson embeddings of Hardy and Bergman spaces with closed range.
//!
//! An embedding `H^p -> L^q(mu)` has closed range exactly when `p = q` and `mu` is a weighted
//! interpolating sequence with weights comparable to `1 - |z_n|`. For the Bergman space
//! `A^p` the measure may alternatively be a sampling measure, with weights compared against
//! `(1 - |z_n|)^2` in the interpolating case. This crate turns those characterizations into
//! computations on finite data:
//!
//! * [`disk`]: points of the disk, pseudo-hyperbolic distance, Blaschke and Horowitz products.
//! * [`measures`]: discrete and gridded measures and dyadic Carleson constants.
//! * [`sequences`]: test sequences and the interpolation constant `delta`.
//! * [`spectral`]: kernel Gram matrices, least-norm interpolation constants, section spectra.
//! * [`diagnostics`]: closed-range verdicts with an evidence trail.
//! * [`io`]: JSON and CSV formats.
//!
//! ```
//! use closedrange::diagnostics::{diagnose_hardy, Status, Thresholds};
//! use closedrange::measures::{build_mu_z, Measure};
//! use closedrange::sequences::gen_radial;
//!
//! let z = gen_radial(0.5, 30)?;
//! let mu = Measure::from(build_mu_z(&z)?);
//! let verdict = diagnose_hardy(&mu, 2.0, 2.0, &Thresholds::default())?;
//! assert_eq!(verdict.status, Status::Closed);
//! # Ok::<(), closedrange::error::Error>(())
//! ```

pub mod diagnostics;
pub mod disk;
pub mod error;
pub mod io;
pub mod measures;
pub mod quadrature;
pub mod sequences;
pub mod space;
pub mod spectral;

pub use disk::DiskPoint;
pub use error::{Error, Result};
pub use measures::{DiscreteMeasure, GridMeasure, Measure};
pub use sequences::PointSequence;
pub use space::Space;

// The guide's code listings run as doctests; one module per chapter keeps failures traceable.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/diagnostics.md")]
    mod diagnostics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
