//! Two-sided coefficient sequences and the quantities attached to them:
//! Paley-type functionals, net-space and Lorentz norms, monotonicity class
//! diagnostics, and `L_p` norms of the trigonometric polynomials they define.
//!
//! All types are immutable after construction and every operation is a pure
//! function, so everything here may be shared freely across threads.

pub mod classes;
pub mod error;
pub mod functionals;
pub mod generators;
pub mod io;
pub mod netspace;
pub mod profile;
pub mod rearrange;
pub mod report;
pub mod sequence;
pub mod sum;
pub mod trig;

pub use classes::{ClassDiagnostic, ClassName, Verdict};
pub use error::{Error, Result};
pub use functionals::Exponent;
pub use generators::{make_example, make_family, ExampleName, FamilyKind, FamilySpec};
pub use netspace::{NetAverages, NetIndex};
pub use profile::DyadicProfile;
pub use rearrange::{symmetric_rearrangement, RearrangedSequence};
pub use report::NormReport;
pub use sequence::TwoSidedSequence;
pub use trig::{LpNorm, Multiplier, QuadratureSpec};

pub use num_complex::Complex64;
