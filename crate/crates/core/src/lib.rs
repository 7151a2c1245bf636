//! Majorization, power majorization and trumping (catalytic majorization)
//! between non-negative vectors.
//!
//! Relation checks return a three-valued [`Verdict`]: exact checks never
//! report `Inconclusive`, while the checks that quantify over every real
//! parameter `r` report it when the numerical margin is too small.

pub mod catalysis;
pub mod error;
pub mod families;
pub mod functionals;
pub mod geometry;
pub mod optimize;
pub mod relations;
pub mod scan;
pub mod vectors;
pub mod verdict;

pub use catalysis::{Catalyst, CatalystSearchReport, SearchConfig, WeakMode};
pub use error::{Error, Result};
pub use families::{BennettPair, FlipPattern, QuadratureCase};
pub use functionals::{ExtendedReal, ScanReport, Sign, TailSigns};
pub use geometry::{ConvexDecomposition, DecompositionTerm, ExtremePointReport};
pub use relations::{
    CertificateReport, MajorizationVerdict, PowerRoute, PowerVerdict, TrumpReport, TrumpRoute,
};
pub use scan::ScanConfig;
pub use vectors::{DVector, ProbVector};
pub use verdict::{Outcome, Relation, Summary, Verdict, Witness};
