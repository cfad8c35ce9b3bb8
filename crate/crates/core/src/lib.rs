//! Exact computation of Reidemeister torsion for representations of knot
//! and 3-manifold groups that factor through a finite group, together with
//! the Dehn surgery formula and the closed-form torsion of Seifert
//! manifolds over the 2-sphere. All arithmetic is exact: big rationals,
//! cyclotomic fields `Q(zeta_p)` and Laurent polynomial fraction fields.

pub mod algebra;
pub mod chain;
pub mod error;
pub mod groups;
pub mod knot;
pub mod seifert;
pub mod surgery;

pub use error::Error;
