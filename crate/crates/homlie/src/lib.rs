//! Exact computer algebra for finite-dimensional multiplicative Hom-Lie
//! algebras over prime fields GF(p).
//!
//! The crate decides and certifies the structural questions around twisted
//! p-th-power maps: axiom checking, synthesis and enumeration of
//! p-structures, restrictability, transport along morphisms, bilinear forms,
//! and p-envelopes with minimization and decomposition. Brute-force
//! re-implementations of every decision live in [`oracle`] together with a
//! property suite that exercises each structural result on generated
//! corpora.
//!
//! All arithmetic is exact over GF(p); all values are immutable and all
//! operations pure.

pub mod algebra;
pub mod envelopes;
pub mod fixtures;
pub mod gfp;
pub mod morphisms;
pub mod oracle;
pub mod restricted;
pub mod subspace;

pub use algebra::{AdMode, AxiomReport, CentralizerMode, HomLieAlgebra, SeriesReport};
pub use envelopes::{Decomposition, EnvelopeReport, PEnvelope};
pub use gfp::{MatFp, Scalar, VecFp};
pub use morphisms::{BilinearForm, HomMorphism};
pub use restricted::{PStructure, RestrictabilityCertificate, VerifyMode};
pub use subspace::Subspace;
