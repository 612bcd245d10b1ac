//! Certified computation of Sigma invariants via Novikov homology.
//!
//! A finite presentation is completed to a confluent rewriting system, its
//! group ring is built on normal forms, and vanishing of Novikov
//! (co)homology is proved by finite partial chain contractions whose
//! validity extends to an open cone of characters.

pub mod complexes;
pub mod engine;
pub mod error;
pub mod field;
pub mod groupring;
pub mod laurent;
pub mod novikov;
pub mod presentation;

pub use complexes::{ChainComplex, ComplexKind};
pub use engine::{ConeCertificate, EngineOptions, Session, Verdict};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use groupring::{GroupRing, GroupRingElem, GroupRingMatrix};
pub use novikov::{NovikovElem, NovikovRing, SupportCone};
pub use presentation::{
    abelianize, parse_presentation, AbelianizationData, Character, Presentation, Word,
};
