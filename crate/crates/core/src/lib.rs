//! Hamiltonian-minimal Lagrangian submanifolds of toric varieties built from
//! intersections of Hermitian quadrics.
//!
//! The pipeline:
//!
//! * [`quadrics`] validates a system `Σ_k γ_jk |z_k|² = δ_j` (nonempty,
//!   nondegenerate, rational) and computes its torus data;
//! * [`gale`] computes the Gale-dual configuration and the associated
//!   polyhedron with its vertices;
//! * [`delzant`] decides the Delzant (embedding) criterion exactly;
//! * [`construction`] assembles a Γ/Δ pair into a toric manifold `V` with a
//!   Lagrangian `N ⊂ V` and reports every dimension;
//! * [`sampler`] certifies the Lagrangian and immersion properties numerically
//!   on sampled points.
//!
//! All polyhedral and lattice work is exact ([`exactlin`]); only the sampler
//! uses floating point. [`cli`] holds the input format and the commands of
//! the `toric-lagrangian` binary.

pub mod cli;
pub mod construction;
pub mod delzant;
pub mod exactlin;
pub mod gale;
pub mod quadrics;
pub mod sampler;

pub use construction::{build_construction, report_text, ConstructionReport, SpecialCase};
pub use delzant::{check_delzant, embedding_criterion, DelzantVerdict};
pub use exactlin::Rational;
pub use gale::{build_polyhedron, gale_dual, GaleDual, Polyhedron};
pub use quadrics::{stack, validate, QuadricSystem, ValidationVerdict};
pub use sampler::{verify_batch, Tolerances};
