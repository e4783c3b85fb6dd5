//! Extended Kirby diagrams for 4-manifold handle decompositions.
//!
//! A [`KirbyDiagram`] records dotted circles (1-handles), framed circles
//! (2-handles) with the words they read through the dotted discs, 3-handle
//! attaching data as integer interaction counts, and the number of
//! 4-handles. On top of that model the crate provides:
//!
//! * the KD3 text format ([`format`]),
//! * handle slides, cancellations and creations ([`moves`]),
//! * exact linear-algebra invariants: linking matrix, Smith normal form,
//!   boundary homology, basis checks ([`invariants`], [`matrix`]),
//! * finitely presented groups, Wirtinger presentations of planar diagram
//!   codes, Tietze reduction and homomorphism counting ([`groups`]),
//! * banded unlinks of surface-knots and their exterior diagrams
//!   ([`surface`]).
//!
//! The 3-handle data is a combinatorial model: each attaching sphere is
//! stored as aggregated interaction counts with the 1- and 2-handles, and
//! only their parities carry homological meaning. It is not a complete
//! record of the embedded sphere.

pub mod diagram;
pub mod format;
pub mod groups;
pub mod invariants;
pub mod matrix;
pub mod moves;
pub mod pd;
pub mod samples;
pub mod surface;
pub mod unlink;

mod id;

pub use diagram::{
    Diagnostic, HandleCounts, KirbyDiagram, Letter, LinkingTable, OneHandle, ThreeHandleData,
    TwoHandle,
};
pub use format::{parse_kd3, serialize_kd3, Document, KirbyDocument, ParseError};
pub use id::{Id, IdError, Sign};
pub use pd::{ComponentKind, Crossing, PdComponent, PdError, PlanarDiagramCode};
pub use unlink::{Band, BandedUnlink, SlotRef, UnlinkComponent};
