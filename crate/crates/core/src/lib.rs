//! Combinatorics of knot projections on the sphere.
//!
//! Gauss codes and chord diagrams ([`chords`]), their realizations as
//! planar maps ([`planar`]), the decreasing moves 1b and s2b ([`moves`]),
//! the averaged second Conway coefficient ([`invariants`]) and exhaustive
//! enumeration of projections ([`enumerate`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod chords;
pub mod enumerate;
pub mod invariants;
pub mod moves;
pub mod planar;

pub use chords::{canonicalize, parse_code, CanonicalCode, ChordDiagram};
pub use planar::{realize, Frame, PlanarCurve, Strongness};
