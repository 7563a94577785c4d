//! Gog, Magog and GOGAm triangles, the Schützenberger involution on
//! Gelfand–Tsetlin triangles, and an explicit bijection between `(n, 2)` Gog
//! and GOGAm trapezoids.

pub mod asm;
pub mod bijection;
pub mod enumerate;
pub mod error;
pub mod schutzenberger;
pub mod tableau;
pub mod triangle;
pub mod verify;

pub use asm::Asm;
pub use error::{Error, Result};
pub use triangle::{FamilyKind, GtTriangle, Inversion, Violation};
