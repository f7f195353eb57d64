//! Invariants of Legendrian links in the 1-jet space of the circle.
//!
//! Links are given by annular front diagrams, written as cyclic words in the
//! elementary tangles `s<m>` (crossing), `l<m>` (left cusp) and `r<m>`
//! (right cusp). From a front we compute the classical invariants, the
//! p-graded ruling polynomials, and the HOMFLY-PT invariant expanded in
//! Turaev's basis `A_λ A_{-μ}` of the annular skein module.

pub mod front;
pub mod polyring;
pub mod rulings;
pub mod skein;
pub mod symfun;

pub use front::{Dir, FrontFile, FrontWord, Letter, OrientedFront};
pub use polyring::{LaurentPoly, TruncSeries, Var};
pub use rulings::RulingState;
pub use skein::{SkeinElement, TuraevMonomial};
pub use symfun::{Partition, SchurVector};
