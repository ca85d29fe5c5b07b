//! Exact computations with KLR (quiver Hecke) algebras, quantum shuffle
//! characters and the crystals `B(∞)` and `B(Λ)`.
//!
//! * [`cartan`] and [`laurent`]: Cartan data and Laurent polynomial arithmetic.
//! * [`charcalc`]: words, characters, the quantum shuffle product and the
//!   operators `e_i`, `e_i^{(r)}`.
//! * [`klr`]: PBW normal forms in `R(ν)`, the involution `σ`, graded
//!   dimensions and cyclotomic quotients.
//! * [`crystal`]: elementary and tensor crystals, `B(∞)`, `B(Λ)` and
//!   verification suites.

pub mod cartan;
pub mod charcalc;
pub mod crystal;
pub mod klr;
pub mod laurent;

pub use cartan::{CartanDatum, CartanError, DominantWeight, RawDatum, RootVector};
pub use charcalc::{Character, CharError, Word};
pub use laurent::{LaurentError, LaurentPoly};
