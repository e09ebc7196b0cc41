//! Exact arithmetic: integers and rationals, Q(sqrt5), cyclotomic rings,
//! finite fields and polynomials.

pub mod cyclo;
pub mod field;
pub mod fpoly;
pub mod kelt;
pub mod nt;
pub mod poly;
pub mod slot;

pub use cyclo::{Cyc, Cyc15};
pub use field::Fq;
pub use kelt::KElt;
pub use nt::{valuation, val_int};
pub use poly::{KPoly, Poly, QPoly, Ring, ZPoly};
pub use slot::{PrimeSlotK, SlotKind};
