//! Exact Schubert calculus on Gr(2,m) and the Chern-class constraint system
//! for holomorphic embeddings Gr(2,m) → Gr(2,n).

pub mod checks;
pub mod chern;
pub mod error;
pub mod pieri;
pub mod poly;
pub mod ring;
pub mod schubert;
pub mod series;
pub mod solver;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use poly::PolyABC;
pub use ring::Coeff;
pub use schubert::{Ambient, Partition2, SchubertClass};
pub use series::TruncSeries;

/// Integer Schubert class (evaluated mode).
pub type IntClass = SchubertClass<BigInt>;
/// Schubert class with coefficients in `Z[a,b,c]` (symbolic mode).
pub type SymClass = SchubertClass<PolyABC>;
pub type IntSeries = TruncSeries<BigInt>;
pub type PolySeries = TruncSeries<PolyABC>;
