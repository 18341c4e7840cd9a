//! Exact computation of the bigraded torsion product
//! `Tor_{H*(BL)}(k, k[Σ])` of a simplicial complex with characteristic matrix,
//! and of the cohomology ring of the associated toric space through the
//! twisted product on the Koszul complex.
//!
//! The crate is `no_std` (it needs `alloc`). The `parallel` feature spreads
//! table rows, Hochster subsets and ring structure constants over a rayon
//! pool.
//!
//! ```
//! use toric_tor::{Fan, KoszulComplex, PrimeField, GradedPiece};
//!
//! let fan = Fan::lens_boundary(2, 2).unwrap();
//! let k = KoszulComplex::new(PrimeField::new(2).unwrap(), fan.complex().clone(), fan.characteristic_matrix()).unwrap();
//! let table = k.tor_table(4).unwrap();
//! assert_eq!(table.get(-1, 4), GradedPiece::free(1));
//! ```

#![no_std]
#![allow(clippy::type_complexity)]

extern crate alloc;

#[cfg(feature = "parallel")]
extern crate std;

pub mod chain;
pub mod error;
pub mod exactla;
pub mod expr;
pub mod fan;
pub mod integer;
pub mod koszul;
pub mod oracles;
pub mod product;
pub mod ring;
pub mod simplicial;

pub use chain::{BigradedComplex, CohomologyBasis, CohomologyClass, Combination, TorTable};
pub use error::Error;
pub use exactla::GradedPiece;
pub use expr::Expr;
pub use fan::{CharacteristicMatrix, Fan};
pub use integer::Integer;
pub use koszul::{KoszulComplex, KoszulElement, KoszulKey};
pub use product::{twisting_terms, CohomologyRing, ProductMode, TwistingData};
pub use ring::{Coefficients, IntegerRing, PrimeField, RationalField, Ring};
pub use simplicial::{Monomial, SimplicialComplex, VertexSet};
