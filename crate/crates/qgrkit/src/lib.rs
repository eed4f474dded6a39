//! Exact computational homological algebra over weighted hypersurface algebras.
//!
//! The library works with the graded algebras
//! `B = C[x0,x1,x2,x3]` (weights `1, 2, 2n-1, 4n-3`) and the quotient
//! `A = B/(x0*x3 + x1^(2n-1) + x2^2)`, and provides:
//!
//! * weighted monomial/polynomial arithmetic over exact rationals and
//!   Hilbert functions ([`ring`], [`poly`], [`hilbert`]);
//! * module Groebner bases, syzygies and graded free resolutions
//!   ([`gb`], [`resolution`]);
//! * finitely presented graded modules, the named module families
//!   `chi`, `Q`, `G`, `H`, kernels/cokernels and exactness checking
//!   ([`module`], [`maps`], [`complex`], [`sequences`]);
//! * Ext groups in the quotient category `qgr` via truncation colimits,
//!   cross-checked by independent oracles, and Yoneda composition
//!   ([`ext`]);
//! * left/right mutations and exceptional-collection verification
//!   ([`mutation`], [`collection`]).
//!
//! Every computation is exact: coefficients are arbitrary-precision
//! rationals and all reported quantities are integers.

pub mod cache;
pub mod coeff;
pub mod engine;
pub mod ext;
pub mod fingerprint;
pub mod freemod;
pub mod gb;
pub mod complex;
pub mod hilbert;
pub mod iso;
pub mod linalg;
pub mod maps;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod sequences;

pub use coeff::Coeff;
pub use engine::Engine;
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::RingDescriptor;
