//! Executable Lawvere theories.
//!
//! Terms and their normal forms ([`term`]), Lawvere theories as tuple-of-term
//! categories ([`theory`]), text syntax ([`syntax`]), seeded sampling and
//! shared check reports.

pub mod catalog;
pub mod correspondence;
pub mod distlaw;
pub mod factorization;
pub mod fixtures;
pub mod finset;
pub mod monad;
pub mod pool;
pub mod profcat;
pub mod report;
pub mod sampler;
pub mod syntax;
pub mod term;
pub mod theory;
