//! Exact algebraic building blocks.

pub mod cyclotomic;
pub mod laurent;
pub mod polymat;
pub mod snf;

pub use cyclotomic::CyclotomicInteger;
pub use laurent::{Laurent, Laurent2};
pub use snf::{AbelianGroupInvariants, IntMatrix};
