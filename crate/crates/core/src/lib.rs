//! Exact computation of Milnor invariants of links, torsion linking forms of
//! 3-manifolds, Witt and Milnor numbers, and quantum upper bounds on the
//! Milnor degree.

pub mod arith;
pub mod counts;
pub mod linkforms;
pub mod links;
pub mod magnus;
pub mod qbounds;
