//! Toolkit for abelian subgroups of SL(n): the McKay quiver, toric fans on the
//! lattice N, G-equivariant Weil divisor families, and a combinatorial test for
//! vanishing of degree-0 Hom spaces between families restricted to torus orbits.

pub mod config;
pub mod elimination;
pub mod error;
pub mod family;
pub mod fan;
pub(crate) mod geometry;
pub mod group;
pub mod lattice;
pub mod orthogonality;
pub mod projective;
pub mod quiver;
pub mod rational;
pub mod tables;
pub mod triangulation;

pub use error::{Error, Result};
pub use family::{
    direct_transform, is_valid_family, max_shift_coefficient, max_shift_family, principal_divisor,
    shift_move, theta_weight, zero_divisor, GWeilDivisor, GnatFamily, Theta,
};
pub use fan::{validate_fan, Cone, CoordinatePermutation, Fan, OrbitId, ValidationReport};
pub use group::{Character, GroupData, Monomial};
pub use lattice::LatticeN;
pub use orthogonality::{
    check_corollary2, check_pair, symmetry_reduction, ArrowType, OrthogonalityVerdict,
};
pub use quiver::{build_quiver, Arrow, ArrowMark, McKayQuiver};
pub use rational::Q;
