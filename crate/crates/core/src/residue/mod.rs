//! Newton polytopes, Khovanskii face systems and global residue sums in two variables.

mod faces;
mod polytope;
mod sum;

pub use faces::{check_nondegenerate, face_systems, truncate, FaceCheck, FaceKind, FaceSystem, NondegeneracyReport, Verdict};
pub use polytope::{minkowski_sum, newton_polytope, strict_containment, Containment, LatticePolytope};
pub use sum::{jacobian, jacobian_simplicity, residue_sum, torus_zeros, ResidueSum, SimplicityReport};
