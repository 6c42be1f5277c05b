//! Exact-arithmetic construction and classification of finite-dimensional
//! irreducible modules for the tetrahedron Lie algebra (the three-point sl₂
//! loop algebra).
//!
//! The algebra has generators x_ij indexed by ordered pairs of distinct
//! vertices in {0,1,2,3}, subject to antisymmetry, the two-index bracket
//! relations, and the Dolan-Grady relations. A module is stored concretely
//! as one exact rational matrix per generator, which makes every claim in
//! this crate checkable by exact linear algebra:
//!
//! - [`module`] holds the generic module container with relation
//!   verification, eigenspace decompositions and flags, twisting by S₄,
//!   dualization, commutants, and shape polynomials;
//! - [`eval`] builds the evaluation modules V_d(a), their 24 distinguished
//!   bases with closed-form generator actions, transition matrices, and the
//!   standard bilinear form;
//! - [`poly_real`] realizes the same modules on homogeneous two-variable
//!   polynomials with the algebra acting by derivations, the independent
//!   model that cross-checks every closed form;
//! - [`tensor`] takes tensor products, computes Drinfel'd polynomials, and
//!   inverts them back to evaluation factors; it also solves for
//!   intertwiners and invariant bilinear forms;
//! - [`suites`] bundles the verification grids behind names so the CLI and
//!   the test suite run the same checks.
//!
//! All arithmetic is exact over ℚ; there is no floating point anywhere.
//! With the default `parallel` feature the relation checks and verification
//! suites fan out over rayon; disabling it gives a bit-identical sequential
//! build.

pub mod eval;
pub mod matrix;
pub mod module;
mod par;
pub mod poly;
pub mod poly_real;
pub mod rational;
pub mod suites;
pub mod symmetry;
pub mod tensor;

pub use eval::{BracketBasisId, EtaPairings, EvalModuleSpec, Sl2Element};
pub use matrix::ExactMatrix;
pub use module::{Decomposition, Flag, Relation, TetModule};
pub use poly::{RationalRoots, UniPoly};
pub use poly_real::{BetaQuad, HomPoly};
pub use rational::Rational;
pub use symmetry::{EvalParam, GenPair, Perm4, VertexIndex};
pub use tensor::TensorSpec;
