//! Exact symbolic kernel for the generalized Racah algebra and the quadratic
//! symmetry algebras of the Smorodinsky-Winternitz and generalized
//! Kepler-Coulomb systems, in classical (Poisson) and quantum (normal-ordered
//! operator) form.

pub mod algebra;
pub mod error;
pub mod exec;
pub mod generators;
pub mod monomial;
pub mod phase;
pub mod oracle;
mod poly;
pub mod relations;
pub mod scalar;
mod text;
pub mod weyl;

pub use algebra::{Algebra, ClassicalAlgebra, LieAlgebra, PhaseAlgebra, QuantumAlgebra, WeylAlgebra};
pub use error::{Error, Result};
pub use generators::{Frame, Generators, Model, ModelConfig, Side};
pub use monomial::{Monomial, Space};
pub use phase::{EvalPoint, PhaseExpr, Var};
pub use scalar::{GaussianRational, Param, ParamScalar, ParamValues, Rational};
pub use weyl::WeylExpr;
