//! Strongly Hermitian Einstein-Maxwell metrics on ruled surfaces.
//!
//! A momentum profile `F(z) = (1 - z^2) m(z)` with quadratic
//! `m(z) = c z^2 + x z + (1 - c)` describes a fiberwise metric on a ruled
//! surface over a curve; conformally rescaling by `(z + b)^-2` with `|b| > 1`
//! produces a constant-scalar-curvature Hermitian metric exactly when
//! `(x, b)` satisfies a quartic constraint. This crate solves that
//! constraint exactly over quadratic number fields, certifies positivity of
//! `m` on the fiber interval with Sturm sequences, evaluates the resulting
//! Einstein-Hilbert values against Yamabe-type bounds, locates the existence
//! thresholds of negatively curved bases, and enumerates solution components
//! class by class.
//!
//! Arithmetic policy: everything that decides a yes/no question (constraint
//! residuals, positivity, signs of field elements) is exact; floating point
//! appears only in reported values, quadrature cross-checks, and root
//! refinement of transcendental threshold equations. The enclosure width
//! used when exact data must be approximated rationally is `2^-bits` with
//! `bits` taken from the `EMAX_PRECISION_BITS` environment variable
//! (default 128).

pub mod cli;
pub mod exact;
pub mod functional;
pub mod moduli;
pub mod poly;
pub mod quad;
pub mod surface;
pub mod verify;

pub use exact::{parse_rational, QuadExt, Rat};
pub use functional::{eh_value, EHReport};
pub use moduli::{enumerate_components, witness_class, Manifold, ModuliScan};
pub use poly::{PositivityStatus, PositivityVerdict, RationalPolynomial};
pub use surface::{solve_case1, solve_case2, thresholds, EMCandidate, KahlerClass, RuledSurface};
