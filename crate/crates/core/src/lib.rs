//! Exact invariants of the Sasaki join `M ⋆_{l1,l2} S³_w` of a regular
//! Sasaki–Einstein manifold over a Fano base with a weighted 3-sphere.
//!
//! The crate is split along the computation pipeline:
//!
//! * [`exact`]: rational arithmetic, univariate polynomials, Sturm-sequence
//!   root isolation and integer factorization. Everything else is built on it.
//! * [`join`]: relative Fano indices, smoothness and regular Reeb rays in the
//!   `w`-Sasaki cone.
//! * [`quotient`]: the log pair `(S_n, Δ)` obtained by quotienting by a
//!   quasi-regular Reeb field `ξ_v`, and the orbit periods.
//! * [`topology`]: integral cohomology rings of the sphere, quadric and
//!   del Pezzo joins together with the 7-dimensional homotopy and
//!   homeomorphism tests.
//! * [`admissible`]: the admissible profile `F(𝔷)`, the Kähler–Einstein
//!   condition and its Einstein ray, the quasi-regular family, Ricci solitons
//!   and extremal metrics.
//!
//! All algebra is exact. Floating point only appears when a value is
//! displayed and inside the soliton solve, whose defining equation is
//! transcendental.

pub mod admissible;
pub mod error;
pub mod exact;
pub mod join;
pub mod quotient;
pub mod topology;

pub use error::{Error, Result};
pub use exact::{ExactPolynomial, IsolatingInterval, Rational};
pub use join::{BaseFamily, FanoBase, JoinSpec, WeightVector};
pub use quotient::{OrbitPeriods, ReebQuotient, ReebRay, Regularity};
