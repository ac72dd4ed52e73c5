//! Exact generating series for moduli spaces of ideal sheaves on 3-folds
//! fibered over a surface by curves, with brute-force cross-checks.
//!
//! * [`poly`] and [`series`]: integer polynomials in `s`, `t` and truncated
//!   power series in `q` over them.
//! * [`geometry`]: Hodge diamonds, e-polynomials and fibrations `X -> S`.
//! * [`formulas`]: Hilbert-scheme, incidence-variety and `I_{m,1}` series,
//!   their Euler numbers and the Donaldson-Thomas invariants `N_{m,1}`.
//! * [`oracles`]: partition counts that witness the Euler coefficients.
//! * [`local_hom`]: tangent spaces `Hom(I, O/I)` of monomial local models.

pub mod formulas;
pub mod geometry;
pub mod local_hom;
pub mod oracles;
pub mod poly;
pub mod series;

pub use geometry::{FibrationSpec, HodgeDiamond};
pub use poly::BivariatePolynomial;
pub use series::{ProductFactor, TruncatedSeries};
