//! Exact-arithmetic stability checks for framed pairs and coherent systems.
//!
//! Objects are described numerically: a Hilbert polynomial, and a finite
//! list of subobject records carrying their own Hilbert polynomials and
//! whether they contain the image of the framing. Everything is computed
//! over the rationals; polynomials are compared in the eventual order.

pub mod batch;
pub mod bounds;
pub mod error;
pub mod git;
pub mod pair_model;
pub mod par;
pub mod polynomial;
pub mod rational;
pub mod stability;
pub mod systems;
pub mod walls;

pub use error::{Error, Result};
pub use pair_model::{PairModel, QuotientRecord, SubobjectRecord};
pub use par::ExecMode;
pub use polynomial::{cmp_eventual, RatPoly};
pub use rational::Rational;
pub use stability::{
    check_semistable, check_semistable_quotient_form, jordan_holder, GradedObject, Status, Verdict,
};
pub use walls::DeltaRay;
