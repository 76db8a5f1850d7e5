//! Exact computational engine for a semiring-valued topological field theory
//! built on the Brauer category.
//!
//! * [`brauer`]: Brauer diagrams, composition with loop bookkeeping, words.
//! * [`rep`]: duality structures and the induced exact matrix representation.
//! * [`qsemiring`]: truncated Boolean power series and the idempotent
//!   completion with its composition and monoidal products.
//! * [`funmod`]: function semimodules on finite index sets and contraction.
//! * [`tft`]: discrete cobordisms, state sums and the laws they satisfy.

pub mod brauer;
pub mod funmod;
pub mod qsemiring;
pub mod rep;
pub mod tft;
