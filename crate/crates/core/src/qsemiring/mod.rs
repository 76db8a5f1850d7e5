//! The Boolean power-series semiring and the profinite idempotent
//! completion `Q` with its composition and monoidal products.
//!
//! Elements of `Q` are keyed either by loop-free Brauer morphisms
//! ([`Diagrams`], the default) or by shell matrices under a duality
//! structure ([`MatrixShells`]).

mod element;
pub mod laws;
mod series;
mod shell;

pub use element::{
    DiagramElement, Diagrams, KeyAlgebra, KeyLabel, MatrixElement, MatrixKeyError, MatrixShells, QElement,
};
pub use series::{rationalize, BoolSeries, ParseSeriesError, RationalForm, DEFAULT_TRUNCATION};
pub use shell::{minimal_shell, shell_decompose, ShellError};
