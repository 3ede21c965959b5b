//! Goldman bracket and Turaev cobracket on the punctured disc.
//!
//! Two independent computations of the bracket, the self-intersection map
//! and the cobracket are provided: a planar one working directly with exact
//! rational polylines ([`planar`]) and a skein-theoretic one working with
//! crossing-switch telescoping in the Conway quotient ([`skein`]). The
//! associated graded Lie bialgebra on cyclic words lives in [`graded`], chord
//! diagram normal forms in [`chord`], and the exponential expansion tying the
//! two levels together in [`expansion`].

pub mod chord;
pub mod coeff;
pub mod corpus;
pub mod error;
pub mod expansion;
pub mod graded;
pub mod lin;
pub mod planar;
pub mod skein;
pub mod suite;
pub mod word;

pub use coeff::{Coeff, Scalar, Q};
pub use error::{GtError, Result};
pub use lin::LinComb;
pub use planar::{GenericityError, IntersectionRecord, PLLoop, Point, PuncturedDisc};
pub use word::{
    cyclic_canonical, group_invert, group_multiply, reduce_word, trace_to_loops, wedge_normalize, CyclicClass,
    GroupWord, Letter, LoopCombo, PathCombo, TensorElement, WedgeElement,
};
