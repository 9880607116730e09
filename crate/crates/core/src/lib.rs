//! Executable algebraic geometry for multipartite pure states.
//!
//! * [`state`]: amplitude tensors, bipartitions, flattenings and the Segre map.
//! * [`poly`]: exact sparse polynomials over Gaussian rationals.
//! * [`segre`]: the 2x2-minor ideal of the Segre variety, separability tests and
//!   the minor-sum concurrence.
//! * [`grassmann`]: Plücker coordinates, quadratic Plücker relations and the
//!   Plücker measure.
//! * [`io`]: the JSON and line formats used by the command-line tool.
//!
//! Everything is generic over a [`Scalar`] backend: [`Complex64`] for speed and
//! [`GaussRat`] where a statement must hold exactly.

pub mod error;
pub mod fixtures;
pub mod grassmann;
pub mod io;
pub mod poly;
pub mod scalar;
pub mod segre;
pub mod state;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use grassmann::{
    check_relations, pluecker_coordinates, pluecker_measure, pluecker_relations, pluecker_relations_with,
    IndexRange, PlueckerRelation, PlueckerSet, DEFAULT_MAX_CHOOSE,
};
pub use poly::{Homogeneity, Monomial, MultiPoly, VarId};
pub use scalar::{GaussRat, Scalar};
pub use segre::{
    concurrence2, generalized_concurrence, is_bipartite_separable, is_bipartite_separable_exact, is_fully_separable,
    is_fully_separable_exact, minor_sum, minor_sum_enumerated, minor_sum_gram, segre_generators, MeasureReport,
    SegreIdeal, DEFAULT_MAX_AMPS, DEFAULT_TOL,
};
pub use state::{flatten, local_factors, segre_map, Bipartition, Flattening, LocalState, PureState};
