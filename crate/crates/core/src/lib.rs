//! Exact construction, computation and verification of point visibility
//! graphs: rigidity constructions (fans, generalized fans, grids, the Perles
//! fan), cross-ratio arithmetic gadgets, and a compiler from ordered
//! `x_i + x_j = x_k` / `x_i * x_j = x_k` systems to visibility-graph
//! instances with a checkable height-ordering certificate.

pub mod error;
pub mod exactnum;
pub mod projgeom;
pub mod visibility;
pub mod formats;
pub mod construction;
pub mod fan;
pub mod genfan;
pub mod vonstaudt;
pub mod reduce;
pub mod recognize;
pub mod specfile;
pub mod svg;
mod seed;

pub use error::{Error, Result};
pub use exactnum::{Rational, Scalar};
pub use projgeom::{ProjLine, ProjMap, ProjPoint, Segment, SegmentIntersection};
