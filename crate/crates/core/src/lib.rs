// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod backward;
pub mod contractor;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod interval;
pub mod interval_box;
pub mod localization;
pub mod minkowski;
pub mod paver;
pub mod pgm;
pub mod raster;
pub mod scenario;
pub mod separator;
pub mod subpaving;
pub mod svg;
pub mod transform;

pub use contractor::{Contract, Contractor};
pub use error::{Error, Result};
pub use expr::{ConstraintSpec, ExprBuilder, Node, NodeId};
pub use interval::Interval;
pub use interval_box::IntervalBox;
pub use paver::{pave, BoxClass, PaverConfig};
pub use separator::{Separate, Separator};
pub use subpaving::SubPaving;
