//! Partitions, remainder diagrams and the involutions exchanging the
//! statistics `r_s` and `c_s`.

pub mod diagram;
pub mod error;
pub mod involution;
pub mod oracle;
pub mod partition;
pub mod qseries;

pub use diagram::{Colour, ColouredCell, RemainderDiagram};
pub use error::{Error, Result};
pub use involution::{
    conj_empty, involute, map_strict, reduce_yellow, unreduce_yellow, Case, ReductionTrace,
};
pub use partition::{Cell, Partition, PositionSequence, RemainderVector};
pub use qseries::{MultiPoly, SeriesTruncation};
