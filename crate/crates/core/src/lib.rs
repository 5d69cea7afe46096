//! Exact computation of fat-graph counts, their recursion and the Virasoro
//! structure of the associated generating functions.

pub mod correlators;
pub mod cutjoin;
pub mod error;
pub mod exactalg;
pub mod graphspace;
pub mod npoint;
pub mod report;
pub mod ribbon;
pub mod virasoro;

pub use error::{Error, Result};
pub use exactalg::{CouplingMonomial, Rat, Var, XMono};
pub use ribbon::FatGraph;

pub type TPoly = exactalg::TPolyOf<Rat>;
pub type CouplingSeries = exactalg::CouplingSeriesOf<Rat>;
pub type XSeries = exactalg::XSeriesOf<Rat>;
