//! Information equilibrium: closed-form relations between a source and a
//! destination process, the macroeconomic models built on them, partition
//! function ensembles, and the data pipeline used to fit them.

pub mod ensemble;
pub mod error;
pub mod fitting;
pub mod grid;
pub mod macro_models;
pub mod numeric;
pub mod relation;
pub mod timeseries;

pub use error::{Error, Result};
pub use relation::IeRelation;
pub use timeseries::TimeSeries;
