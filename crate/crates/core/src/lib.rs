pub mod analysis;
pub mod cli;
pub mod cocycle;
pub mod diagram;
pub mod error;
pub mod exactnum;
pub mod liftgroup;
pub mod report;
pub mod rootsys;
pub mod spinreps;
pub mod weylmod;

pub use error::{Error, Result};
