//! Truncated matrix-series representations and the equality engine.

mod equality;
mod frac;
mod matrix;
mod represent;
mod series;

pub use equality::{eq_nc, eq_nc_batch, replay, trial_seed, EqConfig, EqVerdict, Witness};
pub use matrix::SeriesMat;
pub use represent::{represent, RepEnv, Representer};
pub use series::Series;
