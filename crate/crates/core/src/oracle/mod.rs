//! Brute-force references for testing: the naive x-grid method (one exact
//! LP per grid point) and a checker for the tight-or-zero structure of
//! interior solutions.

mod grid;
mod structure;

pub use grid::{fixed_x_lp, fixed_x_optimum, game_oracle, grid_oracle, lipschitz_bound, GameOracleReport, OracleReport};
pub use structure::{verify_structure, StructureError, StructureReport};
