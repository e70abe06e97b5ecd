//! Additively ε-approximate Stackelberg equilibria of audit games, computed
//! with exact rational arithmetic throughout.
//!
//! The defender commits to audit probabilities over `n` targets and a
//! punishment rate `x`; the attacker best-responds. [`stackelberg_solver`]
//! enumerates best responses and tight-or-zero partitions, reducing each to
//! a one-dimensional problem whose candidates are polynomial roots
//! ([`rational_poly`]) plus two LP boundary cases ([`lp_solver`]).
//! [`oracle`] holds brute-force references for testing.

pub mod arith;
pub mod game_model;
pub mod lp_solver;
pub mod oracle;
pub mod rational_poly;
pub mod stackelberg_solver;

pub use arith::Rational;
pub use game_model::{AuditGameInstance, ReducedProblem, Star, Strategy, TargetUtilities};
pub use stackelberg_solver::{solve_game, Execution, GameSolution, PrecFamily, SolverConfig};
