//! Quantile heights, the trapping parallelogram and the anchored
//! convex-clique dynamic program.

mod bruteforce;
mod gamma;
mod phi;
mod quantile;

pub use bruteforce::{enumerate_max_clique_bruteforce, BRUTEFORCE_MAX_VERTICES};
pub use gamma::{gamma_parallelogram, GammaParallelogram};
pub(crate) use phi::{solve_rooted_indexed, AngularIndex};
pub use phi::{phi, phi_with_table, ConvexClique, DpEntry, DpTable};
pub use quantile::{levels_gap_check, quantile_height};
