//! Exact arithmetic for deciding multiplicative dependence of pairs
//! -m + zeta_k and -(m + a) + zeta_k in cyclotomic integer rings, plus
//! the finite search that certifies entire ranges of the gap a.

pub mod config;
pub mod cyclotomic;
pub mod cycint;
pub mod intfun;
pub mod search;

pub use config::SolverConfig;
pub use cycint::{decide_dependence, decide_pair, Dependence, DependenceWitness, TorsionSide};
pub use cyclotomic::{phi_eval_exact, solve_phi_eq};
pub use search::{subset_plans, verify_a, verify_range, Certificate};
