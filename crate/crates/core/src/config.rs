//! Solver configuration shared by the cyclotomic solver, the search
//! pipeline and the CLI.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Degree threshold above which the Phi_k(x) = Y solver switches from
/// exact evaluation to the modular sieve.
pub const DEFAULT_EXACT_DEGREE_THRESHOLD: u64 = 20_000;
/// The sieve tests candidates modulo all primes below this bound.
pub const DEFAULT_SIEVE_PRIME_BOUND: u64 = 1_000;
/// Exact evaluations refuse results estimated above this many bits.
pub const DEFAULT_BIT_CEILING: u64 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub exact_degree_threshold: u64,
    pub sieve_prime_bound: u64,
    pub bit_ceiling: u64,
    pub jobs: usize,
    pub checkpoint_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            exact_degree_threshold: DEFAULT_EXACT_DEGREE_THRESHOLD,
            sieve_prime_bound: DEFAULT_SIEVE_PRIME_BOUND,
            bit_ceiling: DEFAULT_BIT_CEILING,
            jobs: 1,
            checkpoint_path: None,
            output_path: None,
        }
    }
}

impl SolverConfig {
    /// Stable hash of the result-affecting knobs. Worker count and file
    /// paths do not change certificate contents and are excluded, so a
    /// resumed run with a different job count still matches.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.exact_degree_threshold.to_le_bytes());
        h.update(self.sieve_prime_bound.to_le_bytes());
        h.update(self.bit_ceiling.to_le_bytes());
        let digest = h.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
