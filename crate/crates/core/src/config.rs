//! Run-time bounds shared by the exhaustive procedures.

/// Caps on exhaustive work. Every cap is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest algebra size accepted by the enumerator.
    pub enumeration_cap: usize,
    /// Largest space for which increasing subsets are scanned one by one.
    pub subset_scan_cap: usize,
    /// Largest number of free generators.
    pub free_n_cap: usize,
    /// Allows three free generators even though `free_n_cap` is smaller.
    pub allow_free_three: bool,
    /// Largest number of assignments an identity check may visit.
    pub identity_budget: u64,
    /// Worker threads for parallel sections; `None` lets rayon decide.
    pub parallelism: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            enumeration_cap: 8,
            subset_scan_cap: 20,
            free_n_cap: 2,
            allow_free_three: false,
            identity_budget: 200_000_000,
            parallelism: None,
        }
    }
}

impl Config {
    /// Reads `MG_MAX_PARALLELISM` on top of the defaults.
    pub fn from_env() -> Self {
        let parallelism = std::env::var("MG_MAX_PARALLELISM")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0);
        Config { parallelism, ..Config::default() }
    }

    /// Effective bound on the number of free generators.
    pub fn max_generators(&self) -> usize {
        if self.allow_free_three {
            self.free_n_cap.max(3)
        } else {
            self.free_n_cap
        }
    }
}
