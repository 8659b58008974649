/// Size guards for the expensive operations.
///
/// The defaults keep every call within seconds on a desktop. [`Limits::forced`]
/// raises the soft guards to the hard caps imposed by the integer widths used
/// internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest n accepted by the O(n!·n) permanent.
    pub naive_max_n: usize,
    /// Largest n accepted by the Ryser permanent.
    pub ryser_max_n: usize,
    /// Largest number of variable elements enumerated exhaustively.
    pub enumeration_max_k: usize,
    /// Largest n accepted by the monomial expansion of Q.
    pub expand_max_n: usize,
    /// Largest degree accepted by the monomial expansion of Q.
    pub expand_max_degree: usize,
    /// Largest n for term-distribution tables.
    pub table_max_n: usize,
    /// Largest n for the permutation brute force.
    pub bruteforce_max_n: usize,
}

impl Limits {
    pub const HARD_NAIVE_MAX_N: usize = 20;
    pub const HARD_RYSER_MAX_N: usize = 30;
    pub const HARD_ENUMERATION_MAX_K: usize = 40;
    pub const HARD_EXPAND_MAX_N: usize = 20;
    pub const HARD_EXPAND_MAX_DEGREE: usize = 1 << 22;
    pub const HARD_TABLE_MAX_N: usize = 1000;
    pub const HARD_BRUTEFORCE_MAX_N: usize = 16;

    /// Soft guards lifted to the hard caps.
    pub fn forced() -> Self {
        Limits {
            naive_max_n: Self::HARD_NAIVE_MAX_N,
            ryser_max_n: Self::HARD_RYSER_MAX_N,
            enumeration_max_k: Self::HARD_ENUMERATION_MAX_K,
            expand_max_n: Self::HARD_EXPAND_MAX_N,
            expand_max_degree: Self::HARD_EXPAND_MAX_DEGREE,
            table_max_n: Self::HARD_TABLE_MAX_N,
            bruteforce_max_n: Self::HARD_BRUTEFORCE_MAX_N,
        }
    }

    pub fn with_force(force: bool) -> Self {
        if force {
            Self::forced()
        } else {
            Self::default()
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            naive_max_n: 10,
            ryser_max_n: 30,
            enumeration_max_k: 26,
            expand_max_n: 12,
            expand_max_degree: 50_000,
            table_max_n: 30,
            bruteforce_max_n: 10,
        }
    }
}

pub(crate) fn check(what: &'static str, n: usize, limit: usize) -> crate::Result<()> {
    if n > limit {
        Err(crate::Error::DimensionTooLarge { what, n, limit })
    } else {
        Ok(())
    }
}
