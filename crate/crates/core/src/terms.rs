//! Distribution of permanent-expansion terms by number of variable elements.
//!
//! `E_n(m)` counts the permutations whose term in the permanent expansion
//! contains exactly `m` variable elements. For family C it is written `W_n(m)`
//! (permutations with exactly `n - m` fixed points), for family B `V_n(m)`.
//!
//! Each count is available by several independent routes: closed forms,
//! the recurrences they derive from, the cycle-type census of the symmetric
//! group, and brute force over all permutations.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cycles::partitions;
use crate::limits::{check, Limits};
use crate::matrix::MatrixFamily;
use crate::permanent::for_each_permutation;
use crate::{Error, Result};

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Falling factorial n(n-1)...(n-m+1), written nPm.
pub fn falling_factorial(n: usize, m: usize) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    (n - m + 1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // running product stays integral: C(n-k+i, i) at step i
    (1..=k).fold(BigUint::one(), |acc, i| acc * (n - k + i) / i)
}

/// Derangement numbers D_0..=D_upto from D_k = k·D_{k-1} + (-1)^k.
pub fn derangements(upto: usize) -> Vec<BigUint> {
    let mut d = Vec::with_capacity(upto + 1);
    d.push(BigUint::one());
    for k in 1..=upto {
        let prev = k * &d[k - 1];
        d.push(if k % 2 == 0 { prev + 1u32 } else { prev - 1u32 });
    }
    d
}

pub fn derangement(m: usize) -> BigUint {
    derangements(m).pop().expect("non-empty")
}

fn check_index(n: usize, m: usize) -> Result<()> {
    if m > n {
        Err(Error::IndexOutOfRange { n, m })
    } else {
        Ok(())
    }
}

/// W_n(m) = nPm · Σ_{l=0}^{m} (-1)^l / l!, evaluated as C(n, m) · D_m.
pub fn w_closed_form(n: usize, m: usize) -> Result<BigUint> {
    check_index(n, m)?;
    Ok(binomial(n, m) * derangement(m))
}

/// W_n(m) with out-of-range indices mapped to 0.
fn w_or_zero(n: usize, m: usize) -> BigUint {
    if m > n {
        BigUint::zero()
    } else {
        binomial(n, m) * derangement(m)
    }
}

/// Triangle of counts indexed by `(n, m)` with `1 <= n <= n_max`, `0 <= m <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<Vec<BigUint>>,
}

impl Triangle {
    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        n.checked_sub(1).and_then(|i| self.rows.get(i)).map(Vec::as_slice)
    }

    pub fn get(&self, n: usize, m: usize) -> Option<&BigUint> {
        self.row(n).and_then(|r| r.get(m))
    }

    /// Iterates `(n, m, count)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(m, c)| (i + 1, m, c)))
    }
}

/// W triangle built only from the recurrences
///
/// * W_n(0) = 1, W_1(1) = 0,
/// * W_n(n) = n · W_{n-1}(n-1) + (-1)^n,
/// * W_n(n-1) = n · W_{n-1}(n-1),
/// * W_n(m) = (nPm / m!) · W_m(m) for 1 <= m <= n - 2.
pub fn w_recurrence_table(n_max: usize) -> Triangle {
    assert!(n_max >= 1, "n_max must be at least 1");
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one(), BigUint::zero()]];
    for n in 2..=n_max {
        let prev_diag = rows[n - 2][n - 1].clone();
        let mut row = Vec::with_capacity(n + 1);
        row.push(BigUint::one());
        for m in 1..n.saturating_sub(1) {
            let diag_m = &rows[m - 1][m];
            row.push(falling_factorial(n, m) / factorial(m) * diag_m);
        }
        row.push(n * &prev_diag);
        let scaled = n * prev_diag;
        row.push(if n % 2 == 0 { scaled + 1u32 } else { scaled - 1u32 });
        debug_assert_eq!(row.len(), n + 1);
        rows.push(row);
    }
    Triangle { rows }
}

/// W_n(m) as the number of permutations whose cycle type has exactly n - m fixed points.
pub fn w_via_cycles(n: usize, m: usize) -> Result<BigUint> {
    check_index(n, m)?;
    Ok(partitions(n)
        .iter()
        .filter(|c| c.fixed_points() == n - m)
        .map(|c| c.permutation_count())
        .sum())
}

/// V_n(m) = (nPm / n) · {(m + 1) Σ_{l=0}^{m} (-1)^l / l! - (-1)^m / m!}.
///
/// Multiplying through by m! turns the braces into (m + 1)·D_m - (-1)^m = D_{m+1},
/// so V_n(m) = C(n, m) · D_{m+1} / n with an exact division. V_n(0) is 0.
pub fn v_closed_form(n: usize, m: usize) -> Result<BigUint> {
    check_index(n, m)?;
    if m == 0 {
        return Ok(BigUint::zero());
    }
    let (q, r) = (binomial(n, m) * derangement(m + 1)).div_rem(&BigUint::from(n));
    debug_assert!(r.is_zero(), "V_{n}({m}) division left remainder {r}");
    Ok(q)
}

/// V_n(m) = W_n(m) - W_{n-1}(m) + W_{n-1}(m-1), from deleting the first row and column.
pub fn v_via_w(n: usize, m: usize) -> Result<BigUint> {
    check_index(n, m)?;
    if m == 0 {
        return Err(Error::IndexOutOfRange { n, m });
    }
    let v = BigInt::from(w_or_zero(n, m)) - BigInt::from(w_or_zero(n - 1, m)) + BigInt::from(w_or_zero(n - 1, m - 1));
    Ok(v.to_biguint().expect("V_n(m) is nonnegative"))
}

/// Term counts E_n(0..=n) for one family and size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDistribution {
    family: MatrixFamily,
    counts: Vec<BigUint>,
}

impl TermDistribution {
    pub fn new(family: MatrixFamily, counts: Vec<BigUint>) -> Self {
        assert!(counts.len() >= 2, "a distribution covers m = 0..=n with n >= 1");
        TermDistribution { family, counts }
    }

    pub fn family(&self) -> MatrixFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, m: usize) -> Option<&BigUint> {
        self.counts.get(m)
    }

    /// Σ_m E_n(m); equals n! for every family.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Σ_m m · E_n(m), the degree of the product form of Q.
    pub fn degree(&self) -> BigUint {
        self.counts.iter().enumerate().map(|(m, c)| m * c).sum()
    }
}

/// E_n(m) for all m from the closed forms.
pub fn e_table(family: MatrixFamily, n: usize) -> TermDistribution {
    assert!(n >= 1, "n must be at least 1");
    let counts = match family {
        MatrixFamily::A => {
            let mut c = vec![BigUint::zero(); n + 1];
            c[n] = factorial(n);
            c
        }
        MatrixFamily::B => (0..=n).map(|m| v_closed_form(n, m).expect("m <= n")).collect(),
        MatrixFamily::C => (0..=n).map(|m| w_closed_form(n, m).expect("m <= n")).collect(),
    };
    TermDistribution::new(family, counts)
}

/// E_n(m) by visiting all n! permutations and counting, for each, the
/// variable positions `(sigma(j), j)` of its term.
pub fn e_table_bruteforce(family: MatrixFamily, n: usize) -> Result<TermDistribution> {
    e_table_bruteforce_with(family, n, &Limits::default())
}

pub fn e_table_bruteforce_with(family: MatrixFamily, n: usize, limits: &Limits) -> Result<TermDistribution> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    check(
        "permutation brute force dimension n",
        n,
        limits.bruteforce_max_n.min(Limits::HARD_BRUTEFORCE_MAX_N),
    )?;
    let mut counts = vec![0u64; n + 1];
    for_each_permutation(n, |sigma| {
        let m = sigma
            .iter()
            .enumerate()
            .filter(|&(col, &row)| family.is_variable(row as usize, col))
            .count();
        counts[m] += 1;
    });
    Ok(TermDistribution::new(
        family,
        counts.into_iter().map(BigUint::from).collect(),
    ))
}
