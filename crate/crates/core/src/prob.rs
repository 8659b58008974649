//! Approximate and exact probabilities that a random family matrix has its
//! target permanent.
//!
//! The approximation Q treats the expansion terms as independent:
//! Q(r) = Π_{m=1}^{n} (1 - r^m)^{E_n(m)}. The exact probability P is a
//! polynomial in the Bernstein basis over the K variable elements,
//! P(r) = Σ_i N_i r^i (1 - r)^{K-i}, where N_i counts the assignments with
//! i ones that hit the target. N_i is found by exhaustive enumeration.

use std::num::NonZeroUsize;
use std::thread;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::limits::{check, Limits};
use crate::matrix::{AssignmentDecoder, MatrixFamily};
use crate::permanent::permanent_rows_small;
use crate::terms::{e_table, TermDistribution};
use crate::{Error, Result};

fn check_probability(r: f64) -> Result<()> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::ProbabilityDomain(r))
    }
}

/// The independence model for one family and size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxModel {
    dist: TermDistribution,
}

impl ApproxModel {
    pub fn new(family: MatrixFamily, n: usize) -> Self {
        ApproxModel {
            dist: e_table(family, n),
        }
    }

    pub fn family(&self) -> MatrixFamily {
        self.dist.family()
    }

    pub fn n(&self) -> usize {
        self.dist.n()
    }

    pub fn distribution(&self) -> &TermDistribution {
        &self.dist
    }
}

/// Q(r), evaluated in log space as exp(Σ_m E_n(m) · ln(1 - r^m)).
pub fn q_eval(model: &ApproxModel, r: f64) -> Result<f64> {
    check_probability(r)?;
    let mut log_q = 0.0f64;
    for (m, exponent) in model.dist.counts().iter().enumerate().skip(1) {
        if exponent.is_zero() {
            continue;
        }
        let rm = r.powi(m as i32);
        if rm >= 1.0 {
            return Ok(0.0);
        }
        let e = exponent.to_f64().unwrap_or(f64::INFINITY);
        log_q += e * (-rm).ln_1p();
    }
    Ok(log_q.exp())
}

/// Monomial coefficients c_k of Q(r) = Σ_k c_k r^k, exact.
pub fn q_expand(model: &ApproxModel) -> Result<Vec<BigInt>> {
    q_expand_with(model, &Limits::default())
}

pub fn q_expand_with(model: &ApproxModel, limits: &Limits) -> Result<Vec<BigInt>> {
    let n = model.n();
    check(
        "monomial expansion dimension n",
        n,
        limits.expand_max_n.min(Limits::HARD_EXPAND_MAX_N),
    )?;
    let degree_limit = limits.expand_max_degree.min(Limits::HARD_EXPAND_MAX_DEGREE);
    let degree = model
        .dist
        .degree()
        .to_usize()
        .filter(|&d| d <= degree_limit)
        .ok_or_else(|| Error::DimensionTooLarge {
            what: "monomial expansion degree",
            n: model.dist.degree().to_usize().unwrap_or(usize::MAX),
            limit: degree_limit,
        })?;

    let mut poly: Vec<BigInt> = vec![BigInt::from(1)];
    for (m, exponent) in model.dist.counts().iter().enumerate().skip(1) {
        let e = exponent.to_usize().expect("exponent bounded by degree");
        if e == 0 {
            continue;
        }
        // (1 - r^m)^e = Σ_k C(e, k) (-1)^k r^{mk}
        let mut factor = Vec::with_capacity(e + 1);
        let mut binom = BigInt::from(1);
        for k in 0..=e {
            factor.push(if k % 2 == 0 { binom.clone() } else { -binom.clone() });
            binom = binom * (e - k) / (k + 1);
        }
        let mut next = vec![BigInt::zero(); poly.len() + m * e];
        for (i, a) in poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in factor.iter().enumerate() {
                next[i + m * k] += a * b;
            }
        }
        poly = next;
    }
    debug_assert_eq!(poly.len(), degree + 1);
    Ok(poly)
}

/// Evaluates monomial coefficients at r by Horner's rule in floating point.
///
/// The coefficients alternate in sign and grow like binomials, so this loses
/// accuracy near r = 1; see [`eval_monomials_exact`].
pub fn eval_monomials(coeffs: &[BigInt], r: f64) -> f64 {
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * r + c.to_f64().unwrap_or(f64::NAN))
}

/// Evaluates monomial coefficients exactly at r = num / den, rounding once at the end.
pub fn eval_monomials_exact(coeffs: &[BigInt], num: u64, den: u64) -> f64 {
    assert!(den > 0, "zero denominator");
    let (num, den) = (BigInt::from(num), BigInt::from(den));
    let value = coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * BigRational::new(num.clone(), den.clone()) + BigRational::from_integer(c.clone())
    });
    value.to_f64().unwrap_or(f64::NAN)
}

/// Bernstein coefficients N_0..=N_K of the exact probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCounts {
    family: MatrixFamily,
    n: usize,
    counts: Vec<u64>,
}

impl ExactCounts {
    pub fn new(family: MatrixFamily, n: usize, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len(), family.variable_count(n) + 1);
        ExactCounts { family, n, counts }
    }

    pub fn family(&self) -> MatrixFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// K, the number of variable elements.
    pub fn variable_count(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Renders P as `(1-r)^9+9r(1-r)^8+...`, skipping zero coefficients.
    pub fn bernstein_string(&self) -> String {
        let k = self.variable_count();
        let terms: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(i, &c)| {
                let r_part = match i {
                    0 => String::new(),
                    1 => "r".to_string(),
                    _ => format!("r^{i}"),
                };
                let s_part = match k - i {
                    0 => String::new(),
                    1 => "(1-r)".to_string(),
                    e => format!("(1-r)^{e}"),
                };
                let coef = if c == 1 && !(r_part.is_empty() && s_part.is_empty()) {
                    String::new()
                } else {
                    c.to_string()
                };
                format!("{coef}{r_part}{s_part}")
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    pub fn counts_big(&self) -> Vec<BigUint> {
        self.counts.iter().map(|&c| BigUint::from(c)).collect()
    }
}

/// Enumerates every assignment of the variable elements and counts, by number
/// of ones, those whose matrix has the family's target permanent.
pub fn exact_counts(family: MatrixFamily, n: usize) -> Result<ExactCounts> {
    exact_counts_with(family, n, &Limits::default(), None)
}

/// As [`exact_counts`], with explicit guards and worker count.
///
/// The index space `0..2^K` is cut into one contiguous range per worker; each
/// worker fills a private count vector and the vectors are summed, so the
/// result does not depend on the number of workers.
pub fn exact_counts_with(
    family: MatrixFamily,
    n: usize,
    limits: &Limits,
    workers: Option<NonZeroUsize>,
) -> Result<ExactCounts> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let k = family.variable_count(n);
    check(
        "exhaustive enumeration variable count K",
        k,
        limits.enumeration_max_k.min(Limits::HARD_ENUMERATION_MAX_K),
    )?;
    let decoder = AssignmentDecoder::new(family, n)?;
    let target = u64::from(family.target());
    let space = 1u64 << k;

    let workers = workers
        .or_else(|| thread::available_parallelism().ok())
        .map_or(1, NonZeroUsize::get) as u64;
    let workers = workers.min(space).max(1);
    let chunk = space.div_ceil(workers);

    let count_range = |start: u64, end: u64| -> Vec<u64> {
        let mut local = vec![0u64; k + 1];
        let mut rows = [0u64; 64];
        let rows = &mut rows[..n];
        for index in start..end {
            decoder.decode_into(index, rows);
            if permanent_rows_small(rows) == target {
                local[index.count_ones() as usize] += 1;
            }
        }
        local
    };

    let partials: Vec<Vec<u64>> = if workers == 1 {
        vec![count_range(0, space)]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let start = w * chunk;
                    let end = ((w + 1) * chunk).min(space);
                    let count_range = &count_range;
                    s.spawn(move || count_range(start, end))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };

    let mut counts = vec![0u64; k + 1];
    for part in partials {
        for (total, c) in counts.iter_mut().zip(part) {
            *total += c;
        }
    }
    Ok(ExactCounts::new(family, n, counts))
}

/// P(r) = Σ_i N_i r^i (1 - r)^{K-i}, summed with Neumaier compensation.
pub fn p_eval(counts: &ExactCounts, r: f64) -> Result<f64> {
    check_probability(r)?;
    let k = counts.variable_count() as i32;
    let s = 1.0 - r;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (i, &c) in counts.counts().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = c as f64 * r.powi(i as i32) * s.powi(k - i as i32);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    Ok((sum + comp).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub r: f64,
    pub q: f64,
    pub p: f64,
}

impl GridRow {
    pub fn diff(&self) -> f64 {
        self.q - self.p
    }
}

/// `points` uniformly spaced values on [0, 1], endpoints included.
pub fn uniform_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::GridTooSmall(points));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|k| if k == points - 1 { 1.0 } else { k as f64 / last })
        .collect())
}

/// Q and P side by side on a uniform grid.
pub fn compare_grid(family: MatrixFamily, n: usize, grid_points: usize) -> Result<Vec<GridRow>> {
    compare_grid_with(family, n, grid_points, &Limits::default())
}

pub fn compare_grid_with(family: MatrixFamily, n: usize, grid_points: usize, limits: &Limits) -> Result<Vec<GridRow>> {
    let grid = uniform_grid(grid_points)?;
    let model = ApproxModel::new(family, n);
    let exact = exact_counts_with(family, n, limits, None)?;
    compare_on(&model, &exact, &grid)
}

/// Q and P for a precomputed model and exact counts.
pub fn compare_on(model: &ApproxModel, exact: &ExactCounts, grid: &[f64]) -> Result<Vec<GridRow>> {
    grid.iter()
        .map(|&r| {
            Ok(GridRow {
                r,
                q: q_eval(model, r)?,
                p: p_eval(exact, r)?,
            })
        })
        .collect()
}
