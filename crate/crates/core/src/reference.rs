//! Published values used by the validation report and the acceptance tests.

use crate::MatrixFamily;

/// W_n(m) for n = 1..=6, m = 0..=n.
pub const W_TABLE: [&[u64]; 6] = [
    &[1, 0],
    &[1, 0, 1],
    &[1, 0, 3, 2],
    &[1, 0, 6, 8, 9],
    &[1, 0, 10, 20, 45, 44],
    &[1, 0, 15, 40, 135, 264, 265],
];

/// V_n(m) for n = 1..=8, m = 0..=n.
pub const V_TABLE: [&[u64]; 8] = [
    &[0, 1],
    &[0, 1, 1],
    &[0, 1, 2, 3],
    &[0, 1, 3, 9, 11],
    &[0, 1, 4, 18, 44, 53],
    &[0, 1, 5, 30, 110, 265, 309],
    &[0, 1, 6, 45, 220, 795, 1854, 2119],
    &[0, 1, 7, 63, 385, 1855, 6489, 14833, 16687],
];

/// Nonzero Bernstein coefficients of the exact n = 3 probabilities; the
/// remaining coefficients up to K are zero.
pub const EXACT_N3: [(MatrixFamily, &[u64]); 3] = [
    (MatrixFamily::A, &[1, 9, 36, 78, 90, 45, 6]),
    (MatrixFamily::B, &[1, 6, 13, 10, 2]),
    (MatrixFamily::C, &[1, 6, 12, 6]),
];

/// The full coefficient vector N_0..=N_K for a published n = 3 entry.
pub fn exact_n3_padded(family: MatrixFamily) -> Vec<u64> {
    let (_, nonzero) = EXACT_N3
        .iter()
        .find(|(f, _)| *f == family)
        .expect("all families listed");
    let mut v = nonzero.to_vec();
    v.resize(family.variable_count(3) + 1, 0);
    v
}
