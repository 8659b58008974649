//! Bit-packed 0/1 matrices and the three random-matrix families.
//!
//! Row `i` of a [`BinaryMatrix`] is a single `u64` whose bit `j` holds entry
//! `(i, j)`. Indices are zero-based throughout the API; the special diagonal
//! element of family B is entry `(0, 0)`.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    pub const MAX_DIM: usize = 64;

    pub fn zeros(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(BinaryMatrix { n, rows: vec![0; n] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| i == j)
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    /// Zeros on the main diagonal and ones elsewhere.
    pub fn ones_minus_identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| i != j)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_dim(n)?;
        let rows = (0..n)
            .map(|i| (0..n).filter(|&j| f(i, j)).fold(0u64, |row, j| row | (1u64 << j)))
            .collect();
        Ok(BinaryMatrix { n, rows })
    }

    /// Builds a matrix from packed rows; bit `j` of `rows[i]` is entry `(i, j)`.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        let allowed = row_mask(n);
        if let Some(row) = rows.iter().position(|&r| r & !allowed != 0) {
            return Err(Error::RowOutOfRange { row, n });
        }
        Ok(BinaryMatrix { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.n && j < self.n,
            "entry ({i}, {j}) out of bounds for n = {}",
            self.n
        );
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn count_ones(&self) -> u32 {
        self.rows.iter().map(|r| r.count_ones()).sum()
    }

    pub fn is_all_ones(&self) -> bool {
        let full = row_mask(self.n);
        self.rows.iter().all(|&r| r == full)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i)).expect("same dimension")
    }

    /// Entry `(i, j)` of the result is entry `(row_perm[i], col_perm[j])` of `self`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        assert_eq!(row_perm.len(), self.n);
        assert_eq!(col_perm.len(), self.n);
        Self::from_fn(self.n, |i, j| self.get(row_perm[i], col_perm[j])).expect("same dimension")
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let line: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > BinaryMatrix::MAX_DIM {
        Err(Error::InvalidDimension(n))
    } else {
        Ok(())
    }
}

pub(crate) fn row_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The three families of random matrices.
///
/// * `A`: every entry is variable; target permanent 0.
/// * `B`: the diagonal is fixed at 1 except entry `(0, 0)`, which is variable
///   like every off-diagonal entry; target permanent 0.
/// * `C`: the diagonal is fixed at 1, off-diagonal entries are variable;
///   target permanent 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixFamily {
    A,
    B,
    C,
}

impl MatrixFamily {
    pub const ALL: [MatrixFamily; 3] = [MatrixFamily::A, MatrixFamily::B, MatrixFamily::C];

    /// Value `u` for which the probability `per = u` is studied.
    pub fn target(self) -> u32 {
        match self {
            MatrixFamily::A | MatrixFamily::B => 0,
            MatrixFamily::C => 1,
        }
    }

    /// Diagonal index of the variable diagonal element, if any.
    pub fn special_diagonal(self) -> Option<usize> {
        match self {
            MatrixFamily::B => Some(0),
            MatrixFamily::A | MatrixFamily::C => None,
        }
    }

    pub fn is_variable(self, i: usize, j: usize) -> bool {
        match self {
            MatrixFamily::A => true,
            MatrixFamily::B => i != j || i == 0,
            MatrixFamily::C => i != j,
        }
    }

    /// Number of variable elements of an `n x n` matrix of this family.
    pub fn variable_count(self, n: usize) -> usize {
        match self {
            MatrixFamily::A => n * n,
            MatrixFamily::B => n * n - n + 1,
            MatrixFamily::C => n * n - n,
        }
    }

    pub fn mask(self, n: usize) -> Result<VariableMask> {
        VariableMask::new(self, n)
    }
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MatrixFamily::A => "A",
            MatrixFamily::B => "B",
            MatrixFamily::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown matrix family {0:?}, expected A, B or C")]
pub struct ParseFamilyError(String);

impl FromStr for MatrixFamily {
    type Err = ParseFamilyError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(MatrixFamily::A),
            "B" | "b" => Ok(MatrixFamily::B),
            "C" | "c" => Ok(MatrixFamily::C),
            other => Err(ParseFamilyError(other.to_string())),
        }
    }
}

/// Variable positions of a family at a given size, in row-major order.
///
/// Bit `k` of an assignment index drives `positions()[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableMask {
    family: MatrixFamily,
    n: usize,
    positions: Vec<(usize, usize)>,
}

impl VariableMask {
    pub fn new(family: MatrixFamily, n: usize) -> Result<Self> {
        check_dim(n)?;
        let positions = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| family.is_variable(i, j))
            .collect();
        Ok(VariableMask { family, n, positions })
    }

    pub fn family(&self) -> MatrixFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn count(&self) -> usize {
        self.positions.len()
    }

    /// Matrix with every fixed element set to 1 and every variable element set to 0.
    pub fn fixed_part(&self) -> BinaryMatrix {
        BinaryMatrix::from_fn(self.n, |i, j| !self.family.is_variable(i, j)).expect("checked dimension")
    }
}

/// Builds the family matrix whose variable elements take the assignment bits in mask order.
pub fn build_family_matrix(family: MatrixFamily, n: usize, assignment: &[bool]) -> Result<BinaryMatrix> {
    let mask = VariableMask::new(family, n)?;
    if assignment.len() != mask.count() {
        return Err(Error::LengthMismatch {
            family,
            n,
            expected: mask.count(),
            got: assignment.len(),
        });
    }
    let mut m = mask.fixed_part();
    for (&(i, j), &bit) in mask.positions.iter().zip(assignment) {
        if bit {
            m.rows[i] |= 1u64 << j;
        }
    }
    Ok(m)
}

/// Fast decoder from an assignment index to packed rows.
///
/// Every row's variable elements are contiguous in mask order, and every
/// fixed element is on the diagonal, so a row is a bit-field of the index
/// with a single zero inserted at the fixed column.
#[derive(Debug, Clone)]
pub struct AssignmentDecoder {
    layouts: Vec<RowLayout>,
    variable_count: usize,
}

#[derive(Debug, Clone, Copy)]
struct RowLayout {
    offset: u32,
    width: u32,
    /// Column of the fixed diagonal 1, if the row has one.
    fixed: Option<u32>,
}

impl AssignmentDecoder {
    pub fn new(family: MatrixFamily, n: usize) -> Result<Self> {
        check_dim(n)?;
        let variable_count = family.variable_count(n);
        if variable_count > 64 {
            return Err(Error::DimensionTooLarge {
                what: "assignment index variable count K",
                n: variable_count,
                limit: 64,
            });
        }
        let mut offset = 0u32;
        let layouts = (0..n)
            .map(|i| {
                let fixed = (!family.is_variable(i, i)).then_some(i as u32);
                let width = if fixed.is_some() { n as u32 - 1 } else { n as u32 };
                let layout = RowLayout { offset, width, fixed };
                offset += width;
                layout
            })
            .collect();
        Ok(AssignmentDecoder {
            layouts,
            variable_count,
        })
    }

    pub fn n(&self) -> usize {
        self.layouts.len()
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    /// Writes the rows for assignment `index` into `rows[..n]`.
    #[inline]
    pub fn decode_into(&self, index: u64, rows: &mut [u64]) {
        for (row, layout) in rows.iter_mut().zip(&self.layouts) {
            let bits = if layout.width == 0 {
                0
            } else {
                (index >> layout.offset) & (u64::MAX >> (64 - layout.width))
            };
            *row = match layout.fixed {
                None => bits,
                Some(col) => {
                    let low = bits & ((1u64 << col) - 1);
                    let high = (bits >> col) << (col + 1);
                    low | high | (1u64 << col)
                }
            };
        }
    }

    pub fn decode(&self, index: u64) -> BinaryMatrix {
        let mut rows = vec![0u64; self.n()];
        self.decode_into(index, &mut rows);
        BinaryMatrix { n: self.n(), rows }
    }
}
