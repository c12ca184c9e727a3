//! Dense matrix storage, row sums and diagonal-dominance classification.
//!
//! Every analysis in this crate depends on the entries only through their
//! moduli, so [`Matrix`] keeps a cached `|a_ij|` view next to the complex
//! entries. Row sums always accumulate in increasing column order; a sum over
//! a subset of columns therefore agrees bit for bit with the deleted row sum
//! of the corresponding principal submatrix.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Width of the band `| |a_ii| - r_i | <= tol` inside which a row counts as
/// an equality row.
///
/// The default is exact comparison (`tol = 0`).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const EXACT: Tolerance = Tolerance(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(Tolerance(value))
        } else {
            Err(Error::InvalidArgument(format!(
                "tolerance must be a finite nonnegative number, got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Sorted set of distinct 0-based indices drawn from `{0, .., universe - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    members: Vec<usize>,
    universe: usize,
}

impl IndexSet {
    /// Builds a set from arbitrary indices; duplicates are merged.
    pub fn new(members: impl IntoIterator<Item = usize>, universe: usize) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&last) = members.last() {
            if last >= universe {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    n: universe,
                });
            }
        }
        Ok(IndexSet { members, universe })
    }

    /// Converts 1-based indices, as they appear in reports and files.
    pub fn from_one_based(indices: &[usize], universe: usize) -> Result<Self> {
        let zero_based = indices
            .iter()
            .map(|&i| {
                i.checked_sub(1).ok_or_else(|| {
                    Error::InvalidArgument("1-based index must be at least 1".to_string())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        IndexSet::new(zero_based, universe)
    }

    pub(crate) fn from_sorted(members: Vec<usize>, universe: usize) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.last().is_none_or(|&m| m < universe));
        IndexSet { members, universe }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        IndexSet {
            members,
            universe: mask.len(),
        }
    }

    pub fn empty(universe: usize) -> Self {
        IndexSet {
            members: Vec::new(),
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        IndexSet {
            members: (0..universe).collect(),
            universe,
        }
    }

    pub fn singleton(index: usize, universe: usize) -> Result<Self> {
        IndexSet::new([index], universe)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True when the set is all of `{0, .., universe - 1}`.
    pub fn is_full(&self) -> bool {
        self.members.len() == self.universe
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.universe];
        for &i in &self.members {
            mask[i] = true;
        }
        mask
    }

    pub fn complement(&self) -> IndexSet {
        let mask = self.mask();
        let members = (0..self.universe).filter(|&i| !mask[i]).collect();
        IndexSet {
            members,
            universe: self.universe,
        }
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.members.iter().map(|&i| i + 1).collect()
    }
}

impl fmt::Display for IndexSet {
    /// Formats with 1-based indices, e.g. `{1, 3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Square complex matrix with a cached modulus view.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Complex64>,
    modulus: Vec<f64>,
}

impl Matrix {
    /// Row-major entries; `entries.len()` must equal `n * n` and `n >= 1`.
    pub fn from_entries(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "matrix order must be at least 1".into(),
            ));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        let modulus = entries.iter().map(|z| z.norm()).collect();
        Ok(Matrix {
            n,
            entries,
            modulus,
        })
    }

    pub fn from_real(n: usize, values: Vec<f64>) -> Result<Self> {
        Matrix::from_entries(
            n,
            values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
        )
    }

    /// Convenience constructor for literals.
    ///
    /// Panics when `N == 0`.
    pub fn from_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Matrix::from_real(N, rows.iter().flatten().copied().collect())
            .expect("matrix literal must be nonempty")
    }

    pub fn from_complex_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        Matrix::from_entries(N, rows.iter().flatten().copied().collect())
            .expect("matrix literal must be nonempty")
    }

    pub fn identity(n: usize) -> Self {
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            values[i * n + i] = 1.0;
        }
        Matrix::from_real(n, values).expect("identity order must be at least 1")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn modulus(&self, i: usize, j: usize) -> f64 {
        self.modulus[i * self.n + j]
    }

    pub fn modulus_row(&self, i: usize) -> &[f64] {
        &self.modulus[i * self.n..(i + 1) * self.n]
    }

    pub fn diagonal_modulus(&self, i: usize) -> f64 {
        self.modulus(i, i)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).any(|i| self.diagonal_modulus(i) == 0.0)
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let entries = (0..n * n)
            .map(|k| self.entries[(k % n) * n + k / n])
            .collect();
        Matrix::from_entries(n, entries).expect("transpose keeps the order")
    }

    /// `r_i(A)`: sum of `|a_ij|` over `j != i`.
    pub fn deleted_row_sum(&self, i: usize) -> Result<f64> {
        self.check_index(i)?;
        Ok(self.row_sum_over(i, 0..self.n))
    }

    /// `r_i^S(A)`: sum of `|a_ij|` over `j` in `S \ {i}`.
    pub fn partial_row_sum(&self, i: usize, s: &IndexSet) -> Result<f64> {
        self.check_index(i)?;
        self.check_universe(s)?;
        Ok(self.row_sum_over(i, s.iter()))
    }

    /// `A|_{S^2}` with rows and columns in the order of `S`.
    pub fn principal_submatrix(&self, s: &IndexSet) -> Result<Matrix> {
        self.check_universe(s)?;
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        let entries = s
            .iter()
            .flat_map(|i| s.iter().map(move |j| (i, j)))
            .map(|(i, j)| self.entry(i, j))
            .collect();
        Matrix::from_entries(s.len(), entries)
    }

    pub(crate) fn row_sum_over(&self, i: usize, cols: impl Iterator<Item = usize>) -> f64 {
        let row = self.modulus_row(i);
        let mut sum = 0.0;
        for j in cols {
            if j != i {
                sum += row[j];
            }
        }
        sum
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            })
        }
    }

    pub(crate) fn check_universe(&self, s: &IndexSet) -> Result<()> {
        if s.universe_size() == self.n {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: self.n,
                found: s.universe_size(),
            })
        }
    }
}

impl From<&RealMatrix> for Matrix {
    fn from(m: &RealMatrix) -> Self {
        Matrix::from_real(m.order(), m.data().to_vec()).expect("real matrix is square")
    }
}

/// Dense real square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected a nonempty {n}x{n} array, got {} values",
                data.len()
            )));
        }
        Ok(RealMatrix { n, data })
    }

    pub fn from_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        RealMatrix::new(N, rows.iter().flatten().copied().collect())
            .expect("matrix literal must be nonempty")
    }

    pub fn zeros(n: usize) -> Self {
        RealMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RealMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &RealMatrix) -> RealMatrix {
        let n = self.n;
        let mut out = RealMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Diagonal dominance class of a matrix; the four tags are mutually exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DominanceClass {
    /// Some row has `|a_ii| < r_i`.
    NotDD,
    /// Diagonally dominant with no strict row.
    DDEquality,
    /// Diagonally dominant with at least one strict row, not all strict.
    DDPlus,
    /// Every row strict.
    SDD,
}

impl DominanceClass {
    pub fn is_dd(self) -> bool {
        self != DominanceClass::NotDD
    }

    /// DD with at least one strict row (includes SDD).
    pub fn is_dd_plus(self) -> bool {
        matches!(self, DominanceClass::DDPlus | DominanceClass::SDD)
    }
}

impl fmt::Display for DominanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RowKind {
    Strict,
    Equality,
    Deficient,
}

pub(crate) fn row_kind(diagonal: f64, row_sum: f64, tol: Tolerance) -> RowKind {
    let gap = diagonal - row_sum;
    if gap > tol.value() {
        RowKind::Strict
    } else if gap >= -tol.value() {
        RowKind::Equality
    } else {
        RowKind::Deficient
    }
}

/// Row kinds of `A|_{S^2}` where `S = members`, in the order of `members`.
pub(crate) fn row_kinds_within(a: &Matrix, members: &[usize], tol: Tolerance) -> Vec<RowKind> {
    members
        .iter()
        .map(|&i| {
            let r = a.row_sum_over(i, members.iter().copied());
            row_kind(a.diagonal_modulus(i), r, tol)
        })
        .collect()
}

pub(crate) fn classify_kinds(kinds: &[RowKind]) -> DominanceClass {
    if kinds.contains(&RowKind::Deficient) {
        DominanceClass::NotDD
    } else if kinds.iter().all(|&k| k == RowKind::Strict) {
        DominanceClass::SDD
    } else if kinds.contains(&RowKind::Strict) {
        DominanceClass::DDPlus
    } else {
        DominanceClass::DDEquality
    }
}

pub fn classify_dominance(a: &Matrix, tol: Tolerance) -> DominanceClass {
    let all: Vec<usize> = (0..a.order()).collect();
    classify_kinds(&row_kinds_within(a, &all, tol))
}

/// `T(A)`: rows with `|a_ii| <= r_i(A)`, widened by `tol`.
pub fn non_sdd_rows(a: &Matrix, tol: Tolerance) -> IndexSet {
    let all: Vec<usize> = (0..a.order()).collect();
    let kinds = row_kinds_within(a, &all, tol);
    IndexSet::from_sorted(
        all.into_iter()
            .zip(kinds)
            .filter(|&(_, k)| k != RowKind::Strict)
            .map(|(i, _)| i)
            .collect(),
        a.order(),
    )
}

/// `M(A)`: `|a_ii|` on the diagonal and `-|a_ij|` elsewhere.
pub fn comparison_matrix(a: &Matrix) -> RealMatrix {
    let n = a.order();
    let mut m = RealMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let v = a.modulus(i, j);
            // `0.0 - v` rather than `-v` so absent entries stay +0.
            m.set(i, j, if i == j { v } else { 0.0 - v });
        }
    }
    m
}

pub fn is_sdd_by_columns(a: &Matrix, tol: Tolerance) -> bool {
    classify_dominance(&a.transpose(), tol) == DominanceClass::SDD
}
