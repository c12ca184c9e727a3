//! Deciding H-status of diagonally dominant matrices.
//!
//! A DD matrix `A` is an H-matrix iff `T(A)` is empty or `A|_{T(A)^2}` is an
//! H-matrix. Since `A|_{T(A)^2}` is again DD, this gives a recursion on
//! strictly shrinking index sets: it ends either with no non-strict rows left
//! (H-matrix), with a zero diagonal entry, or with a block in which no row is
//! strict (not an H-matrix; that block is the witness).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{
    classify_dominance, comparison_matrix, non_sdd_rows, row_kinds_within, IndexSet, Matrix,
    RowKind, Tolerance,
};
use crate::oracle::{inverse_nonneg_oracle, LuFactorization};

/// How the peeling recursion ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeelOutcome {
    /// No non-strict rows remained; the matrix is an H-matrix.
    SddReached,
    /// A zero diagonal entry was met.
    ZeroDiagonal,
    /// Every remaining row was non-strict.
    StagnantPeel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingCertificate {
    /// Positive weights with `max d_i = 1`.
    pub d: Vec<f64>,
    /// `min_i (|a_ii| d_i - sum_{j != i} |a_ij| d_j)`.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HVerdict {
    pub is_h: bool,
    /// `T(A_0), T(A_1), ..` in original indices, strictly decreasing.
    pub peel_trace: Vec<IndexSet>,
    pub scaling: Option<ScalingCertificate>,
    pub witness: Option<IndexSet>,
    pub reason: PeelOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Peel {
    pub trace: Vec<IndexSet>,
    pub outcome: PeelOutcome,
    pub witness: Option<IndexSet>,
}

impl Peel {
    pub fn is_h(&self) -> bool {
        self.outcome == PeelOutcome::SddReached
    }
}

/// Runs the recursion on a matrix already known to be DD.
pub(crate) fn peel(a: &Matrix, tol: Tolerance) -> Peel {
    let n = a.order();
    let mut active: Vec<usize> = (0..n).collect();
    let mut trace = Vec::new();
    loop {
        let kinds = row_kinds_within(a, &active, tol);
        let remaining: Vec<usize> = active
            .iter()
            .zip(&kinds)
            .filter(|&(_, &k)| k != RowKind::Strict)
            .map(|(&i, _)| i)
            .collect();
        if remaining.is_empty() {
            return Peel {
                trace,
                outcome: PeelOutcome::SddReached,
                witness: None,
            };
        }
        let stalled = remaining.len() == active.len();
        if trace.is_empty() || !stalled {
            trace.push(IndexSet::from_sorted(remaining.clone(), n));
        }
        // zero rows are never strict, so they are all in `remaining`
        if let Some(&z) = remaining.iter().find(|&&i| a.diagonal_modulus(i) == 0.0) {
            return Peel {
                trace,
                outcome: PeelOutcome::ZeroDiagonal,
                witness: Some(IndexSet::from_sorted(vec![z], n)),
            };
        }
        if stalled {
            return Peel {
                trace,
                outcome: PeelOutcome::StagnantPeel,
                witness: Some(IndexSet::from_sorted(remaining, n)),
            };
        }
        active = remaining;
    }
}

fn require_dd(a: &Matrix, tol: Tolerance) -> Result<()> {
    if classify_dominance(a, tol).is_dd() {
        Ok(())
    } else {
        Err(Error::NotDiagonallyDominant)
    }
}

/// Decides whether a DD matrix is an H-matrix.
///
/// H verdicts carry a scaling certificate; the others carry a witness set.
/// Fails with [`Error::Inconsistent`] if the scaling for an H verdict cannot
/// be confirmed numerically.
pub fn is_h_dd(a: &Matrix, tol: Tolerance) -> Result<HVerdict> {
    require_dd(a, tol)?;
    let Peel {
        trace,
        outcome,
        witness,
    } = peel(a, tol);
    let is_h = outcome == PeelOutcome::SddReached;
    let scaling = if is_h {
        Some(scaling_certificate(a)?)
    } else {
        None
    };
    Ok(HVerdict {
        is_h,
        peel_trace: trace,
        scaling,
        witness,
        reason: outcome,
    })
}

/// A set `M ⊆ T(A)` such that `A|_{M^2}` is DD with no strict row, or a
/// singleton with a zero diagonal entry.
pub fn non_h_witness(a: &Matrix, tol: Tolerance) -> Result<IndexSet> {
    require_dd(a, tol)?;
    peel(a, tol).witness.ok_or(Error::IsHMatrix)
}

/// True when `a|_{m^2}` certifies that `a` is not an H-matrix.
pub fn is_valid_witness(a: &Matrix, m: &IndexSet, tol: Tolerance) -> bool {
    if m.is_empty() || m.universe_size() != a.order() {
        return false;
    }
    if !m.is_subset_of(&non_sdd_rows(a, tol)) {
        return false;
    }
    if m.len() == 1 && a.diagonal_modulus(m.members()[0]) == 0.0 {
        return true;
    }
    let kinds = row_kinds_within(a, m.members(), tol);
    kinds.iter().all(|&k| k == RowKind::Equality)
}

fn check_proper(a: &Matrix, s: &IndexSet) -> Result<()> {
    a.check_universe(s)?;
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    if s.is_full() {
        return Err(Error::NotProperSubset);
    }
    Ok(())
}

/// `r_i^S` and `r_i^{S̄}` for every row.
fn split_row_sums(a: &Matrix, s: &IndexSet) -> (Vec<f64>, Vec<f64>) {
    let complement = s.complement();
    (0..a.order())
        .map(|i| {
            (
                a.row_sum_over(i, s.iter()),
                a.row_sum_over(i, complement.iter()),
            )
        })
        .unzip()
}

/// S-strict diagonal dominance.
///
/// Requires `|a_ii| > r_i^S` for `i ∈ S`, and
/// `(|a_ii| - r_i^S)(|a_jj| - r_j^{S̄}) > r_i^{S̄} r_j^S` for every
/// `i ∈ S`, `j ∈ S̄`. Both inequalities are strict and evaluated without
/// tolerance.
pub fn s_sdd_check(a: &Matrix, s: &IndexSet) -> Result<bool> {
    check_proper(a, s)?;
    let (in_s, out_s) = split_row_sums(a, s);
    let complement = s.complement();
    for i in s.iter() {
        let gap_i = a.diagonal_modulus(i) - in_s[i];
        if gap_i <= 0.0 {
            return Ok(false);
        }
        for j in complement.iter() {
            let gap_j = a.diagonal_modulus(j) - out_s[j];
            if gap_i * gap_j <= out_s[i] * in_s[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A set `S` for which a DD matrix is S-SDD, if one exists.
///
/// For DD matrices such a set exists iff `T(A)` is empty or `A|_{T(A)^2}` is
/// SDD; the candidate is `{0}` in the first case and `T(A)` in the second.
/// The candidate is returned only after [`s_sdd_check`] confirms it.
pub fn find_ssdd_set_dd(a: &Matrix, tol: Tolerance) -> Result<Option<IndexSet>> {
    require_dd(a, tol)?;
    let n = a.order();
    if n < 2 {
        return Ok(None);
    }
    let t = non_sdd_rows(a, tol);
    let candidate = if t.is_empty() {
        IndexSet::from_sorted(vec![0], n)
    } else if t.is_full() {
        return Ok(None);
    } else if row_kinds_within(a, t.members(), tol)
        .iter()
        .all(|&k| k == RowKind::Strict)
    {
        t
    } else {
        return Ok(None);
    };
    Ok(s_sdd_check(a, &candidate)?.then_some(candidate))
}

/// `a / b` with `a/0 = ±inf` by the sign of `a` and `0/0 = 0`.
pub fn extended_ratio(numerator: f64, denominator: f64) -> f64 {
    if denominator == 0.0 {
        if numerator > 0.0 {
            f64::INFINITY
        } else if numerator < 0.0 {
            f64::NEG_INFINITY
        } else {
            0.0
        }
    } else {
        numerator / denominator
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SHReport {
    pub subset: IndexSet,
    /// `||M(A|_{S^2})^{-1} r^{S̄}(A)||_inf`; `None` when the comparison
    /// matrix of the block is singular.
    pub lhs: Option<f64>,
    /// `min_{j ∈ S̄} (|a_jj| - r_j^{S̄}) / r_j^S`, possibly infinite.
    pub b2: f64,
    pub satisfied: bool,
    pub inner_h: bool,
    /// Some `j` contributed `0/0 = 0` to `b2`, which makes the bound
    /// unsatisfiable.
    pub zero_over_zero: bool,
}

/// S-H test: `A|_{S^2}` is an H-matrix and `lhs < b2`.
///
/// The inner H-status comes from the peeling recursion when `A|_{S^2}` is DD
/// and from [`inverse_nonneg_oracle`] otherwise.
pub fn s_h_check(a: &Matrix, s: &IndexSet, tol: Tolerance) -> Result<SHReport> {
    check_proper(a, s)?;
    let (in_s, out_s) = split_row_sums(a, s);
    let block = a.principal_submatrix(s)?;

    let mut zero_over_zero = false;
    let b2 = s
        .complement()
        .iter()
        .map(|j| {
            let numerator = a.diagonal_modulus(j) - out_s[j];
            if numerator == 0.0 && in_s[j] == 0.0 {
                zero_over_zero = true;
            }
            extended_ratio(numerator, in_s[j])
        })
        .fold(f64::INFINITY, f64::min);

    let lu = LuFactorization::new(&comparison_matrix(&block));
    let rhs: Vec<f64> = s.iter().map(|i| out_s[i]).collect();
    let lhs = lu
        .solve(&rhs)
        .map(|x| x.iter().fold(0.0f64, |acc, v| acc.max(v.abs())));

    let inner_h = lhs.is_some()
        && if classify_dominance(&block, tol).is_dd() {
            peel(&block, tol).is_h()
        } else {
            inverse_nonneg_oracle(&block)
        };
    let satisfied = inner_h && lhs.is_some_and(|l| l < b2);
    Ok(SHReport {
        subset: s.clone(),
        lhs,
        b2,
        satisfied,
        inner_h,
        zero_over_zero,
    })
}

/// `min_i (|a_ii| d_i - sum_{j != i} |a_ij| d_j)`, summed in column order.
pub fn scaling_margin(a: &Matrix, d: &[f64]) -> f64 {
    (0..a.order())
        .map(|i| {
            let row = a.modulus_row(i);
            let mut off = 0.0;
            for (j, (&m, &dj)) in row.iter().zip(d).enumerate() {
                if j != i {
                    off += m * dj;
                }
            }
            row[i] * d[i] - off
        })
        .fold(f64::INFINITY, f64::min)
}

/// Positive `d` with `A diag(d)` strictly diagonally dominant.
///
/// Solves `M(A) d = 1`, so that every row of `A diag(d)` has margin exactly 1
/// before `d` is rescaled to `max d_i = 1`. The caller must already know that
/// `A` is an H-matrix; otherwise the solve or the positivity checks fail with
/// [`Error::Inconsistent`].
pub fn scaling_certificate(a: &Matrix) -> Result<ScalingCertificate> {
    let n = a.order();
    let lu = LuFactorization::new(&comparison_matrix(a));
    let d = lu
        .solve(&vec![1.0; n])
        .ok_or_else(|| Error::Inconsistent("comparison matrix is singular".into()))?;
    if !d.iter().all(|&v| v.is_finite() && v > 0.0) {
        return Err(Error::Inconsistent(
            "scaling vector has a nonpositive entry".into(),
        ));
    }
    let max = d.iter().copied().fold(0.0, f64::max);
    let d: Vec<f64> = d.iter().map(|v| v / max).collect();
    let margin = scaling_margin(a, &d);
    if margin.is_nan() || margin <= 0.0 {
        return Err(Error::Inconsistent(format!(
            "scaled matrix is not strictly diagonally dominant (margin {margin:e})"
        )));
    }
    Ok(ScalingCertificate { d, margin })
}
