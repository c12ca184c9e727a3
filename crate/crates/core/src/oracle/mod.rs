//! Ground truth used to cross-check the combinatorial tests.
//!
//! Two independent H-matrix oracles live here. [`inverse_nonneg_oracle`] is
//! the reference: `A` is an H-matrix iff its comparison matrix is a
//! nonsingular M-matrix, i.e. `M(A)` is invertible with `M(A)^{-1} >= 0`.
//! [`jacobi_oracle`] checks `rho(I - D^{-1} M(A)) < 1` instead and exists so
//! that a defect in the LU code cannot silently corrupt the reference.

mod ensemble;
mod lu;

pub use ensemble::{random_dd_matrix, EnsembleSpec, SplitMix64};
pub use lu::{lu_solve, residual_within_bound, LuFactorization};

use crate::matrix::{comparison_matrix, Matrix, RealMatrix};

/// Half-width of the band around `rho = 1` inside which the two oracles are
/// not expected to agree.
pub const BOUNDARY_BAND: f64 = 1e-6;

/// Relative slack for negative entries of `M(A)^{-1}` in the inverse oracle.
pub const INVERSE_SIGN_SLACK: f64 = 1e-9;

/// `M(A)^{-1}`, or `None` when the comparison matrix is numerically singular.
pub fn comparison_inverse(a: &Matrix) -> Option<RealMatrix> {
    let m = comparison_matrix(a);
    let n = m.order();
    let identity: Vec<Vec<f64>> = (0..n)
        .map(|k| (0..n).map(|i| if i == k { 1.0 } else { 0.0 }).collect())
        .collect();
    let columns = lu_solve(&m, &identity)?;
    let mut inverse = RealMatrix::zeros(n);
    for (k, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            inverse.set(i, k, v);
        }
    }
    Some(inverse)
}

/// True iff every diagonal entry is nonzero, `M(A)` is nonsingular and
/// `M(A)^{-1}` is entrywise nonnegative up to a relative slack.
pub fn inverse_nonneg_oracle(a: &Matrix) -> bool {
    if a.has_zero_diagonal() {
        return false;
    }
    let Some(inverse) = comparison_inverse(a) else {
        return false;
    };
    let floor = -INVERSE_SIGN_SLACK * inverse.inf_norm();
    inverse.data().iter().all(|&v| v >= floor)
}

/// Estimates the spectral radius of an entrywise nonnegative matrix as
/// `||B^(2^k)||_inf^(1/2^k)`, rescaling after every squaring.
///
/// Writing `B^(2^k) = e^L C` with `||C|| = 1`, once `C` is a fixed point of
/// `C -> C^2 / ||C^2||` the limit `e^((L + ln ||C^2||) / 2^k)` is returned
/// directly.
pub fn spectral_radius(b: &RealMatrix) -> f64 {
    const MAX_SQUARINGS: u32 = 40;
    let norm = b.inf_norm();
    if norm == 0.0 {
        return 0.0;
    }
    let n = b.order();
    let scale = |m: &RealMatrix, s: f64| {
        RealMatrix::new(n, m.data().iter().map(|v| v / s).collect()).expect("same shape")
    };
    let mut c = scale(b, norm);
    let mut log_norm = norm.ln();
    let mut exponent = 1.0;
    for _ in 0..MAX_SQUARINGS {
        let squared = c.mul(&c);
        let nu = squared.inf_norm();
        if nu == 0.0 {
            return 0.0;
        }
        let next = scale(&squared, nu);
        let fixed = c
            .data()
            .iter()
            .zip(next.data())
            .all(|(x, y)| (x - y).abs() <= 1e-15);
        if fixed {
            return ((log_norm + nu.ln()) / exponent).exp();
        }
        c = next;
        log_norm = 2.0 * log_norm + nu.ln();
        exponent *= 2.0;
    }
    (log_norm / exponent).exp()
}

/// `I - D^{-1} M(A)`: zero diagonal, `|a_ij| / |a_ii|` elsewhere. `None` if
/// some diagonal entry is zero.
pub fn jacobi_matrix(a: &Matrix) -> Option<RealMatrix> {
    if a.has_zero_diagonal() {
        return None;
    }
    let n = a.order();
    let mut j = RealMatrix::zeros(n);
    for row in 0..n {
        let d = a.diagonal_modulus(row);
        for col in 0..n {
            if col != row {
                j.set(row, col, a.modulus(row, col) / d);
            }
        }
    }
    Some(j)
}

/// Spectral radius of the Jacobi iteration matrix of `M(A)`.
pub fn jacobi_radius(a: &Matrix) -> Option<f64> {
    jacobi_matrix(a).map(|j| spectral_radius(&j))
}

pub fn in_boundary_band(rho: f64) -> bool {
    (rho - 1.0).abs() <= BOUNDARY_BAND
}

pub fn jacobi_oracle(a: &Matrix) -> bool {
    jacobi_radius(a).is_some_and(|rho| rho < 1.0 - 1e-9)
}
