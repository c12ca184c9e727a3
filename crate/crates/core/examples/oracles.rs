//! The independent ground-truth machinery: LU solves, the M-matrix inverse
//! test and the Jacobi spectral radius.

use hmatrix_dd::matrix::comparison_matrix;
use hmatrix_dd::oracle::{
    comparison_inverse, inverse_nonneg_oracle, jacobi_oracle, jacobi_radius, lu_solve,
    spectral_radius, LuFactorization,
};
use hmatrix_dd::{Matrix, RealMatrix};

fn main() {
    let m = RealMatrix::from_rows([[1.0, -1.0], [0.0, 1.0]]);
    println!(
        "solve [[1,-1],[0,1]] x = (0,1): {:?}",
        lu_solve(&m, &[vec![0.0, 1.0]])
    );
    let rank_one = RealMatrix::from_rows([[1.0, 1.0], [1.0, 1.0]]);
    println!(
        "rank-one matrix singular: {}",
        LuFactorization::new(&rank_one).is_singular()
    );

    let b = RealMatrix::from_rows([[0.0, 1.0], [0.25, 0.0]]);
    println!(
        "spectral radius of [[0,1],[0.25,0]]: {:.6}",
        spectral_radius(&b)
    );

    for (label, a) in [
        ("[[1,1],[1,2]]", Matrix::from_rows([[1.0, 1.0], [1.0, 2.0]])),
        ("[[1,1],[1,1]]", Matrix::from_rows([[1.0, 1.0], [1.0, 1.0]])),
        ("[[1,2],[2,1]]", Matrix::from_rows([[1.0, 2.0], [2.0, 1.0]])),
    ] {
        println!(
            "{label}: M(A) = {:?}, inverse {:?}",
            comparison_matrix(&a).data(),
            comparison_inverse(&a).map(|inv| inv.data().to_vec())
        );
        println!(
            "    inverse test {}, Jacobi test {} (rho = {:?})",
            inverse_nonneg_oracle(&a),
            jacobi_oracle(&a),
            jacobi_radius(&a)
        );
    }
}
