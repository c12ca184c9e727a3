//! Deciding whether a diagonally dominant matrix is an H-matrix, with the
//! certificate for either answer.

use hmatrix_dd::hmatrix::{is_h_dd, is_valid_witness, scaling_margin};
use hmatrix_dd::{Matrix, Tolerance};

fn main() -> hmatrix_dd::Result<()> {
    let tol = Tolerance::EXACT;
    let cases = [
        (
            "upper chain",
            Matrix::from_rows([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 0.0, 2.0]]),
        ),
        (
            "closed pair",
            Matrix::from_rows([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 2.0]]),
        ),
        ("empty row", Matrix::from_rows([[0.0, 0.0], [1.0, 2.0]])),
        ("identity", Matrix::identity(3)),
    ];
    for (label, a) in &cases {
        let v = is_h_dd(a, tol)?;
        let trace: Vec<String> = v.peel_trace.iter().map(ToString::to_string).collect();
        println!(
            "{label}: H = {} ({:?}), peel trace [{}]",
            v.is_h,
            v.reason,
            trace.join(" ")
        );
        if let Some(s) = &v.scaling {
            // A * diag(d) is strictly dominant with the reported margin.
            println!(
                "  d = {:?}, margin {:.4}, recomputed {:.4}",
                s.d,
                s.margin,
                scaling_margin(a, &s.d)
            );
        }
        if let Some(m) = &v.witness {
            println!("  witness {m}, valid: {}", is_valid_witness(a, m, tol));
        }
    }

    // Matrices that are not diagonally dominant are refused.
    let not_dd = Matrix::from_rows([[1.0, 2.0], [0.0, 1.0]]);
    println!("not dominant: {}", is_h_dd(&not_dd, tol).unwrap_err());
    Ok(())
}
