//! Row sums, dominance classes and the comparison matrix.
//!
//! Run with `cargo run --example classify`.

use hmatrix_dd::matrix::{classify_dominance, comparison_matrix, is_sdd_by_columns, non_sdd_rows};
use hmatrix_dd::{IndexSet, Matrix, Tolerance};
use num_complex::Complex64;

fn main() -> hmatrix_dd::Result<()> {
    let exact = Tolerance::EXACT;
    let samples = [
        ("strict", Matrix::from_rows([[2.0, 1.0], [1.0, 2.0]])),
        ("all equality", Matrix::from_rows([[1.0, 1.0], [1.0, 1.0]])),
        (
            "one strict row",
            Matrix::from_rows([[1.0, 1.0], [1.0, 2.0]]),
        ),
        ("not dominant", Matrix::from_rows([[1.0, 2.0], [2.0, 1.0]])),
    ];
    for (label, a) in &samples {
        println!(
            "{label:>15}: class {:<10} T = {}",
            classify_dominance(a, exact).to_string(),
            non_sdd_rows(a, exact)
        );
    }

    // Complex entries enter only through their moduli.
    let c = Matrix::from_complex_rows([
        [Complex64::new(1.0, 0.0), Complex64::new(3.0, 4.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(6.0, 0.0)],
    ]);
    println!("\ncomplex row 1 deleted sum: {}", c.deleted_row_sum(0)?);
    println!(
        "comparison matrix rows: {:?} {:?}",
        comparison_matrix(&c).row(0),
        comparison_matrix(&c).row(1)
    );

    let a = Matrix::from_rows([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 0.0, 2.0]]);
    let s = IndexSet::new([0, 1], 3)?;
    for i in 0..3 {
        println!(
            "row {}: r_i = {}, over S = {}, over complement = {}",
            i + 1,
            a.deleted_row_sum(i)?,
            a.partial_row_sum(i, &s)?,
            a.partial_row_sum(i, &s.complement())?
        );
    }
    let sub = a.principal_submatrix(&s)?;
    let rows: Vec<Vec<f64>> = (0..sub.order())
        .map(|i| (0..sub.order()).map(|j| sub.entry(i, j).re).collect())
        .collect();
    println!("A restricted to S = {s}: {rows:?}");

    // A tolerance widens the equality band around |a_ii| = r_i.
    let nearly = Matrix::from_rows([[1.0 + 1e-12, 1.0], [0.0, 1.0]]);
    println!(
        "\nexact: {}, tol 1e-9: {}",
        classify_dominance(&nearly, exact),
        classify_dominance(&nearly, Tolerance::new(1e-9)?)
    );
    println!(
        "columns strictly dominant for [[3,1],[2,5]]: {}",
        is_sdd_by_columns(&Matrix::from_rows([[3.0, 1.0], [2.0, 5.0]]), exact)
    );
    Ok(())
}
