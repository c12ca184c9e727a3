//! The S-SDD and S-H subset conditions, which give H-matrix sufficient
//! conditions that avoid peeling.

use hmatrix_dd::hmatrix::{find_ssdd_set_dd, s_h_check, s_sdd_check};
use hmatrix_dd::matrix::non_sdd_rows;
use hmatrix_dd::{IndexSet, Matrix, Tolerance};

fn main() -> hmatrix_dd::Result<()> {
    let tol = Tolerance::EXACT;

    let a = Matrix::from_rows([[4.0, 1.0, 1.0], [1.0, 3.0, 1.0], [2.0, 2.0, 4.0]]);
    for members in [vec![0], vec![0, 1], vec![2]] {
        let s = IndexSet::new(members, 3)?;
        println!("S-SDD for S = {s}: {}", s_sdd_check(&a, &s)?);
    }
    println!(
        "search finds {:?}",
        find_ssdd_set_dd(&a, tol)?.map(|s| s.to_string())
    );

    let b = Matrix::from_rows([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 0.0, 2.0]]);
    println!(
        "\nS-SDD search on the upper chain: {:?}",
        find_ssdd_set_dd(&b, tol)?
    );

    let t = non_sdd_rows(&b, tol);
    let r = s_h_check(&b, &t, tol)?;
    println!(
        "S-H with S = T = {}: lhs {:?}, B2 {}, inner block H {}, satisfied {}",
        r.subset, r.lhs, r.b2, r.inner_h, r.satisfied
    );

    // Equality at the bound is not enough: lhs must stay strictly below B2.
    let boundary = Matrix::from_rows([[1.0, 1.0], [1.0, 1.0]]);
    let r = s_h_check(&boundary, &IndexSet::singleton(0, 2)?, tol)?;
    println!(
        "boundary case: lhs {:?} vs B2 {} -> satisfied {}",
        r.lhs, r.b2, r.satisfied
    );
    Ok(())
}
