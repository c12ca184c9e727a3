//! Reproducible random diagonally dominant matrices and a small survey of
//! how often they are H-matrices.

use hmatrix_dd::graph::chain_condition;
use hmatrix_dd::hmatrix::is_h_dd;
use hmatrix_dd::matrix::classify_dominance;
use hmatrix_dd::oracle::{inverse_nonneg_oracle, random_dd_matrix, EnsembleSpec, SplitMix64};
use hmatrix_dd::Tolerance;

fn main() -> hmatrix_dd::Result<()> {
    let mut rng = SplitMix64::new(0);
    println!(
        "SplitMix64(0): {:#018x} {:#018x}",
        rng.next_u64(),
        rng.next_u64()
    );

    let spec = EnsembleSpec::new(4, 0.5, 0.5, 42);
    let a = random_dd_matrix(&spec)?;
    for i in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|j| format!("{:8.5}", a.entry(i, j).re))
            .collect();
        println!("  {}", row.join(" "));
    }
    assert_eq!(a, random_dd_matrix(&spec)?, "same seed, same matrix");

    println!("\n density  equality   H share");
    let tol = Tolerance::EXACT;
    for density in [0.2, 0.5, 0.9] {
        for equality in [0.3, 0.7, 1.0] {
            let mut h = 0;
            for seed in 0..400 {
                let a = random_dd_matrix(&EnsembleSpec::new(6, density, equality, seed))?;
                assert!(classify_dominance(&a, tol).is_dd());
                let verdict = is_h_dd(&a, tol)?.is_h;
                assert_eq!(verdict, inverse_nonneg_oracle(&a));
                assert!(!verdict || chain_condition(&a, tol).holds);
                h += usize::from(verdict);
            }
            println!(
                "   {density:.1}      {equality:.1}     {:5.1}%",
                h as f64 / 4.0
            );
        }
    }
    Ok(())
}
