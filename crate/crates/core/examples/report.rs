//! Matrix Market in, JSON report out, and re-verification of the report's
//! certificates (the library side of the `hmatrix-dd` binary).

use hmatrix_dd::mtx::{parse_matrix_market, write_matrix_market};
use hmatrix_dd::report::{analyze, verify_report, AnalysisReport, AnalyzeOptions, Real};
use hmatrix_dd::IndexSet;

const UPPER_CHAIN: &str = "\
%%MatrixMarket matrix coordinate real general
3 3 5
1 1 1.0
1 2 1.0
2 2 1.0
2 3 -1.0
3 3 2.0
";

fn main() -> hmatrix_dd::Result<()> {
    let a = parse_matrix_market(UPPER_CHAIN)?;
    let opts = AnalyzeOptions {
        oracle: true,
        subset: Some(IndexSet::from_one_based(&[1], 3)?),
        ..AnalyzeOptions::default()
    };
    let report = analyze(&a, &opts)?;
    let json = report.to_json()?;
    println!("{json}");

    let parsed = AnalysisReport::from_json(&json)?;
    print!("{}", verify_report(&parsed, &a));

    // Shrinking the first scaling entry breaks the strict dominance of A*D.
    let mut tampered = parsed.clone();
    if let Some(s) = tampered.scaling.as_mut() {
        s.d[0] = Real(0.1);
    }
    let v = verify_report(&tampered, &a);
    println!("tampered report passes: {}", v.passed());

    print!("\nre-serialized matrix:\n{}", write_matrix_market(&a));
    Ok(())
}
