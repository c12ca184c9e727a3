//! Nonzero-entry chains out of T(A), reachability, and the Frobenius normal
//! form.

use hmatrix_dd::graph::{
    build_graph, chain_condition, frobenius_normal_form, is_irreducible, taussky_test,
};
use hmatrix_dd::{IndexSet, Matrix, Tolerance};

fn show(label: &str, a: &Matrix) {
    let tol = Tolerance::EXACT;
    let report = chain_condition(a, tol);
    println!("{label}: chain condition holds = {}", report.holds);
    for (start, path) in &report.paths {
        let path: Vec<usize> = path.iter().map(|v| v + 1).collect();
        println!("  row {} reaches a strict row via {:?}", start + 1, path);
    }
    if !report.unreachable.is_empty() {
        println!("  stuck rows: {}", report.unreachable);
    }

    let f = frobenius_normal_form(a);
    let blocks: Vec<String> = f.blocks.iter().map(ToString::to_string).collect();
    println!("  diagonal blocks: {}", blocks.join(" "));
    println!(
        "  irreducible: {}, Taussky test: {}",
        is_irreducible(a),
        taussky_test(a, tol)
    );
}

fn main() -> hmatrix_dd::Result<()> {
    let upper_chain = Matrix::from_rows([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 0.0, 2.0]]);
    let closed_pair = Matrix::from_rows([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 2.0]]);
    let cycle = Matrix::from_rows([
        [2.0, 1.0, 0.0, 0.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 0.0, 1.0, 1.0],
        [1.0, 0.0, 0.0, 1.0],
    ]);
    show("upper chain", &upper_chain);
    show("closed pair", &closed_pair);
    show("4-cycle", &cycle);

    let g = build_graph(&closed_pair);
    let target = IndexSet::singleton(2, 3)?;
    println!(
        "\nrows of the closed pair that reach row 3: {}",
        g.reaches_target_set(&target)?
    );
    Ok(())
}
