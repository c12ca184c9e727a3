//! Interwoven sets: the greedy decision procedure, its certificates, and the
//! two constructions that build one for T(A).

use hmatrix_dd::interwoven::{
    interwoven_from_chains, interwoven_from_peeling, is_interwoven, verify_certificate,
};
use hmatrix_dd::{IndexSet, InterwovenCertificate, Matrix, Tolerance};

fn describe(cert: &InterwovenCertificate) -> String {
    let pairs: Vec<String> = cert
        .p_seq
        .iter()
        .zip(&cert.q_seq)
        .map(|(p, q)| format!("{}->{}", p + 1, q + 1))
        .collect();
    let leftover = cert
        .leftover
        .map_or("-".to_string(), |l| (l + 1).to_string());
    format!(
        "S = {}, pairs [{}], leftover {leftover}",
        cert.subset,
        pairs.join(", ")
    )
}

fn main() -> hmatrix_dd::Result<()> {
    let tol = Tolerance::EXACT;
    // Rows 1..4 are equality rows. Row 4 leaks into row 5, and the others
    // feed into row 4 along a chain.
    let a = Matrix::from_rows([
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 0.0, 3.0],
    ]);

    for members in [vec![0, 1, 2, 3], vec![0, 1], vec![2, 4]] {
        let s = IndexSet::new(members, 5)?;
        match is_interwoven(&a, &s)? {
            Some(cert) => println!("greedy:  {}", describe(&cert)),
            None => println!("greedy:  S = {s} is not interwoven"),
        }
    }

    let from_chains = interwoven_from_chains(&a, tol).expect("chain condition holds");
    let from_peeling = interwoven_from_peeling(&a, tol)?.expect("chain condition holds");
    println!("chains:  {}", describe(&from_chains));
    println!("peeling: {}", describe(&from_peeling));

    // Certificates are plain data and can be checked independently.
    let mut forged = from_chains.clone();
    forged.q_seq[0] = forged.p_seq[0];
    println!(
        "verify: chains {}, peeling {}, forged {}",
        verify_certificate(&a, &from_chains)?,
        verify_certificate(&a, &from_peeling)?,
        verify_certificate(&a, &forged)?
    );
    Ok(())
}
