//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails. Built with `harness = false` so the verdict
//! lines are always visible.

mod common;

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{
    brute_force_interwoven, corpus, corpus_spec, off_diagonal_patterns, pattern_matrix,
    proper_nonempty_subsets, subsets,
};
use hmatrix_dd::graph::{chain_condition, is_irreducible, is_valid_chain};
use hmatrix_dd::hmatrix::{find_ssdd_set_dd, is_h_dd, is_valid_witness, s_h_check, s_sdd_check};
use hmatrix_dd::interwoven::{
    interwoven_from_chains, interwoven_from_peeling, is_interwoven, verify_certificate,
};
use hmatrix_dd::matrix::{classify_dominance, comparison_matrix, non_sdd_rows};
use hmatrix_dd::mtx::{read_matrix_market, DEFAULT_MAX_N};
use hmatrix_dd::oracle::{
    in_boundary_band, inverse_nonneg_oracle, jacobi_oracle, jacobi_radius, random_dd_matrix,
    residual_within_bound, EnsembleSpec, LuFactorization,
};
use hmatrix_dd::report::{analyze, generate_files, verify_report, AnalysisReport, AnalyzeOptions};
use hmatrix_dd::{DominanceClass, Matrix, Tolerance};

const EXACT: Tolerance = Tolerance::EXACT;
const CORPUS_SIZE: u64 = 10_000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    summary: String,
    log: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, summary: String, log: Vec<String>) -> Self {
        Outcome {
            passed,
            summary,
            log,
        }
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed < Duration::from_secs(limit_secs)
}

fn band(a: &Matrix) -> Option<f64> {
    jacobi_radius(a).filter(|&rho| in_boundary_band(rho))
}

/// Chain condition versus interwoven T(A), on inputs with a nonzero
/// diagonal and T(A) a proper subset.
fn chains_match_interwoven() -> Outcome {
    let start = Instant::now();
    let (mut compared, mut holds, mut log) = (0, 0, Vec::new());
    for (k, a) in corpus(CORPUS_SIZE) {
        let t = non_sdd_rows(&a, EXACT);
        if a.has_zero_diagonal() || t.is_full() {
            continue;
        }
        compared += 1;
        let chain = chain_condition(&a, EXACT).holds;
        let woven = is_interwoven(&a, &t).unwrap().is_some();
        holds += usize::from(chain);
        if chain != woven {
            log.push(format!("member {k}: chain={chain} interwoven={woven}"));
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        log.is_empty() && within(elapsed, 60),
        format!(
            "{compared} of {CORPUS_SIZE} compared ({holds} hold), {} mismatches, {:.1?}",
            log.len(),
            elapsed
        ),
        log,
    )
}

/// Peeling verdict versus the structural condition and the inverse oracle.
fn peeling_matches_structure_and_oracle() -> Outcome {
    let (mut h_count, mut excluded, mut in_band_total, mut log) = (0, 0, 0, Vec::new());
    for (k, a) in corpus(CORPUS_SIZE) {
        let verdict = is_h_dd(&a, EXACT).unwrap().is_h;
        let t = non_sdd_rows(&a, EXACT);
        let structural = chain_condition(&a, EXACT).holds && !a.has_zero_diagonal() && !t.is_full();
        let oracle = inverse_nonneg_oracle(&a);
        h_count += usize::from(verdict);
        let rho = band(&a);
        in_band_total += usize::from(rho.is_some());
        if verdict != structural {
            log.push(format!(
                "member {k}: peeling={verdict} structural={structural}"
            ));
        }
        if verdict != oracle {
            match rho {
                Some(r) => {
                    excluded += 1;
                    println!("      band-excluded member {k}: peeling={verdict} oracle={oracle} rho={r:.3e}");
                }
                None => log.push(format!("member {k}: peeling={verdict} oracle={oracle}")),
            }
        }
    }
    Outcome::new(
        log.is_empty(),
        format!(
            "{h_count} H / {} not H, {} mismatches, {excluded} band-excluded disagreements ({in_band_total} members in band)",
            CORPUS_SIZE as usize - h_count,
            log.len()
        ),
        log,
    )
}

/// Greedy interwoven test versus exhaustive sequence search on every 0/1
/// pattern of order at most 4 and every proper subset.
fn greedy_is_complete() -> Outcome {
    let start = Instant::now();
    let (mut cases, mut yes, mut log) = (0u64, 0u64, Vec::new());
    for n in 1..=4 {
        for bits in off_diagonal_patterns(n) {
            let a = pattern_matrix(n, bits);
            for s in subsets(n).filter(|s| !s.is_full()) {
                cases += 1;
                let greedy = is_interwoven(&a, &s).unwrap();
                let brute = brute_force_interwoven(&a, &s);
                yes += u64::from(brute);
                if greedy.is_some() != brute {
                    log.push(format!(
                        "n={n} pattern={bits:#x} S={s}: greedy={} brute={brute}",
                        greedy.is_some()
                    ));
                }
                if let Some(c) = greedy {
                    if !verify_certificate(&a, &c).unwrap() {
                        log.push(format!(
                            "n={n} pattern={bits:#x} S={s}: certificate does not verify"
                        ));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        log.is_empty() && within(elapsed, 120),
        format!(
            "{cases} (pattern, subset) pairs, {yes} interwoven, {} mismatches, {:.1?}",
            log.len(),
            elapsed
        ),
        log,
    )
}

/// Every certificate emitted for a corpus member re-verifies.
fn certificates_verify() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hmatrix-dd");
    let dir = tempfile::tempdir().unwrap();
    let mut log = Vec::new();
    let (mut chains, mut woven, mut witnesses, mut scalings, mut via_cli) = (0, 0, 0, 0, 0);
    for (k, a) in corpus(CORPUS_SIZE) {
        let report = analyze(&a, &AnalyzeOptions::default()).unwrap();
        let verification = verify_report(&report, &a);
        if !verification.passed() {
            log.push(format!("member {k}: {}", verification.to_string().trim()));
        }
        let t = non_sdd_rows(&a, EXACT);
        for path in chain_condition(&a, EXACT).paths.values() {
            chains += 1;
            if !is_valid_chain(&a, &t, path) {
                log.push(format!("member {k}: invalid chain {path:?}"));
            }
        }
        let certs = [
            interwoven_from_chains(&a, EXACT),
            interwoven_from_peeling(&a, EXACT).unwrap(),
        ];
        for c in certs.into_iter().flatten() {
            woven += 1;
            if !verify_certificate(&a, &c).unwrap() {
                log.push(format!("member {k}: interwoven certificate fails"));
            }
        }
        let v = is_h_dd(&a, EXACT).unwrap();
        if let Some(m) = &v.witness {
            witnesses += 1;
            let sub = a.principal_submatrix(m).unwrap();
            let shape_ok = (m.len() == 1 && sub.has_zero_diagonal())
                || classify_dominance(&sub, EXACT) == DominanceClass::DDEquality;
            if !shape_ok || !is_valid_witness(&a, m, EXACT) {
                log.push(format!("member {k}: witness {m} fails"));
            }
        }
        if let Some(sc) = &v.scaling {
            scalings += 1;
            if !(sc.margin > 0.0 && sc.d.iter().all(|&d| d > 0.0 && d <= 1.0)) {
                log.push(format!(
                    "member {k}: scaling margin={} d={:?}",
                    sc.margin, sc.d
                ));
            }
        }
        // A slice of the corpus goes through the binary end to end.
        if k % 100 == 0 {
            via_cli += 1;
            let m = dir.path().join("m.mtx");
            let r = dir.path().join("r.json");
            std::fs::write(&m, hmatrix_dd::mtx::write_matrix_market(&a)).unwrap();
            std::fs::write(&r, report.to_json().unwrap()).unwrap();
            let status = Command::new(bin)
                .arg("verify")
                .arg(&r)
                .arg(&m)
                .output()
                .unwrap()
                .status;
            if status.code() != Some(0) {
                log.push(format!("member {k}: verify exited {status}"));
            }
        }
    }
    Outcome::new(
        log.is_empty(),
        format!(
            "{chains} paths, {woven} interwoven certificates, {witnesses} witnesses, {scalings} scalings, {via_cli} binary runs, {} failures",
            log.len()
        ),
        log,
    )
}

/// Matrices passing the S-SDD or S-H tests are H according to the inverse
/// oracle, and the S-SDD search agrees with trying every subset.
fn subset_conditions_imply_h() -> Outcome {
    let mut log = Vec::new();
    let (mut ssdd, mut sh) = (0, 0);
    for k in 0..5_000u64 {
        let spec = EnsembleSpec {
            seed: 1_000_000 + k,
            ..corpus_spec(k)
        };
        let a = random_dd_matrix(&spec).unwrap();
        let oracle = inverse_nonneg_oracle(&a);
        if let Some(s) = find_ssdd_set_dd(&a, EXACT).unwrap() {
            if s_sdd_check(&a, &s).unwrap() {
                ssdd += 1;
                if !oracle {
                    log.push(format!(
                        "seed {}: S-SDD for S={s} but oracle rejects",
                        spec.seed
                    ));
                }
            }
        }
        let t = non_sdd_rows(&a, EXACT);
        if !t.is_empty() && !t.is_full() && s_h_check(&a, &t, EXACT).unwrap().satisfied {
            sh += 1;
            if !oracle {
                log.push(format!("seed {}: S-H for T but oracle rejects", spec.seed));
            }
        }
    }
    let mut found = 0;
    for k in 0..500u64 {
        let n = 2 + (k % 5) as usize;
        let spec = EnsembleSpec {
            complex_entries: k % 3 == 0,
            ..EnsembleSpec::new(
                n,
                common::DENSITIES[(k % 3) as usize],
                [0.3, 0.5, 0.7, 1.0][(k % 4) as usize],
                2_000_000 + k,
            )
        };
        let a = random_dd_matrix(&spec).unwrap();
        let exhaustive = proper_nonempty_subsets(n).any(|s| s_sdd_check(&a, &s).unwrap());
        let searched = find_ssdd_set_dd(&a, EXACT).unwrap().is_some();
        found += usize::from(exhaustive);
        if exhaustive != searched {
            log.push(format!(
                "seed {}: exhaustive={exhaustive} search={searched}",
                spec.seed
            ));
        }
    }
    Outcome::new(
        log.is_empty(),
        format!(
            "{ssdd} S-SDD and {sh} S-H positives among 5000, all H; exhaustive subsets on 500 ({found} S-SDD), {} counterexamples",
            log.len()
        ),
        log,
    )
}

/// Peeling verdict versus the S-H test with S = T(A).
fn huang_matches_peeling() -> Outcome {
    let (mut compared, mut boundary, mut log) = (0, 0, Vec::new());
    for (k, a) in corpus(CORPUS_SIZE) {
        let t = non_sdd_rows(&a, EXACT);
        if t.is_empty() || t.is_full() || a.principal_submatrix(&t).unwrap().has_zero_diagonal() {
            continue;
        }
        compared += 1;
        let sh = s_h_check(&a, &t, EXACT).unwrap();
        let verdict = is_h_dd(&a, EXACT).unwrap().is_h;
        if verdict != sh.satisfied {
            match sh.lhs {
                Some(lhs) if (lhs - sh.b2).abs() <= 1e-9 * sh.b2.abs().max(1.0) => {
                    boundary += 1;
                    println!(
                        "      boundary member {k}: peeling={verdict} lhs={lhs} b2={}",
                        sh.b2
                    );
                }
                lhs => log.push(format!(
                    "member {k}: peeling={verdict} S-H={} lhs={lhs:?} b2={}",
                    sh.satisfied, sh.b2
                )),
            }
        }
    }
    Outcome::new(
        log.is_empty(),
        format!(
            "{compared} compared, {} substantive disagreements, {boundary} at the boundary",
            log.len()
        ),
        log,
    )
}

/// Irreducible DD+ matrices are H.
fn taussky_matrices_are_h() -> Outcome {
    let (mut accepted, mut drawn, mut log) = (0, 0u64, Vec::new());
    while accepted < 2_000 {
        let n = 2 + (drawn % 7) as usize;
        let density = [0.5, 0.9, 1.0][(drawn % 3) as usize];
        let spec = EnsembleSpec {
            complex_entries: drawn % 4 == 0,
            ..EnsembleSpec::new(n, density, 0.8, 3_000_000 + drawn)
        };
        drawn += 1;
        let a = random_dd_matrix(&spec).unwrap();
        if !is_irreducible(&a) || classify_dominance(&a, EXACT) != DominanceClass::DDPlus {
            continue;
        }
        accepted += 1;
        if !inverse_nonneg_oracle(&a) {
            log.push(format!("seed {}: oracle rejects", spec.seed));
        }
    }
    Outcome::new(
        log.is_empty(),
        format!(
            "{accepted} accepted of {drawn} drawn, {} failures",
            log.len()
        ),
        log,
    )
}

/// LU residuals and agreement of the two oracles.
fn oracles_are_consistent() -> Outcome {
    let (mut solves, mut compared, mut log) = (0, 0, Vec::new());
    for (k, a) in corpus(CORPUS_SIZE) {
        let m = comparison_matrix(&a);
        let n = m.order();
        let lu = LuFactorization::new(&m);
        if !lu.is_singular() {
            let scale = 1e-10 * m.inf_norm();
            let pm = lu.permute_rows(&m);
            let product = lu.product();
            if pm
                .data()
                .iter()
                .zip(product.data())
                .any(|(x, y)| (x - y).abs() > scale)
            {
                log.push(format!("member {k}: P*M differs from L*U"));
            }
            let mut rhs = vec![vec![1.0; n]];
            rhs.extend((0..n).map(|c| (0..n).map(|r| f64::from(u8::from(r == c))).collect()));
            for b in rhs {
                solves += 1;
                let x = lu.solve(&b).unwrap();
                if !residual_within_bound(&m, &x, &b) {
                    log.push(format!("member {k}: residual bound violated"));
                }
            }
        }
        if band(&a).is_none() {
            compared += 1;
            let (inv, jac) = (inverse_nonneg_oracle(&a), jacobi_oracle(&a));
            if inv != jac {
                log.push(format!(
                    "member {k}: inverse={inv} jacobi={jac} rho={:?}",
                    jacobi_radius(&a)
                ));
            }
        }
    }
    Outcome::new(
        log.is_empty(),
        format!(
            "{solves} solves within bound, oracles compared on {compared} members, {} failures",
            log.len()
        ),
        log,
    )
}

/// Golden reports for the fixtures and lossless Matrix Market round trips.
fn fixtures_and_round_trip() -> Outcome {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut log = Vec::new();
    for name in ["upper_chain", "closed_pair", "identity2"] {
        let out = Command::new(env!("CARGO_BIN_EXE_hmatrix-dd"))
            .arg("analyze")
            .arg(root.join(format!("{name}.mtx")))
            .output()
            .unwrap();
        let mut got: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        got.as_object_mut().unwrap().remove("tool_version");
        let golden: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(root.join(format!("golden/{name}.json"))).unwrap(),
        )
        .unwrap();
        if out.status.code() != Some(0) || got != golden {
            log.push(format!("{name}: report differs from golden file"));
        }
        let parsed = AnalysisReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
        let a = read_matrix_market(root.join(format!("{name}.mtx")), DEFAULT_MAX_N).unwrap();
        if !verify_report(&parsed, &a).passed() {
            log.push(format!("{name}: golden report does not verify"));
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let mut files = 0;
    for k in 0..60u64 {
        let spec = EnsembleSpec {
            complex_entries: k % 2 == 1,
            ..EnsembleSpec::new(1 + (k % 8) as usize, 0.6, 0.5, 4_000_000 + k)
        };
        let paths = generate_files(&spec, 3, dir.path()).unwrap();
        for (member, path) in paths.iter().enumerate() {
            files += 1;
            let expected = random_dd_matrix(&EnsembleSpec {
                seed: spec.seed + member as u64,
                ..spec.clone()
            })
            .unwrap();
            let back = read_matrix_market(path, DEFAULT_MAX_N).unwrap();
            let n = expected.order();
            let same = back.order() == n
                && (0..n).all(|i| {
                    (0..n).all(|j| back.modulus(i, j).to_bits() == expected.modulus(i, j).to_bits())
                });
            if !same {
                log.push(format!(
                    "{}: moduli differ after round trip",
                    path.display()
                ));
            }
        }
    }
    Outcome::new(
        log.is_empty(),
        format!(
            "3 golden reports, {files} generated files round-tripped, {} failures",
            log.len()
        ),
        log,
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "chain condition agrees with interwoven T(A)",
            chains_match_interwoven,
        ),
        (
            "peeling agrees with chain structure and inverse oracle",
            peeling_matches_structure_and_oracle,
        ),
        (
            "greedy interwoven test is complete for n <= 4",
            greedy_is_complete,
        ),
        ("all emitted certificates verify", certificates_verify),
        (
            "S-SDD and S-H imply H; subset search is exhaustive",
            subset_conditions_imply_h,
        ),
        (
            "S-H with S = T(A) agrees with peeling",
            huang_matches_peeling,
        ),
        ("irreducible DD+ matrices are H", taussky_matrices_are_h),
        ("LU residuals and oracle agreement", oracles_are_consistent),
        (
            "golden fixtures and Matrix Market round trip",
            fixtures_and_round_trip,
        ),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {}: {title}: {}",
            k + 1,
            outcome.summary
        );
        for line in outcome.log.iter().take(20) {
            println!("      {line}");
        }
        failed += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
