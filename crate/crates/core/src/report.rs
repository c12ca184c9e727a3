//! JSON analysis reports and their independent re-verification.
//!
//! Indices in reports are 1-based. Reals are written in fixed decimal
//! notation with 17 significant digits; infinite values are the strings
//! `"inf"` and `"-inf"`. The schema is `docs/report.schema.json` at the
//! repository root.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::graph::{chain_condition, is_valid_chain};
use crate::hmatrix::{
    find_ssdd_set_dd, is_valid_witness, peel, s_h_check, s_sdd_check, scaling_certificate,
    scaling_margin, PeelOutcome,
};
use crate::interwoven::{is_interwoven, verify_certificate, InterwovenCertificate};
use crate::matrix::{
    classify_dominance, non_sdd_rows, DominanceClass, IndexSet, Matrix, Tolerance,
};
use crate::mtx::write_matrix_market;
use crate::oracle::{
    in_boundary_band, inverse_nonneg_oracle, jacobi_oracle, jacobi_radius, random_dd_matrix,
    EnsembleSpec,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A real number with a language-independent JSON rendering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

/// Fixed decimal notation with 17 significant digits.
///
/// The digits are those of the shortest-exponent scientific rendering, so
/// the string parses back to `x` exactly. Magnitudes of `1e16` and above are
/// padded with zeros up to the decimal point.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000".to_string();
    }
    let scientific = format!("{:.16e}", x.abs());
    let (mantissa, exponent) = scientific.split_once('e').expect("scientific rendering");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let digits = mantissa.replace('.', "");
    let sign = if x < 0.0 { "-" } else { "" };
    if exponent < 0 {
        let zeros = "0".repeat((-exponent - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    } else if exponent < 16 {
        let (int, frac) = digits.split_at(exponent as usize + 1);
        format!("{sign}{int}.{frac}")
    } else {
        let zeros = "0".repeat((exponent - 16) as usize);
        format!("{sign}{digits}{zeros}.0")
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let x = self.0;
        if x.is_nan() {
            return Err(serde::ser::Error::custom("NaN cannot appear in a report"));
        }
        if x.is_infinite() {
            return serializer.serialize_str(if x > 0.0 { "inf" } else { "-inf" });
        }
        RawValue::from_string(format_real(x))
            .map_err(serde::ser::Error::custom)?
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RealVisitor;

        impl Visitor<'_> for RealVisitor {
            type Value = Real;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number, \"inf\" or \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Real, E> {
                Ok(Real(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Real, E> {
                Ok(Real(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Real, E> {
                Ok(Real(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Real, E> {
                match v {
                    "inf" => Ok(Real(f64::INFINITY)),
                    "-inf" => Ok(Real(f64::NEG_INFINITY)),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        deserializer.deserialize_any(RealVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSection {
    pub holds: bool,
    /// Keyed by the 1-based starting index.
    pub paths: BTreeMap<String, Vec<usize>>,
    pub unreachable: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterwovenSection {
    pub holds: bool,
    pub p_seq: Vec<usize>,
    pub q_seq: Vec<usize>,
    pub leftover: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSection {
    pub d: Vec<Real>,
    pub margin: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SsddSection {
    pub subset: Vec<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShSection {
    pub subset: Vec<usize>,
    pub lhs: Option<Real>,
    pub b2: Real,
    pub satisfied: bool,
    pub inner_h: bool,
    pub zero_over_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub inverse_nonneg: bool,
    pub jacobi: bool,
    pub jacobi_radius: Option<Real>,
    pub in_boundary_band: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub tolerance: Real,
    pub n: usize,
    pub dominance_class: DominanceClass,
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    pub chain: ChainSection,
    pub interwoven: InterwovenSection,
    /// `None` for non-DD input analysed without oracles.
    pub is_h: Option<bool>,
    pub reason: Option<PeelOutcome>,
    pub peel_trace: Vec<Vec<usize>>,
    pub witness: Option<Vec<usize>>,
    pub scaling: Option<ScalingSection>,
    pub ssdd_set: Option<Vec<usize>>,
    /// Present when a subset override was requested.
    pub ssdd_check: Option<SsddSection>,
    pub sh: Option<ShSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    /// Internal inconsistencies found during analysis.
    pub issues: Vec<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub tol: Tolerance,
    pub oracle: bool,
    /// Override for the subset used by the S-SDD and S-H checks (0-based).
    pub subset: Option<IndexSet>,
}

fn interwoven_section(cert: Option<InterwovenCertificate>) -> InterwovenSection {
    match cert {
        Some(c) => InterwovenSection {
            holds: true,
            p_seq: c.p_seq.iter().map(|i| i + 1).collect(),
            q_seq: c.q_seq.iter().map(|i| i + 1).collect(),
            leftover: c.leftover.map(|i| i + 1),
        },
        None => InterwovenSection {
            holds: false,
            p_seq: Vec::new(),
            q_seq: Vec::new(),
            leftover: None,
        },
    }
}

fn scaling_section(d: &[f64], margin: f64) -> ScalingSection {
    ScalingSection {
        d: d.iter().map(|&v| Real(v)).collect(),
        margin: Real(margin),
    }
}

/// Runs every test on `a` and collects the certificates.
///
/// Inconsistencies (a scaling that fails for an H verdict, or a disagreement
/// with the oracles outside the boundary band) are recorded in `issues`
/// rather than aborting the analysis.
pub fn analyze(a: &Matrix, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let tol = opts.tol;
    let n = a.order();
    if let Some(s) = &opts.subset {
        a.check_universe(s)?;
    }
    let class = classify_dominance(a, tol);
    let t = non_sdd_rows(a, tol);
    let mut issues = Vec::new();

    let chain = chain_condition(a, tol);
    let chain = ChainSection {
        holds: chain.holds,
        paths: chain
            .paths
            .iter()
            .map(|(i, p)| ((i + 1).to_string(), p.iter().map(|v| v + 1).collect()))
            .collect(),
        unreachable: chain.unreachable.to_one_based(),
    };
    let interwoven = if t.is_full() {
        interwoven_section(None)
    } else {
        interwoven_section(is_interwoven(a, &t)?)
    };

    let mut is_h = None;
    let mut reason = None;
    let mut peel_trace = Vec::new();
    let mut witness = None;
    let mut scaling = None;
    let mut ssdd_set = None;

    if class.is_dd() {
        let p = peel(a, tol);
        is_h = Some(p.is_h());
        reason = Some(p.outcome);
        peel_trace = p.trace.iter().map(IndexSet::to_one_based).collect();
        witness = p.witness.as_ref().map(IndexSet::to_one_based);
        ssdd_set = find_ssdd_set_dd(a, tol)?.map(|s| s.to_one_based());
        let diagonal_ok = !a.has_zero_diagonal();
        if diagonal_ok && !t.is_full() && chain.holds != interwoven.holds {
            issues.push("chain condition and interwoven test disagree".to_string());
        }
    }

    let oracle = opts.oracle.then(|| {
        let rho = jacobi_radius(a);
        OracleSection {
            inverse_nonneg: inverse_nonneg_oracle(a),
            jacobi: jacobi_oracle(a),
            jacobi_radius: rho.map(Real),
            in_boundary_band: rho.is_some_and(in_boundary_band),
        }
    });
    if let Some(o) = &oracle {
        match is_h {
            Some(decided) if decided != o.inverse_nonneg && !o.in_boundary_band => {
                issues.push(format!(
                    "peeling says is_h={decided} but the inverse oracle says {}",
                    o.inverse_nonneg
                ));
            }
            None => is_h = Some(o.inverse_nonneg),
            _ => {}
        }
    }

    if is_h == Some(true) {
        match scaling_certificate(a) {
            Ok(c) => scaling = Some(scaling_section(&c.d, c.margin)),
            Err(e) => issues.push(format!("scaling certificate: {e}")),
        }
    }

    let sh_subset = match &opts.subset {
        Some(s) => Some(s.clone()),
        None if !t.is_empty() && !t.is_full() => Some(t.clone()),
        None => None,
    };
    let sh = match sh_subset {
        Some(s) if !s.is_empty() && !s.is_full() => {
            let r = s_h_check(a, &s, tol)?;
            Some(ShSection {
                subset: r.subset.to_one_based(),
                lhs: r.lhs.map(Real),
                b2: Real(r.b2),
                satisfied: r.satisfied,
                inner_h: r.inner_h,
                zero_over_zero: r.zero_over_zero,
            })
        }
        _ => None,
    };
    let ssdd_check = match &opts.subset {
        Some(s) if !s.is_empty() && !s.is_full() => Some(SsddSection {
            subset: s.to_one_based(),
            holds: s_sdd_check(a, s)?,
        }),
        Some(_) => {
            return Err(Error::InvalidArgument(
                "subset must be a nonempty proper subset".into(),
            ))
        }
        None => None,
    };

    Ok(AnalysisReport {
        tool_version: TOOL_VERSION.to_string(),
        tolerance: Real(tol.value()),
        n,
        dominance_class: class,
        t: t.to_one_based(),
        chain,
        interwoven,
        is_h,
        reason,
        peel_trace,
        witness,
        scaling,
        ssdd_set,
        ssdd_check,
        sh,
        oracle,
        issues,
    })
}

/// Verdict on one certificate of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Verification {
    pub checks: Vec<CheckResult>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &'static str, outcome: std::result::Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.checks.push(CheckResult {
            name,
            passed,
            detail,
        });
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "ok   {}", c.name)?;
            } else {
                writeln!(f, "FAIL {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

fn to_index_set(one_based: &[usize], n: usize) -> std::result::Result<IndexSet, String> {
    IndexSet::from_one_based(one_based, n).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Re-checks every certificate in `report` against `a` from first
/// principles.
pub fn verify_report(report: &AnalysisReport, a: &Matrix) -> Verification {
    let mut v = Verification::default();
    let n = a.order();
    v.record(
        "order",
        ensure(report.n == n, || {
            format!("report order {} vs matrix order {n}", report.n)
        }),
    );
    if report.n != n {
        return v;
    }
    let tol = match Tolerance::new(report.tolerance.0) {
        Ok(t) => t,
        Err(e) => {
            v.record("tolerance", Err(e.to_string()));
            return v;
        }
    };
    let t = non_sdd_rows(a, tol);
    let class = classify_dominance(a, tol);
    v.record(
        "dominance_class",
        ensure(class == report.dominance_class, || {
            format!("recomputed {class}, report says {}", report.dominance_class)
        }),
    );
    v.record(
        "T",
        ensure(t.to_one_based() == report.t, || {
            format!("recomputed T = {:?}", t.to_one_based())
        }),
    );

    v.record("chain", verify_chain(report, a, &t));
    v.record("interwoven", verify_interwoven(report, a, &t));

    if let Some(w) = &report.witness {
        v.record(
            "witness",
            to_index_set(w, n).and_then(|m| {
                ensure(is_valid_witness(a, &m, tol), || {
                    format!("A restricted to {m} is neither DD without strict rows nor a zero 1x1")
                })
            }),
        );
    }

    if let Some(s) = &report.scaling {
        let d: Vec<f64> = s.d.iter().map(|r| r.0).collect();
        let outcome = ensure(d.len() == n, || {
            format!("{} weights for order {n}", d.len())
        })
        .and_then(|_| {
            ensure(d.iter().all(|&x| x > 0.0 && x <= 1.0), || {
                "weights must lie in (0, 1]".to_string()
            })
        })
        .and_then(|_| {
            let margin = scaling_margin(a, &d);
            ensure(margin > 0.0, || {
                format!("recomputed margin {margin:e} is not positive")
            })
        });
        v.record("scaling", outcome);
    }

    if let Some(is_h) = report.is_h {
        let outcome = if is_h {
            ensure(report.scaling.is_some() && report.witness.is_none(), || {
                "H verdict needs a scaling and no witness".to_string()
            })
        } else {
            ensure(report.scaling.is_none(), || {
                "non-H verdict carries a scaling".to_string()
            })
            .and_then(|_| {
                ensure(!class.is_dd() || report.witness.is_some(), || {
                    "non-H verdict for a DD matrix needs a witness".to_string()
                })
            })
        };
        v.record("verdict", outcome);
    }

    if class.is_dd() {
        let p = peel(a, tol);
        let trace: Vec<Vec<usize>> = p.trace.iter().map(IndexSet::to_one_based).collect();
        v.record(
            "peel_trace",
            ensure(
                trace == report.peel_trace && Some(p.is_h()) == report.is_h,
                || format!("recomputed trace {trace:?}, is_h {}", p.is_h()),
            ),
        );
    }

    if let Some(s) = &report.ssdd_set {
        v.record(
            "ssdd_set",
            to_index_set(s, n).and_then(|s| match s_sdd_check(a, &s) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("A is not S-SDD for S = {s}")),
                Err(e) => Err(e.to_string()),
            }),
        );
    }
    if let Some(c) = &report.ssdd_check {
        v.record(
            "ssdd_check",
            to_index_set(&c.subset, n).and_then(|s| match s_sdd_check(a, &s) {
                Ok(h) => ensure(h == c.holds, || format!("recomputed {h}")),
                Err(e) => Err(e.to_string()),
            }),
        );
    }

    if let Some(sh) = &report.sh {
        v.record(
            "sh",
            to_index_set(&sh.subset, n).and_then(|s| match s_h_check(a, &s, tol) {
                Ok(r) => ensure(
                    r.satisfied == sh.satisfied && r.inner_h == sh.inner_h,
                    || format!("recomputed satisfied={} inner_h={}", r.satisfied, r.inner_h),
                ),
                Err(e) => Err(e.to_string()),
            }),
        );
    }
    v
}

fn verify_chain(
    report: &AnalysisReport,
    a: &Matrix,
    t: &IndexSet,
) -> std::result::Result<(), String> {
    let n = a.order();
    let mut covered = vec![false; n];
    for (start, path) in &report.chain.paths {
        let zero_based: Vec<usize> = path
            .iter()
            .map(|&v| v.checked_sub(1).ok_or("index 0 in a 1-based path"))
            .collect::<std::result::Result<_, _>>()?;
        if zero_based.first().map(|v| (v + 1).to_string()).as_ref() != Some(start) {
            return Err(format!("path keyed {start} starts elsewhere"));
        }
        if !is_valid_chain(a, t, &zero_based) {
            return Err(format!("path from {start} is not a nonzero chain out of T"));
        }
        covered[zero_based[0]] = true;
    }
    let recomputed = chain_condition(a, Tolerance::new(report.tolerance.0).unwrap_or_default());
    ensure(report.chain.holds == recomputed.holds, || {
        format!("chain condition recomputes to {}", recomputed.holds)
    })?;
    ensure(!report.chain.holds || t.iter().all(|i| covered[i]), || {
        "some row of T has no path".to_string()
    })?;
    ensure(
        report.chain.unreachable == recomputed.unreachable.to_one_based(),
        || "unreachable set differs".to_string(),
    )
}

fn verify_interwoven(
    report: &AnalysisReport,
    a: &Matrix,
    t: &IndexSet,
) -> std::result::Result<(), String> {
    let section = &report.interwoven;
    if !section.holds {
        let exists = !t.is_full() && matches!(is_interwoven(a, t), Ok(Some(_)));
        return ensure(!exists, || {
            "T is interwoven but the report says otherwise".to_string()
        });
    }
    let zero = |v: &[usize]| -> std::result::Result<Vec<usize>, String> {
        v.iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| "index 0 in 1-based sequence".to_string())
            })
            .collect()
    };
    let cert = InterwovenCertificate {
        subset: t.clone(),
        p_seq: zero(&section.p_seq)?,
        q_seq: zero(&section.q_seq)?,
        leftover: match section.leftover {
            Some(i) => Some(i.checked_sub(1).ok_or("leftover 0")?),
            None => None,
        },
    };
    match verify_certificate(a, &cert) {
        Ok(true) => Ok(()),
        Ok(false) => Err("sequences violate the interwoven conditions".to_string()),
        Err(e) => Err(e.to_string()),
    }
}

/// Writes `count` ensemble members as `dd_<seed>_<k>.mtx`; member `k` uses
/// seed `seed + k` (wrapping).
pub fn generate_files(spec: &EnsembleSpec, count: usize, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    (0..count)
        .map(|k| {
            let member = EnsembleSpec {
                seed: spec.seed.wrapping_add(k as u64),
                ..spec.clone()
            };
            let a = random_dd_matrix(&member)?;
            let path = out_dir.join(format!("dd_{}_{}.mtx", spec.seed, k));
            std::fs::write(&path, write_matrix_market(&a))?;
            Ok(path)
        })
        .collect()
}
