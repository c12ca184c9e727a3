//! Brute-force reference implementations and matrix corpora shared by the
//! integration tests. Nothing here calls into the greedy or BFS code paths
//! it is used to check.

#![allow(dead_code)]

use hmatrix_dd::oracle::{random_dd_matrix, EnsembleSpec};
use hmatrix_dd::{IndexSet, Matrix};
use proptest::prelude::*;

pub const DENSITIES: [f64; 3] = [0.2, 0.5, 0.9];
pub const EQUALITY_FRACTIONS: [f64; 3] = [0.3, 0.7, 1.0];

/// Ensemble parameters for corpus member `k`: orders cycle through 2..=8,
/// densities and equality fractions through the three listed levels, and
/// every fifth member uses complex phases.
pub fn corpus_spec(k: u64) -> EnsembleSpec {
    let n = 2 + (k % 7) as usize;
    let density = DENSITIES[((k / 7) % 3) as usize];
    let equality = EQUALITY_FRACTIONS[((k / 21) % 3) as usize];
    let mut spec = EnsembleSpec::new(n, density, equality, k);
    spec.complex_entries = k % 5 == 4;
    spec
}

pub fn corpus(size: u64) -> impl Iterator<Item = (u64, Matrix)> {
    (0..size).map(|k| {
        (
            k,
            random_dd_matrix(&corpus_spec(k)).expect("valid ensemble spec"),
        )
    })
}

/// Real matrix from an off-diagonal 0/1 pattern (bit `i*n+j`), with unit
/// magnitudes and each diagonal equal to its deleted row sum.
pub fn pattern_matrix(n: usize, bits: u64) -> Matrix {
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            if i != j && bits >> (i * n + j) & 1 == 1 {
                values[i * n + j] = 1.0;
                row += 1.0;
            }
        }
        values[i * n + i] = row;
    }
    Matrix::from_real(n, values).unwrap()
}

/// All off-diagonal patterns of order `n`, as bit masks over `i*n+j`.
pub fn off_diagonal_patterns(n: usize) -> impl Iterator<Item = u64> {
    let slots: Vec<usize> = (0..n * n).filter(|k| k / n != k % n).collect();
    (0u64..1 << slots.len()).map(move |code| {
        slots
            .iter()
            .enumerate()
            .filter(|(b, _)| code >> b & 1 == 1)
            .fold(0u64, |acc, (_, &slot)| acc | 1 << slot)
    })
}

/// Every subset of `0..n` as a bit mask.
pub fn subsets(n: usize) -> impl Iterator<Item = IndexSet> {
    (0u32..1 << n)
        .map(move |m| IndexSet::from_mask(&(0..n).map(|i| m >> i & 1 == 1).collect::<Vec<_>>()))
}

pub fn proper_nonempty_subsets(n: usize) -> impl Iterator<Item = IndexSet> {
    subsets(n).filter(|s| !s.is_empty() && !s.is_full())
}

/// Exhaustive search over ordered choices of distinct `p_1..p_{s-1}` in `S`
/// and partners `q_i` in `S̄ ∪ {p_1..p_{i-1}}` with `a_{p_i q_i} != 0`.
pub fn brute_force_interwoven(a: &Matrix, s: &IndexSet) -> bool {
    if s.len() <= 1 {
        return true;
    }
    fn extend(a: &Matrix, s: &IndexSet, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() + 1 == s.len() {
            return true;
        }
        for p in s.iter() {
            if chosen.contains(&p) {
                continue;
            }
            let has_partner = (0..a.order())
                .any(|q| (!s.contains(q) || chosen.contains(&q)) && a.modulus(p, q) != 0.0);
            if has_partner {
                chosen.push(p);
                if extend(a, s, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(a, s, &mut Vec::new())
}

/// Length of the shortest simple path from `start` into `targets`, by
/// enumerating every simple path (fine for n <= 6).
pub fn shortest_by_enumeration(a: &Matrix, start: usize, targets: &IndexSet) -> Option<usize> {
    fn walk(
        a: &Matrix,
        v: usize,
        targets: &IndexSet,
        seen: &mut Vec<bool>,
        len: usize,
        best: &mut Option<usize>,
    ) {
        if targets.contains(v) {
            *best = Some(best.map_or(len, |b| b.min(len)));
            return;
        }
        for w in 0..a.order() {
            if w != v && !seen[w] && a.modulus(v, w) != 0.0 {
                seen[w] = true;
                walk(a, w, targets, seen, len + 1, best);
                seen[w] = false;
            }
        }
    }
    let mut seen = vec![false; a.order()];
    seen[start] = true;
    let mut best = None;
    walk(a, start, targets, &mut seen, 0, &mut best);
    best
}

/// Small integer-valued matrices, so all row sums are exact.
pub fn integer_matrix(max_n: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![3 => Just(0i32), 5 => -4i32..=4], n * n).prop_map(
            move |v| Matrix::from_real(n, v.into_iter().map(f64::from).collect()).unwrap(),
        )
    })
}

/// Ensemble members with arbitrary parameters.
pub fn dd_matrix(max_n: usize) -> impl Strategy<Value = Matrix> {
    (
        1..=max_n,
        0.0..=1.0f64,
        0.0..=1.0f64,
        any::<u64>(),
        any::<bool>(),
    )
        .prop_map(|(n, density, equality, seed, complex)| {
            let mut spec = EnsembleSpec::new(n, density, equality, seed);
            spec.complex_entries = complex;
            random_dd_matrix(&spec).unwrap()
        })
}

/// A matrix together with one subset of its index set.
pub fn with_subset(m: impl Strategy<Value = Matrix>) -> impl Strategy<Value = (Matrix, IndexSet)> {
    m.prop_flat_map(|a| {
        let n = a.order();
        prop::collection::vec(any::<bool>(), n)
            .prop_map(move |mask| (a.clone(), IndexSet::from_mask(&mask)))
    })
}
