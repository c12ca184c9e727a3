//! Interwoven index sets.
//!
//! A proper subset `S` of size `s > 1` is interwoven for `A` when its members
//! can be listed as `p_1, .., p_{s-1}` (one member left over) together with
//! partners `q_1, .., q_{s-1}` such that `a_{p_i q_i} != 0` and each `q_i`
//! lies outside `S` or among the earlier `p`s. Sets with at most one member
//! are interwoven trivially.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{build_graph, BackwardBfs};
use crate::matrix::{
    classify_dominance, non_sdd_rows, row_kinds_within, IndexSet, Matrix, RowKind, Tolerance,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterwovenCertificate {
    pub subset: IndexSet,
    pub p_seq: Vec<usize>,
    pub q_seq: Vec<usize>,
    /// The member of `subset` missing from `p_seq`; `None` when the subset
    /// is empty.
    pub leftover: Option<usize>,
}

impl InterwovenCertificate {
    /// Certificate for a set with at most one member.
    pub fn trivial(subset: IndexSet) -> Self {
        debug_assert!(subset.len() <= 1);
        let leftover = subset.members().first().copied();
        InterwovenCertificate {
            subset,
            p_seq: Vec::new(),
            q_seq: Vec::new(),
            leftover,
        }
    }

    fn from_sequences(subset: IndexSet, p_seq: Vec<usize>, q_seq: Vec<usize>) -> Self {
        let mut used = vec![false; subset.universe_size()];
        for &p in &p_seq {
            used[p] = true;
        }
        let leftover = subset.iter().find(|&i| !used[i]);
        InterwovenCertificate {
            subset,
            p_seq,
            q_seq,
            leftover,
        }
    }
}

fn require_proper(a: &Matrix, s: &IndexSet) -> Result<()> {
    a.check_universe(s)?;
    if s.is_full() {
        return Err(Error::NotProperSubset);
    }
    Ok(())
}

/// Checks every clause of the interwoven definition against `a`.
pub fn verify_certificate(a: &Matrix, cert: &InterwovenCertificate) -> Result<bool> {
    let s = &cert.subset;
    require_proper(a, s)?;
    let n = a.order();
    let expected_len = s.len().saturating_sub(1);
    if cert.p_seq.len() != expected_len || cert.q_seq.len() != expected_len {
        return Ok(false);
    }

    let in_subset = s.mask();
    let mut chosen = vec![false; n];
    for (&p, &q) in cert.p_seq.iter().zip(&cert.q_seq) {
        if p >= n || q >= n || !in_subset[p] || chosen[p] {
            return Ok(false);
        }
        let admissible = !in_subset[q] || chosen[q];
        if !admissible || a.modulus(p, q) == 0.0 {
            return Ok(false);
        }
        chosen[p] = true;
    }

    let leftover = s.iter().find(|&i| !chosen[i]);
    Ok(cert.leftover == leftover)
}

/// Decides whether `s` is interwoven and returns a certificate when it is.
///
/// Greedy: repeatedly take the smallest unchosen member with a nonzero entry
/// into `S̄ ∪ chosen`. A member that is addable stays addable as the chosen
/// set grows, so the greedy closure is the unique maximal one and the set is
/// interwoven iff that closure reaches `|S| - 1` members. The partner is the
/// smallest admissible column outside `S`, falling back to the smallest chosen
/// member.
pub fn is_interwoven(a: &Matrix, s: &IndexSet) -> Result<Option<InterwovenCertificate>> {
    require_proper(a, s)?;
    if s.len() <= 1 {
        return Ok(Some(InterwovenCertificate::trivial(s.clone())));
    }
    let n = a.order();
    let g = build_graph(a);
    let in_subset = s.mask();
    let mut chosen = vec![false; n];
    let mut queued = vec![false; n];
    let mut heap = BinaryHeap::new();

    for p in s.iter() {
        if g.successors(p).iter().any(|&j| !in_subset[j]) {
            queued[p] = true;
            heap.push(Reverse(p));
        }
    }

    let need = s.len() - 1;
    let mut p_seq = Vec::with_capacity(need);
    let mut q_seq = Vec::with_capacity(need);
    while p_seq.len() < need {
        let Some(Reverse(p)) = heap.pop() else {
            return Ok(None);
        };
        let succ = g.successors(p);
        let q = succ
            .iter()
            .copied()
            .find(|&j| !in_subset[j])
            .or_else(|| succ.iter().copied().find(|&j| chosen[j]))
            .expect("queued members have an admissible partner");
        chosen[p] = true;
        p_seq.push(p);
        q_seq.push(q);
        for &v in g.predecessors(p) {
            if in_subset[v] && !chosen[v] && !queued[v] {
                queued[v] = true;
                heap.push(Reverse(v));
            }
        }
    }
    Ok(Some(InterwovenCertificate::from_sequences(
        s.clone(),
        p_seq,
        q_seq,
    )))
}

/// Builds a certificate for `T(A)` from shortest chains.
///
/// Members of `T(A)` are grouped by their distance to the strictly dominant
/// rows and listed level by level; the partner of each is the next vertex on
/// its shortest chain, which is either outside `T(A)` or one level closer.
/// The last member of the deepest level is left over. Returns `None` when
/// some member has no chain.
pub fn interwoven_from_chains(a: &Matrix, tol: Tolerance) -> Option<InterwovenCertificate> {
    let t = non_sdd_rows(a, tol);
    if t.is_full() {
        return None;
    }
    let bfs = BackwardBfs::run(&build_graph(a), &t.complement());
    if t.iter().any(|i| bfs.distance[i].is_none()) {
        return None;
    }
    if t.len() <= 1 {
        return Some(InterwovenCertificate::trivial(t));
    }

    let mut order: Vec<usize> = t.members().to_vec();
    order.sort_by_key(|&i| (bfs.distance[i], i));
    order.pop();
    let q_seq = order
        .iter()
        .map(|&p| bfs.next[p].expect("members of T(A) are at distance >= 1"))
        .collect();
    Some(InterwovenCertificate::from_sequences(t, order, q_seq))
}

/// Builds a certificate for `T(A)` by repeatedly restricting to the
/// non-strict rows.
///
/// With `T_0 = T(A)` and `T_k` the non-strict rows of `A|_{T_{k-1}^2}`, the
/// rows `T_{k-1} \ T_k` become strict once the previous batch is cut away, so
/// each has a nonzero entry into that batch (into `T̄(A)` for the first
/// batch). Returns `None` when the restriction stalls with two or more rows
/// or `T(A)` is the whole index set.
pub fn interwoven_from_peeling(
    a: &Matrix,
    tol: Tolerance,
) -> Result<Option<InterwovenCertificate>> {
    if !classify_dominance(a, tol).is_dd() {
        return Err(Error::NotDiagonallyDominant);
    }
    let n = a.order();
    let t = non_sdd_rows(a, tol);
    if t.is_full() {
        return Ok(None);
    }
    if t.len() <= 1 {
        return Ok(Some(InterwovenCertificate::trivial(t)));
    }

    let need = t.len() - 1;
    let mut p_seq = Vec::with_capacity(need);
    let mut q_seq = Vec::with_capacity(need);
    let mut partners = t.complement().mask();
    let mut current: Vec<usize> = t.members().to_vec();

    loop {
        let kinds = row_kinds_within(a, &current, tol);
        let (batch, rest): (Vec<_>, Vec<_>) = current
            .iter()
            .zip(&kinds)
            .partition(|&(_, &k)| k == RowKind::Strict);
        if batch.is_empty() {
            return Ok(None);
        }

        let mut batch_mask = vec![false; n];
        for (&p, _) in batch {
            if p_seq.len() == need {
                break;
            }
            let row = a.modulus_row(p);
            let Some(q) = (0..n).find(|&j| j != p && partners[j] && row[j] > 0.0) else {
                return Ok(None);
            };
            p_seq.push(p);
            q_seq.push(q);
            batch_mask[p] = true;
        }
        if p_seq.len() == need {
            return Ok(Some(InterwovenCertificate::from_sequences(t, p_seq, q_seq)));
        }
        partners = batch_mask;
        current = rest.into_iter().map(|(&i, _)| i).collect();
    }
}
