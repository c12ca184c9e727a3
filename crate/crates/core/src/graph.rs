//! Directed graph of the sparsity pattern.
//!
//! Edge `i -> j` exists iff `i != j` and `a_ij != 0`. The chain condition,
//! irreducibility and the Frobenius normal form are all statements about this
//! graph.

use std::collections::{BTreeMap, VecDeque};

use crate::error::Result;
use crate::matrix::{classify_dominance, non_sdd_rows, IndexSet, Matrix, Tolerance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    successors: Vec<Vec<usize>>,
    predecessors: Vec<Vec<usize>>,
}

impl DirectedGraph {
    pub fn order(&self) -> usize {
        self.successors.len()
    }

    /// Targets of edges leaving `i`, increasing.
    pub fn successors(&self, i: usize) -> &[usize] {
        &self.successors[i]
    }

    /// Sources of edges entering `i`, increasing.
    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.predecessors[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.successors[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// Every vertex with a path of length zero or more into `targets`.
    pub fn reaches_target_set(&self, targets: &IndexSet) -> Result<IndexSet> {
        check_universe(self.order(), targets)?;
        let bfs = BackwardBfs::run(self, targets);
        Ok(IndexSet::from_mask(
            &bfs.distance.iter().map(Option::is_some).collect::<Vec<_>>(),
        ))
    }
}

fn check_universe(n: usize, s: &IndexSet) -> Result<()> {
    if s.universe_size() == n {
        Ok(())
    } else {
        Err(crate::Error::UniverseMismatch {
            expected: n,
            found: s.universe_size(),
        })
    }
}

pub fn build_graph(a: &Matrix) -> DirectedGraph {
    let n = a.order();
    let mut successors = vec![Vec::new(); n];
    let mut predecessors = vec![Vec::new(); n];
    for (i, succ) in successors.iter_mut().enumerate() {
        for (j, &m) in a.modulus_row(i).iter().enumerate() {
            if j != i && m > 0.0 {
                succ.push(j);
                predecessors[j].push(i);
            }
        }
    }
    DirectedGraph {
        successors,
        predecessors,
    }
}

/// Multi-source breadth-first search over reversed edges.
///
/// `next[v]` is the successor of `v` on a shortest path into the target set:
/// targets are seeded in increasing order and predecessors are scanned in
/// increasing order, so the first vertex to discover `v` wins.
pub(crate) struct BackwardBfs {
    pub distance: Vec<Option<usize>>,
    pub next: Vec<Option<usize>>,
}

impl BackwardBfs {
    pub fn run(g: &DirectedGraph, targets: &IndexSet) -> Self {
        let n = g.order();
        let mut distance = vec![None; n];
        let mut next = vec![None; n];
        let mut queue = VecDeque::with_capacity(n);
        for t in targets.iter() {
            distance[t] = Some(0);
            queue.push_back(t);
        }
        while let Some(u) = queue.pop_front() {
            let du = distance[u].expect("queued vertices have a distance");
            for &v in g.predecessors(u) {
                if distance[v].is_none() {
                    distance[v] = Some(du + 1);
                    next[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        BackwardBfs { distance, next }
    }

    pub fn path_from(&self, start: usize) -> Option<Vec<usize>> {
        self.distance[start]?;
        let mut path = vec![start];
        let mut v = start;
        while let Some(u) = self.next[v] {
            path.push(u);
            v = u;
        }
        Some(path)
    }
}

/// Outcome of the nonzero-chain test for every non-strict row.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub holds: bool,
    /// Shortest path `i = i_0, .., i_r` for each reachable `i` in `T(A)`;
    /// only `i_r` is outside `T(A)`.
    pub paths: BTreeMap<usize, Vec<usize>>,
    pub unreachable: IndexSet,
}

/// Checks that every row of `T(A)` reaches a strictly dominant row through
/// nonzero entries.
pub fn chain_condition(a: &Matrix, tol: Tolerance) -> ChainReport {
    let t = non_sdd_rows(a, tol);
    let g = build_graph(a);
    let bfs = BackwardBfs::run(&g, &t.complement());
    let mut paths = BTreeMap::new();
    let mut unreachable = Vec::new();
    for i in t.iter() {
        match bfs.path_from(i) {
            Some(path) => {
                paths.insert(i, path);
            }
            None => unreachable.push(i),
        }
    }
    ChainReport {
        holds: unreachable.is_empty(),
        paths,
        unreachable: IndexSet::from_sorted(unreachable, a.order()),
    }
}

/// True when `path` starts in `t`, ends outside `t`, and every step follows
/// a nonzero off-diagonal entry.
pub fn is_valid_chain(a: &Matrix, t: &IndexSet, path: &[usize]) -> bool {
    let n = a.order();
    let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
        return false;
    };
    if path.iter().any(|&v| v >= n) || !t.contains(first) || t.contains(last) {
        return false;
    }
    path.windows(2)
        .all(|w| w[0] != w[1] && a.modulus(w[0], w[1]) > 0.0)
}

/// Permutation to block upper triangular form with strongly connected
/// diagonal blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusForm {
    /// `permutation[k]` is the original index placed at position `k`.
    pub permutation: Vec<usize>,
    /// Diagonal blocks in order; edges only run from a block to itself or a
    /// later block.
    pub blocks: Vec<IndexSet>,
}

impl FrobeniusForm {
    /// Block number of every original index.
    pub fn block_of(&self) -> Vec<usize> {
        let n = self.permutation.len();
        let mut block = vec![0; n];
        for (b, set) in self.blocks.iter().enumerate() {
            for i in set.iter() {
                block[i] = b;
            }
        }
        block
    }

    /// Checks `a_ij == 0` whenever `i`'s block comes after `j`'s block.
    pub fn is_block_upper_triangular(&self, a: &Matrix) -> bool {
        let block = self.block_of();
        let n = a.order();
        (0..n).all(|i| (0..n).all(|j| block[i] <= block[j] || a.modulus(i, j) == 0.0))
    }
}

pub fn frobenius_normal_form(a: &Matrix) -> FrobeniusForm {
    let g = build_graph(a);
    let n = g.order();
    let mut components = strongly_connected_components(&g);
    // Tarjan emits sinks first.
    components.reverse();
    let permutation = components.iter().flatten().copied().collect();
    let blocks = components
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            IndexSet::from_sorted(c, n)
        })
        .collect();
    FrobeniusForm {
        permutation,
        blocks,
    }
}

/// Iterative Tarjan; components come out in reverse topological order.
fn strongly_connected_components(g: &DirectedGraph) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = g.order();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        let mut calls = vec![(root, 0usize)];

        while let Some(frame) = calls.last_mut() {
            let (v, pos) = *frame;
            if let Some(&w) = g.successors(v).get(pos) {
                frame.1 += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("component root is on the stack");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

/// A 1x1 matrix counts as irreducible whatever its entry.
pub fn is_irreducible(a: &Matrix) -> bool {
    frobenius_normal_form(a).blocks.len() == 1
}

/// Irreducible and diagonally dominant with at least one strict row; such a
/// matrix is nonsingular and an H-matrix.
pub fn taussky_test(a: &Matrix, tol: Tolerance) -> bool {
    is_irreducible(a) && classify_dominance(a, tol).is_dd_plus()
}
