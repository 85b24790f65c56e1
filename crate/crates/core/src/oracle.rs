//! Brute-force exact solvers used as ground truth for everything else.

use crate::coloring::Coloring;
use crate::error::{Result, SscError};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    /// Cap on the number of (vertex, colour) assignments tried per call.
    pub max_assignments: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 14,
            max_assignments: 500_000_000,
        }
    }
}

impl OracleBudget {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        OracleBudget {
            max_vertices,
            ..Self::default()
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    q: usize,
    /// closers[i]: vertices whose closed neighbourhood is fully decided once
    /// vertex i is assigned.
    closers: Vec<Vec<usize>>,
    seen: Vec<u64>,
    dominated: Vec<u32>,
    colors: Vec<usize>,
    tried: u64,
    limit: u64,
}

impl Search<'_> {
    fn conflicts(&self, v: usize, c: usize) -> bool {
        let bit = 1u64 << c;
        self.seen[v] & bit != 0 || self.g.neighbors(v).iter().any(|&w| self.seen[w] & bit != 0)
    }

    fn place(&mut self, v: usize, c: usize) {
        let bit = 1u64 << c;
        self.seen[v] |= bit;
        self.dominated[v] += 1;
        for &w in self.g.neighbors(v) {
            self.seen[w] |= bit;
            self.dominated[w] += 1;
        }
    }

    fn unplace(&mut self, v: usize, c: usize) {
        let mask = !(1u64 << c);
        self.seen[v] &= mask;
        self.dominated[v] -= 1;
        for &w in self.g.neighbors(v) {
            self.seen[w] &= mask;
            self.dominated[w] -= 1;
        }
    }

    fn run(&mut self, v: usize, max_used: usize) -> Result<bool> {
        if v == self.g.n() {
            return Ok(true);
        }
        let top = self.q.min(max_used + 1);
        for c in 0..=top {
            self.tried += 1;
            if self.tried > self.limit {
                return Err(SscError::Resource(format!(
                    "oracle exceeded {} assignments",
                    self.limit
                )));
            }
            if c != 0 {
                if self.conflicts(v, c) {
                    continue;
                }
                self.place(v, c);
            }
            self.colors[v] = c;
            let closed_ok = self.closers[v].iter().all(|&w| self.dominated[w] > 0);
            if closed_ok && self.run(v + 1, max_used.max(c))? {
                return Ok(true);
            }
            self.colors[v] = 0;
            if c != 0 {
                self.unplace(v, c);
            }
        }
        Ok(false)
    }
}

fn check_size(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(SscError::Resource(format!(
            "oracle limited to {cap} vertices, graph has {}",
            g.n()
        )));
    }
    if g.n() > 63 {
        return Err(SscError::Resource("oracle supports at most 63 vertices".into()));
    }
    Ok(())
}

/// Depth-first search over vertices in index order and colours in ascending
/// order. Returns the lexicographically least witness, if any.
///
/// New colours are only opened one at a time (colour `k+1` after `1..k`
/// are in use). The lexicographically least witness always has this form,
/// so the restriction loses nothing.
pub fn exists_ssc(g: &Graph, q: usize, budget: &OracleBudget) -> Result<Option<Coloring>> {
    check_size(g, budget.max_vertices)?;
    let n = g.n();
    if n == 0 {
        return Ok(Some(Coloring::uncolored(0, q)));
    }
    if q == 0 {
        return Ok(None);
    }
    let mut closers = vec![Vec::new(); n];
    for w in 0..n {
        let last = g.neighbors(w).last().copied().unwrap_or(w).max(w);
        closers[last].push(w);
    }
    let mut s = Search {
        g,
        // never more than n colours are opened
        q: q.min(n),
        closers,
        seen: vec![0; n],
        dominated: vec![0; n],
        colors: vec![0; n],
        tried: 0,
        limit: budget.max_assignments,
    };
    if s.run(0, 0)? {
        Ok(Some(Coloring::new(s.colors, q)?))
    } else {
        Ok(None)
    }
}

/// Smallest q with a witness, trying q = 1, 2, ...; the empty graph gives 0.
pub fn chi_ssc(g: &Graph, budget: &OracleBudget) -> Result<(usize, Coloring)> {
    check_size(g, budget.max_vertices)?;
    if g.n() == 0 {
        return Ok((0, Coloring::uncolored(0, 0)));
    }
    for q in 1..=g.n() {
        if let Some(col) = exists_ssc(g, q, budget)? {
            return Ok((q, col));
        }
    }
    unreachable!("colouring every vertex distinctly is always valid")
}

/// Lexicographically least dominating set among those of minimum size.
pub fn min_dominating_set(g: &Graph, budget: &OracleBudget) -> Result<Vec<usize>> {
    let n = g.n();
    let cap = budget.max_vertices + 6;
    if n > cap || n > 63 {
        return Err(SscError::Resource(format!(
            "domination oracle limited to {} vertices, graph has {n}",
            cap.min(63)
        )));
    }
    let full: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let closed: Vec<u64> = (0..n)
        .map(|v| g.closed_neighborhood(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let mut tried = 0u64;
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            tried += 1;
            if tried > budget.max_assignments {
                return Err(SscError::Resource("domination oracle budget exceeded".into()));
            }
            let cover = idx.iter().fold(0u64, |m, &v| m | closed[v]);
            if cover == full {
                return Ok(idx);
            }
            // advance to the next k-combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("V dominates itself")
}
