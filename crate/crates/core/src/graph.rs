//! Indexing of the complete graph `K_n` and brute-force enumeration of its
//! matchings, cycles and spanning trees.
//!
//! Nodes are `1..=n` at the public surface and `0..n` inside the crate.
//! Edges are numbered lexicographically by `(min, max)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::rational::Rational;

/// Largest `n` accepted by the matching and cycle enumerators.
pub const MAX_ENUM_NODES: usize = 16;
/// Largest `n` accepted by the spanning-tree enumerator (`n^(n-2)` trees).
pub const MAX_TREE_NODES: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompleteGraphContext {
    n: usize,
}

impl CompleteGraphContext {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("complete graph needs at least one node");
        }
        Ok(CompleteGraphContext { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Position of the edge `{v, w}` with 1-based nodes.
    pub fn index(&self, v: usize, w: usize) -> Result<usize> {
        if v == w || v == 0 || w == 0 || v > self.n || w > self.n {
            return domain(format!("{{{v},{w}}} is not an edge of K_{}", self.n));
        }
        Ok(self.index0(v - 1, w - 1))
    }

    /// 1-based endpoints `(min, max)` of edge position `e`.
    pub fn pair(&self, e: usize) -> Result<(usize, usize)> {
        if e >= self.edge_count() {
            return domain(format!("edge position {e} out of range"));
        }
        let (a, b) = self.pair0(e);
        Ok((a + 1, b + 1))
    }

    pub(crate) fn index0(&self, v: usize, w: usize) -> usize {
        debug_assert!(v != w && v < self.n && w < self.n);
        let (a, b) = if v < w { (v, w) } else { (w, v) };
        // edges before row a: sum_{i<a} (n-1-i)
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    pub(crate) fn pair0(&self, e: usize) -> (usize, usize) {
        let mut a = 0;
        let mut start = 0;
        loop {
            let row = self.n - 1 - a;
            if e < start + row {
                return (a, a + 1 + (e - start));
            }
            start += row;
            a += 1;
        }
    }

    /// Positions of the edges with both ends in `nodes` (0-based).
    pub(crate) fn induced_edges0(&self, nodes: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &v) in nodes.iter().enumerate() {
            for &w in &nodes[i + 1..] {
                out.push(self.index0(v, w));
            }
        }
        out.sort_unstable();
        out
    }

    /// Positions of the edges with exactly one end in `inside` (0-based mask).
    pub(crate) fn cut_edges0(&self, inside: &[bool]) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&e| {
                let (a, b) = self.pair0(e);
                inside[a] != inside[b]
            })
            .collect()
    }
}

/// A set of edges of `K_n`, stored as sorted edge positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    ctx: CompleteGraphContext,
    edges: Vec<usize>,
}

impl EdgeSubset {
    pub fn new(ctx: CompleteGraphContext, mut edges: Vec<usize>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        if let Some(&e) = edges.last() {
            if e >= ctx.edge_count() {
                return domain(format!("edge position {e} out of range"));
            }
        }
        Ok(EdgeSubset { ctx, edges })
    }

    /// Builds the subset from 1-based endpoint pairs.
    pub fn from_pairs(ctx: CompleteGraphContext, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(v, w)| ctx.index(v, w))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, edges)
    }

    pub(crate) fn from_sorted_unchecked(ctx: CompleteGraphContext, edges: Vec<usize>) -> Self {
        EdgeSubset { ctx, edges }
    }

    pub fn context(&self) -> CompleteGraphContext {
        self.ctx
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_subset_of(&self, other: &EdgeSubset) -> bool {
        self.edges.iter().all(|&e| other.contains(e))
    }

    /// 1-based endpoint pairs in edge order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|&e| {
                let (a, b) = self.ctx.pair0(e);
                (a + 1, b + 1)
            })
            .collect()
    }

    /// Node degrees, 0-based node indices.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.ctx.n];
        for &e in &self.edges {
            let (a, b) = self.ctx.pair0(e);
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Characteristic vector over all edge positions.
    pub fn characteristic_vector(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ctx.edge_count()];
        for &e in &self.edges {
            v[e] = Rational::one();
        }
        v
    }

    pub fn weight(&self, weights: &[Rational]) -> Rational {
        self.edges.iter().map(|&e| &weights[e]).sum()
    }
}

fn guard(ctx: &CompleteGraphContext, limit: usize, what: &str) -> Result<()> {
    if ctx.n > limit {
        return Err(Error::SizeGuard(format!(
            "{what} enumeration refused for n = {} (limit {limit})",
            ctx.n
        )));
    }
    Ok(())
}

/// All matchings with exactly `size` edges, in lexicographic order of their
/// sorted edge positions.
pub fn enumerate_matchings(ctx: &CompleteGraphContext, size: usize) -> Result<Vec<EdgeSubset>> {
    if 2 * size > ctx.n {
        return domain(format!("no matching of size {size} in K_{}", ctx.n));
    }
    guard(ctx, MAX_ENUM_NODES, "matching")?;
    let mut out = Vec::new();
    let mut used = vec![false; ctx.n];
    let mut current = Vec::with_capacity(size);
    extend_matching(ctx, size, 0, &mut used, &mut current, &mut out);
    Ok(out)
}

fn extend_matching(
    ctx: &CompleteGraphContext,
    size: usize,
    from_edge: usize,
    used: &mut [bool],
    current: &mut Vec<usize>,
    out: &mut Vec<EdgeSubset>,
) {
    if current.len() == size {
        out.push(EdgeSubset::from_sorted_unchecked(*ctx, current.clone()));
        return;
    }
    for e in from_edge..ctx.edge_count() {
        let (a, b) = ctx.pair0(e);
        if used[a] || used[b] {
            continue;
        }
        used[a] = true;
        used[b] = true;
        current.push(e);
        extend_matching(ctx, size, e + 1, used, current, out);
        current.pop();
        used[a] = false;
        used[b] = false;
    }
}

/// All simple cycles with exactly `length` edges.
///
/// Each cycle is generated once: starting at its smallest node, with the
/// second node smaller than the last one.
pub fn enumerate_cycles(ctx: &CompleteGraphContext, length: usize) -> Result<Vec<EdgeSubset>> {
    if length < 3 || length > ctx.n {
        return domain(format!("no cycle of length {length} in K_{}", ctx.n));
    }
    guard(ctx, MAX_ENUM_NODES, "cycle")?;
    let mut out = Vec::new();
    for start in 0..ctx.n {
        let mut path = vec![start];
        let mut used = vec![false; ctx.n];
        used[start] = true;
        extend_cycle(ctx, length, &mut path, &mut used, &mut out);
    }
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    Ok(out)
}

fn extend_cycle(
    ctx: &CompleteGraphContext,
    length: usize,
    path: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<EdgeSubset>,
) {
    let start = path[0];
    if path.len() == length {
        if path[1] < path[length - 1] {
            let mut edges: Vec<usize> = path
                .windows(2)
                .map(|w| ctx.index0(w[0], w[1]))
                .collect();
            edges.push(ctx.index0(path[length - 1], start));
            edges.sort_unstable();
            out.push(EdgeSubset::from_sorted_unchecked(*ctx, edges));
        }
        return;
    }
    for v in start + 1..ctx.n {
        if used[v] {
            continue;
        }
        used[v] = true;
        path.push(v);
        extend_cycle(ctx, length, path, used, out);
        path.pop();
        used[v] = false;
    }
}

/// All spanning trees, decoded from Prüfer sequences in lexicographic order.
pub fn enumerate_spanning_trees(ctx: &CompleteGraphContext) -> Result<Vec<EdgeSubset>> {
    guard(ctx, MAX_TREE_NODES, "spanning tree")?;
    let n = ctx.n;
    match n {
        1 => return Ok(vec![EdgeSubset::from_sorted_unchecked(*ctx, Vec::new())]),
        2 => return Ok(vec![EdgeSubset::from_sorted_unchecked(*ctx, vec![0])]),
        _ => {}
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![0usize; len];
    for code in 0..total {
        let mut c = code;
        for slot in seq.iter_mut().rev() {
            *slot = c % n;
            c /= n;
        }
        out.push(decode_pruefer(ctx, &seq));
    }
    Ok(out)
}

fn decode_pruefer(ctx: &CompleteGraphContext, seq: &[usize]) -> EdgeSubset {
    let n = ctx.n;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf always exists");
        edges.push(ctx.index0(leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push(ctx.index0(rest[0], rest[1]));
    edges.sort_unstable();
    EdgeSubset::from_sorted_unchecked(*ctx, edges)
}

/// Whether the edge set is a spanning tree of `K_n`.
pub fn is_spanning_tree(set: &EdgeSubset) -> bool {
    let n = set.ctx.n;
    if set.len() + 1 != n {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &e in &set.edges {
        let (a, b) = set.ctx.pair0(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Indicator vectors of `E(S)` for every node set `S` with `|S| >= 3`, in
/// increasing bitmask order. These probe subtour and odd-set constraints.
pub fn induced_subgraph_objectives(ctx: &CompleteGraphContext) -> Result<Vec<Vec<Rational>>> {
    guard(ctx, MAX_ENUM_NODES, "node subset")?;
    let n = ctx.n;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() < 3 {
            continue;
        }
        let nodes: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let mut c = vec![Rational::zero(); ctx.edge_count()];
        for e in ctx.induced_edges0(&nodes) {
            c[e] = Rational::one();
        }
        out.push(c);
    }
    Ok(out)
}

/// Maximum total weight over a family; ties go to the earliest member.
pub fn brute_force_optimum<'a>(
    family: &'a [EdgeSubset],
    weights: &[Rational],
) -> Result<(Rational, &'a EdgeSubset)> {
    let first = family
        .first()
        .ok_or_else(|| Error::Domain("brute-force optimum over an empty family".into()))?;
    if weights.len() != first.ctx.edge_count() {
        return Err(Error::Dimension(format!(
            "{} weights for {} edges",
            weights.len(),
            first.ctx.edge_count()
        )));
    }
    let mut best = (first.weight(weights), first);
    for member in &family[1..] {
        let w = member.weight(weights);
        if w > best.0 {
            best = (w, member);
        }
    }
    Ok(best)
}
