//! Graphs, oriented graphs and the feasibility theorems for their incidence systems.
//!
//! Vertices are `0..n` in this API; edge order is significant since edge `k`
//! is variable `k` (and coordinate `g_k` in the orientation system).
//! Subset enumerations use `u64` bitmasks, so cut-based operations accept at
//! most 63 vertices (and are exponential well before that).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{dim_check, Error, Result};
use crate::exactlin::{IntMatrix, IntVector};
use crate::farkas::{integer_feasible, integer_solve_unchecked, FeasibilityProblem};
use crate::indecomp::IndecomposablePoint;

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Each edge stored with its smaller end first.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::Domain(format!("edge ({i}, {j}) has an endpoint outside 0..{n}")));
            }
            if i == j {
                return Err(Error::Domain(format!("loop at vertex {i}")));
            }
            let e = (i.min(j), i.max(j));
            if !seen.insert(e) {
                return Err(Error::Domain(format!("repeated edge ({}, {})", e.0, e.1)));
            }
            out.push(e);
        }
        Ok(Graph { n, edges: out })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph { n, edges }
    }

    /// `K_{p,q}` with left side `0..p`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let edges = (0..p).flat_map(|i| (p..p + q).map(move |j| (i, j))).collect();
        Graph { n: p + q, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        if n >= 3 {
            edges.push((0, n - 1));
        }
        Graph { n, edges }
    }

    pub fn path(n: usize) -> Self {
        Graph {
            n,
            edges: (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(i, j)| i == v || j == v).count()
    }

    fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// Component index of every vertex.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.neighbors();
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Connected, with the graph on zero vertices counted as connected.
    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// A proper 2-colouring (`true` = left) putting the lowest vertex of each
    /// component on the left, or `None` if there is an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.neighbors();
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(true);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].expect("coloured");
                for &w in &adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.expect("coloured")).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    fn masks(&self) -> Result<Vec<u64>> {
        if self.n > 63 {
            return Err(Error::Resource(format!("{} vertices exceed the subset limit of 63", self.n)));
        }
        let mut adj = vec![0u64; self.n];
        for &(i, j) in &self.edges {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(adj)
    }
}

/// An oriented graph: no loops, no repeated arcs, no pair joined in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut pairs = HashSet::new();
        for &(i, j) in arcs {
            if i >= n || j >= n {
                return Err(Error::Domain(format!("arc ({i}, {j}) has an endpoint outside 0..{n}")));
            }
            if i == j {
                return Err(Error::Domain(format!("loop at vertex {i}")));
            }
            if !pairs.insert((i.min(j), i.max(j))) {
                return Err(Error::Domain(format!("vertices {i} and {j} are joined twice")));
            }
        }
        Ok(Digraph { n, arcs: arcs.to_vec() })
    }

    /// Arcs `i -> j` for every `i < j`.
    pub fn transitive_tournament(n: usize) -> Self {
        Digraph {
            n,
            arcs: Graph::complete(n).edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn underlying(&self) -> Graph {
        Graph {
            n: self.n,
            edges: self.arcs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect(),
        }
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(i, _) in &self.arcs {
            d[i] += 1;
        }
        d
    }

    /// Out-degree minus in-degree.
    pub fn signed_degrees(&self) -> Vec<i64> {
        let mut d = vec![0i64; self.n];
        for &(i, j) in &self.arcs {
            d[i] += 1;
            d[j] -= 1;
        }
        d
    }
}

fn unit(n: usize, i: usize) -> IntVector {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// Column for edge `{i, j}` is `f_i + f_j`.
pub fn incidence(g: &Graph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.n, g.m());
    for (k, &(i, j)) in g.edges.iter().enumerate() {
        m.set(i, k, BigInt::one());
        m.set(j, k, BigInt::one());
    }
    m
}

/// Column for arc `(i, j)` is `f_i - f_j`.
pub fn directed_incidence(d: &Digraph) -> IntMatrix {
    let mut m = IntMatrix::zeros(d.n, d.m());
    for (k, &(i, j)) in d.arcs.iter().enumerate() {
        m.set(i, k, BigInt::one());
        m.set(j, k, -BigInt::one());
    }
    m
}

/// `z(e_k) = f_i - f_j + g_k` and `z'(e_k) = -f_i + f_j + g_k` for each edge
/// `e_k = {i, j}`, `i < j`, interleaved as `z(e_1), z'(e_1), z(e_2), ...`.
pub fn orientation_system(g: &Graph) -> Vec<IntVector> {
    let (n, m) = (g.n, g.m());
    let mut out = Vec::with_capacity(2 * m);
    for (k, &(i, j)) in g.edges.iter().enumerate() {
        let mut z = vec![BigInt::zero(); n + m];
        z[i] = BigInt::one();
        z[j] = -BigInt::one();
        z[n + k] = BigInt::one();
        let mut zp = z.clone();
        zp[i] = -BigInt::one();
        zp[j] = BigInt::one();
        out.push(z);
        out.push(zp);
    }
    out
}

/// Calls `f` with the vertex sequence of every odd cycle (each cycle is seen
/// once per direction). Stops when `f` returns true.
fn find_odd_cycle(g: &Graph, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let adj = g.neighbors();
    fn extend(
        adj: &[Vec<usize>],
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let v = *path.last().expect("nonempty path");
        for &w in &adj[v] {
            if w == start && path.len() >= 3 && path.len() % 2 == 1 && f(path) {
                return true;
            }
            if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                let done = extend(adj, start, path, on_path, f);
                path.pop();
                on_path[w] = false;
                if done {
                    return true;
                }
            }
        }
        false
    }
    let mut on_path = vec![false; g.n];
    for s in 0..g.n {
        on_path[s] = true;
        let done = extend(&adj, s, &mut vec![s], &mut on_path, &mut f);
        on_path[s] = false;
        if done {
            return true;
        }
    }
    false
}

/// Whether some component contains two edge-disjoint odd cycles.
pub fn has_two_edge_disjoint_odd_cycles(g: &Graph) -> bool {
    find_odd_cycle(g, |cycle| {
        let mut used = HashSet::new();
        for k in 0..cycle.len() {
            let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            used.insert((a.min(b), a.max(b)));
        }
        let rest: Vec<(usize, usize)> = g.edges.iter().copied().filter(|e| !used.contains(e)).collect();
        // every odd cycle of the remainder lies in the component of the first one's vertices
        let comp = g.components();
        let target = comp[cycle[0]];
        let keep: Vec<(usize, usize)> = rest.into_iter().filter(|&(i, _)| comp[i] == target).collect();
        !Graph { n: g.n, edges: keep }.is_bipartite()
    })
}

/// Whether some component contains two vertex-disjoint odd cycles, i.e. the
/// two ends of an odd-cycle "handcuff". This is exactly the obstruction to
/// the incidence matrix being a Farkas matrix.
pub fn has_two_vertex_disjoint_odd_cycles(g: &Graph) -> bool {
    let comp = g.components();
    find_odd_cycle(g, |cycle| {
        let target = comp[cycle[0]];
        let keep: Vec<(usize, usize)> = g
            .edges
            .iter()
            .copied()
            .filter(|&(i, j)| comp[i] == target && !cycle.contains(&i) && !cycle.contains(&j))
            .collect();
        !Graph { n: g.n, edges: keep }.is_bipartite()
    })
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

fn to_set(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

/// Connected components of the subgraph induced on `mask`.
fn mask_components(adj: &[u64], mask: u64) -> Vec<u64> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let grown = bits(comp).fold(comp, |acc, v| acc | (adj[v] & mask));
            if grown == comp {
                break;
            }
            comp = grown;
        }
        rest &= !comp;
        out.push(comp);
    }
    out
}

/// Induced subgraph on `mask` is connected; the empty set counts as connected.
fn mask_connected(adj: &[u64], mask: u64) -> bool {
    mask_components(adj, mask).len() <= 1
}

fn mask_bipartite(adj: &[u64], comp: u64) -> bool {
    let Some(start) = bits(comp).next() else {
        return true;
    };
    let mut colour = [0u64; 2];
    colour[0] = 1 << start;
    let mut frontier = 1u64 << start;
    let mut side = 0;
    while frontier != 0 {
        let next = bits(frontier).fold(0, |acc, v| acc | (adj[v] & comp));
        if next & colour[side] != 0 {
            return false;
        }
        side ^= 1;
        let fresh = next & !colour[side];
        colour[side] |= next;
        frontier = fresh;
    }
    true
}

/// The cross graph on `I ∪ J` (only edges between `I` and `J`) is connected.
fn cross_connected(adj: &[u64], i_mask: u64, j_mask: u64) -> bool {
    let all = i_mask | j_mask;
    let Some(start) = bits(all).next() else {
        return true;
    };
    let mut comp = 1u64 << start;
    loop {
        let grown = bits(comp).fold(comp, |acc, v| {
            let other = if i_mask >> v & 1 == 1 { j_mask } else { i_mask };
            acc | (adj[v] & other)
        });
        if grown == comp {
            return comp == all;
        }
        comp = grown;
    }
}

/// A member of a cut family. Vertex sets are sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cut {
    Set(Vec<usize>),
    Pair(Vec<usize>, Vec<usize>),
}

/// The cuts over which a theorem's inequalities range, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutFamily {
    pub cuts: Vec<Cut>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutMode {
    /// Pairs `I ⊆ left`, `J ⊆ right` with `G[I ∪ J]` and `G[rest]` connected,
    /// excluding the empty and the full pair. The left side is the colour
    /// class of vertex 0.
    Bipartite,
    /// Disjoint nonempty-union pairs whose cross graph is connected and whose
    /// removal leaves no bipartite component.
    NonBipartite,
    /// Nonempty proper sets `I` with `G[I]` and `G[V \ I]` connected.
    Directed,
}

const SET_LIMIT: usize = 24;
const PAIR_LIMIT: usize = 15;

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Precondition("graph is not connected".into()))
    }
}

fn directed_sets(g: &Graph) -> Result<Vec<u64>> {
    if g.n > SET_LIMIT {
        return Err(Error::Resource(format!("{} vertices exceed the cut enumeration limit", g.n)));
    }
    let adj = g.masks()?;
    let full = (1u64 << g.n) - 1;
    Ok((1..full)
        .filter(|&s| mask_connected(&adj, s) && mask_connected(&adj, full & !s))
        .collect())
}

fn bipartite_pairs(g: &Graph, left: &[bool]) -> Result<Vec<(u64, u64)>> {
    if g.n > SET_LIMIT {
        return Err(Error::Resource(format!("{} vertices exceed the cut enumeration limit", g.n)));
    }
    let adj = g.masks()?;
    let full = (1u64 << g.n) - 1;
    let left_mask = (0..g.n).filter(|&v| left[v]).fold(0u64, |acc, v| acc | 1 << v);
    Ok((1..full)
        .filter(|&s| mask_connected(&adj, s) && mask_connected(&adj, full & !s))
        .map(|s| (s & left_mask, s & !left_mask))
        .collect())
}

fn nonbipartite_pairs(g: &Graph) -> Result<Vec<(u64, u64)>> {
    if g.n > PAIR_LIMIT {
        return Err(Error::Resource(format!("{} vertices exceed the pair enumeration limit", g.n)));
    }
    let adj = g.masks()?;
    let full = (1u64 << g.n) - 1;
    let mut out = Vec::new();
    for union in 1..=full {
        let rest = full & !union;
        if !mask_components(&adj, rest).iter().all(|&c| !mask_bipartite(&adj, c)) {
            continue;
        }
        // every split of the union into I and J
        let mut i_mask = union;
        loop {
            let j_mask = union & !i_mask;
            if cross_connected(&adj, i_mask, j_mask) {
                out.push((i_mask, j_mask));
            }
            if i_mask == 0 {
                break;
            }
            i_mask = (i_mask - 1) & union;
        }
    }
    Ok(out)
}

fn sorted_family(mut cuts: Vec<Cut>) -> CutFamily {
    cuts.sort();
    CutFamily { cuts }
}

pub fn enumerate_valid_cuts(g: &Graph, mode: CutMode) -> Result<CutFamily> {
    require_connected(g)?;
    let cuts = match mode {
        CutMode::Directed => directed_sets(g)?.into_iter().map(|s| Cut::Set(to_set(s))).collect(),
        CutMode::Bipartite => {
            let left = g
                .bipartition()
                .ok_or_else(|| Error::Precondition("graph is not bipartite".into()))?;
            bipartite_pairs(g, &left)?
                .into_iter()
                .map(|(i, j)| Cut::Pair(to_set(i), to_set(j)))
                .collect()
        }
        CutMode::NonBipartite => {
            if g.is_bipartite() {
                return Err(Error::Precondition("graph is bipartite".into()));
            }
            nonbipartite_pairs(g)?
                .into_iter()
                .map(|(i, j)| Cut::Pair(to_set(i), to_set(j)))
                .collect()
        }
    };
    Ok(sorted_family(cuts))
}

fn collect_points(vectors: impl IntoIterator<Item = IntVector>, columns: &[IntVector]) -> Result<Vec<IndecomposablePoint>> {
    let mut out = BTreeSet::new();
    for v in vectors {
        out.insert(IndecomposablePoint::from_vector(&v, columns)?);
    }
    Ok(out.into_iter().collect())
}

/// Indecomposable points of the incidence columns, from the closed-form description.
pub fn g_indecomposables(g: &Graph) -> Result<Vec<IndecomposablePoint>> {
    require_connected(g)?;
    let n = g.n;
    let columns = incidence(g).columns();
    let mut vectors = Vec::new();
    match g.bipartition() {
        Some(left) => {
            let nb = BigInt::from(n);
            for (i_mask, j_mask) in bipartite_pairs(g, &left)? {
                // n * u_{I,J}
                let size = BigInt::from((i_mask | j_mask).count_ones());
                let u: IntVector = (0..n)
                    .map(|v| {
                        let base = if left[v] { -&size } else { size.clone() };
                        let own = if i_mask >> v & 1 == 1 {
                            nb.clone()
                        } else if j_mask >> v & 1 == 1 {
                            -&nb
                        } else {
                            BigInt::zero()
                        };
                        base + own
                    })
                    .collect();
                if u.iter().all(Zero::is_zero) {
                    continue;
                }
                vectors.push(u.iter().map(|x| -x).collect());
                vectors.push(u);
            }
        }
        None => {
            for (i_mask, j_mask) in nonbipartite_pairs(g)? {
                let u: IntVector = (0..n)
                    .map(|v| {
                        if i_mask >> v & 1 == 1 {
                            BigInt::one()
                        } else if j_mask >> v & 1 == 1 {
                            -BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect();
                vectors.push(u);
            }
        }
    }
    collect_points(vectors, &columns)
}

/// `n * sum_{i in I} f_i - |I| * sum_i f_i`.
fn cut_vector(n: usize, set: u64) -> IntVector {
    let size = BigInt::from(set.count_ones());
    (0..n)
        .map(|v| if set >> v & 1 == 1 { BigInt::from(n) - &size } else { -&size })
        .collect()
}

/// Indecomposable points of the directed incidence columns, from the closed form.
pub fn d_indecomposables(d: &Digraph) -> Result<Vec<IndecomposablePoint>> {
    let g = d.underlying();
    require_connected(&g)?;
    let columns = directed_incidence(d).columns();
    let vectors = directed_sets(&g)?.into_iter().map(|s| cut_vector(d.n, s));
    collect_points(vectors, &columns)
}

/// Indecomposable points of the orientation system, from the closed form.
pub fn gz_indecomposables(g: &Graph) -> Result<Vec<IndecomposablePoint>> {
    require_connected(g)?;
    let (n, m) = (g.n, g.m());
    let columns = orientation_system(g);
    let mut vectors = Vec::new();
    for s in directed_sets(g)? {
        let base = cut_vector(n, s);
        let crossing: Vec<usize> = (0..m)
            .filter(|&k| {
                let (i, j) = g.edges[k];
                (s >> i & 1) != (s >> j & 1)
            })
            .collect();
        if crossing.len() > SET_LIMIT {
            return Err(Error::Resource("too many crossing edges".into()));
        }
        for signs in 0u64..(1 << crossing.len()) {
            let mut u = base.clone();
            u.resize(n + m, BigInt::zero());
            for (bit, &k) in crossing.iter().enumerate() {
                u[n + k] = if signs >> bit & 1 == 1 { -BigInt::from(n) } else { BigInt::from(n) };
            }
            vectors.push(u);
        }
    }
    for k in 0..m {
        let rest: Vec<(usize, usize)> = g.edges.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &e)| e).collect();
        if (Graph { n, edges: rest }).is_connected() {
            let gk = unit(n + m, n + k);
            vectors.push(gk.iter().map(|x| -x).collect());
            vectors.push(gk);
        }
    }
    collect_points(vectors, &columns)
}

/// The first failed condition of a realization theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// An equality condition fails: `lhs` must equal `rhs`.
    Balance { lhs: BigInt, rhs: BigInt },
    /// The degree sum is odd.
    Parity { sum: BigInt },
    /// A cut inequality `lhs <= rhs` fails.
    Cut { cut: Cut, lhs: BigInt, rhs: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    /// Integer values per edge or arc, in input order.
    Feasible(IntVector),
    Infeasible(Violation),
}

impl Realization {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Realization::Feasible(_))
    }
}

fn edge_bounds_check(m: usize, lower: &[BigInt], upper: &[BigInt]) -> Result<()> {
    dim_check("lower bounds", m, lower.len())?;
    dim_check("upper bounds", m, upper.len())?;
    if let Some(k) = (0..m).find(|&k| lower[k] > upper[k]) {
        return Err(Error::Domain(format!("bounds of edge {} are inverted", k + 1)));
    }
    Ok(())
}

fn solve_or_bug(prob: &FeasibilityProblem) -> Result<Realization> {
    match integer_solve_unchecked(prob)? {
        Some(x) => Ok(Realization::Feasible(x)),
        None => Err(Error::Internal("theorem conditions hold but no integer point was found".into())),
    }
}

fn gale_ryser_violation(g: &Graph, left: &[bool], s: &[BigInt], lower: &[BigInt], upper: &[BigInt]) -> Result<Option<Violation>> {
    let (mut lsum, mut rsum) = (BigInt::zero(), BigInt::zero());
    for v in 0..g.n {
        if left[v] {
            lsum += &s[v];
        } else {
            rsum += &s[v];
        }
    }
    if lsum != rsum {
        return Ok(Some(Violation::Balance { lhs: lsum, rhs: rsum }));
    }
    let mut cuts = bipartite_pairs(g, left)?;
    cuts.sort_by_key(|&(i, j)| (to_set(i), to_set(j)));
    for (i_mask, j_mask) in cuts {
        let lhs: BigInt = bits(i_mask).map(|v| &s[v]).sum::<BigInt>() - bits(j_mask).map(|v| &s[v]).sum::<BigInt>();
        let mut rhs = BigInt::zero();
        for (k, &(a, b)) in g.edges.iter().enumerate() {
            let (l, r) = if left[a] { (a, b) } else { (b, a) };
            let l_in = i_mask >> l & 1 == 1;
            let r_in = j_mask >> r & 1 == 1;
            if l_in && !r_in {
                rhs += &upper[k];
            } else if !l_in && r_in {
                rhs -= &lower[k];
            }
        }
        if lhs > rhs {
            return Ok(Some(Violation::Cut {
                cut: Cut::Pair(to_set(i_mask), to_set(j_mask)),
                lhs,
                rhs,
            }));
        }
    }
    Ok(None)
}

fn check_bipartite_instance(g: &Graph, left: &[bool], s: &[BigInt], lower: &[BigInt], upper: &[BigInt]) -> Result<()> {
    require_connected(g)?;
    dim_check("left side indicator", g.n, left.len())?;
    dim_check("degree vector", g.n, s.len())?;
    edge_bounds_check(g.m(), lower, upper)?;
    if let Some(&(i, j)) = g.edges.iter().find(|&&(i, j)| left[i] == left[j]) {
        return Err(Error::Precondition(format!("edge ({i}, {j}) does not cross the given bipartition")));
    }
    Ok(())
}

/// Integers `lower <= x <= upper` on the edges of a connected bipartite graph
/// with `sum_e x_e (f_i + f_j) = s`, decided by the balance and cut conditions.
pub fn gale_ryser_feasible(g: &Graph, left: &[bool], s: &[BigInt], lower: &[BigInt], upper: &[BigInt]) -> Result<Realization> {
    check_bipartite_instance(g, left, s, lower, upper)?;
    if let Some(v) = gale_ryser_violation(g, left, s, lower, upper)? {
        return Ok(Realization::Infeasible(v));
    }
    let prob = FeasibilityProblem::from_matrix(&incidence(g), lower.to_vec(), upper.to_vec(), s.to_vec())?;
    solve_or_bug(&prob)
}

fn nonbipartite_violation(g: &Graph, s: &[BigInt], lower: &[BigInt], upper: &[BigInt]) -> Result<Option<Violation>> {
    let sum: BigInt = s.iter().sum();
    if sum.is_odd() {
        return Ok(Some(Violation::Parity { sum }));
    }
    let mut cuts = nonbipartite_pairs(g)?;
    cuts.sort_by_key(|&(i, j)| (to_set(i), to_set(j)));
    for (i_mask, j_mask) in cuts {
        let lhs: BigInt = bits(i_mask).map(|v| &s[v]).sum::<BigInt>() - bits(j_mask).map(|v| &s[v]).sum::<BigInt>();
        let weight = |v: usize| -> i32 {
            if i_mask >> v & 1 == 1 {
                1
            } else if j_mask >> v & 1 == 1 {
                -1
            } else {
                0
            }
        };
        let mut rhs = BigInt::zero();
        for (k, &(a, b)) in g.edges.iter().enumerate() {
            let p = weight(a) + weight(b);
            if p > 0 {
                rhs += &upper[k] * p;
            } else if p < 0 {
                rhs += &lower[k] * p;
            }
        }
        if lhs > rhs {
            return Ok(Some(Violation::Cut {
                cut: Cut::Pair(to_set(i_mask), to_set(j_mask)),
                lhs,
                rhs,
            }));
        }
    }
    Ok(None)
}

fn check_nonbipartite_instance(g: &Graph, s: &[BigInt], lower: &[BigInt], upper: &[BigInt]) -> Result<()> {
    require_connected(g)?;
    dim_check("degree vector", g.n, s.len())?;
    edge_bounds_check(g.m(), lower, upper)?;
    if g.is_bipartite() {
        return Err(Error::Precondition("graph is bipartite".into()));
    }
    if has_two_vertex_disjoint_odd_cycles(g) {
        return Err(Error::Precondition(
            "graph has two vertex-disjoint odd cycles, so its incidence matrix is not a Farkas matrix".into(),
        ));
    }
    Ok(())
}

/// The non-bipartite counterpart of [`gale_ryser_feasible`]: parity of the
/// degree sum plus cut inequalities with doubled inner-edge terms.
pub fn nonbipartite_feasible(g: &Graph, s: &[BigInt], lower: &[BigInt], upper: &[BigInt]) -> Result<Realization> {
    check_nonbipartite_instance(g, s, lower, upper)?;
    if let Some(v) = nonbipartite_violation(g, s, lower, upper)? {
        return Ok(Realization::Infeasible(v));
    }
    let prob = FeasibilityProblem::from_matrix(&incidence(g), lower.to_vec(), upper.to_vec(), s.to_vec())?;
    solve_or_bug(&prob)
}

fn landau_violation(d: &Digraph, r: &[BigInt], lower: &[BigInt], upper: &[BigInt]) -> Result<Option<Violation>> {
    let sum: BigInt = r.iter().sum();
    if !sum.is_zero() {
        return Ok(Some(Violation::Balance {
            lhs: sum,
            rhs: BigInt::zero(),
        }));
    }
    for set in directed_sets(&d.underlying())? {
        let lhs: BigInt = bits(set).map(|v| &r[v]).sum();
        let mut rhs = BigInt::zero();
        for (k, &(t, h)) in d.arcs.iter().enumerate() {
            match (set >> t & 1 == 1, set >> h & 1 == 1) {
                (true, false) => rhs += &upper[k],
                (false, true) => rhs -= &lower[k],
                _ => {}
            }
        }
        if lhs > rhs {
            return Ok(Some(Violation::Cut {
                cut: Cut::Set(to_set(set)),
                lhs,
                rhs,
            }));
        }
    }
    Ok(None)
}

fn check_flow_instance(d: &Digraph, r: &[BigInt], lower: &[BigInt], upper: &[BigInt]) -> Result<()> {
    require_connected(&d.underlying())?;
    dim_check("excess vector", d.n, r.len())?;
    edge_bounds_check(d.m(), lower, upper)
}

/// Integers `lower <= x <= upper` on the arcs of a connected oriented graph
/// with `sum_e x_e (f_tail - f_head) = r`.
pub fn landau_flow_feasible(d: &Digraph, r: &[BigInt], lower: &[BigInt], upper: &[BigInt]) -> Result<Realization> {
    check_flow_instance(d, r, lower, upper)?;
    if let Some(v) = landau_violation(d, r, lower, upper)? {
        return Ok(Realization::Infeasible(v));
    }
    let prob = FeasibilityProblem::from_matrix(&directed_incidence(d), lower.to_vec(), upper.to_vec(), r.to_vec())?;
    solve_or_bug(&prob)
}

/// Whether a nonincreasing sequence is the signed degree sequence of an oriented graph.
pub fn signed_graphical(d: &[i64]) -> Result<bool> {
    if d.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition("sequence is not nonincreasing".into()));
    }
    let n = d.len() as i64;
    if d.iter().sum::<i64>() != 0 {
        return Ok(false);
    }
    let mut prefix = 0;
    for (l, x) in d.iter().enumerate() {
        let l = l as i64 + 1;
        prefix += x;
        if prefix > l * (n - l) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An oriented graph with the given signed degrees, if one exists. Works for any order of `d`.
pub fn signed_graphical_realization(d: &[i64]) -> Result<Option<Digraph>> {
    let n = d.len();
    if n < 2 {
        return Ok(d.iter().all(|&x| x == 0).then(|| Digraph { n, arcs: Vec::new() }));
    }
    let full = Digraph::transitive_tournament(n);
    let m = full.m();
    let r: IntVector = d.iter().map(|&x| BigInt::from(x)).collect();
    let lower = vec![-BigInt::one(); m];
    let upper = vec![BigInt::one(); m];
    match landau_flow_feasible(&full, &r, &lower, &upper)? {
        Realization::Infeasible(_) => Ok(None),
        Realization::Feasible(x) => {
            let arcs = full
                .arcs
                .iter()
                .zip(&x)
                .filter(|(_, v)| !v.is_zero())
                .map(|(&(i, j), v)| if v.is_positive() { (i, j) } else { (j, i) })
                .collect::<Vec<_>>();
            Ok(Some(Digraph { n, arcs }))
        }
    }
}

fn scores_violation(g: &Graph, r: &[BigInt]) -> Result<Option<Violation>> {
    let sum: BigInt = r.iter().sum();
    if sum != BigInt::from(g.m()) {
        return Ok(Some(Violation::Balance {
            lhs: sum,
            rhs: BigInt::from(g.m()),
        }));
    }
    for set in directed_sets(g)? {
        let lhs: BigInt = bits(set).map(|v| &r[v]).sum::<BigInt>() * 2;
        let crossing = g.edges.iter().filter(|&&(i, j)| (set >> i & 1) != (set >> j & 1)).count();
        let degrees: usize = bits(set).map(|v| g.degree(v)).sum();
        let rhs = BigInt::from(crossing + degrees);
        if lhs > rhs {
            return Ok(Some(Violation::Cut {
                cut: Cut::Set(to_set(set)),
                lhs,
                rhs,
            }));
        }
    }
    Ok(None)
}

fn check_scores_instance(g: &Graph, r: &[BigInt]) -> Result<()> {
    require_connected(g)?;
    dim_check("score vector", g.n, r.len())
}

/// Whether `r` is the out-degree sequence of some orientation of a connected graph.
pub fn orientation_scores_feasible(g: &Graph, r: &[BigInt]) -> Result<bool> {
    check_scores_instance(g, r)?;
    Ok(scores_violation(g, r)?.is_none())
}

/// Like [`orientation_scores_feasible`], reporting the failed condition.
pub fn orientation_scores_violation(g: &Graph, r: &[BigInt]) -> Result<Option<Violation>> {
    check_scores_instance(g, r)?;
    scores_violation(g, r)
}

/// The orientation system instance for scores `r`: target `(2r - d_G, 1, ..., 1)`, bounds `0..1`.
pub fn scores_problem(g: &Graph, r: &[BigInt]) -> Result<FeasibilityProblem> {
    dim_check("score vector", g.n, r.len())?;
    let mut target: IntVector = (0..g.n).map(|v| &r[v] * 2 - BigInt::from(g.degree(v))).collect();
    target.extend((0..g.m()).map(|_| BigInt::one()));
    let m2 = 2 * g.m();
    FeasibilityProblem::new(orientation_system(g), vec![BigInt::zero(); m2], vec![BigInt::one(); m2], target)
}

/// An orientation of `g` with out-degrees `r`, if one exists.
pub fn orientation_with_scores(g: &Graph, r: &[BigInt]) -> Result<Option<Digraph>> {
    if !orientation_scores_feasible(g, r)? {
        return Ok(None);
    }
    let prob = scores_problem(g, r)?;
    let x = integer_solve_unchecked(&prob)?
        .ok_or_else(|| Error::Internal("score conditions hold but no orientation was found".into()))?;
    let arcs = g
        .edges
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| if x[2 * k].is_one() { (i, j) } else { (j, i) })
        .collect();
    let d = Digraph { n: g.n, arcs };
    if d.out_degrees().iter().zip(r).any(|(&a, b)| BigInt::from(a) != *b) {
        return Err(Error::Internal("constructed orientation has the wrong scores".into()));
    }
    Ok(Some(d))
}

/// An instance of one of the realization theorems.
#[derive(Debug, Clone)]
pub enum TheoremInstance {
    Bipartite {
        graph: Graph,
        left: Vec<bool>,
        s: IntVector,
        lower: IntVector,
        upper: IntVector,
    },
    NonBipartite {
        graph: Graph,
        s: IntVector,
        lower: IntVector,
        upper: IntVector,
    },
    Flow {
        digraph: Digraph,
        r: IntVector,
        lower: IntVector,
        upper: IntVector,
    },
    Scores {
        graph: Graph,
        r: IntVector,
    },
}

/// Whether the theorem's closed-form conditions give the same verdict as the
/// generic integer decision on the corresponding system.
pub fn theorem_condition_equivalence(instance: &TheoremInstance) -> Result<bool> {
    let (closed, prob) = match instance {
        TheoremInstance::Bipartite {
            graph,
            left,
            s,
            lower,
            upper,
        } => {
            check_bipartite_instance(graph, left, s, lower, upper)?;
            (
                gale_ryser_violation(graph, left, s, lower, upper)?.is_none(),
                FeasibilityProblem::from_matrix(&incidence(graph), lower.clone(), upper.clone(), s.clone())?,
            )
        }
        TheoremInstance::NonBipartite { graph, s, lower, upper } => {
            check_nonbipartite_instance(graph, s, lower, upper)?;
            (
                nonbipartite_violation(graph, s, lower, upper)?.is_none(),
                FeasibilityProblem::from_matrix(&incidence(graph), lower.clone(), upper.clone(), s.clone())?,
            )
        }
        TheoremInstance::Flow { digraph, r, lower, upper } => {
            check_flow_instance(digraph, r, lower, upper)?;
            (
                landau_violation(digraph, r, lower, upper)?.is_none(),
                FeasibilityProblem::from_matrix(&directed_incidence(digraph), lower.clone(), upper.clone(), r.clone())?,
            )
        }
        TheoremInstance::Scores { graph, r } => {
            check_scores_instance(graph, r)?;
            (scores_violation(graph, r)?.is_none(), scores_problem(graph, r)?)
        }
    };
    Ok(closed == integer_feasible(&prob)?.is_feasible())
}
