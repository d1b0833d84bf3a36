//! Brute-force ground truth, written independently of the decision engine.
//!
//! Nothing here calls into `exactlin`, `circuits`, `indecomp` or `farkas`
//! beyond reading problem data, so agreement between the two is meaningful.
//! Everything is exponential and meant for small instances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::farkas::FeasibilityProblem;
use crate::graphs::Graph;

/// Cap on the number of points an exhaustive search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxSearchBudget {
    max_points: u64,
}

impl BoxSearchBudget {
    pub fn new(max_points: u64) -> Result<Self> {
        if max_points == 0 {
            return Err(Error::Domain("budget must be positive".into()));
        }
        Ok(BoxSearchBudget { max_points })
    }

    pub fn max_points(&self) -> u64 {
        self.max_points
    }

    fn admit(&self, count: &BigInt) -> Result<()> {
        if *count > BigInt::from(self.max_points) {
            Err(Error::Resource(format!("{count} points exceed the budget of {}", self.max_points)))
        } else {
            Ok(())
        }
    }
}

impl Default for BoxSearchBudget {
    fn default() -> Self {
        BoxSearchBudget { max_points: 1_000_000 }
    }
}

fn residual_is_zero(prob: &FeasibilityProblem, x: &[BigInt]) -> bool {
    let cols = prob.columns();
    (0..prob.dim()).all(|r| {
        let s: BigInt = x.iter().zip(cols).map(|(xi, v)| xi * &v[r]).sum();
        s == prob.target()[r]
    })
}

/// Scans every integer point of the box in odometer order.
pub fn brute_force_box(prob: &FeasibilityProblem, budget: BoxSearchBudget) -> Result<Option<Vec<BigInt>>> {
    let count = prob
        .lower()
        .iter()
        .zip(prob.upper())
        .fold(BigInt::one(), |acc, (a, b)| acc * (b - a + 1));
    budget.admit(&count)?;
    let m = prob.num_vars();
    let mut x = prob.lower().to_vec();
    loop {
        if residual_is_zero(prob, &x) {
            return Ok(Some(x));
        }
        let mut i = 0;
        loop {
            if i == m {
                return Ok(None);
            }
            if x[i] < prob.upper()[i] {
                x[i] += 1;
                break;
            }
            x[i] = prob.lower()[i].clone();
            i += 1;
        }
    }
}

/// Reachable degree data of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrientationCensus {
    /// Out-degree vectors over all `2^m` orientations.
    pub scores: BTreeSet<Vec<usize>>,
    /// Out-minus-in degree vectors over all `3^m` oriented subgraphs.
    pub signed: BTreeSet<Vec<i64>>,
}

pub fn brute_force_orientations(g: &Graph, budget: BoxSearchBudget) -> Result<OrientationCensus> {
    let m = g.m();
    budget.admit(&BigInt::from(3u32).pow(m as u32))?;
    let mut census = OrientationCensus::default();
    // each edge: 0 absent, 1 low -> high, 2 high -> low
    let mut state = vec![0u8; m];
    loop {
        let mut signed = vec![0i64; g.n()];
        let mut scores = vec![0usize; g.n()];
        let full = state.iter().all(|&s| s != 0);
        for (&(i, j), &s) in g.edges().iter().zip(&state) {
            let (t, h) = match s {
                0 => continue,
                1 => (i, j),
                _ => (j, i),
            };
            signed[t] += 1;
            signed[h] -= 1;
            scores[t] += 1;
        }
        census.signed.insert(signed);
        if full {
            census.scores.insert(scores);
        }
        let mut k = 0;
        loop {
            if k == m {
                return Ok(census);
            }
            if state[k] < 2 {
                state[k] += 1;
                break;
            }
            state[k] = 0;
            k += 1;
        }
    }
}

/// Signed degree sequences of all oriented graphs on `n` labelled vertices.
pub fn brute_force_signed_sequences(n: usize, budget: BoxSearchBudget) -> Result<BTreeSet<Vec<i64>>> {
    Ok(brute_force_orientations(&Graph::complete(n), budget)?.signed)
}

/// Limit on the number of inequalities alive during elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EliminationLimit {
    pub max_rows: usize,
}

impl Default for EliminationLimit {
    fn default() -> Self {
        EliminationLimit { max_rows: 50_000 }
    }
}

type Row = (Vec<BigRational>, BigRational);

/// Scales a row `c x <= d` so its first nonzero coefficient has absolute value 1.
fn normalize((c, d): Row) -> Row {
    match c.iter().find(|x| !x.is_zero()) {
        None => (c, d),
        Some(p) => {
            let s = p.abs();
            (c.iter().map(|x| x / &s).collect(), d / s)
        }
    }
}

/// Rational feasibility of the box system by substitution of the equations
/// followed by Fourier–Motzkin elimination of the remaining variables.
pub fn fourier_motzkin_feasible(prob: &FeasibilityProblem, limit: EliminationLimit) -> Result<bool> {
    let m = prob.num_vars();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut equalities: Vec<Row> = (0..prob.dim())
        .map(|r| (prob.columns().iter().map(|v| q(&v[r])).collect(), q(&prob.target()[r])))
        .collect();
    let mut rows: Vec<Row> = Vec::with_capacity(2 * m);
    for i in 0..m {
        let mut c = vec![BigRational::zero(); m];
        c[i] = BigRational::one();
        rows.push((c.clone(), q(&prob.upper()[i])));
        c[i] = -BigRational::one();
        rows.push((c, -q(&prob.lower()[i])));
    }

    // substitute one variable per independent equation
    while let Some((c, d)) = equalities.pop() {
        let Some(j) = c.iter().position(|x| !x.is_zero()) else {
            if !d.is_zero() {
                return Ok(false);
            }
            continue;
        };
        let pivot = c[j].clone();
        let apply = |(rc, rd): &mut Row| {
            if rc[j].is_zero() {
                return;
            }
            let f = &rc[j] / &pivot;
            for (x, y) in rc.iter_mut().zip(&c) {
                *x -= &f * y;
            }
            *rd -= &f * &d;
        };
        equalities.iter_mut().for_each(apply);
        rows.iter_mut().for_each(apply);
    }

    for var in 0..m {
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for row in rows {
            if row.0[var].is_positive() {
                pos.push(row);
            } else if row.0[var].is_negative() {
                neg.push(row);
            } else {
                keep.push(row);
            }
        }
        if keep.len() + pos.len() * neg.len() > limit.max_rows {
            return Err(Error::Resource(format!(
                "elimination would create {} inequalities",
                keep.len() + pos.len() * neg.len()
            )));
        }
        for (pc, pd) in &pos {
            for (nc, nd) in &neg {
                let (a, b) = (pc[var].clone(), -&nc[var]);
                let c: Vec<BigRational> = pc.iter().zip(nc).map(|(x, y)| x * &b + y * &a).collect();
                keep.push((c, pd * &b + nd * &a));
            }
        }
        let mut seen = BTreeSet::new();
        rows = keep
            .into_iter()
            .map(normalize)
            .filter(|r| seen.insert(r.clone()))
            .collect();
    }
    Ok(rows.iter().all(|(_, d)| !d.is_negative()))
}

/// Integer row echelon basis of the lattice spanned by `vs`.
fn lattice_basis(vs: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vs.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis = Vec::new();
    for col in 0..n {
        // Euclid on column `col` across the remaining rows
        loop {
            let live: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            let Some(&p) = live.iter().min_by_key(|&&r| rows[r][col].abs()) else {
                break;
            };
            if live.len() == 1 {
                basis.push(rows.swap_remove(p));
                break;
            }
            let pivot = rows[p].clone();
            for &r in &live {
                if r == p {
                    continue;
                }
                let f = rows[r][col].div_floor(&pivot[col]);
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    basis
}

/// Whether `w` is an integer combination of `vs`.
pub fn lattice_member(vs: &[Vec<BigInt>], w: &[BigInt]) -> bool {
    let n = w.len();
    let mut residual = w.to_vec();
    for row in lattice_basis(vs, n) {
        let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
        let (f, rem) = residual[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return false;
        }
        for (x, y) in residual.iter_mut().zip(&row) {
            *x -= &f * y;
        }
    }
    residual.iter().all(Zero::is_zero)
}

fn frac_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank].clone();
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot[c];
            for (x, y) in a[r].iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Supports of all circuits, found as minimally dependent index sets.
pub fn minimal_dependent_supports(vs: &[Vec<BigInt>]) -> Result<Vec<Vec<usize>>> {
    let m = vs.len();
    if m > 20 {
        return Err(Error::Resource(format!("{m} columns exceed the subset scan limit")));
    }
    let rank_of = |s: &[usize]| frac_rank(&s.iter().map(|&i| vs[i].clone()).collect::<Vec<_>>());
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        let s: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        if rank_of(&s) + 1 != s.len() {
            continue;
        }
        let minimal = (0..s.len()).all(|drop| {
            let sub: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != drop).map(|(_, &i)| i).collect();
            rank_of(&sub) == sub.len()
        });
        if minimal {
            out.push(s);
        }
    }
    Ok(out)
}

/// The rounding property that defines Farkas-related vectors, checked for every
/// `k <= max_k`: whenever `k w = sum a_i v_i` with `0 <= a_i < k` and `w` in the
/// lattice, some `y in {0,1}^m` supported inside `supp(a)` has `sum y_i v_i = w`.
/// Returns the first counterexample `(k, a)`.
pub fn rounding_counterexample(vs: &[Vec<BigInt>], max_k: u32) -> Result<Option<(u32, Vec<u32>)>> {
    let m = vs.len();
    let n = vs.first().map_or(0, |v| v.len());
    let total = (1..=max_k as u64).map(|k| k.pow(m as u32)).sum::<u64>();
    if m > 16 || total > 50_000_000 {
        return Err(Error::Resource("rounding check is too large".into()));
    }
    let subset_sums: Vec<Vec<BigInt>> = (0u32..(1 << m))
        .map(|mask| {
            (0..n)
                .map(|r| (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| &vs[i][r]).sum())
                .collect()
        })
        .collect();
    for k in 1..=max_k {
        let kb = BigInt::from(k);
        let mut a = vec![0u32; m];
        loop {
            let sum: Vec<BigInt> = (0..n)
                .map(|r| (0..m).map(|i| &vs[i][r] * BigInt::from(a[i])).sum())
                .collect();
            if sum.iter().all(|s| s.is_multiple_of(&kb)) {
                let w: Vec<BigInt> = sum.iter().map(|s| s / &kb).collect();
                if lattice_member(vs, &w) {
                    let supp = (0..m).filter(|&i| a[i] != 0).fold(0u32, |acc, i| acc | 1 << i);
                    // enumerate submasks of the support
                    let mut sub = supp;
                    let mut found = false;
                    loop {
                        if subset_sums[sub as usize] == w {
                            found = true;
                            break;
                        }
                        if sub == 0 {
                            break;
                        }
                        sub = (sub - 1) & supp;
                    }
                    if !found {
                        return Ok(Some((k, a)));
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == m {
                    break;
                }
                if a[i] + 1 < k {
                    a[i] += 1;
                    break;
                }
                a[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
        }
    }
    Ok(None)
}

/// Whether the rounding property holds for all `k <= max_k`.
pub fn farkas_related_by_definition(vs: &[Vec<BigInt>], max_k: u32) -> Result<bool> {
    Ok(rounding_counterexample(vs, max_k)?.is_none())
}

/// Number of points in a box, saturating at `u64::MAX`.
pub fn box_size(prob: &FeasibilityProblem) -> u64 {
    prob.lower()
        .iter()
        .zip(prob.upper())
        .fold(BigInt::one(), |acc, (a, b)| acc * (b - a + 1))
        .to_u64()
        .unwrap_or(u64::MAX)
}
