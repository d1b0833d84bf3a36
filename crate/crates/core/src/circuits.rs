//! Elementary integral vectors (circuits) of the relation space
//! `{ x : x_1 v_1 + ... + x_m v_m = 0 }`.
//!
//! Circuits are found by a depth-first walk over independent index sets in
//! increasing order. A circuit `C` is reported exactly once, from the
//! independent set `C \ {max C}`. Supersets of dependent sets are never
//! visited since no circuit contains a smaller dependent set. The walk is
//! exponential in the worst case and intended for desk-scale inputs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::exactlin::{primitive, rank_of, to_rat, IntVector, RatVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit {
    /// Sorted indices of the nonzero coefficients.
    pub support: Vec<usize>,
    /// Coprime integer coefficients, first nonzero entry positive.
    pub coeffs: IntVector,
}

impl Circuit {
    fn from_relation(rel: &[Rational]) -> Circuit {
        let mut coeffs = primitive(rel).expect("relation is nonzero");
        if coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        let support = (0..coeffs.len()).filter(|&i| !coeffs[i].is_zero()).collect();
        Circuit { support, coeffs }
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Whether every coefficient is -1, 0 or 1.
    pub fn is_unit(&self) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= BigInt::one())
    }
}

struct Row {
    pivot: usize,
    vector: RatVector,
    combination: RatVector,
}

struct Walker<'a> {
    columns: Vec<RatVector>,
    allowed: &'a [usize],
    m: usize,
}

impl Walker<'_> {
    /// Reduces column `j` against `rows`. Returns `Err(relation)` when dependent.
    fn reduce(&self, rows: &[Row], j: usize) -> std::result::Result<Row, RatVector> {
        let mut v = self.columns[j].clone();
        let mut comb = vec![Rational::zero(); self.m];
        comb[j] = Rational::one();
        for row in rows {
            if v[row.pivot].is_zero() {
                continue;
            }
            let f = &v[row.pivot] / &row.vector[row.pivot];
            for (x, y) in v.iter_mut().zip(&row.vector) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in comb.iter_mut().zip(&row.combination) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => Ok(Row {
                pivot,
                vector: v,
                combination: comb,
            }),
            None => Err(comb),
        }
    }

    fn walk<F>(&self, rows: &mut Vec<Row>, members: &mut Vec<usize>, from: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(Circuit) -> ControlFlow<()>,
    {
        for pos in from..self.allowed.len() {
            let j = self.allowed[pos];
            match self.reduce(rows, j) {
                Ok(row) => {
                    rows.push(row);
                    members.push(j);
                    let flow = self.walk(rows, members, pos + 1, f);
                    rows.pop();
                    members.pop();
                    flow?;
                }
                Err(relation) => {
                    // dependent; a circuit iff the relation uses every member
                    if members.iter().all(|&i| !relation[i].is_zero()) {
                        f(Circuit::from_relation(&relation))?;
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `f` on every circuit whose support lies in `allowed`, stopping early on `Break`.
pub fn for_each_circuit_within<F>(vs: &[IntVector], allowed: &[usize], mut f: F) -> ControlFlow<()>
where
    F: FnMut(Circuit) -> ControlFlow<()>,
{
    let walker = Walker {
        columns: vs.iter().map(|v| to_rat(v)).collect(),
        allowed,
        m: vs.len(),
    };
    walker.walk(&mut Vec::new(), &mut Vec::new(), 0, &mut f)
}

pub fn for_each_circuit<F>(vs: &[IntVector], f: F) -> ControlFlow<()>
where
    F: FnMut(Circuit) -> ControlFlow<()>,
{
    let all: Vec<usize> = (0..vs.len()).collect();
    for_each_circuit_within(vs, &all, f)
}

/// All circuits of the columns, sorted lexicographically by support.
pub fn enumerate_circuits(vs: &[IntVector]) -> Vec<Circuit> {
    let mut out = Vec::new();
    let _ = for_each_circuit(vs, |c| {
        out.push(c);
        ControlFlow::Continue(())
    });
    out.sort();
    out.dedup();
    out
}

/// Some circuit supported inside `allowed`, if the columns there are dependent.
pub fn find_circuit(vs: &[IntVector], allowed: &[usize]) -> Option<Circuit> {
    let mut found = None;
    let _ = for_each_circuit_within(vs, allowed, |c| {
        found = Some(c);
        ControlFlow::Break(())
    });
    found
}

/// Whether a kernel vector `x` has inclusion-minimal support.
pub fn is_support_minimal(x: &[Rational], vs: &[IntVector]) -> Result<bool> {
    if x.len() != vs.len() {
        return Err(Error::Dimension(format!(
            "coefficient vector has length {}, expected {}",
            x.len(),
            vs.len()
        )));
    }
    if x.iter().all(Zero::is_zero) {
        return Err(Error::Domain("zero vector".into()));
    }
    let n = vs.first().map_or(0, |v| v.len());
    let mut sum = vec![Rational::zero(); n];
    for (xi, v) in x.iter().zip(vs) {
        for (s, vj) in sum.iter_mut().zip(v) {
            *s += xi * Rational::from_integer(vj.clone());
        }
    }
    if sum.iter().any(|s| !s.is_zero()) {
        return Err(Error::Domain("vector is not a relation among the columns".into()));
    }
    let support: Vec<IntVector> = x
        .iter()
        .zip(vs)
        .filter(|(xi, _)| !xi.is_zero())
        .map(|(_, v)| v.clone())
        .collect();
    // kernel of the restricted columns is one-dimensional iff rank = |support| - 1
    let r = rank_of(&support);
    Ok(support.len() - r == 1)
}
