//! Exact phase-one simplex for `M x = w, lower <= x <= upper`.
//!
//! Shift `y = x - lower`, so `0 <= y <= upper - lower`. Each equality row gets
//! an artificial variable and each upper bound a slack. Bland's rule keeps the
//! tableau from cycling.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactlin::{RatVector, Rational};

/// A vertex of the box-constrained system, or `None` if it is empty.
pub(crate) fn feasible_point(vs: &[Vec<BigInt>], lower: &[BigInt], upper: &[BigInt], target: &[BigInt]) -> Option<RatVector> {
    let m = vs.len();
    let n = target.len();
    let width = 2 * m + n;
    let rows = n + m;

    // shifted right-hand side w - M lower
    let mut rhs_eq: Vec<BigInt> = target.to_vec();
    for (v, a) in vs.iter().zip(lower) {
        for (r, x) in rhs_eq.iter_mut().zip(v) {
            *r -= x * a;
        }
    }

    let mut t: Vec<RatVector> = Vec::with_capacity(rows);
    let mut rhs: RatVector = Vec::with_capacity(rows);
    let mut basis: Vec<usize> = Vec::with_capacity(rows);
    for i in 0..n {
        let sign = if rhs_eq[i].is_negative() { -BigInt::one() } else { BigInt::one() };
        let mut row = vec![Rational::zero(); width];
        for (j, v) in vs.iter().enumerate() {
            row[j] = Rational::from_integer(&sign * &v[i]);
        }
        row[2 * m + i] = Rational::one();
        t.push(row);
        rhs.push(Rational::from_integer(rhs_eq[i].abs()));
        basis.push(2 * m + i);
    }
    for k in 0..m {
        let mut row = vec![Rational::zero(); width];
        row[k] = Rational::one();
        row[m + k] = Rational::one();
        t.push(row);
        rhs.push(Rational::from_integer(&upper[k] - &lower[k]));
        basis.push(m + k);
    }

    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost = vec![Rational::zero(); width];
    for j in 0..2 * m {
        for row in t.iter().take(n) {
            cost[j] -= &row[j];
        }
    }

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // the phase-one objective is bounded below, so some row must block
        let (p, _) = leave.expect("phase one is bounded");
        let piv = t[p][enter].clone();
        for x in t[p].iter_mut() {
            *x /= &piv;
        }
        rhs[p] /= &piv;
        let prow = t[p].clone();
        let prhs = rhs[p].clone();
        for i in 0..rows {
            if i == p || t[i][enter].is_zero() {
                continue;
            }
            let f = t[i][enter].clone();
            for (x, y) in t[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            rhs[i] -= &f * &prhs;
        }
        let f = cost[enter].clone();
        for (x, y) in cost.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        basis[p] = enter;
    }

    let infeasible = basis
        .iter()
        .zip(&rhs)
        .any(|(&b, r)| b >= 2 * m && !r.is_zero());
    if infeasible {
        return None;
    }
    let mut x: RatVector = lower.iter().map(|a| Rational::from_integer(a.clone())).collect();
    for (&b, r) in basis.iter().zip(&rhs) {
        if b < m {
            x[b] += r;
        }
    }
    Some(x)
}
