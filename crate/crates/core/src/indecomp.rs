//! Indecomposable points of a vector configuration.
//!
//! For columns `v_1..v_m` and a nonzero `u` in their span, the active set
//! `I_u` holds the indices with `<u, v_i> = 0`. `u` is indecomposable iff
//! the space `V(I_u)` of span vectors orthogonal to every active column is a
//! line. Equivalently the functional vector `(<u, v_1>, ..., <u, v_m>)` is an
//! elementary vector of the row space of the column matrix, so the points
//! are enumerated as circuits of the dual configuration (the columns of a
//! kernel basis) and mapped back into the span.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::circuits::for_each_circuit;
use crate::error::{Error, Result};
use crate::exactlin::{
    clear_denominators, independent_columns, inner, inner_mixed, kernel_basis, primitive, primitive_int,
    rank_of, rat_in_span, rat_kernel_basis, span_complement_basis, IntMatrix, IntVector, RatVector, Rational,
};

/// A point `[u]` of the positive projective space, stored by its primitive
/// integer representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndecomposablePoint {
    pub rep: IntVector,
    /// Sorted indices `i` with `<rep, v_i> = 0`.
    pub active_set: Vec<usize>,
}

impl IndecomposablePoint {
    /// Wraps a nonzero vector, normalizing it and computing its active set.
    pub fn from_vector(u: &[BigInt], vs: &[IntVector]) -> Result<Self> {
        let rep = primitive_int(u)?;
        let active_set = active_set_int(&rep, vs)?;
        Ok(IndecomposablePoint { rep, active_set })
    }
}

pub fn active_set(u: &[Rational], vs: &[IntVector]) -> Result<Vec<usize>> {
    if u.iter().all(Zero::is_zero) {
        return Err(Error::Domain("active set of the zero vector".into()));
    }
    let mut out = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        if inner_mixed(u, v)?.is_zero() {
            out.push(i);
        }
    }
    Ok(out)
}

pub(crate) fn active_set_int(u: &[BigInt], vs: &[IntVector]) -> Result<Vec<usize>> {
    if u.iter().all(Zero::is_zero) {
        return Err(Error::Domain("active set of the zero vector".into()));
    }
    let mut out = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        if inner(u, v)?.is_zero() {
            out.push(i);
        }
    }
    Ok(out)
}

/// Dimension of `V(S)`: rank of the configuration minus rank of the columns in `S`.
pub fn complement_dimension(vs: &[IntVector], subset: &[usize]) -> usize {
    let chosen: Vec<IntVector> = subset.iter().map(|&i| vs[i].clone()).collect();
    rank_of(vs) - rank_of(&chosen)
}

fn check_in_span(u: &[Rational], vs: &[IntVector]) -> Result<()> {
    if let Some(v) = vs.first() {
        if v.len() != u.len() {
            return Err(Error::Dimension(format!("vector has length {}, expected {}", u.len(), v.len())));
        }
    }
    if u.iter().all(Zero::is_zero) {
        return Err(Error::Domain("zero vector".into()));
    }
    if !rat_in_span(vs, u) {
        return Err(Error::Domain("vector is not in the span of the columns".into()));
    }
    Ok(())
}

pub fn is_indecomposable(u: &[Rational], vs: &[IntVector]) -> Result<bool> {
    check_in_span(u, vs)?;
    let active = active_set(u, vs)?;
    Ok(complement_dimension(vs, &active) == 1)
}

/// Every indecomposable point of `vs`, sorted by representative.
///
/// Both `[u]` and `[-u]` are listed when both are points (which is always
/// the case for this notion).
pub fn enumerate_indecomposables(vs: &[IntVector]) -> Result<Vec<IndecomposablePoint>> {
    if vs.iter().all(|v| v.iter().all(Zero::is_zero)) {
        return Err(Error::Domain("all columns are zero".into()));
    }
    let n = vs[0].len();
    let m = vs.len();
    let matrix = IntMatrix::from_columns(n, vs)?;

    // Dual configuration: column i holds the i-th coordinates of a kernel basis.
    let kernel: Vec<IntVector> = kernel_basis(&matrix).iter().map(|k| clear_denominators(k)).collect();
    let dual: Vec<IntVector> = (0..m).map(|i| kernel.iter().map(|k| k[i].clone()).collect()).collect();

    // u = B (B^T B)^{-1} y_B maps a row-space vector y back into the span.
    let basis_idx = independent_columns(vs);
    let r = basis_idx.len();
    let gram: Vec<RatVector> = basis_idx
        .iter()
        .map(|&i| basis_idx.iter().map(|&j| Rational::from_integer(inner(&vs[i], &vs[j]).unwrap())).collect())
        .collect();
    let gram_inv = invert(gram, r);

    let mut points = BTreeSet::new();
    let mut failure = None;
    let _ = for_each_circuit(&dual, |c| {
        let y_basis: RatVector = basis_idx.iter().map(|&i| Rational::from_integer(c.coeffs[i].clone())).collect();
        let coords: RatVector = (0..r)
            .map(|a| (0..r).fold(Rational::zero(), |acc, b| acc + &gram_inv[a][b] * &y_basis[b]))
            .collect();
        let mut u = vec![Rational::zero(); n];
        for (cj, &bj) in coords.iter().zip(&basis_idx) {
            for (ui, x) in u.iter_mut().zip(&vs[bj]) {
                *ui += cj * Rational::from_integer(x.clone());
            }
        }
        let rep = match primitive(&u) {
            Ok(rep) => rep,
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        };
        let active: Vec<usize> = (0..m).filter(|&i| c.coeffs[i].is_zero()).collect();
        let neg: IntVector = rep.iter().map(|x| -x).collect();
        points.insert(IndecomposablePoint {
            rep,
            active_set: active.clone(),
        });
        points.insert(IndecomposablePoint {
            rep: neg,
            active_set: active,
        });
        ControlFlow::Continue(())
    });
    if let Some(e) = failure {
        return Err(Error::Internal(format!("dual circuit mapped to zero: {e}")));
    }
    Ok(points.into_iter().collect())
}

fn invert(a: Vec<RatVector>, r: usize) -> Vec<RatVector> {
    use crate::exactlin::rref;
    let aug: Vec<RatVector> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..r).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }));
            row
        })
        .collect();
    let (red, _) = rref(aug, 2 * r);
    red.into_iter().map(|row| row[r..].to_vec()).collect()
}

/// Writes `u` as a sum of indecomposable vectors, each sign-compatible with `u`
/// against every column.
///
/// The parts are produced by the chamber-boundary recursion: move from `u`
/// towards a second direction of `V(I_u)` until some nonzero functional
/// vanishes, then split off the largest admissible multiple of that boundary
/// vector. Both pieces have strictly smaller `V(I)`.
pub fn decompose(u: &[Rational], vs: &[IntVector]) -> Result<Vec<RatVector>> {
    check_in_span(u, vs)?;
    let mut out = Vec::new();
    decompose_into(u.to_vec(), vs, &mut out)?;
    Ok(out)
}

fn functionals(u: &[Rational], vs: &[IntVector]) -> Vec<Rational> {
    vs.iter().map(|v| inner_mixed(u, v).expect("uniform length")).collect()
}

fn decompose_into(u: RatVector, vs: &[IntVector], out: &mut Vec<RatVector>) -> Result<()> {
    let s = functionals(&u, vs);
    let active: Vec<usize> = (0..vs.len()).filter(|&i| s[i].is_zero()).collect();
    let basis = span_complement_basis(vs, &active)?;
    if basis.len() <= 1 {
        out.push(u);
        return Ok(());
    }
    let mut alpha = basis
        .into_iter()
        .find(|b| !proportional(b, &u))
        .ok_or_else(|| Error::Internal("no direction independent of u".into()))?;
    let mut a = functionals(&alpha, vs);
    let in_chamber = |a: &[Rational]| {
        s.iter()
            .zip(a)
            .all(|(si, ai)| si.is_zero() || si.signum() == ai.signum())
    };
    if in_chamber(&a) {
        alpha.iter_mut().for_each(|x| *x = -&*x);
        a.iter_mut().for_each(|x| *x = -&*x);
    }

    // first sign change along (1 - t) u + t alpha, t in (0, 1]
    let t0 = s
        .iter()
        .zip(&a)
        .filter(|(si, ai)| !si.is_zero() && si.signum() != ai.signum())
        .map(|(si, ai)| si / (si - ai))
        .min()
        .ok_or_else(|| Error::Internal("alpha unexpectedly inside the chamber".into()))?;
    let one_minus = Rational::from_integer(1.into()) - &t0;
    let alpha0: RatVector = u.iter().zip(&alpha).map(|(x, y)| &one_minus * x + &t0 * y).collect();
    let b0 = functionals(&alpha0, vs);

    let r0 = s
        .iter()
        .zip(&b0)
        .filter(|(_, bi)| !bi.is_zero())
        .map(|(si, bi)| si / bi)
        .min()
        .ok_or_else(|| Error::Internal("boundary vector orthogonal to every column".into()))?;
    if !r0.is_positive() {
        return Err(Error::Internal("non-positive split ratio".into()));
    }
    let head: RatVector = alpha0.iter().map(|x| &r0 * x).collect();
    let tail: RatVector = u.iter().zip(&head).map(|(x, y)| x - y).collect();
    decompose_into(head, vs, out)?;
    decompose_into(tail, vs, out)
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    let Some(k) = b.iter().position(|x| !x.is_zero()) else {
        return a.iter().all(Zero::is_zero);
    };
    let ratio = &a[k] / &b[k];
    a.iter().zip(b).all(|(x, y)| *x == &ratio * y)
}

#[allow(dead_code)]
pub(crate) fn kernel_dimension_check(rows: Vec<RatVector>, cols: usize) -> usize {
    rat_kernel_basis(rows, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int_vec, rat_vec, to_rat};
    use proptest::prelude::*;

    fn reps(points: &[IndecomposablePoint]) -> Vec<IntVector> {
        points.iter().map(|p| p.rep.clone()).collect()
    }

    /// Generators of every one-dimensional `V(S)`, both signs, kept if indecomposable.
    fn brute_force_points(vs: &[IntVector]) -> BTreeSet<IntVector> {
        let m = vs.len();
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << m) {
            let s: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            let basis = span_complement_basis(vs, &s).unwrap();
            if basis.len() != 1 {
                continue;
            }
            let g = primitive(&basis[0]).unwrap();
            for cand in [g.clone(), g.iter().map(|x| -x).collect()] {
                if is_indecomposable(&to_rat(&cand), vs).unwrap() {
                    out.insert(cand);
                }
            }
        }
        out
    }

    #[test]
    fn active_sets() {
        let vs = vec![int_vec(&[1, -1]), int_vec(&[1, 0])];
        assert_eq!(active_set(&rat_vec(&[(1, 1), (1, 1)]), &vs).unwrap(), vec![0]);
        assert_eq!(active_set(&rat_vec(&[(1, 1), (2, 1)]), &vs).unwrap(), Vec::<usize>::new());
        // C4 with edges 12, 23, 34, 41 and u = f1 - f2
        let c4 = vec![int_vec(&[1, 1, 0, 0]), int_vec(&[0, 1, 1, 0]), int_vec(&[0, 0, 1, 1]), int_vec(&[1, 0, 0, 1])];
        assert_eq!(active_set(&rat_vec(&[(1, 1), (-1, 1), (0, 1), (0, 1)]), &c4).unwrap(), vec![0, 2]);
        assert!(active_set(&rat_vec(&[(0, 1), (0, 1)]), &vs).is_err());
    }

    #[test]
    fn indecomposability() {
        let diag = vec![int_vec(&[1, 1])];
        assert!(is_indecomposable(&rat_vec(&[(1, 1), (1, 1)]), &diag).unwrap());
        let std2 = vec![int_vec(&[1, 0]), int_vec(&[0, 1])];
        assert!(!is_indecomposable(&rat_vec(&[(1, 1), (1, 1)]), &std2).unwrap());
        assert!(is_indecomposable(&rat_vec(&[(1, 1), (0, 1)]), &std2).unwrap());
        assert!(matches!(
            is_indecomposable(&rat_vec(&[(1, 1), (0, 1)]), &diag),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let diag = vec![int_vec(&[1, 1])];
        assert_eq!(reps(&enumerate_indecomposables(&diag).unwrap()), vec![int_vec(&[-1, -1]), int_vec(&[1, 1])]);
        let arc = vec![int_vec(&[1, -1])];
        assert_eq!(reps(&enumerate_indecomposables(&arc).unwrap()), vec![int_vec(&[-1, 1]), int_vec(&[1, -1])]);
        let std2 = vec![int_vec(&[1, 0]), int_vec(&[0, 1])];
        assert_eq!(
            reps(&enumerate_indecomposables(&std2).unwrap()),
            vec![int_vec(&[-1, 0]), int_vec(&[0, -1]), int_vec(&[0, 1]), int_vec(&[1, 0])]
        );
        assert!(enumerate_indecomposables(&[int_vec(&[0, 0])]).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..80 {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(1..=5);
            let vs: Vec<IntVector> = (0..m)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-1..=1))).collect())
                .collect();
            if vs.iter().all(|v| v.iter().all(Zero::is_zero)) {
                continue;
            }
            let points = enumerate_indecomposables(&vs).unwrap();
            let got: BTreeSet<IntVector> = points.iter().map(|p| p.rep.clone()).collect();
            assert_eq!(got, brute_force_points(&vs), "{vs:?}");
            for p in &points {
                assert!(is_indecomposable(&to_rat(&p.rep), &vs).unwrap());
                assert_eq!(p.active_set, active_set_int(&p.rep, &vs).unwrap());
                let neg: IntVector = p.rep.iter().map(|x| -x).collect();
                assert!(got.contains(&neg));
            }
        }
    }

    fn check_decomposition(u: &[Rational], vs: &[IntVector]) {
        let parts = decompose(u, vs).unwrap();
        let n = u.len();
        let mut sum = vec![Rational::zero(); n];
        for p in &parts {
            for (s, x) in sum.iter_mut().zip(p) {
                *s += x;
            }
            assert!(is_indecomposable(p, vs).unwrap());
            for v in vs {
                let a = inner_mixed(u, v).unwrap();
                let b = inner_mixed(p, v).unwrap();
                assert!(!(a * b).is_negative());
            }
        }
        assert_eq!(sum, u.to_vec());
    }

    #[test]
    fn decomposition_examples() {
        let diag = vec![int_vec(&[1, 1])];
        let u = rat_vec(&[(2, 1), (2, 1)]);
        assert_eq!(decompose(&u, &diag).unwrap(), vec![u.clone()]);
        let std2 = vec![int_vec(&[1, 0]), int_vec(&[0, 1])];
        let parts = decompose(&rat_vec(&[(1, 1), (1, 1)]), &std2).unwrap();
        let mut parts: Vec<IntVector> = parts.iter().map(|p| primitive(p).unwrap()).collect();
        parts.sort();
        assert_eq!(parts, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
        let c4 = vec![int_vec(&[1, 1, 0, 0]), int_vec(&[0, 1, 1, 0]), int_vec(&[0, 0, 1, 1]), int_vec(&[1, 0, 0, 1])];
        check_decomposition(&rat_vec(&[(1, 1), (1, 1), (1, 1), (1, 1)]), &c4);
        assert!(decompose(&rat_vec(&[(0, 1), (0, 1)]), &std2).is_err());
    }

    proptest! {
        #[test]
        fn decomposition_contract(
            cols in proptest::collection::vec(proptest::collection::vec(-1i64..=1, 3), 1..5),
            coeffs in proptest::collection::vec(-3i64..=3, 5),
        ) {
            let vs: Vec<IntVector> = cols.iter().map(|c| int_vec(c)).collect();
            let mut u = vec![Rational::zero(); 3];
            for (c, v) in coeffs.iter().zip(&vs) {
                for (ui, x) in u.iter_mut().zip(v) {
                    *ui += Rational::from_integer(BigInt::from(*c) * x);
                }
            }
            prop_assume!(u.iter().any(|x| !x.is_zero()));
            check_decomposition(&u, &vs);
        }

        #[test]
        fn indecomposability_is_scale_invariant(
            cols in proptest::collection::vec(proptest::collection::vec(-1i64..=1, 3), 1..5),
            coeffs in proptest::collection::vec(-2i64..=2, 5),
            num in 1i64..7, den in 1i64..7,
        ) {
            let vs: Vec<IntVector> = cols.iter().map(|c| int_vec(c)).collect();
            let mut u = vec![Rational::zero(); 3];
            for (c, v) in coeffs.iter().zip(&vs) {
                for (ui, x) in u.iter_mut().zip(v) {
                    *ui += Rational::from_integer(BigInt::from(*c) * x);
                }
            }
            prop_assume!(u.iter().any(|x| !x.is_zero()));
            let r = Rational::new(num.into(), den.into());
            let scaled: RatVector = u.iter().map(|x| x * &r).collect();
            prop_assert_eq!(is_indecomposable(&u, &vs).unwrap(), is_indecomposable(&scaled, &vs).unwrap());
            let neg: RatVector = u.iter().map(|x| -x).collect();
            prop_assert_eq!(is_indecomposable(&u, &vs).unwrap(), is_indecomposable(&neg, &vs).unwrap());
        }
    }
}
