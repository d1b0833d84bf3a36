//! Feasibility of `x_1 v_1 + ... + x_m v_m = w` with `a <= x <= b`.
//!
//! Over the rationals the system is solvable iff `w` is in the span of the
//! columns and, at every indecomposable point `u`,
//!
//! ```text
//!     <u, w>  <=  sum_i a_i min(<u, v_i>, 0) + b_i max(<u, v_i>, 0).
//! ```
//!
//! For Farkas-related columns the same inequalities together with lattice
//! membership of `w` decide integer solvability.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::circuits::{find_circuit, for_each_circuit, Circuit};
use crate::error::{dim_check, Error, Result};
use crate::exactlin::{
    in_span, inner, inner_mixed, kernel_basis, lattice_solve_detailed, primitive, rank, to_rat, IntMatrix,
    IntVector, LatticeSolution, RatVector, Rational,
};
use crate::indecomp::{enumerate_indecomposables, IndecomposablePoint};

mod simplex;

/// An instance of the box-constrained system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityProblem {
    vs: Vec<IntVector>,
    lower: IntVector,
    upper: IntVector,
    target: IntVector,
}

impl FeasibilityProblem {
    /// Validates dimensions and `lower <= upper`. The ambient dimension is `target.len()`.
    pub fn new(vs: Vec<IntVector>, lower: IntVector, upper: IntVector, target: IntVector) -> Result<Self> {
        let n = target.len();
        for (i, v) in vs.iter().enumerate() {
            if v.len() != n {
                return Err(Error::Dimension(format!("column {} has length {}, expected {n}", i + 1, v.len())));
            }
        }
        dim_check("lower bounds", vs.len(), lower.len())?;
        dim_check("upper bounds", vs.len(), upper.len())?;
        if let Some(i) = (0..lower.len()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::Domain(format!("bounds of variable {} are inverted", i + 1)));
        }
        Ok(FeasibilityProblem {
            vs,
            lower,
            upper,
            target,
        })
    }

    pub fn from_matrix(m: &IntMatrix, lower: IntVector, upper: IntVector, target: IntVector) -> Result<Self> {
        dim_check("target length", m.rows(), target.len())?;
        Self::new(m.columns(), lower, upper, target)
    }

    pub fn columns(&self) -> &[IntVector] {
        &self.vs
    }

    pub fn lower(&self) -> &[BigInt] {
        &self.lower
    }

    pub fn upper(&self) -> &[BigInt] {
        &self.upper
    }

    pub fn target(&self) -> &[BigInt] {
        &self.target
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// Number of variables `m`.
    pub fn num_vars(&self) -> usize {
        self.vs.len()
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim(), &self.vs).expect("validated on construction")
    }

    /// Whether `x` satisfies the bounds and the equation exactly.
    pub fn satisfied_by(&self, x: &[BigInt]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        if (0..x.len()).any(|i| x[i] < self.lower[i] || x[i] > self.upper[i]) {
            return false;
        }
        let mut sum = vec![BigInt::zero(); self.dim()];
        for (xi, v) in x.iter().zip(&self.vs) {
            for (s, c) in sum.iter_mut().zip(v) {
                *s += xi * c;
            }
        }
        sum == self.target
    }

    /// Rational counterpart of [`satisfied_by`](Self::satisfied_by).
    pub fn satisfied_by_rational(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let lo = to_rat(&self.lower);
        let hi = to_rat(&self.upper);
        if (0..x.len()).any(|i| x[i] < lo[i] || x[i] > hi[i]) {
            return false;
        }
        let mut sum = vec![Rational::zero(); self.dim()];
        for (xi, v) in x.iter().zip(&self.vs) {
            for (s, c) in sum.iter_mut().zip(v) {
                *s += xi * Rational::from_integer(c.clone());
            }
        }
        sum == to_rat(&self.target)
    }

    fn all_columns_zero(&self) -> bool {
        self.vs.iter().all(|v| v.iter().all(Zero::is_zero))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Integer(IntVector),
    Rational(RatVector),
}

/// Why `w` is not reachable by the columns at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeWitness {
    /// `w` is outside the span. `normal` is orthogonal to every column and
    /// `<normal, w> > 0`, so it also violates the inequality at `[normal]`.
    OutsideSpan { normal: IntVector },
    /// `w` is in the span but not in the lattice; solving the Hermite normal
    /// form failed at this row (0-based).
    HnfRow { row: usize },
}

/// An indecomposable point at which `<u, w> <= rhs` fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityWitness {
    pub point: IndecomposablePoint,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Feasible(Solution),
    InfeasibleLattice(LatticeWitness),
    InfeasibleInequality(InequalityWitness),
}

impl Decision {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decision::Feasible(_))
    }
}

/// `sum_i a_i min(<u, v_i>, 0) + b_i max(<u, v_i>, 0)`.
pub fn farkas_rhs(u: &[Rational], prob: &FeasibilityProblem) -> Result<Rational> {
    dim_check("point length", prob.dim(), u.len())?;
    let mut total = Rational::zero();
    for ((v, a), b) in prob.vs.iter().zip(&prob.lower).zip(&prob.upper) {
        let s = inner_mixed(u, v)?;
        let bound = if s.is_negative() { a } else { b };
        total += s * Rational::from_integer(bound.clone());
    }
    Ok(total)
}

/// Whether `<u, w> <= farkas_rhs(u)`.
pub fn check_point(u: &[Rational], prob: &FeasibilityProblem) -> Result<bool> {
    let rhs = farkas_rhs(u, prob)?;
    Ok(inner_mixed(u, &prob.target)? <= rhs)
}

fn inequality_witness(prob: &FeasibilityProblem) -> Result<Option<InequalityWitness>> {
    if prob.all_columns_zero() {
        return Ok(None);
    }
    // sorted by representative, so the first violation is the smallest
    for point in enumerate_indecomposables(&prob.vs)? {
        let u = to_rat(&point.rep);
        let lhs = inner_mixed(&u, &prob.target)?;
        let rhs = farkas_rhs(&u, prob)?;
        if lhs > rhs {
            return Ok(Some(InequalityWitness { point, lhs, rhs }));
        }
    }
    Ok(None)
}

fn span_normal(prob: &FeasibilityProblem) -> IntVector {
    let left = kernel_basis(&prob.matrix().transpose());
    for y in left {
        let mut y = primitive(&y).expect("kernel vectors are nonzero");
        let s = inner(&y, &prob.target).expect("uniform length");
        if !s.is_zero() {
            if s.is_negative() {
                y.iter_mut().for_each(|x| *x = -&*x);
            }
            return y;
        }
    }
    unreachable!("w outside the span has a normal with nonzero product")
}

/// Rational solvability with a certificate.
pub fn rational_feasible(prob: &FeasibilityProblem) -> Result<Decision> {
    if !in_span(&prob.vs, &prob.target) {
        return Ok(Decision::InfeasibleLattice(LatticeWitness::OutsideSpan {
            normal: span_normal(prob),
        }));
    }
    if let Some(w) = inequality_witness(prob)? {
        return Ok(Decision::InfeasibleInequality(w));
    }
    match simplex::feasible_point(&prob.vs, &prob.lower, &prob.upper, &prob.target) {
        Some(x) => Ok(Decision::Feasible(Solution::Rational(x))),
        None => Err(Error::Internal(
            "all indecomposable inequalities hold but the linear program is empty".into(),
        )),
    }
}

/// A rational point of the box system found directly, without certificates.
pub fn rational_solution(prob: &FeasibilityProblem) -> Option<RatVector> {
    simplex::feasible_point(&prob.vs, &prob.lower, &prob.upper, &prob.target)
}

/// Whether every circuit of `vs` has coefficients in `{-1, 0, 1}`; otherwise an offending circuit.
pub fn is_farkas_related(vs: &[IntVector]) -> (bool, Option<Circuit>) {
    let mut bad = None;
    let _ = for_each_circuit(vs, |c| {
        if c.is_unit() {
            std::ops::ControlFlow::Continue(())
        } else {
            bad = Some(c);
            std::ops::ControlFlow::Break(())
        }
    });
    (bad.is_none(), bad)
}

fn require_farkas(vs: &[IntVector]) -> Result<()> {
    match is_farkas_related(vs) {
        (true, _) => Ok(()),
        (false, Some(c)) => Err(Error::Precondition(format!(
            "columns are not Farkas-related; circuit {:?}",
            c.coeffs.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        ))),
        (false, None) => unreachable!(),
    }
}

/// Integer solvability with a certificate. Requires Farkas-related columns.
pub fn integer_feasible(prob: &FeasibilityProblem) -> Result<Decision> {
    require_farkas(&prob.vs)?;
    if let LatticeSolution::Obstruction { row } = lattice_solve_detailed(&prob.matrix(), &prob.target)? {
        let witness = if in_span(&prob.vs, &prob.target) {
            LatticeWitness::HnfRow { row }
        } else {
            LatticeWitness::OutsideSpan {
                normal: span_normal(prob),
            }
        };
        return Ok(Decision::InfeasibleLattice(witness));
    }
    if let Some(w) = inequality_witness(prob)? {
        return Ok(Decision::InfeasibleInequality(w));
    }
    match integer_solve_unchecked(prob)? {
        Some(x) => Ok(Decision::Feasible(Solution::Integer(x))),
        None => Err(Error::Internal("conditions hold but rounding found no integer point".into())),
    }
}

/// Largest support for the exhaustive `{0,1}` fallback of the rounding step.
const FALLBACK_LIMIT: usize = 22;

/// An integer solution, rounded from a rational vertex. Requires Farkas-related columns.
pub fn integer_solve(prob: &FeasibilityProblem) -> Result<Option<IntVector>> {
    require_farkas(&prob.vs)?;
    integer_solve_unchecked(prob)
}

/// [`integer_solve`] for callers that know the columns are Farkas-related.
pub(crate) fn integer_solve_unchecked(prob: &FeasibilityProblem) -> Result<Option<IntVector>> {
    let Some(x) = rational_solution(prob) else {
        return Ok(None);
    };
    if matches!(
        lattice_solve_detailed(&prob.matrix(), &prob.target)?,
        LatticeSolution::Obstruction { .. }
    ) {
        return Ok(None);
    }
    let floor: IntVector = x.iter().map(|xi| xi.floor().to_integer()).collect();
    let frac: RatVector = x.iter().zip(&floor).map(|(xi, f)| xi - Rational::from_integer(f.clone())).collect();
    let k = frac.iter().fold(BigInt::one(), |acc, f| acc.lcm(f.denom()));
    let weights: IntVector = frac.iter().map(|f| (f * Rational::from_integer(k.clone())).to_integer()).collect();
    let mut residual = prob.target.clone();
    for (fi, v) in floor.iter().zip(&prob.vs) {
        for (r, c) in residual.iter_mut().zip(v) {
            *r -= fi * c;
        }
    }
    let support: Vec<usize> = (0..weights.len()).filter(|&i| !weights[i].is_zero()).collect();
    let y = match round_by_circuits(&prob.vs, weights, &k, residual.clone()) {
        Some(y) => y,
        None => match exhaustive_round(&prob.vs, &support, &residual)? {
            Some(y) => y,
            None => return Ok(None),
        },
    };
    let sol: IntVector = floor.iter().zip(&y).map(|(f, yi)| f + BigInt::from(*yi)).collect();
    if !prob.satisfied_by(&sol) {
        return Err(Error::Internal("rounded point violates the system".into()));
    }
    Ok(Some(sol))
}

/// Finds `y in {0,1}^m` with `sum y_i v_i = target` from `k * target = sum weights_i v_i`,
/// `0 <= weights_i < k`, by repeatedly pushing weights along unit circuits until
/// each hits `0` or `k`.
fn round_by_circuits(vs: &[IntVector], mut weights: IntVector, k: &BigInt, mut target: IntVector) -> Option<Vec<u8>> {
    let m = vs.len();
    let mut y = vec![0u8; m];
    let mut active: Vec<usize> = (0..m).filter(|&i| !weights[i].is_zero()).collect();
    while !active.is_empty() {
        let circuit = find_circuit(vs, &active)?;
        if !circuit.is_unit() {
            return None;
        }
        let step = circuit
            .support
            .iter()
            .map(|&i| if circuit.coeffs[i].is_positive() { k - &weights[i] } else { weights[i].clone() })
            .min()
            .expect("circuits are nonempty");
        for &i in &circuit.support {
            weights[i] += &step * &circuit.coeffs[i];
        }
        active.retain(|&i| {
            if weights[i] == *k {
                y[i] = 1;
                for (t, c) in target.iter_mut().zip(&vs[i]) {
                    *t -= c;
                }
                false
            } else {
                !weights[i].is_zero()
            }
        });
    }
    target.iter().all(Zero::is_zero).then_some(y)
}

fn exhaustive_round(vs: &[IntVector], support: &[usize], target: &[BigInt]) -> Result<Option<Vec<u8>>> {
    if support.len() > FALLBACK_LIMIT {
        return Err(Error::Resource(format!(
            "rounding fallback over {} fractional coordinates",
            support.len()
        )));
    }
    for mask in 0u64..(1u64 << support.len()) {
        let mut sum = vec![BigInt::zero(); target.len()];
        for (bit, &i) in support.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                for (s, c) in sum.iter_mut().zip(&vs[i]) {
                    *s += c;
                }
            }
        }
        if sum == target {
            let mut y = vec![0u8; vs.len()];
            for (bit, &i) in support.iter().enumerate() {
                y[i] = (mask >> bit & 1) as u8;
            }
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// The block matrix `[[A, B], [C D, C]]`.
///
/// `A`, `B` are `n x m`; `C` is an invertible `m x m` matrix; `D` is `m x m`
/// with at most one nonzero entry per row, each `+1` or `-1`. The result is
/// a Farkas matrix iff `A - B D` is.
pub fn block_construct(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix) -> Result<IntMatrix> {
    let (n, m) = (a.rows(), a.cols());
    dim_check("rows of B", n, b.rows())?;
    dim_check("columns of B", m, b.cols())?;
    for (what, mat) in [("C", c), ("D", d)] {
        if mat.rows() != m || mat.cols() != m {
            return Err(Error::Dimension(format!(
                "{what} is {}x{}, expected {m}x{m}",
                mat.rows(),
                mat.cols()
            )));
        }
    }
    if rank(c) != m {
        return Err(Error::Precondition("C is singular".into()));
    }
    for i in 0..m {
        let row = d.row(i);
        let nonzero: Vec<&BigInt> = row.iter().filter(|x| !x.is_zero()).collect();
        if nonzero.len() > 1 || nonzero.iter().any(|x| x.abs() != BigInt::one()) {
            return Err(Error::Precondition(format!(
                "row {} of D must have at most one nonzero entry, equal to 1 or -1",
                i + 1
            )));
        }
    }
    let cd = c.mul(d)?;
    let mut e = IntMatrix::zeros(n + m, 2 * m);
    for i in 0..n {
        for j in 0..m {
            e.set(i, j, a.get(i, j).clone());
            e.set(i, m + j, b.get(i, j).clone());
        }
    }
    for i in 0..m {
        for j in 0..m {
            e.set(n + i, j, cd.get(i, j).clone());
            e.set(n + i, m + j, c.get(i, j).clone());
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int_vec, rat_vec};
    use proptest::prelude::*;

    fn prob(cols: &[&[i64]], lo: &[i64], hi: &[i64], w: &[i64]) -> FeasibilityProblem {
        FeasibilityProblem::new(cols.iter().map(|c| int_vec(c)).collect(), int_vec(lo), int_vec(hi), int_vec(w))
            .unwrap()
    }

    /// Box search kept local so these tests do not lean on the oracle module.
    fn box_search(p: &FeasibilityProblem) -> bool {
        let m = p.num_vars();
        let mut x: IntVector = p.lower().to_vec();
        loop {
            if p.satisfied_by(&x) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == m {
                    return false;
                }
                if x[i] < p.upper()[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = p.lower()[i].clone();
                i += 1;
            }
        }
    }

    fn k22() -> Vec<&'static [i64]> {
        // edges 1-3, 1-4, 2-3, 2-4
        vec![&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]
    }

    #[test]
    fn validation() {
        assert!(matches!(
            FeasibilityProblem::new(vec![int_vec(&[1])], int_vec(&[1]), int_vec(&[0]), int_vec(&[0])),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            FeasibilityProblem::new(vec![int_vec(&[1, 2])], int_vec(&[0]), int_vec(&[0]), int_vec(&[0])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn rhs_examples() {
        let p = prob(&[&[1, 0]], &[0], &[1], &[0, 0]);
        assert_eq!(farkas_rhs(&rat_vec(&[(0, 1), (1, 1)]), &p).unwrap(), Rational::zero());
        let p = prob(&[&[1]], &[0], &[1], &[0]);
        assert_eq!(farkas_rhs(&rat_vec(&[(1, 1)]), &p).unwrap(), Rational::one());
        let p = prob(&[&[1]], &[-2], &[1], &[0]);
        assert_eq!(farkas_rhs(&rat_vec(&[(-1, 1)]), &p).unwrap(), Rational::from_integer(2.into()));
        assert!(farkas_rhs(&rat_vec(&[(1, 1), (1, 1)]), &p).is_err());
    }

    #[test]
    fn point_checks() {
        let p = prob(&[&[1, 2], &[3, -1]], &[-1, 0], &[2, 1], &[0, 0]);
        for u in [[1, 0], [0, 1], [-3, 5], [2, -7]] {
            assert!(check_point(&to_rat(&int_vec(&u)), &p).unwrap());
        }
        let p = prob(&[&[1, 1]], &[1], &[1], &[1, 1]);
        assert!(check_point(&rat_vec(&[(1, 1), (1, 1)]), &p).unwrap());
        let p = prob(&[&[1]], &[0], &[0], &[1]);
        assert!(!check_point(&rat_vec(&[(1, 1)]), &p).unwrap());
    }

    #[test]
    fn rational_examples() {
        let d = rational_feasible(&prob(&[&[2]], &[0], &[1], &[1])).unwrap();
        assert_eq!(d, Decision::Feasible(Solution::Rational(rat_vec(&[(1, 2)]))));
        let d = rational_feasible(&prob(&[&[1, 0]], &[0], &[1], &[0, 1])).unwrap();
        assert_eq!(
            d,
            Decision::InfeasibleLattice(LatticeWitness::OutsideSpan { normal: int_vec(&[0, 1]) })
        );
        match rational_feasible(&prob(&[&[1]], &[0], &[1], &[2])).unwrap() {
            Decision::InfeasibleInequality(w) => {
                assert_eq!(w.point.rep, int_vec(&[1]));
                assert_eq!(w.lhs, Rational::from_integer(2.into()));
                assert_eq!(w.rhs, Rational::one());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn farkas_relatedness() {
        let id: Vec<IntVector> = IntMatrix::identity(4).columns();
        assert_eq!(is_farkas_related(&id), (true, None));
        let vs = vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1]), int_vec(&[1, -1])];
        let (ok, c) = is_farkas_related(&vs);
        assert!(!ok);
        assert_eq!(c.unwrap().coeffs, int_vec(&[2, 0, -1, -1]));
        // directed triangle with a chord-free extra arc
        let arcs = vec![int_vec(&[1, -1, 0, 0]), int_vec(&[0, 1, -1, 0]), int_vec(&[-1, 0, 1, 0]), int_vec(&[0, 0, 1, -1])];
        assert!(is_farkas_related(&arcs).0);
    }

    #[test]
    fn integer_examples() {
        let p = prob(&k22(), &[0; 4], &[1; 4], &[1, 1, 1, 1]);
        match integer_feasible(&p).unwrap() {
            Decision::Feasible(Solution::Integer(x)) => {
                assert!(p.satisfied_by(&x));
                assert_eq!(x.iter().filter(|v| v.is_one()).count(), 2);
            }
            other => panic!("{other:?}"),
        }
        let d = integer_feasible(&prob(&[&[2]], &[0], &[1], &[1])).unwrap();
        assert_eq!(d, Decision::InfeasibleLattice(LatticeWitness::HnfRow { row: 0 }));
        let p = prob(&[&[1, 1], &[1, -1]], &[-2, 0], &[0, 3], &[0, 0]);
        assert_eq!(integer_feasible(&p).unwrap(), Decision::Feasible(Solution::Integer(int_vec(&[0, 0]))));
        let bad = prob(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]], &[0; 4], &[1; 4], &[1, 0]);
        assert!(matches!(integer_feasible(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn rounding_already_integral() {
        let p = prob(&[&[1]], &[3], &[3], &[3]);
        assert_eq!(integer_solve(&p).unwrap(), Some(int_vec(&[3])));
    }

    #[test]
    fn block_examples() {
        // N0 for the path 1-2-3 with edges oriented low to high
        let n0 = IntMatrix::from_i64_rows(2, &[&[1, 0], &[-1, 1], &[0, -1]]).unwrap();
        let id = IntMatrix::identity(2);
        let e = block_construct(&n0, &n0.neg(), &id, &id).unwrap();
        assert_eq!(e.rows(), 5);
        assert_eq!(e.cols(), 4);
        assert_eq!(e.column(0), int_vec(&[1, -1, 0, 1, 0]));
        assert_eq!(e.column(2), int_vec(&[-1, 1, 0, 1, 0]));
        let singular = IntMatrix::zeros(2, 2);
        assert!(matches!(block_construct(&n0, &n0, &singular, &id), Err(Error::Precondition(_))));
        let malformed = IntMatrix::from_i64_rows(2, &[&[1, 1], &[0, 0]]).unwrap();
        assert!(matches!(block_construct(&n0, &n0, &id, &malformed), Err(Error::Precondition(_))));
        let twos = IntMatrix::from_i64_rows(2, &[&[2, 0], &[0, 0]]).unwrap();
        assert!(matches!(block_construct(&n0, &n0, &id, &twos), Err(Error::Precondition(_))));
        let zero = IntMatrix::zeros(2, 2);
        let a = IntMatrix::from_i64_rows(2, &[&[1, 1], &[1, -1]]).unwrap();
        let e = block_construct(&a, &a, &id, &zero).unwrap();
        assert_eq!(is_farkas_related(&e.columns()).0, is_farkas_related(&a.columns()).0);
    }

    fn small_problem() -> impl Strategy<Value = FeasibilityProblem> {
        (1usize..=3, 1usize..=4).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(proptest::collection::vec(-1i64..=1, n), m),
                proptest::collection::vec((-2i64..=2, 0i64..=3), m),
                proptest::collection::vec(-3i64..=3, n),
            )
                .prop_map(|(cols, bounds, w)| {
                    FeasibilityProblem::new(
                        cols.iter().map(|c| int_vec(c)).collect(),
                        bounds.iter().map(|&(a, _)| BigInt::from(a)).collect(),
                        bounds.iter().map(|&(a, d)| BigInt::from(a + d)).collect(),
                        int_vec(&w),
                    )
                    .unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn integer_verdicts_match_box_search(p in small_problem()) {
            prop_assume!(is_farkas_related(p.columns()).0);
            let d = integer_feasible(&p).unwrap();
            prop_assert_eq!(d.is_feasible(), box_search(&p));
            if let Decision::Feasible(Solution::Integer(x)) = &d {
                prop_assert!(p.satisfied_by(x));
            }
        }

        #[test]
        fn rational_solutions_are_exact(p in small_problem()) {
            if let Decision::Feasible(Solution::Rational(x)) = rational_feasible(&p).unwrap() {
                prop_assert!(p.satisfied_by_rational(&x));
            } else {
                prop_assert!(rational_solution(&p).is_none());
            }
        }

        #[test]
        fn widening_keeps_feasibility(p in small_problem(), extra in proptest::collection::vec((0i64..=2, 0i64..=2), 4)) {
            prop_assume!(is_farkas_related(p.columns()).0);
            let lo: IntVector = p.lower().iter().zip(&extra).map(|(a, e)| a - e.0).collect();
            let hi: IntVector = p.upper().iter().zip(&extra).map(|(b, e)| b + e.1).collect();
            let wide = FeasibilityProblem::new(p.columns().to_vec(), lo, hi, p.target().to_vec()).unwrap();
            if integer_feasible(&p).unwrap().is_feasible() {
                prop_assert!(integer_feasible(&wide).unwrap().is_feasible());
            }
            if rational_feasible(&p).unwrap().is_feasible() {
                prop_assert!(rational_feasible(&wide).unwrap().is_feasible());
            }
        }
    }
}
