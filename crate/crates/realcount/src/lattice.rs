//! Integer linear algebra: Hermite and Smith normal forms, lattice indices, kernels and
//! binomial systems x^{a_i} = β_i.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::qpoly::{rational_to_f64, sign, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("exponent matrix is singular")]
    SingularExponentMatrix,
    #[error("right-hand side has a zero entry")]
    ZeroRightHandSide,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix rows have unequal lengths or the matrix is empty")]
    Ragged,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(data: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        if rows == 0 || cols == 0 || data.iter().any(|r| r.len() != cols) {
            return Err(LatticeError::Ragged);
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("rectangular nonempty matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>]) -> Self {
        Self::from_i64(cols).transpose()
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn data(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.data.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data: (0..self.cols).map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect()).collect(),
        }
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i][j] += &self.data[i][k] * &o.data[k][j];
                }
            }
        }
        out
    }

    /// Rows `r0..r1`.
    pub fn row_slice(&self, r0: usize, r1: usize) -> Option<IntMatrix> {
        IntMatrix::new(self.data[r0..r1].to_vec()).ok()
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        crate::qpoly::bareiss_det(self.data.clone())
    }

    pub fn rank(&self) -> usize {
        snf(self).invariant_factors.len()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in self.data.iter_mut() {
            r.swap(a, b);
        }
    }

    /// row_dst -= q * row_src
    fn row_axpy(&mut self, dst: usize, q: &BigInt, src: usize) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src][j] * q;
            self.data[dst][j] -= v;
        }
    }

    fn col_axpy(&mut self, dst: usize, q: &BigInt, src: usize) {
        if q.is_zero() {
            return;
        }
        for r in self.data.iter_mut() {
            let v = &r[src] * q;
            r[dst] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.data[i].iter_mut() {
            *x = -x.clone();
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .data
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Row-style Hermite form: U·A = H, positive pivots, zeros below and entries above each
/// pivot reduced into [0, pivot).
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        loop {
            let piv = (r..a.rows).filter(|&i| !h.data[i][c].is_zero()).min_by_key(|&i| h.data[i][c].abs());
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for k in r + 1..a.rows {
                let q = h.data[k][c].div_floor(&h.data[r][c]);
                h.row_axpy(k, &q, r);
                u.row_axpy(k, &q, r);
                if !h.data[k][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.data[r][c].is_zero() {
            continue;
        }
        if h.data[r][c].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for k in 0..r {
            let q = h.data[k][c].div_floor(&h.data[r][c]);
            h.row_axpy(k, &q, r);
            u.row_axpy(k, &q, r);
        }
        r += 1;
    }
    (h, u)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries d_1 | d_2 | … | d_r.
    pub invariant_factors: Vec<BigInt>,
}

/// U·A·V = D with D diagonal and a divisibility chain on the diagonal.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut factors = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d.data[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d.data[i][j].abs() < d.data[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SmithDecomposition { d, u, v, invariant_factors: factors };
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..m {
                let q = &d.data[i][t] / &d.data[t][t];
                d.row_axpy(i, &q, t);
                u.row_axpy(i, &q, t);
                clean &= d.data[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = &d.data[t][j] / &d.data[t][t];
                d.col_axpy(j, &q, t);
                v.col_axpy(j, &q, t);
                clean &= d.data[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.data[i][j].is_multiple_of(&d.data[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.row_axpy(t, &minus_one, i);
                    u.row_axpy(t, &minus_one, i);
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        factors.push(d.data[t][t].clone());
    }
    SmithDecomposition { d, u, v, invariant_factors: factors }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

/// [Z^n : ZA] for the columns of an n-row matrix.
pub fn lattice_index(a: &IntMatrix) -> LatticeIndex {
    let s = snf(a);
    if s.invariant_factors.len() < a.rows {
        LatticeIndex::Infinite
    } else {
        LatticeIndex::Finite(s.invariant_factors.iter().product())
    }
}

/// Rows form a basis (in Hermite form) of the saturated lattice {v : A v = 0}; None when
/// the kernel is trivial.
pub fn kernel_basis(a: &IntMatrix) -> Option<IntMatrix> {
    let s = snf(a);
    let r = s.invariant_factors.len();
    if r == a.cols {
        return None;
    }
    let vt = s.v.transpose();
    let k = vt.row_slice(r, a.cols)?;
    let (h, _) = hnf(&k);
    h.row_slice(0, a.cols - r)
}

/// Integer C with C·M = I for a full column rank M whose columns span a saturated lattice.
pub fn integer_left_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let s = snf(m);
    let n = m.cols;
    if s.invariant_factors.len() != n || s.invariant_factors.iter().any(|d| !d.is_one()) {
        return None;
    }
    // U M V = [I; 0]  =>  (V [I 0] U) M = I
    let mut sel = IntMatrix::zeros(n, m.rows);
    for i in 0..n {
        sel.data[i][i] = BigInt::one();
    }
    Some(s.v.mul(&sel).mul(&s.u))
}

/// Number of real solutions of z^d = c.
pub fn rho(d: &BigInt, c: &Rational) -> u32 {
    if d.is_odd() {
        1
    } else if c.is_positive() {
        2
    } else {
        0
    }
}

fn rational_pow(b: &Rational, e: &BigInt) -> Rational {
    let k = e.abs().to_usize().expect("exponent fits in usize");
    let p = num_traits::pow(b.clone(), k);
    if e.is_negative() {
        p.recip()
    } else {
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialSolutionSet {
    pub complex_count: BigInt,
    pub real_count: BigInt,
    pub positive_count: u32,
    /// y_l^{d_l} = c_l after the change of variables x = y^V.
    pub diagonal: Vec<(BigInt, Rational)>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl BinomialSolutionSet {
    /// All real solutions in x-coordinates, as floats.
    pub fn real_solutions_f64(&self) -> Vec<Vec<f64>> {
        let mut ys: Vec<Vec<f64>> = vec![vec![]];
        for (d, c) in &self.diagonal {
            let df = d.to_f64().unwrap();
            let cf = rational_to_f64(c);
            let root = cf.abs().powf(1.0 / df);
            let choices: Vec<f64> = if d.is_odd() {
                vec![root * cf.signum()]
            } else if cf > 0.0 {
                vec![root, -root]
            } else {
                vec![]
            };
            ys = ys
                .iter()
                .flat_map(|y| choices.iter().map(move |&r| {
                    let mut y2 = y.clone();
                    y2.push(r);
                    y2
                }))
                .collect();
        }
        let n = self.v.rows();
        ys.iter()
            .map(|y| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(1.0, |acc, k| acc * y[k].powi(self.v.get(j, k).to_i32().unwrap()))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Solves x^{a_i} = β_i where a_i is the i-th column of `a`.
pub fn solve_binomial(a: &IntMatrix, beta: &[Rational]) -> Result<BinomialSolutionSet, LatticeError> {
    let n = a.rows();
    if a.cols() != n || beta.len() != n {
        return Err(LatticeError::DimensionMismatch(format!(
            "{}x{} exponent matrix with {} right-hand sides",
            a.rows(),
            a.cols(),
            beta.len()
        )));
    }
    if beta.iter().any(|b| b.is_zero()) {
        return Err(LatticeError::ZeroRightHandSide);
    }
    let m = a.transpose();
    let s = snf(&m);
    if s.invariant_factors.len() < n {
        return Err(LatticeError::SingularExponentMatrix);
    }
    let diagonal: Vec<(BigInt, Rational)> = (0..n)
        .map(|l| {
            let c = (0..n).fold(Rational::one(), |acc, i| acc * rational_pow(&beta[i], s.u.get(l, i)));
            (s.invariant_factors[l].clone(), c)
        })
        .collect();
    let complex_count = s.invariant_factors.iter().product();
    let real_count = diagonal.iter().map(|(d, c)| BigInt::from(rho(d, c))).product();
    let positive_count = u32::from(beta.iter().all(|b| sign(b) > 0));
    Ok(BinomialSolutionSet { complex_count, real_count, positive_count, diagonal, u: s.u, v: s.v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{int, rat};
    use proptest::prelude::*;

    fn big(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_worked_matrix() {
        let a = big(&[vec![16, 22], vec![14, 18]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, big(&[vec![2, 4], vec![0, 10]]));
        assert_eq!(u.mul(&a), h);
        assert!(u.is_unimodular());
        let (h, u) = hnf(&IntMatrix::identity(3));
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
        let (h, u) = hnf(&IntMatrix::zeros(2, 2));
        assert_eq!(h, IntMatrix::zeros(2, 2));
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn smith_forms() {
        let s = snf(&big(&[vec![16, 22], vec![14, 18]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(2), BigInt::from(10)]);
        let s = snf(&big(&[vec![4, 0], vec![0, 6]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(2), BigInt::from(12)]);
        let s = snf(&IntMatrix::identity(3));
        assert_eq!(s.invariant_factors, vec![BigInt::one(); 3]);
    }

    #[test]
    fn indices() {
        let a = IntMatrix::from_columns(&[vec![16, 14], vec![22, 18]]);
        assert_eq!(lattice_index(&a), LatticeIndex::Finite(BigInt::from(20)));
        assert_eq!(lattice_index(&IntMatrix::identity(2)), LatticeIndex::Finite(BigInt::one()));
        assert_eq!(lattice_index(&IntMatrix::from_columns(&[vec![2, 4]])), LatticeIndex::Infinite);
    }

    #[test]
    fn kernels() {
        let a = big(&[vec![1, 1, 1]]);
        let k = kernel_basis(&a).unwrap();
        assert_eq!(k.rows(), 2);
        assert!(a.mul(&k.transpose()).data().iter().flatten().all(|x| x.is_zero()));
        assert!(snf(&k).invariant_factors.iter().all(|d| d.is_one()));
        assert!(kernel_basis(&IntMatrix::identity(3)).is_none());
    }

    #[test]
    fn binomial_worked_example() {
        let a = IntMatrix::from_columns(&[vec![16, 14], vec![22, 18]]);
        let s = solve_binomial(&a, &[int(3), int(96)]).unwrap();
        assert_eq!(s.complex_count, BigInt::from(20));
        assert_eq!(s.real_count, BigInt::from(4));
        assert_eq!(s.positive_count, 1);
        let ds: Vec<BigInt> = s.diagonal.iter().map(|(d, _)| d.clone()).collect();
        assert_eq!(ds, vec![BigInt::from(2), BigInt::from(10)]);
        let sols = s.real_solutions_f64();
        assert_eq!(sols.len(), 4);
        for x in sols {
            let r0 = x[0].powi(16) * x[1].powi(14);
            let r1 = x[0].powi(22) * x[1].powi(18);
            assert!((r0 / 3.0 - 1.0).abs() < 1e-9 && (r1 / 96.0 - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn binomial_trivial() {
        let s = solve_binomial(&IntMatrix::identity(2), &[rat(2, 3), int(-5)]).unwrap();
        assert_eq!(s.complex_count, BigInt::one());
        assert_eq!(s.real_count, BigInt::one());
        assert_eq!(s.positive_count, 0);
        let s = solve_binomial(&big(&[vec![2]]), &[int(-1)]).unwrap();
        assert_eq!((s.complex_count, s.real_count), (BigInt::from(2), BigInt::zero()));
        assert_eq!(solve_binomial(&big(&[vec![1, 2], vec![2, 4]]), &[int(1), int(1)]), Err(LatticeError::SingularExponentMatrix));
        assert_eq!(solve_binomial(&IntMatrix::identity(1), &[int(0)]), Err(LatticeError::ZeroRightHandSide));
    }

    #[test]
    fn left_inverse() {
        let m = big(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 2, 3], vec![0, 2, 1], vec![1, 1, 3]]);
        let c = integer_left_inverse(&m).unwrap();
        assert_eq!(c.mul(&m), IntMatrix::identity(3));
        assert!(integer_left_inverse(&big(&[vec![2]])).is_none());
    }

    /// Real count by orthants: sign patterns s with Π s_j^{a_ij} = sign(β_i).
    fn orthant_count(a: &[Vec<i64>], beta: &[i64]) -> u32 {
        let n = beta.len();
        (0..1u32 << n)
            .filter(|mask| {
                (0..n).all(|i| {
                    let neg_parity: i64 = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| a[j][i]).sum();
                    let s = if neg_parity.rem_euclid(2) == 1 { -1 } else { 1 };
                    s == beta[i].signum()
                })
            })
            .count() as u32
    }

    fn matrix_strategy(max_r: usize, max_c: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn hnf_snf_reconstruct(rows in matrix_strategy(5, 7)) {
            let a = big(&rows);
            let (h, u) = hnf(&a);
            prop_assert_eq!(u.mul(&a), h.clone());
            prop_assert!(u.is_unimodular());
            for i in 0..h.rows() {
                if let Some(c) = (0..h.cols()).find(|&c| !h.get(i, c).is_zero()) {
                    prop_assert!(h.get(i, c).is_positive());
                    for k in i + 1..h.rows() {
                        prop_assert!(h.get(k, c).is_zero());
                    }
                    for k in 0..i {
                        prop_assert!(!h.get(k, c).is_negative() && h.get(k, c) < h.get(i, c));
                    }
                }
            }
            let s = snf(&a);
            prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
            prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
            for w in s.invariant_factors.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            for i in 0..s.d.rows() {
                for j in 0..s.d.cols() {
                    if i != j {
                        prop_assert!(s.d.get(i, j).is_zero());
                    }
                }
            }
            if a.rows() == a.cols() && !a.det().is_zero() {
                let p: BigInt = s.invariant_factors.iter().product();
                prop_assert_eq!(p, a.det().abs());
            }
        }

        #[test]
        fn kernel_is_saturated(rows in matrix_strategy(3, 6)) {
            let a = big(&rows);
            if let Some(k) = kernel_basis(&a) {
                prop_assert_eq!(k.rows(), a.cols() - a.rank());
                prop_assert!(a.mul(&k.transpose()).data().iter().flatten().all(|x| x.is_zero()));
                prop_assert!(snf(&k).invariant_factors.iter().all(|d| d.is_one()));
            } else {
                prop_assert_eq!(a.rank(), a.cols());
            }
        }

        #[test]
        fn binomial_real_count_matches_orthants(
            e in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 2),
            b in prop::collection::vec(prop_oneof![-9i64..=-1, 1i64..=9], 2),
        ) {
            let a = big(&e);
            prop_assume!(!a.det().is_zero());
            let beta: Vec<Rational> = b.iter().map(|&x| int(x)).collect();
            let s = solve_binomial(&a, &beta).unwrap();
            prop_assert_eq!(s.real_count, BigInt::from(orthant_count(&e, &b)));
            prop_assert_eq!(s.complex_count, a.det().abs());
        }
    }
}
