//! Gale duality: a sparse system on l+n+1 monomials becomes l master functions
//! p(y)^β = 1 on the complement of an arrangement of l+n affine hyperplanes in R^l.
//!
//! Column convention: the l free monomials come first (they are the coordinates y),
//! then the n pivot monomials solved for. Weights β index the same columns.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::groebner::MultiPoly;
use crate::lattice::{integer_left_inverse, kernel_basis, lattice_index, IntMatrix, LatticeIndex};
use crate::qpoly::{invert_matrix, rational_to_f64, sign, Rational};
use crate::rootcount::{bivariate_real_solutions, real_roots_f64};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaleError {
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("no invertible pivot minor; the monomials cannot be solved for")]
    SingularPivot,
    #[error("pivot minor is singular; try another pivot monomial set")]
    SingularPivotChoice,
    #[error("the arrangement is not essential")]
    NotEssential,
    #[error("point lies on the arrangement")]
    OnArrangement,
    #[error("point has a zero coordinate")]
    NotInTorus,
    #[error("monomial map is not invertible over the integers (lattice index {0})")]
    NonInvertibleMonomialMap(BigInt),
    #[error("master system is not zero-dimensional")]
    NotZeroDimensional,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// f_i = Σ_j c_ij x^{a_j}, with a_0 = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSystem {
    pub n: usize,
    pub support: Vec<Vec<i64>>,
    pub coeffs: Vec<Vec<Rational>>,
}

fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
    }
    r
}

fn monomial_exact(x: &[Rational], a: &[i64]) -> Rational {
    x.iter().zip(a).fold(Rational::one(), |acc, (xi, &e)| acc * xi.pow(e as i32))
}

fn monomial_f64(x: &[f64], a: &[i64]) -> f64 {
    x.iter().zip(a).map(|(xi, &e)| xi.powi(e as i32)).product()
}

impl SparseSystem {
    pub fn new(support: Vec<Vec<i64>>, coeffs: Vec<Vec<Rational>>) -> Result<Self, GaleError> {
        let bad = |m: &str| Err(GaleError::InvalidSystem(m.to_string()));
        let Some(first) = support.first() else { return bad("empty support") };
        let n = first.len();
        if support.iter().any(|a| a.len() != n) {
            return bad("support points have different dimensions");
        }
        if first.iter().any(|&e| e != 0) {
            return bad("the first support point must be 0");
        }
        if support.iter().unique().count() != support.len() {
            return bad("repeated support point");
        }
        if coeffs.len() != n || coeffs.iter().any(|r| r.len() != support.len()) {
            return bad("coefficient matrix must be n × |A|");
        }
        if rank_rational(&coeffs) != n {
            return bad("equations are linearly dependent");
        }
        let m = IntMatrix::from_columns(&support[1..]);
        if m.rank() != n {
            return bad("support does not span");
        }
        Ok(Self { n, support, coeffs })
    }

    pub fn l(&self) -> usize {
        self.support.len() - self.n - 1
    }

    pub fn eval(&self, x: &[Rational]) -> Vec<Rational> {
        let mons: Vec<Rational> = self.support.iter().map(|a| monomial_exact(x, a)).collect();
        self.coeffs.iter().map(|row| row.iter().zip(&mons).map(|(c, m)| c * m).sum()).collect()
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        let mons: Vec<f64> = self.support.iter().map(|a| monomial_f64(x, a)).collect();
        self.coeffs.iter().map(|row| row.iter().zip(&mons).map(|(c, m)| rational_to_f64(c) * m).sum()).collect()
    }

    /// max_i |f_i(x)| / ‖c_i‖₁.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.eval_f64(x)
            .iter()
            .zip(&self.coeffs)
            .map(|(v, row)| v.abs() / row.iter().map(|c| rational_to_f64(&c.abs())).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// The equations as polynomials; None if some exponent is negative.
    pub fn polynomials(&self) -> Option<Vec<MultiPoly>> {
        if self.support.iter().flatten().any(|&e| e < 0) {
            return None;
        }
        Some(
            self.coeffs
                .iter()
                .map(|row| {
                    let mut p = MultiPoly::zero(self.n);
                    for (a, c) in self.support.iter().zip(row) {
                        p.add_term(a.iter().map(|&e| e as u32).collect(), c.clone());
                    }
                    p
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleSystem {
    pub l: usize,
    pub n: usize,
    /// Degree-1 polynomials, constant first; row k < l is y_k.
    pub p: Vec<Vec<Rational>>,
    /// Support index of the monomial behind each column.
    pub columns: Vec<usize>,
    pub exponents: Vec<Vec<i64>>,
    /// l × (l+n) saturated basis of the integer relations among the exponents.
    pub b: IntMatrix,
    /// [Z^n : ZA]; real solutions transport bijectively when this is odd.
    pub lattice_index: BigInt,
    /// x_i = Π_j m_j^{C_ij} recovers x from the monomial values m; None unless primitive.
    left_inverse: Option<IntMatrix>,
}

/// p = s·p̃ with the first nonzero variable coefficient of p̃ equal to ±1, and
/// p̃(y)^{β_j} = γ_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedGale {
    pub p: Vec<Vec<Rational>>,
    pub scales: Vec<Rational>,
    pub gamma: Vec<Rational>,
}

pub fn gale_transform(sys: &SparseSystem) -> Result<GaleSystem, GaleError> {
    let m = sys.support.len();
    for pivots in (1..m).combinations(sys.n) {
        match gale_transform_with(sys, &pivots) {
            Err(GaleError::SingularPivotChoice) => continue,
            r => return r,
        }
    }
    Err(GaleError::SingularPivot)
}

/// Transform solving for the monomials at the given support indices.
pub fn gale_transform_with(sys: &SparseSystem, pivots: &[usize]) -> Result<GaleSystem, GaleError> {
    let (n, m) = (sys.n, sys.support.len());
    if pivots.len() != n || pivots.iter().any(|&i| i == 0 || i >= m) || pivots.iter().unique().count() != n {
        return Err(GaleError::InvalidSystem("pivots must be n distinct nonzero monomials".into()));
    }
    let free: Vec<usize> = (1..m).filter(|i| !pivots.contains(i)).collect();
    let l = free.len();
    let cp: Vec<Vec<Rational>> = sys.coeffs.iter().map(|r| pivots.iter().map(|&j| r[j].clone()).collect()).collect();
    let inv = invert_matrix(&cp).ok_or(GaleError::SingularPivotChoice)?;
    let mut p: Vec<Vec<Rational>> = (0..l)
        .map(|k| {
            let mut row = vec![Rational::zero(); l + 1];
            row[k + 1] = Rational::one();
            row
        })
        .collect();
    for inv_row in &inv {
        // x^{a_pivot} = −Σ_i inv_i (c_i0 + Σ_k c_i,free_k y_k)
        let mut row = vec![Rational::zero(); l + 1];
        for (w, coeffs) in inv_row.iter().zip(&sys.coeffs) {
            row[0] -= w * &coeffs[0];
            for (k, &j) in free.iter().enumerate() {
                row[k + 1] -= w * &coeffs[j];
            }
        }
        p.push(row);
    }
    if rank_rational(&p) != l + 1 {
        return Err(GaleError::NotEssential);
    }
    let columns: Vec<usize> = free.iter().chain(pivots).copied().collect();
    let exponents: Vec<Vec<i64>> = columns.iter().map(|&j| sys.support[j].clone()).collect();
    let a = IntMatrix::from_columns(&exponents);
    let b = match kernel_basis(&a) {
        Some(k) => IntMatrix::from_i64(&reduce_weights(k.to_i64().ok_or(GaleError::Unsupported("huge weights".into()))?)),
        None => IntMatrix::zeros(0, l + n),
    };
    let index = match lattice_index(&a) {
        LatticeIndex::Finite(d) => d,
        LatticeIndex::Infinite => return Err(GaleError::InvalidSystem("support does not span".into())),
    };
    let left_inverse = integer_left_inverse(&a.transpose());
    Ok(GaleSystem { l, n, p, columns, exponents, b, lattice_index: index, left_inverse })
}

fn norm1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Unimodular row reduction b_i ← b_i − μ b_j while it lowers some 1-norm; cleared master
/// equations have degree at most ‖β‖₁.
fn reduce_weights(mut b: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    loop {
        let mut changed = false;
        for i in 0..b.len() {
            for j in 0..b.len() {
                if i == j {
                    continue;
                }
                let dot: i64 = b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
                let nj: i64 = b[j].iter().map(|y| y * y).sum();
                let mu = (dot as f64 / nj as f64).round() as i64;
                for m in [mu, 1, -1] {
                    if m == 0 {
                        continue;
                    }
                    let cand: Vec<i64> = b[i].iter().zip(&b[j]).map(|(x, y)| x - m * y).collect();
                    if norm1(&cand) < norm1(&b[i]) {
                        b[i] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    b.sort_by_key(|r| norm1(r));
    b
}

fn affine_eval(row: &[Rational], y: &[Rational]) -> Rational {
    row[1..].iter().zip(y).fold(row[0].clone(), |acc, (c, v)| acc + c * v)
}

fn affine_eval_f64(row: &[Rational], y: &[f64]) -> f64 {
    row[1..].iter().zip(y).fold(rational_to_f64(&row[0]), |acc, (c, v)| acc + rational_to_f64(c) * v)
}

fn affine_abs_f64(row: &[Rational], y: &[f64]) -> f64 {
    row[1..].iter().zip(y).fold(rational_to_f64(&row[0].abs()), |acc, (c, v)| acc + (rational_to_f64(c) * v).abs())
}

impl GaleSystem {
    pub fn weights(&self) -> Vec<Vec<i64>> {
        self.b.to_i64().expect("weights fit in i64")
    }

    /// A·βᵀ = 0 for every weight.
    pub fn weights_annihilate(&self) -> bool {
        self.b.data().iter().all(|beta| {
            (0..self.n).all(|i| {
                beta.iter().zip(&self.exponents).map(|(w, a)| w * BigInt::from(a[i])).sum::<BigInt>().is_zero()
            })
        })
    }

    /// Whether a real point of the master system may fail to come from a real point of the
    /// sparse system (even lattice index).
    pub fn real_transport_caveat(&self) -> bool {
        (&self.lattice_index % 2u32).is_zero()
    }

    pub fn linear_form(&self, i: usize) -> MultiPoly {
        affine_form(self.l, &self.p[i])
    }

    pub fn normalized(&self) -> NormalizedGale {
        let scales: Vec<Rational> = self
            .p
            .iter()
            .map(|row| row[1..].iter().find(|c| !c.is_zero()).map_or_else(|| row[0].abs(), |c| c.abs()))
            .collect();
        let p = self.p.iter().zip(&scales).map(|(row, s)| row.iter().map(|c| c / s).collect()).collect();
        let gamma = self
            .b
            .data()
            .iter()
            .map(|beta| {
                beta.iter().zip(&scales).fold(Rational::one(), |acc, (w, s)| {
                    acc * s.pow(-w.to_i32().expect("weight fits in i32"))
                })
            })
            .collect();
        NormalizedGale { p, scales, gamma }
    }

    pub fn signs(&self, y: &[Rational]) -> Vec<i8> {
        self.p.iter().map(|row| sign(&affine_eval(row, y))).collect()
    }

    /// The values p_i(y), i.e. the monomial values at the dual point.
    pub fn monomial_values(&self, y: &[Rational]) -> Vec<Rational> {
        self.p.iter().map(|row| affine_eval(row, y)).collect()
    }

    pub fn monomial_values_f64(&self, y: &[f64]) -> Vec<f64> {
        self.p.iter().map(|row| affine_eval_f64(row, y)).collect()
    }

    /// Whether y is within relative distance `tol` of some hyperplane.
    pub fn near_arrangement(&self, y: &[f64], tol: f64) -> bool {
        self.p.iter().any(|row| affine_eval_f64(row, y).abs() <= tol * affine_abs_f64(row, y))
    }
}

fn affine_form(l: usize, row: &[Rational]) -> MultiPoly {
    let mut f = MultiPoly::constant(l, row[0].clone());
    for k in 0..l {
        let mut e = vec![0u32; l];
        e[k] = 1;
        f.add_term(e, row[k + 1].clone());
    }
    f
}

fn sides(l: usize, p: &[Vec<Rational>], beta: &[BigInt]) -> (MultiPoly, MultiPoly) {
    let mut plus = MultiPoly::constant(l, Rational::one());
    let mut minus = MultiPoly::constant(l, Rational::one());
    for (i, w) in beta.iter().enumerate() {
        let k = w.abs().to_u32().expect("weight fits in u32");
        if k == 0 {
            continue;
        }
        let f = affine_form(l, &p[i]).pow(k);
        if w.is_positive() {
            plus = plus.mul(&f);
        } else {
            minus = minus.mul(&f);
        }
    }
    (plus, minus)
}

/// (Π p^{β⁺}, Π p^{β⁻}) for the weight in row j.
pub fn cleared_sides(g: &GaleSystem, j: usize) -> (MultiPoly, MultiPoly) {
    sides(g.l, &g.p, g.b.row(j))
}

/// Π p^{β⁺} − Π p^{β⁻} for each weight β.
pub fn master_to_polynomial_pair(g: &GaleSystem) -> Vec<MultiPoly> {
    (0..g.b.rows())
        .map(|j| {
            let (plus, minus) = cleared_sides(g, j);
            plus.sub(&minus)
        })
        .collect()
}

/// Same as `master_to_polynomial_pair` from bare data: p has one row per column of the
/// weights, each of length l+1 with l the number of weights.
pub fn cleared_pair(p: &[Vec<Rational>], weights: &IntMatrix) -> Result<Vec<MultiPoly>, GaleError> {
    let l = weights.rows();
    if weights.cols() != p.len() || p.iter().any(|r| r.len() != l + 1) {
        return Err(GaleError::InvalidSystem(format!("need {} rows of length {}", weights.cols(), l + 1)));
    }
    if weights.data().iter().flatten().any(|w| w.abs().to_u32().is_none()) {
        return Err(GaleError::Unsupported("weights too large".into()));
    }
    Ok(weights
        .data()
        .iter()
        .map(|beta| {
            let (plus, minus) = sides(l, p, beta);
            plus.sub(&minus)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chamber {
    Positive,
    Other(Vec<i8>),
    OnArrangement,
}

pub fn chamber_membership(g: &GaleSystem, y: &[Rational]) -> Chamber {
    let s = g.signs(y);
    if s.contains(&0) {
        Chamber::OnArrangement
    } else if s.iter().all(|&v| v > 0) {
        Chamber::Positive
    } else {
        Chamber::Other(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transported {
    pub point: Vec<f64>,
    pub residual: f64,
}

/// y_k = x^{a_k} over the free monomials.
pub fn sparse_to_master(g: &GaleSystem, x: &[Rational]) -> Result<Vec<Rational>, GaleError> {
    if x.iter().any(|v| v.is_zero()) {
        return Err(GaleError::NotInTorus);
    }
    Ok(g.exponents[..g.l].iter().map(|a| monomial_exact(x, a)).collect())
}

/// Image of x with the relative residual of the cleared master equations.
pub fn sparse_to_master_f64(g: &GaleSystem, x: &[f64]) -> Result<Transported, GaleError> {
    if x.contains(&0.0) {
        return Err(GaleError::NotInTorus);
    }
    let y: Vec<f64> = g.exponents[..g.l].iter().map(|a| monomial_f64(x, a)).collect();
    let residual = (0..g.b.rows())
        .map(|j| {
            let (plus, minus) = cleared_sides(g, j);
            let (u, v) = (plus.eval_f64(&y), minus.eval_f64(&y));
            (u - v).abs() / u.abs().max(v.abs()).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);
    Ok(Transported { point: y, residual })
}

fn inverse(g: &GaleSystem) -> Result<&IntMatrix, GaleError> {
    g.left_inverse.as_ref().ok_or_else(|| GaleError::NonInvertibleMonomialMap(g.lattice_index.clone()))
}

/// x_i = Π_j p_j(y)^{C_ij} where C is an integer left inverse of the exponent matrix.
pub fn master_to_sparse(g: &GaleSystem, y: &[Rational]) -> Result<Vec<Rational>, GaleError> {
    let c = inverse(g)?;
    let m = g.monomial_values(y);
    if m.iter().any(|v| v.is_zero()) {
        return Err(GaleError::OnArrangement);
    }
    Ok(c.data()
        .iter()
        .map(|row| {
            row.iter().zip(&m).fold(Rational::one(), |acc, (e, v)| acc * v.pow(e.to_i32().expect("exponent fits in i32")))
        })
        .collect())
}

pub fn master_to_sparse_f64(g: &GaleSystem, sys: &SparseSystem, y: &[f64]) -> Result<Transported, GaleError> {
    let c = inverse(g)?;
    if g.near_arrangement(y, 1e-12) {
        return Err(GaleError::OnArrangement);
    }
    let m = g.monomial_values_f64(y);
    let x: Vec<f64> = c
        .data()
        .iter()
        .map(|row| row.iter().zip(&m).map(|(e, v)| v.powi(e.to_i32().expect("exponent fits in i32"))).product())
        .collect();
    let residual = sys.residual(&x);
    Ok(Transported { point: x, residual })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MasterSolution {
    pub y: Vec<f64>,
    pub positive: bool,
}

/// Real solutions of the cleared master system off the arrangement, for l ≤ 2.
pub fn master_solutions(g: &GaleSystem) -> Result<Vec<MasterSolution>, GaleError> {
    let polys = master_to_polynomial_pair(g);
    let points: Vec<Vec<f64>> = match g.l {
        0 => vec![vec![]],
        1 => {
            let f = polys[0].to_univariate(0).expect("one variable");
            if f.is_zero() {
                return Err(GaleError::NotZeroDimensional);
            }
            real_roots_f64(&f).map_err(|_| GaleError::NotZeroDimensional)?.into_iter().map(|t| vec![t]).collect()
        }
        2 => bivariate_real_solutions(&polys[0], &polys[1])
            .map_err(|_| GaleError::NotZeroDimensional)?
            .into_iter()
            .map(|p| p.to_vec())
            .collect(),
        l => return Err(GaleError::Unsupported(format!("master systems with l = {l}"))),
    };
    Ok(points
        .into_iter()
        .filter(|y| !g.near_arrangement(y, 1e-12))
        .map(|y| {
            let positive = g.monomial_values_f64(&y).iter().all(|&v| v > 0.0);
            MasterSolution { y, positive }
        })
        .collect())
}

/// Real solutions of a two-variable sparse system with all coordinates nonzero.
pub fn torus_real_solutions(sys: &SparseSystem) -> Result<Vec<Vec<f64>>, GaleError> {
    if sys.n != 2 {
        return Err(GaleError::Unsupported("torus solutions need n = 2".into()));
    }
    let fs = sys.polynomials().ok_or_else(|| GaleError::Unsupported("negative exponents".into()))?;
    let sols = bivariate_real_solutions(&fs[0], &fs[1]).map_err(|_| GaleError::NotZeroDimensional)?;
    Ok(sols
        .into_iter()
        .filter(|p| p.iter().all(|&v| v.abs() > 1e-9))
        .map(|p| p.to_vec())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::snf;
    use crate::qpoly::{int, rat};
    use proptest::prelude::*;

    /// Monomial order: 1, u²v, uv²w, v²w³, v²w, uvw³.
    fn example() -> SparseSystem {
        let support = vec![vec![0, 0, 0], vec![2, 1, 0], vec![1, 2, 1], vec![0, 2, 3], vec![0, 2, 1], vec![1, 1, 3]];
        let rows = [[7, 15, -33, 1, 4, -11], [1, -3, 5, 1, -4, 0], [8, 13, -31, 1, 2, -11]];
        let coeffs = rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect();
        SparseSystem::new(support, coeffs).unwrap()
    }

    /// Pivots v²w³, v²w, uvw³, so the columns are x = u²v, y = uv²w and then those three.
    fn example_gale() -> GaleSystem {
        let g = gale_transform_with(&example(), &[3, 4, 5]).unwrap();
        assert_eq!(g.columns, vec![1, 2, 3, 4, 5]);
        g
    }

    fn in_row_lattice(b: &IntMatrix, v: &[i64]) -> bool {
        let mut rows = b.to_i64().unwrap();
        let r0 = IntMatrix::from_i64(&rows).rank();
        rows.push(v.to_vec());
        let aug = IntMatrix::from_i64(&rows);
        // saturated: membership in the rational span suffices
        aug.rank() == r0
    }

    fn reorder(g: &GaleSystem, order: &[usize]) -> IntMatrix {
        let pos: Vec<usize> = order.iter().map(|s| g.columns.iter().position(|c| c == s).unwrap()).collect();
        let rows: Vec<Vec<i64>> = g.weights().iter().map(|r| pos.iter().map(|&i| r[i]).collect()).collect();
        IntMatrix::from_i64(&rows)
    }

    #[test]
    fn example_weights() {
        let g = example_gale();
        // y = (u²v, uv²w), p = (x, y, 1−x−y, 1/2−x+y, 10/11·(1+x−3y)), with y here the second coordinate
        let p: Vec<Vec<Rational>> = vec![
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
            vec![int(1), int(-1), int(-1)],
            vec![rat(1, 2), int(-1), int(1)],
            vec![rat(10, 11), rat(10, 11), rat(-30, 11)],
        ];
        assert_eq!(g.p, p);
        assert!(g.weights_annihilate());
        assert_eq!(g.lattice_index, BigInt::one());
        assert!(in_row_lattice(&g.b, &[2, -2, 3, -1, -2]));
        assert!(in_row_lattice(&g.b, &[1, -3, -1, 3, 1]));
        assert!(!in_row_lattice(&g.b, &[1, 0, 0, 0, 0]));
        let s = snf(&g.b);
        assert!(s.invariant_factors.iter().all(|d| d.is_one()));
        // the default pivot choice gives the same lattice up to column order
        let d = gale_transform(&example()).unwrap();
        let b = reorder(&d, &g.columns);
        assert!(in_row_lattice(&b, &[2, -2, 3, -1, -2]) && in_row_lattice(&b, &[1, -3, -1, 3, 1]));
    }

    #[test]
    fn cleared_polynomial_of_example() {
        let g = example_gale();
        assert_eq!(g.weights(), vec![vec![1, -3, -1, 3, 1], vec![2, -2, 3, -1, -2]]);
        let polys = master_to_polynomial_pair(&g);
        let (x, y) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
        let one = MultiPoly::constant(2, int(1));
        let l1 = one.sub(&x).sub(&y);
        let l2 = MultiPoly::constant(2, rat(1, 2)).sub(&x).add(&y);
        let l3 = one.add(&x).sub(&y.scale(&int(3))).scale(&rat(10, 11));
        let f = y.pow(3).mul(&l1).sub(&x.mul(&l2.pow(3)).mul(&l3));
        let gg = x.pow(2).mul(&l1.pow(3)).sub(&y.pow(2).mul(&l2).mul(&l3.pow(2)));
        assert_eq!(polys[0], f.scale(&int(-1)));
        assert_eq!(polys[1], gg);
        let nz = g.normalized();
        assert_eq!(nz.scales, vec![int(1), int(1), int(1), int(1), rat(10, 11)]);
        assert_eq!(nz.gamma, vec![rat(11, 10), rat(100, 121)]);
        assert_eq!(cleared_pair(&g.p, &g.b).unwrap(), polys);
        assert!(matches!(cleared_pair(&g.p[1..], &g.b), Err(GaleError::InvalidSystem(_))));
    }

    #[test]
    fn trivial_pairs() {
        let g = GaleSystem {
            l: 1,
            n: 1,
            p: vec![vec![int(0), int(1)], vec![int(1), int(-1)]],
            columns: vec![1, 2],
            exponents: vec![vec![1], vec![1]],
            b: IntMatrix::from_i64(&[vec![1, -1]]),
            lattice_index: BigInt::one(),
            left_inverse: None,
        };
        assert_eq!(master_to_polynomial_pair(&g)[0], MultiPoly::from_terms(1, &[(&[1], int(2)), (&[0], int(-1))]));
        let g2 = GaleSystem { b: IntMatrix::from_i64(&[vec![2, 1]]), ..g };
        let expect = MultiPoly::var(1, 0).pow(2).mul(&MultiPoly::from_terms(1, &[(&[0], int(1)), (&[1], int(-1))]));
        assert_eq!(master_to_polynomial_pair(&g2)[0], expect.sub(&MultiPoly::constant(1, int(1))));
    }

    #[test]
    fn chambers() {
        let g = example_gale();
        assert_eq!(chamber_membership(&g, &[rat(1, 5), rat(1, 5)]), Chamber::Positive);
        assert_eq!(chamber_membership(&g, &[rat(1, 2), rat(1, 2)]), Chamber::OnArrangement);
        assert_eq!(chamber_membership(&g, &[int(10), int(10)]), Chamber::Other(vec![1, 1, -1, 1, -1]));
    }

    #[test]
    fn monomial_identity() {
        let e = |a: [i64; 3], k: i64| a.map(|v| v * k);
        let lhs: Vec<i64> = (0..3).map(|i| e([1, 2, 1], 3)[i] + [0, 2, 3][i]).collect();
        let rhs: Vec<i64> = (0..3).map(|i| [2, 1, 0][i] + e([0, 2, 1], 3)[i] + [1, 1, 3][i]).collect();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, vec![3, 8, 6]);
    }

    #[test]
    fn example_transport() {
        let sys = example();
        let g = example_gale();
        let sols = master_solutions(&g).unwrap();
        let pos: Vec<&MasterSolution> = sols.iter().filter(|s| s.positive).collect();
        assert_eq!(pos.len(), 3);
        for s in pos {
            let t = master_to_sparse_f64(&g, &sys, &s.y).unwrap();
            assert!(t.residual < 1e-9, "{}", t.residual);
            assert!(t.point.iter().all(|&v| v > 0.0));
            let back = sparse_to_master_f64(&g, &t.point).unwrap();
            assert!((back.point[0] - s.y[0]).abs() + (back.point[1] - s.y[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_master_system() {
        // x² = 1/4: n = 1, l = 0
        let sys = SparseSystem::new(vec![vec![0], vec![2]], vec![vec![rat(-1, 4), int(1)]]).unwrap();
        let g = gale_transform(&sys).unwrap();
        assert_eq!(g.l, 0);
        assert_eq!(g.b.rows(), 0);
        assert_eq!(g.p, vec![vec![rat(1, 4)]]);
        assert_eq!(g.lattice_index, int(2).to_integer());
        assert!(g.real_transport_caveat());
        assert!(matches!(master_to_sparse(&g, &[]), Err(GaleError::NonInvertibleMonomialMap(_))));
        let sys = SparseSystem::new(vec![vec![0], vec![1]], vec![vec![rat(-1, 4), int(1)]]).unwrap();
        let g = gale_transform(&sys).unwrap();
        assert_eq!(master_to_sparse(&g, &[]).unwrap(), vec![rat(1, 4)]);
        assert_eq!(master_solutions(&g).unwrap().len(), 1);
    }

    #[test]
    fn solutions_near_arrangement_vertices() {
        let support = vec![vec![0, 0], vec![3, 0], vec![2, 0], vec![1, 4], vec![1, 3]];
        // (−8.5, −1.5) is a vertex of the arrangement with a genuine solution 3e-7 away;
        // the second system has a solution 1e-10 from a hyperplane
        for (rows, count) in [([[-3, 1, 0, 0, -2], [-4, 0, -1, -1, 3]], 4), ([[-3, 1, 0, -1, -1], [-2, 0, 0, -1, 2]], 4)] {
            let coeffs = rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect();
            let sys = SparseSystem::new(support.clone(), coeffs).unwrap();
            let g = gale_transform(&sys).unwrap();
            let master = master_solutions(&g).unwrap();
            assert_eq!(master.len(), count);
            assert_eq!(torus_real_solutions(&sys).unwrap().len(), count);
            for s in &master {
                assert!(master_to_sparse_f64(&g, &sys, &s.y).unwrap().residual < 1e-9);
            }
        }
    }

    #[test]
    fn errors() {
        let bad = SparseSystem::new(vec![vec![1, 0], vec![0, 0], vec![0, 1]], vec![vec![int(1); 3]; 2]);
        assert!(matches!(bad, Err(GaleError::InvalidSystem(_))));
        let dep = SparseSystem::new(vec![vec![0, 0], vec![1, 0], vec![0, 1]], vec![vec![int(1); 3]; 2]);
        assert!(matches!(dep, Err(GaleError::InvalidSystem(_))));
        let sys = example();
        assert_eq!(gale_transform_with(&sys, &[2, 2, 3]).err().map(|e| matches!(e, GaleError::InvalidSystem(_))), Some(true));
        let g = example_gale();
        assert_eq!(master_to_sparse(&g, &[rat(1, 2), rat(1, 2)]), Err(GaleError::OnArrangement));
    }

    fn random_rational() -> impl Strategy<Value = Rational> {
        (1i64..6, 1i64..6, any::<bool>()).prop_map(|(n, d, s)| rat(if s { n } else { -n }, d))
    }

    fn primitive_support() -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec((0i64..=4, 0i64..=4), 4)
            .prop_map(|pts| {
                let mut s = vec![vec![0, 0]];
                s.extend(pts.into_iter().map(|(a, b)| vec![a, b]));
                s
            })
            .prop_filter("distinct primitive support", |s| {
                s.iter().unique().count() == s.len()
                    && lattice_index(&IntMatrix::from_columns(&s[1..])) == LatticeIndex::Finite(BigInt::one())
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn exact_round_trip(
            support in primitive_support(),
            x in proptest::collection::vec(random_rational(), 2),
            c in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 4), 2),
        ) {
            // constants chosen so that x solves the system
            let mut coeffs: Vec<Vec<Rational>> = c.iter().map(|r| {
                let mut row = vec![int(0)];
                row.extend(r.iter().map(|&v| int(v)));
                row
            }).collect();
            for row in coeffs.iter_mut() {
                let s: Rational = row.iter().zip(&support).map(|(ci, a)| ci * monomial_exact(&x, a)).sum();
                row[0] = -s;
            }
            let Ok(sys) = SparseSystem::new(support, coeffs) else { return Ok(()) };
            let Ok(g) = gale_transform(&sys) else { return Ok(()) };
            prop_assert!(g.weights_annihilate());
            prop_assert_eq!(g.b.rows(), 2);
            prop_assert!(snf(&g.b).invariant_factors.iter().all(|d| d.is_one()));
            let y = sparse_to_master(&g, &x).unwrap();
            for f in master_to_polynomial_pair(&g) {
                prop_assert!(f.eval(&y).is_zero());
            }
            prop_assert_eq!(master_to_sparse(&g, &y).unwrap(), x);
        }

        #[test]
        fn chamber_locally_constant(
            support in primitive_support(),
            c in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 5), 2),
            y in proptest::collection::vec(random_rational(), 2),
            d in proptest::collection::vec(-1i64..=1, 2),
        ) {
            let coeffs = c.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let Ok(sys) = SparseSystem::new(support, coeffs) else { return Ok(()) };
            let Ok(g) = gale_transform(&sys) else { return Ok(()) };
            let vals = g.monomial_values(&y);
            prop_assume!(vals.iter().all(|v| v.abs() > rat(1, 1000)));
            let eps = rat(1, 1_000_000_000);
            let moved: Vec<Rational> = y.iter().zip(&d).map(|(v, &k)| v + &eps * int(k)).collect();
            prop_assert_eq!(chamber_membership(&g, &y), chamber_membership(&g, &moved));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn master_and_sparse_counts_agree(
            support in primitive_support(),
            c in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 5), 2),
        ) {
            let coeffs = c.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let Ok(sys) = SparseSystem::new(support, coeffs) else { return Ok(()) };
            let Ok(g) = gale_transform(&sys) else { return Ok(()) };
            let weight: i64 = g.weights().iter().flatten().map(|w| w.abs()).max().unwrap_or(0);
            prop_assume!(weight <= 6);
            let (Ok(master), Ok(sparse)) = (master_solutions(&g), torus_real_solutions(&sys)) else {
                return Ok(());
            };
            // f64 master coordinates cannot separate a solution from the arrangement
            // once a monomial value is tiny against the terms of its form
            for t in &sparse {
                let y: Vec<f64> = g.columns[..g.l]
                    .iter()
                    .map(|&j| sys.support[j].iter().zip(t).map(|(&e, &x)| x.powi(e as i32)).product())
                    .collect();
                prop_assume!(!g.near_arrangement(&y, 1e-6));
                // the residual is scaled by coefficients only, so huge terms leave f64 round-off
                let terms: Vec<f64> = sys.support.iter().map(|a| a.iter().zip(t).map(|(&e, &x)| x.powi(e as i32).abs()).product()).collect();
                for row in &sys.coeffs {
                    let norm: f64 = row.iter().map(|c| rational_to_f64(&c.abs())).sum();
                    let size: f64 = row.iter().zip(&terms).map(|(c, m)| rational_to_f64(&c.abs()) * m).sum();
                    prop_assume!(size <= 1e6 * norm);
                }
            }
            prop_assert_eq!(master.len(), sparse.len());
            for s in &master {
                let t = master_to_sparse_f64(&g, &sys, &s.y).unwrap();
                prop_assert!(t.residual < 1e-6);
            }
        }
    }
}
