//! Exact rationals and dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::groebner::MultiPoly;

/// Arbitrary precision rational, always stored in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QpolyError {
    #[error("both polynomials are zero")]
    BothZero,
    #[error("zero polynomial input")]
    ZeroInput,
    #[error("polynomial is constant in the eliminated variable")]
    DegenerateDegree,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational, QpolyError> {
    let t = s.trim();
    let err = || QpolyError::Parse(s.to_string());
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let neg = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
        let d = num_traits::pow(BigInt::from(10), frac_part.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let r = Rational::from_str(t).map_err(|_| err())?;
    Ok(r)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // very large or tiny magnitudes: go through the bit lengths
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = n - d;
        let scaled = if shift > 0 {
            Rational::new(r.numer().clone(), r.denom() << (shift as usize))
        } else {
            Rational::new(r.numer() << ((-shift) as usize), r.denom().clone())
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

/// Exact dyadic value of a finite float; non-finite input maps to zero.
pub fn f64_to_rational(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

pub fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Dense polynomial; `coeffs[i]` multiplies t^i. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// c·t^k
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The polynomial t.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    /// Monic polynomial with the given rational roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + rational_to_f64(c);
        }
        acc
    }

    pub fn sign_at(&self, t: &Rational) -> i8 {
        sign(&self.eval(t))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// f(c·t)
    pub fn scale_arg(&self, c: &Rational) -> Self {
        let mut p = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x * &p);
            p *= c;
        }
        Self::new(out)
    }

    /// f(g(t))
    pub fn compose(&self, g: &UniPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Quotient of a division known to be exact.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// f / gcd(f, f'), same leading coefficient as f.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return self.clone();
        }
        let g = gcd_unchecked(self, &self.derivative());
        self.div_exact(&g)
    }

    /// Strips the factor t^k, returning (f / t^k, k).
    pub fn strip_zero_roots(&self) -> (UniPoly, usize) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (self.clone(), 0);
        }
        (Self::new(self.coeffs[k..].to_vec()), k)
    }

    /// Sum of absolute values of the coefficients.
    pub fn norm1(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).fold(Rational::zero(), |a, b| a + b)
    }

    /// Multiply through by the lcm of denominators and divide by the content.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self.coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |a, c| a.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }
}

fn gcd_unchecked(f: &UniPoly, g: &UniPoly) -> UniPoly {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// Monic gcd.
pub fn poly_gcd(f: &UniPoly, g: &UniPoly) -> Result<UniPoly, QpolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(QpolyError::BothZero);
    }
    Ok(gcd_unchecked(f, g))
}

pub fn poly_eval(f: &UniPoly, t: &Rational) -> Rational {
    f.eval(t)
}

pub fn derivative(f: &UniPoly) -> UniPoly {
    f.derivative()
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, a) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coef = i == 0 || !a.is_one();
            if show_coef {
                if a.is_integer() {
                    write!(f, "{}", a)?;
                } else {
                    write!(f, "({})", a)?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{}", i)?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Determinant over Z by fraction-free elimination.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Bareiss over Q[t]; entries are polynomials and divisions are exact.
pub(crate) fn bareiss_det_poly(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut neg = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    neg = !neg;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if neg {
        -&d
    } else {
        d
    }
}

/// Sylvester matrix rows for coefficient lists given lowest degree first.
fn sylvester<T: Clone>(f: &[T], g: &[T], zero: T) -> Vec<Vec<T>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![zero.clone(); size];
        for (j, c) in f.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![zero.clone(); size];
        for (j, c) in g.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    rows
}

/// Inverse of a square rational matrix by Gauss–Jordan; None when singular.
pub fn invert_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        a[c].iter_mut().for_each(|x| *x *= &inv);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let v = &a[c][j] * &f;
                    a[r][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant of the Sylvester matrix.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<Rational, QpolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(QpolyError::ZeroInput);
    }
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let lf = f.coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let lg = g.coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let fi: Vec<BigInt> = f.coeffs.iter().map(|c| (c * Rational::from_integer(lf.clone())).to_integer()).collect();
    let gi: Vec<BigInt> = g.coeffs.iter().map(|c| (c * Rational::from_integer(lg.clone())).to_integer()).collect();
    let det = bareiss_det(sylvester(&fi, &gi, BigInt::zero()));
    // Res(a f, b g) = a^n b^m Res(f, g)
    let scale = num_traits::pow(lf, n) * num_traits::pow(lg, m);
    Ok(Rational::new(det, scale))
}

/// View a bivariate polynomial as a polynomial in `var` with coefficients in the other variable.
fn as_nested(f: &MultiPoly, var: usize) -> Vec<UniPoly> {
    let other = 1 - var;
    let deg = f.degree_in(var);
    let mut rows = vec![Vec::<Rational>::new(); deg + 1];
    for (e, c) in f.terms() {
        let (i, j) = (e[var] as usize, e[other] as usize);
        let row = &mut rows[i];
        if row.len() <= j {
            row.resize(j + 1, Rational::zero());
        }
        row[j] += c;
    }
    rows.into_iter().map(UniPoly::new).collect()
}

/// Sylvester resultant of two bivariate polynomials with respect to variable `eliminate`
/// (0 or 1); the output is a polynomial in the remaining variable.
pub fn resultant_bivariate(f: &MultiPoly, g: &MultiPoly, eliminate: usize) -> Result<UniPoly, QpolyError> {
    assert!(f.nvars() == 2 && g.nvars() == 2 && eliminate < 2, "bivariate input expected");
    if f.degree_in(eliminate) == 0 || g.degree_in(eliminate) == 0 {
        return Err(QpolyError::DegenerateDegree);
    }
    let fa = as_nested(f, eliminate);
    let ga = as_nested(g, eliminate);
    Ok(bareiss_det_poly(sylvester(&fa, &ga, UniPoly::zero())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sextic() -> UniPoly {
        UniPoly::from_ints(&[-6, 0, 55, 0, -27, -4, 5])
    }

    #[test]
    fn eval_values() {
        assert_eq!(sextic().eval(&int(0)), int(-6));
        assert_eq!(sextic().eval(&int(2)), int(-26));
        assert_eq!(UniPoly::zero().eval(&rat(7, 3)), int(0));
    }

    #[test]
    fn derivative_of_sextic() {
        assert_eq!(sextic().derivative(), UniPoly::from_ints(&[0, 110, 0, -108, -20, 30]));
        assert_eq!(UniPoly::from_ints(&[0, 0, 0, 1]).derivative(), UniPoly::from_ints(&[0, 0, 3]));
        assert!(UniPoly::from_ints(&[4]).derivative().is_zero());
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(UniPoly::new(vec![int(0), int(0)]), UniPoly::zero());
    }

    #[test]
    fn gcds() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), b);
        // (t-1)^2 (t+2) = t^3 - 3t + 2
        let f = UniPoly::from_ints(&[2, -3, 0, 1]);
        assert_eq!(poly_gcd(&f, &f.derivative()).unwrap(), b);
        assert_eq!(poly_gcd(&UniPoly::from_ints(&[1, 0, 1]), &b).unwrap(), UniPoly::one());
        assert_eq!(poly_gcd(&UniPoly::zero(), &UniPoly::zero()), Err(QpolyError::BothZero));
    }

    #[test]
    fn resultants() {
        let f = UniPoly::from_ints(&[-3, 1]);
        let g = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), int(2));
        let a = UniPoly::from_ints(&[1, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), int(4));
        let sq = UniPoly::from_ints(&[1, -2, 1]);
        assert_eq!(resultant(&sq, &sq.derivative()).unwrap(), int(0));
        assert_eq!(resultant(&UniPoly::zero(), &a), Err(QpolyError::ZeroInput));
    }

    #[test]
    fn resultant_with_rational_coefficients() {
        // Res(t - 1/2, t^2 - 2) = (1/2)^2 - 2
        let f = UniPoly::new(vec![rat(-1, 2), int(1)]);
        let g = UniPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), rat(-7, 4));
    }

    #[test]
    fn bivariate_small() {
        let f = MultiPoly::from_terms(2, &[(&[1, 0], int(1)), (&[0, 1], int(-1))]);
        let g = MultiPoly::from_terms(2, &[(&[1, 0], int(1)), (&[0, 1], int(1))]);
        let r = resultant_bivariate(&f, &g, 1).unwrap();
        // lc(f) in y is -1, so the Sylvester determinant is -2x
        assert_eq!(r, UniPoly::from_ints(&[0, -2]));
        let c = MultiPoly::from_terms(2, &[(&[2, 0], int(1)), (&[0, 2], int(1)), (&[0, 0], int(-1))]);
        let r = resultant_bivariate(&c, &f, 1).unwrap();
        assert_eq!(r, UniPoly::from_ints(&[-1, 0, 2]));
        let k = MultiPoly::from_terms(2, &[(&[1, 0], int(1))]);
        assert_eq!(resultant_bivariate(&k, &f, 1), Err(QpolyError::DegenerateDegree));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::new(vec![rat(1, 2), int(0), int(-3)]).to_string(), "-3t^2 + (1/2)");
        assert_eq!(UniPoly::from_ints(&[0, -1]).to_string(), "-t");
    }
}
