//! Sign variations, Descartes, Budan–Fourier, Sturm chains and root isolation.
//!
//! Sturm counts are of distinct roots; Budan–Fourier and Descartes count with multiplicity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::groebner::MultiPoly;
use crate::qpoly::{int, rat, resultant_bivariate, sign, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("endpoint {0} is a root")]
    EndpointIsRoot(Rational),
    #[error("interval endpoints out of order")]
    InvalidInterval,
    #[error("the polynomials share a curve component or do not involve both variables")]
    NotZeroDimensional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Endpoint {
    fn rank(&self) -> (i8, Option<&Rational>) {
        match self {
            Endpoint::NegInf => (-1, None),
            Endpoint::Finite(r) => (0, Some(r)),
            Endpoint::PosInf => (1, None),
        }
    }

    fn less(&self, o: &Endpoint) -> bool {
        match (self.rank(), o.rank()) {
            ((0, Some(a)), (0, Some(b))) => a < b,
            ((x, _), (y, _)) => x < y,
        }
    }
}

impl From<Rational> for Endpoint {
    fn from(r: Rational) -> Self {
        Endpoint::Finite(r)
    }
}

/// Open interval (lo, hi) with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        crate::qpoly::rational_to_f64(&self.lo) <= x && x <= crate::qpoly::rational_to_f64(&self.hi)
    }
}

/// Number of sign changes after deleting zeros.
pub fn variation(signs: &[i8]) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for &s in signs.iter().filter(|&&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

pub fn variation_of(values: &[Rational]) -> usize {
    variation(&values.iter().map(sign).collect::<Vec<_>>())
}

/// Variation of the coefficient sequence; bounds positive roots with multiplicity.
pub fn descartes_bound(f: &UniPoly) -> Result<usize, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    Ok(variation_of(f.coeffs()))
}

/// Sign of each polynomial at an endpoint; at ±∞ this is the sign of the leading term.
fn signs_at(polys: &[UniPoly], at: &Endpoint) -> Vec<i8> {
    polys
        .iter()
        .map(|p| match at {
            Endpoint::Finite(t) => p.sign_at(t),
            Endpoint::PosInf => sign(&p.leading()),
            Endpoint::NegInf => {
                let s = sign(&p.leading());
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        })
        .collect()
}

/// (f, f', f'', …, f^(deg f))
pub fn derivative_sequence(f: &UniPoly) -> Vec<UniPoly> {
    let mut out = vec![f.clone()];
    while !out.last().unwrap().is_constant() {
        let d = out.last().unwrap().derivative();
        out.push(d);
    }
    out
}

/// var(δf, a) − var(δf, b); at least the number of roots in (a, b] counted with
/// multiplicity and of the same parity.
pub fn budan_fourier(f: &UniPoly, a: &Endpoint, b: &Endpoint) -> Result<usize, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if !a.less(b) {
        return Err(RootError::InvalidInterval);
    }
    let seq = derivative_sequence(f);
    let va = variation(&signs_at(&seq, a));
    let vb = variation(&signs_at(&seq, b));
    Ok(va - vb)
}

/// f₀ = f, f₁ = f′, f_{i+1} = −rem(f_{i−1}, f_i), ending at a gcd of f and f′.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    pub polys: Vec<UniPoly>,
}

impl SturmChain {
    pub fn variation_at(&self, at: &Endpoint) -> usize {
        variation(&signs_at(&self.polys, at))
    }

    /// Distinct roots in (a, b).
    pub fn count(&self, a: &Endpoint, b: &Endpoint) -> Result<usize, RootError> {
        if !a.less(b) {
            return Err(RootError::InvalidInterval);
        }
        for e in [a, b] {
            if let Endpoint::Finite(t) = e {
                if self.polys[0].eval(t).is_zero() {
                    return Err(RootError::EndpointIsRoot(t.clone()));
                }
            }
        }
        Ok(self.variation_at(a) - self.variation_at(b))
    }
}

pub fn sturm_chain(f: &UniPoly) -> Result<SturmChain, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(RootError::ConstantPolynomial);
    }
    let mut polys = vec![f.clone(), f.derivative()];
    loop {
        let n = polys.len();
        let r = polys[n - 2].rem(&polys[n - 1]);
        if r.is_zero() {
            break;
        }
        polys.push(-&r);
    }
    Ok(SturmChain { polys })
}

/// Distinct real roots of f in the open interval (a, b).
pub fn count_real_roots(f: &UniPoly, a: &Endpoint, b: &Endpoint) -> Result<usize, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if !a.less(b) {
        return Err(RootError::InvalidInterval);
    }
    if f.is_constant() {
        return Ok(0);
    }
    sturm_chain(f)?.count(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RayCount {
    pub count: usize,
    /// Multiplicity of 0 as a root, removed before counting.
    pub zero_multiplicity: usize,
}

/// Distinct roots on the open ray (0, ∞) when `positive`, else (−∞, 0).
pub fn count_roots_ray(f: &UniPoly, positive: bool) -> Result<RayCount, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let (g, k) = f.strip_zero_roots();
    let zero = Endpoint::Finite(Rational::zero());
    let count = if g.is_constant() {
        0
    } else if positive {
        count_real_roots(&g, &zero, &Endpoint::PosInf)?
    } else {
        count_real_roots(&g, &Endpoint::NegInf, &zero)?
    };
    Ok(RayCount { count, zero_multiplicity: k })
}

pub fn count_positive_roots(f: &UniPoly) -> Result<RayCount, RootError> {
    count_roots_ray(f, true)
}

/// Strictly exceeds the absolute value of every root.
pub fn cauchy_bound(f: &UniPoly) -> Rational {
    let lc = f.leading().abs();
    let m = f.coeffs()[..f.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

/// Sign of b^d·f(a/b) for b > 0, on the primitive integer form of f.
fn int_sign(f: &[BigInt], t: &Rational) -> i8 {
    let (a, b) = (t.numer(), t.denom());
    let mut acc = BigInt::zero();
    let mut bp = BigInt::one();
    for c in f.iter().rev() {
        acc = acc * a + c * &bp;
        bp *= b;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn int_variation(chain: &[Vec<BigInt>], t: &Rational) -> usize {
    let signs: Vec<i8> = chain.iter().map(|p| int_sign(p, t)).collect();
    variation(&signs)
}

/// A point of (lo, hi) that is not a root of f, preferring the midpoint.
fn split_point(f: &[BigInt], lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    for d in 2i64.. {
        for n in 1..d {
            let t = lo + &w * rat(n, d);
            if int_sign(f, &t) != 0 {
                return t;
            }
        }
    }
    unreachable!()
}

fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |a, c| a.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Sturm chain up to positive factors, by primitive pseudo-remainders.
fn int_sturm_chain(f: &UniPoly) -> Vec<Vec<BigInt>> {
    let f0 = f.primitive_integer();
    let f1 = int_primitive(int_trim(f0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()));
    let mut chain = vec![f0, f1];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.len() <= 1 {
            break;
        }
        let lb = b.last().unwrap().clone();
        let mut r = a.clone();
        let mut k = 0u32;
        while r.len() >= b.len() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - b.len();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, c) in b.iter().enumerate() {
                r[i + shift] -= &lr * c;
            }
            r = int_trim(r);
            k += 1;
        }
        if r.is_empty() {
            break;
        }
        // r = lb^k · rem(a, b); the next entry is −rem up to a positive factor
        let neg = !(lb.is_negative() && k % 2 == 1);
        let r = int_primitive(r);
        chain.push(if neg { r.into_iter().map(|c| -c).collect() } else { r });
    }
    chain
}

/// Isolating intervals, in increasing order, for the distinct real roots of a
/// squarefree polynomial.
fn isolate_squarefree(sf: &UniPoly) -> Vec<Interval> {
    let ichain = int_sturm_chain(sf);
    let b = cauchy_bound(sf);
    let mut out = Vec::new();
    let vb = int_variation(&ichain, &b);
    let mut stack = vec![(-b.clone(), int_variation(&ichain, &-b.clone()), b, vb)];
    while let Some((lo, vlo, hi, vhi)) = stack.pop() {
        match vlo - vhi {
            0 => {}
            1 => out.push(Interval { lo, hi }),
            _ => {
                let m = split_point(&ichain[0], &lo, &hi);
                let vm = int_variation(&ichain, &m);
                stack.push((m.clone(), vm, hi, vhi));
                stack.push((lo, vlo, m, vm));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Shrinks an isolating interval of a squarefree f below `width`.
pub fn refine_root(sf: &UniPoly, iv: &Interval, width: &Rational) -> Interval {
    let f = sf.primitive_integer();
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = int_sign(&f, &lo);
    while &(&hi - &lo) > width {
        let m = split_point(&f, &lo, &hi);
        if int_sign(&f, &m) == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    Interval { lo, hi }
}

/// Disjoint isolating intervals for the distinct real roots, each of width at most `width`
/// when given.
pub fn isolate_roots_width(f: &UniPoly, width: Option<&Rational>) -> Result<Vec<Interval>, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(vec![]);
    }
    let sf = f.squarefree_part();
    let ivs = isolate_squarefree(&sf);
    Ok(match width {
        None => ivs,
        Some(w) => ivs.iter().map(|iv| refine_root(&sf, iv, w)).collect(),
    })
}

pub fn isolate_roots(f: &UniPoly) -> Result<Vec<Interval>, RootError> {
    isolate_roots_width(f, None)
}

/// Floating approximations of the distinct real roots (interval midpoints at width 2^-60).
pub fn real_roots_f64(f: &UniPoly) -> Result<Vec<f64>, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    // a root at 0 is reported exactly rather than as an interval midpoint
    let (g, k) = f.strip_zero_roots();
    let w = Rational::new(One::one(), num_bigint::BigInt::one() << 60);
    let mut out: Vec<f64> = Vec::new();
    if !g.is_constant() {
        let sf = g.squarefree_part();
        let rel = Rational::new(One::one(), num_bigint::BigInt::one() << 56);
        for mut iv in isolate_roots_width(&g, Some(&w))? {
            // small roots need relative, not absolute, precision
            while iv.width() > iv.lo.abs().min(iv.hi.abs()) * &rel {
                let target = iv.width() / int(1 << 20);
                iv = refine_root(&sf, &iv, &target);
            }
            out.push(crate::qpoly::rational_to_f64(&iv.midpoint()));
        }
    }
    if k > 0 {
        out.push(0.0);
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }
    Ok(out)
}

fn relative_residual(p: &MultiPoly, x: &[f64]) -> f64 {
    let scale = p.eval_abs_f64(x);
    let v = p.eval_f64(x).abs();
    if scale > 0.0 {
        v / scale
    } else {
        v
    }
}

/// Roots of the resultant in u = x + λy for the first λ that keeps it nonzero.
fn sheared_roots(f: &MultiPoly, g: &MultiPoly) -> Result<Option<(f64, Vec<f64>)>, RootError> {
    for (p, q) in [(3, 7), (5, 11), (-2, 13)] {
        let lambda = Rational::new(p.into(), q.into());
        // x = u − λy
        let images = [
            MultiPoly::var(2, 0).sub(&MultiPoly::var(2, 1).scale(&lambda)),
            MultiPoly::var(2, 1),
        ];
        let Ok(r) = resultant_bivariate(&f.substitute(&images), &g.substitute(&images), 1) else { continue };
        if !r.is_zero() {
            return Ok(Some((crate::qpoly::rational_to_f64(&lambda), real_roots_f64(&r)?)));
        }
    }
    Ok(None)
}

/// Real common zeros of two bivariate polynomials. Real roots of the two resultants are
/// paired where both polynomials nearly vanish and x + λy is a root of a sheared resultant.
/// Coordinates come from exact isolation, so no polishing is done.
pub fn bivariate_real_solutions(f: &MultiPoly, g: &MultiPoly) -> Result<Vec<[f64; 2]>, RootError> {
    let rx = resultant_bivariate(f, g, 1).map_err(|_| RootError::NotZeroDimensional)?;
    let ry = resultant_bivariate(f, g, 0).map_err(|_| RootError::NotZeroDimensional)?;
    if rx.is_zero() || ry.is_zero() {
        return Err(RootError::NotZeroDimensional);
    }
    let xs = real_roots_f64(&rx)?;
    let ys = real_roots_f64(&ry)?;
    let shear = if xs.len() > 1 && ys.len() > 1 { sheared_roots(f, g)? } else { None };
    let mut out: Vec<[f64; 2]> = Vec::new();
    for &x in &xs {
        for &y in &ys {
            let p = [x, y];
            if relative_residual(f, &p).max(relative_residual(g, &p)) > 1e-7 {
                continue;
            }
            if let Some((lambda, us)) = &shear {
                let u = x + lambda * y;
                if !us.iter().any(|&r| (r - u).abs() <= 1e-12 * (1.0 + x.abs() + y.abs())) {
                    continue;
                }
            }
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sextic() -> UniPoly {
        UniPoly::from_ints(&[-6, 0, 55, 0, -27, -4, 5])
    }

    fn fin(n: i64) -> Endpoint {
        Endpoint::Finite(int(n))
    }

    #[test]
    fn variations() {
        assert_eq!(variation(&[1, -1, -1, -1, 1, 1, -1, 1, 1, 1]), 4);
        assert_eq!(variation(&[-1, 0, 1, 0, 1, -1, 1, 1, 0, 1]), 3);
        assert_eq!(variation(&[1, 1, 1]), 0);
    }

    #[test]
    fn descartes() {
        let f = UniPoly::from_roots(&[int(1), int(2), int(3), int(4), int(5)]);
        assert_eq!(descartes_bound(&f).unwrap(), 5);
        assert_eq!(descartes_bound(&sextic()).unwrap(), 3);
        assert_eq!(descartes_bound(&UniPoly::from_ints(&[-3, 0, 0, 0, 1])).unwrap(), 1);
        assert_eq!(descartes_bound(&UniPoly::zero()), Err(RootError::ZeroPolynomial));
    }

    #[test]
    fn budan_fourier_examples() {
        let f = sextic();
        let seq = derivative_sequence(&f);
        let at0: Vec<Rational> = seq.iter().map(|p| p.eval(&int(0))).collect();
        let at2: Vec<Rational> = seq.iter().map(|p| p.eval(&int(2))).collect();
        assert_eq!(at0, [-6, 0, 110, 0, -648, -480, 3600].map(int).to_vec());
        assert_eq!(at2, [-26, -4, 574, 2544, 5592, 6720, 3600].map(int).to_vec());
        assert_eq!(budan_fourier(&f, &fin(0), &fin(2)).unwrap(), 2);
        assert_eq!(budan_fourier(&f, &Endpoint::NegInf, &Endpoint::PosInf).unwrap(), 6);
        // δf = (2, -2, 2) at -1 and (2, 2, 2) at 1
        assert_eq!(budan_fourier(&UniPoly::from_ints(&[1, 0, 1]), &fin(-1), &fin(1)).unwrap(), 2);
    }

    #[test]
    fn sturm_examples() {
        let c = sturm_chain(&sextic()).unwrap();
        let f2 = UniPoly::new(vec![int(6), rat(-22, 9), rat(-110, 3), rat(12, 5), rat(85, 9)]);
        assert_eq!(c.polys[2], f2);
        assert_eq!(c.variation_at(&fin(0)), 4);
        assert_eq!(c.variation_at(&fin(2)), 2);
        let sq = sturm_chain(&UniPoly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(sq.polys.len(), 2);
        let d = sturm_chain(&UniPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(d.polys, vec![UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[0, 2]), UniPoly::one()]);
    }

    #[test]
    fn counts() {
        let f = sextic();
        assert_eq!(count_real_roots(&f, &fin(0), &fin(2)).unwrap(), 2);
        assert_eq!(count_real_roots(&f, &Endpoint::NegInf, &Endpoint::PosInf).unwrap(), 4);
        let g = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(count_real_roots(&g, &Endpoint::NegInf, &Endpoint::PosInf).unwrap(), 0);
        let h = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(count_real_roots(&h, &fin(1), &fin(3)), Err(RootError::EndpointIsRoot(int(1))));
    }

    #[test]
    fn rays() {
        assert_eq!(count_positive_roots(&sextic()).unwrap().count, 3);
        let f = UniPoly::from_ints(&[9, 2, 9, 9]);
        assert_eq!(count_roots_ray(&f, true).unwrap().count, 0);
        assert_eq!(count_roots_ray(&f, false).unwrap().count, 1);
        let g = UniPoly::from_roots(&[int(1), int(2), int(-3)]);
        assert_eq!(count_positive_roots(&g).unwrap().count, 2);
        let h = UniPoly::from_ints(&[0, 0, -1, 1]);
        assert_eq!(count_positive_roots(&h).unwrap(), RayCount { count: 1, zero_multiplicity: 2 });
    }

    #[test]
    fn isolation() {
        let ivs = isolate_roots_width(&sextic(), Some(&rat(1, 100))).unwrap();
        let expect = [-0.339311, 0.340401, 1.59753, 2.25615];
        assert_eq!(ivs.len(), 4);
        for (iv, x) in ivs.iter().zip(expect) {
            assert!(iv.width() <= rat(1, 100));
            assert!(iv.contains_f64(x));
        }
        assert!(isolate_roots(&UniPoly::from_ints(&[1, 0, 1])).unwrap().is_empty());
        let r = real_roots_f64(&UniPoly::from_ints(&[2, -3, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] + 2.0).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn isolation_hits_rational_roots() {
        let f = UniPoly::from_roots(&[rat(1, 2), int(0), rat(-3, 4), int(1)]);
        let r = real_roots_f64(&f).unwrap();
        assert_eq!(r.len(), 4);
        for (a, b) in r.iter().zip([-0.75, 0.0, 0.5, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(r[1], 0.0);
        let tiny = UniPoly::new(vec![int(0), int(0), -rat(1, 1_000_000_000_000_000), int(1)]);
        let r = real_roots_f64(&tiny).unwrap();
        assert_eq!(r[0], 0.0);
        assert!((r[1] / 1e-15 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_trinomials() {
        let a = rat(78, 55);
        let f = MultiPoly::from_terms(2, &[(&[6, 0], int(1)), (&[0, 3], a.clone()), (&[0, 1], int(-1))]);
        let g = MultiPoly::from_terms(2, &[(&[0, 6], int(1)), (&[3, 0], a), (&[1, 0], int(-1))]);
        let sols = bivariate_real_solutions(&f, &g).unwrap();
        let mut xs: Vec<f64> = sols.iter().filter(|p| p[0] > 0.0 && p[1] > 0.0).map(|p| p[0]).collect();
        xs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let expect = [0.8136, 0.7888, 0.7404, 0.6727, 0.6065];
        assert_eq!(xs.len(), 5);
        for (x, e) in xs.iter().zip(expect) {
            assert!((x - e).abs() < 1e-3);
        }
        for p in &sols {
            assert!(f.eval_f64(p).abs() < 1e-9 && g.eval_f64(p).abs() < 1e-9);
        }
        let circle = MultiPoly::from_terms(2, &[(&[2, 0], int(1)), (&[0, 2], int(1)), (&[0, 0], int(-1))]);
        let line = MultiPoly::from_terms(2, &[(&[1, 0], int(1)), (&[0, 1], int(-1))]);
        assert_eq!(bivariate_real_solutions(&circle, &line).unwrap().len(), 2);
        assert_eq!(bivariate_real_solutions(&line, &line.scale(&int(2))), Err(RootError::NotZeroDimensional));
    }
}
