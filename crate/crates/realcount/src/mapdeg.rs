//! Continued fractions of rational functions, the bracket [q], mapping degree and
//! signed root counts.
//!
//! Quotients are indexed from 1 and the degree is Σ (−1)^{i−1} [q_i]. For deg g ≥ 2 the
//! point at infinity lies in the zero fiber of f/(g f′) with index −[g′], so the signed
//! count is mdeg + [g′]; this is the convention the brute-force tests pin down.

use num_traits::Zero;
use thiserror::Error;

use crate::qpoly::{poly_gcd, sign, UniPoly};
use crate::rootcount::{self, Endpoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapDegError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("g vanishes at a root of f")]
    SharedRoot,
    #[error("zero input polynomial")]
    ZeroInput,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, MapDegError> {
        if den.is_zero() {
            return Err(MapDegError::ZeroDenominator);
        }
        Ok(RationalFunction { num, den })
    }

    /// Divides out gcd(num, den).
    pub fn reduce(&self) -> RationalFunction {
        if self.num.is_zero() {
            return RationalFunction { num: UniPoly::zero(), den: UniPoly::one() };
        }
        let g = poly_gcd(&self.num, &self.den).expect("denominator is nonzero");
        RationalFunction { num: self.num.div_exact(&g), den: self.den.div_exact(&g) }
    }

    pub fn recip(&self) -> Result<RationalFunction, MapDegError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub quotients: Vec<UniPoly>,
}

/// Euclidean quotients of (num, den).
pub fn cfrac(phi: &RationalFunction) -> Result<ContinuedFraction, MapDegError> {
    if phi.den.is_zero() {
        return Err(MapDegError::ZeroDenominator);
    }
    let mut a = phi.num.clone();
    let mut b = phi.den.clone();
    let mut quotients = Vec::new();
    while !b.is_zero() {
        let (q, r) = a.div_rem(&b);
        quotients.push(q);
        a = b;
        b = r;
    }
    Ok(ContinuedFraction { quotients })
}

/// sign(leading coefficient) · (degree mod 2); zero for the zero polynomial.
pub fn bracket(q: &UniPoly) -> i64 {
    match q.degree() {
        Some(d) if d % 2 == 1 => sign(&q.leading()) as i64,
        _ => 0,
    }
}

pub fn mapping_degree(phi: &RationalFunction) -> Result<i64, MapDegError> {
    let cf = cfrac(&phi.reduce())?;
    Ok(cf
        .quotients
        .iter()
        .enumerate()
        .map(|(i, q)| if i % 2 == 0 { bracket(q) } else { -bracket(q) })
        .sum())
}

/// Distinct real roots as mdeg(f / f′).
pub fn count_distinct_roots_mdeg(f: &UniPoly) -> Result<usize, MapDegError> {
    if f.is_zero() || f.is_constant() {
        return Err(MapDegError::ConstantPolynomial);
    }
    let d = mapping_degree(&RationalFunction::new(f.clone(), f.derivative())?)?;
    Ok(d as usize)
}

/// Σ sign(g(a)) over the distinct real roots a of f.
pub fn signed_count(f: &UniPoly, g: &UniPoly) -> Result<i64, MapDegError> {
    if f.is_zero() || g.is_zero() {
        return Err(MapDegError::ZeroInput);
    }
    if f.is_constant() {
        return Ok(0);
    }
    let f = f.squarefree_part();
    if !poly_gcd(&f, g).expect("f is nonzero").is_constant() {
        return Err(MapDegError::SharedRoot);
    }
    let den = g * &f.derivative();
    let m = mapping_degree(&RationalFunction::new(f, den)?)?;
    let correction = if g.degree().unwrap_or(0) >= 2 { bracket(&g.derivative()) } else { 0 };
    Ok(m + correction)
}

/// Number of distinct real roots of f at which g > 0.
pub fn count_roots_where_positive(f: &UniPoly, g: &UniPoly) -> Result<usize, MapDegError> {
    let s2 = signed_count(f, &(g * g))?;
    let s1 = signed_count(f, g)?;
    debug_assert!((s1 + s2) % 2 == 0);
    Ok(((s1 + s2) / 2) as usize)
}

/// Brute force Σ sign(g(a)) by isolating the roots of f and refining each interval
/// until g has a certified constant sign on it.
pub fn signed_count_brute(f: &UniPoly, g: &UniPoly) -> Result<i64, MapDegError> {
    if f.is_zero() || g.is_zero() {
        return Err(MapDegError::ZeroInput);
    }
    let sf = f.squarefree_part();
    if !poly_gcd(&sf, g).expect("f is nonzero").is_constant() {
        return Err(MapDegError::SharedRoot);
    }
    let ivs = rootcount::isolate_roots(&sf).map_err(|_| MapDegError::ZeroInput)?;
    let mut total = 0i64;
    for iv in ivs {
        let mut iv = iv;
        loop {
            // g has no root in the closed interval: its sign there is the sign at any point
            let lo = Endpoint::Finite(iv.lo.clone());
            let hi = Endpoint::Finite(iv.hi.clone());
            let gl = g.eval(&iv.lo);
            let gh = g.eval(&iv.hi);
            let clean = g.is_constant()
                || (!gl.is_zero() && !gh.is_zero() && rootcount::count_real_roots(g, &lo, &hi).unwrap() == 0);
            if clean {
                total += sign(&g.eval(&iv.midpoint())) as i64;
                break;
            }
            let w = iv.width() / crate::qpoly::int(2);
            iv = rootcount::refine_root(&sf, &iv, &w);
            debug_assert!(!w.is_zero());
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{int, rat};

    fn sextic() -> UniPoly {
        UniPoly::from_ints(&[-6, 0, 55, 0, -27, -4, 5])
    }

    fn worked() -> RationalFunction {
        RationalFunction::new(UniPoly::from_ints(&[0, -6, -18, 0, 4]), UniPoly::from_ints(&[-1, 0, 8, 4])).unwrap()
    }

    #[test]
    fn worked_continued_fraction() {
        let cf = cfrac(&worked()).unwrap();
        assert_eq!(
            cf.quotients,
            vec![
                UniPoly::from_ints(&[-2, 1]),
                UniPoly::from_ints(&[1, -2]),
                UniPoly::from_ints(&[-3, -2]),
                UniPoly::from_ints(&[1, 1]),
            ]
        );
        assert_eq!(mapping_degree(&worked()).unwrap(), 0);
    }

    #[test]
    fn trivial_fractions() {
        let t2 = RationalFunction::new(UniPoly::from_ints(&[0, 0, 1]), UniPoly::one()).unwrap();
        assert_eq!(cfrac(&t2).unwrap().quotients, vec![UniPoly::from_ints(&[0, 0, 1])]);
        let inv = RationalFunction::new(UniPoly::one(), UniPoly::from_ints(&[0, 1])).unwrap();
        assert_eq!(cfrac(&inv).unwrap().quotients, vec![UniPoly::zero(), UniPoly::from_ints(&[0, 1])]);
        assert!(RationalFunction::new(UniPoly::one(), UniPoly::zero()).is_err());
    }

    #[test]
    fn brackets() {
        assert_eq!(bracket(&UniPoly::from_ints(&[-2, 1])), 1);
        assert_eq!(bracket(&UniPoly::from_ints(&[1, -2])), -1);
        assert_eq!(bracket(&UniPoly::from_ints(&[7])), 0);
        assert_eq!(bracket(&UniPoly::zero()), 0);
    }

    #[test]
    fn root_counts_by_degree() {
        assert_eq!(count_distinct_roots_mdeg(&sextic()).unwrap(), 4);
        assert_eq!(count_distinct_roots_mdeg(&UniPoly::from_ints(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(count_distinct_roots_mdeg(&UniPoly::from_ints(&[2, -3, 0, 1])).unwrap(), 2);
    }

    #[test]
    fn signed_counts() {
        let f = UniPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(signed_count(&f, &UniPoly::from_ints(&[0, 1])).unwrap(), 0);
        let f3 = UniPoly::from_roots(&[int(0), int(1), int(2)]);
        let g = UniPoly::new(vec![rat(-1, 2), int(1)]);
        assert_eq!(signed_count(&f3, &g).unwrap(), 1);
        assert_eq!(signed_count(&sextic(), &UniPoly::from_ints(&[0, 1])).unwrap(), 2);
        // deg g = 2 exercises the correction term
        assert_eq!(signed_count(&f, &UniPoly::from_ints(&[1, 0, 1])).unwrap(), 2);
        assert_eq!(signed_count(&f, &UniPoly::from_ints(&[0, 1])).unwrap(), signed_count_brute(&f, &UniPoly::from_ints(&[0, 1])).unwrap());
        assert_eq!(signed_count(&f3, &UniPoly::from_ints(&[-1, 1])), Err(MapDegError::SharedRoot));
    }

    #[test]
    fn where_positive() {
        let f3 = UniPoly::from_roots(&[int(0), int(1), int(2)]);
        let g = UniPoly::new(vec![rat(-1, 2), int(1)]);
        assert_eq!(count_roots_where_positive(&f3, &g).unwrap(), 2);
        let f = UniPoly::from_roots(&[int(0), int(3)]);
        let g = UniPoly::from_roots(&[int(1), int(2)]);
        assert_eq!(count_roots_where_positive(&f, &g).unwrap(), 2);
        assert_eq!(count_roots_where_positive(&UniPoly::from_ints(&[1, 0, 1]), &g).unwrap(), 0);
    }

    #[test]
    fn reciprocal_negates_degree() {
        let phi = worked();
        let f = sextic();
        let psi = RationalFunction::new(f.clone(), f.derivative()).unwrap();
        for r in [phi, psi] {
            assert_eq!(mapping_degree(&r).unwrap(), -mapping_degree(&r.recip().unwrap()).unwrap());
        }
    }
}
