//! Enumerative counts: Wronskians, the degree of the Wronski map, the Schubert recursion in
//! Bruhat order, Eremenko–Gabrielov lower bounds, Kontsevich numbers and two-row Kostka
//! numbers.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::qpoly::{bareiss_det_poly, int, Rational, UniPoly};
use crate::rootcount::{isolate_roots_width, Interval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("empty input")]
    EmptyInput,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("table too large: m + p = {0} exceeds 14")]
    TooLarge(u32),
    #[error("m + p must be odd")]
    EvenSum,
    #[error("content sum is odd")]
    OddContentSum,
    #[error("content entry {0} outside [1, {1}]")]
    EntryOutOfRange(u32, u32),
    #[error("parameter s must avoid 0 and ±1")]
    DegenerateParameter,
}

/// det(f_i^{(j)}) for i, j = 0..k−1. For two functions this is fg′ − f′g.
pub fn wronskian(fs: &[UniPoly]) -> Result<UniPoly, EnumError> {
    if fs.is_empty() {
        return Err(EnumError::EmptyInput);
    }
    let rows = fs
        .iter()
        .map(|f| {
            let mut row = Vec::with_capacity(fs.len());
            let mut g = f.clone();
            for _ in 0..fs.len() {
                let next = g.derivative();
                row.push(g);
                g = next;
            }
            row
        })
        .collect();
    Ok(bareiss_det_poly(rows))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn check_mp(m: u32, p: u32) -> Result<(), EnumError> {
    if m == 0 || p == 0 {
        return Err(EnumError::InvalidParameters("m and p must be positive".into()));
    }
    Ok(())
}

/// #_{m,p} = 1!2!⋯(m−1)!·(mp)! / (p!(p+1)!⋯(p+m−1)!).
pub fn wronski_degree(m: u32, p: u32) -> Result<BigInt, EnumError> {
    check_mp(m, p)?;
    let (m, p) = (m as u64, p as u64);
    let num: BigInt = (1..m).map(factorial).product::<BigInt>() * factorial(m * p);
    let den: BigInt = (p..p + m).map(factorial).product();
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// σ_{m,p}; zero when m + p is even.
pub fn eg_lower_bound(m: u32, p: u32) -> Result<BigInt, EnumError> {
    check_mp(m, p)?;
    if (m + p).is_multiple_of(2) {
        return Ok(BigInt::zero());
    }
    let (m, p) = (m.min(p) as u64, m.max(p) as u64);
    let mut num: BigInt = (1..m).map(factorial).product();
    num *= (p - m + 1..p).map(factorial).product::<BigInt>();
    num *= factorial(m * p / 2);
    let mut den: BigInt = (0..m - 1).map(|k| factorial(p - m + 2 + 2 * k)).product();
    den *= (0..m).map(|k| factorial((p - m).div_ceil(2) + k)).product::<BigInt>();
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(EnumError::InvalidParameters(format!("σ is not integral at ({m}, {p})")));
    }
    Ok(q)
}

fn ln_fact(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// log σ_{m,p} / log #_{m,p} through log-Gamma; 0 when m or p is 1.
pub fn log_ratio(m: u64, p: u64) -> Result<f64, EnumError> {
    if m == 0 || p == 0 {
        return Err(EnumError::InvalidParameters("m and p must be positive".into()));
    }
    if (m + p).is_multiple_of(2) {
        return Err(EnumError::EvenSum);
    }
    let (m, p) = (m.min(p), m.max(p));
    if m == 1 {
        return Ok(0.0);
    }
    let low: f64 = (1..m).map(ln_fact).sum();
    let ln_sigma = low + (p - m + 1..p).map(ln_fact).sum::<f64>() + ln_fact(m * p / 2)
        - (0..m - 1).map(|k| ln_fact(p - m + 2 + 2 * k)).sum::<f64>()
        - (0..m).map(|k| ln_fact((p - m).div_ceil(2) + k)).sum::<f64>();
    let ln_deg = low + ln_fact(m * p) - (p..p + m).map(ln_fact).sum::<f64>();
    Ok(ln_sigma / ln_deg)
}

pub type IndexSet = Vec<u32>;

/// Σ (α_j − j), with α 1-based.
pub fn rank(alpha: &[u32]) -> u32 {
    alpha.iter().enumerate().map(|(j, &a)| a - 1 - j as u32).sum()
}

/// The β ⋖ α: one coordinate lowered by 1, still strictly increasing and ≥ 1.
pub fn covers_below(alpha: &[u32]) -> Vec<IndexSet> {
    (0..alpha.len())
        .filter(|&j| alpha[j] > 1 && (j == 0 || alpha[j - 1] < alpha[j] - 1))
        .map(|j| {
            let mut b = alpha.to_vec();
            b[j] -= 1;
            b
        })
        .collect()
}

/// δ over all p-subsets of [1, m+p], with δ(1,…,p) = 1 and δ(α) the sum over covers.
pub fn schubert_delta(m: u32, p: u32) -> Result<BTreeMap<IndexSet, BigInt>, EnumError> {
    check_mp(m, p)?;
    if m + p > 14 {
        return Err(EnumError::TooLarge(m + p));
    }
    let mut sets: Vec<IndexSet> = (1..=m + p).combinations(p as usize).collect();
    sets.sort_by_key(|a| rank(a));
    let mut table = BTreeMap::new();
    for a in sets {
        let v = if rank(&a) == 0 {
            BigInt::one()
        } else {
            covers_below(&a).iter().map(|b| &table[b]).sum()
        };
        table.insert(a, v);
    }
    Ok(table)
}

/// δ at the top index set (m+1, …, m+p).
pub fn schubert_top(m: u32, p: u32) -> Result<BigInt, EnumError> {
    let t = schubert_delta(m, p)?;
    Ok(t[&(m + 1..=m + p).collect::<Vec<_>>()].clone())
}

fn kontsevich_term(d: i64, a: i64, na: &BigInt, nb: &BigInt) -> BigInt {
    let b = d - a;
    na * nb * (BigInt::from(a * a * b * b) * binomial(3 * d - 4, 3 * a - 2) - BigInt::from(a * a * a * b) * binomial(3 * d - 4, 3 * a - 1))
}

/// Degree-d rational plane curves through 3d−1 general points.
pub fn kontsevich(d: u32) -> Result<BigInt, EnumError> {
    if d == 0 {
        return Err(EnumError::InvalidParameters("d must be positive".into()));
    }
    let mut n: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for e in 2..=d as i64 {
        let v = (1..e).map(|a| kontsevich_term(e, a, &n[a as usize], &n[(e - a) as usize])).sum();
        n.push(v);
    }
    Ok(n[d as usize].clone())
}

/// The same recursion without a table.
pub fn kontsevich_naive(d: u32) -> BigInt {
    if d <= 1 {
        return BigInt::from(d);
    }
    let d = d as i64;
    (1..d)
        .map(|a| kontsevich_term(d, a, &kontsevich_naive(a as u32), &kontsevich_naive((d - a) as u32)))
        .sum()
}

/// Semistandard tableaux of shape (p, p) with content a.
pub fn kostka_two_row(a: &[u32]) -> Result<BigInt, EnumError> {
    let total: u32 = a.iter().sum();
    if total % 2 == 1 {
        return Err(EnumError::OddContentSum);
    }
    let p = total / 2;
    if let Some(&bad) = a.iter().find(|&&x| x < 1 || x > p) {
        return Err(EnumError::EntryOutOfRange(bad, p));
    }
    // row lengths (r1, r2) after placing the values so far
    let mut states: HashMap<(u32, u32), BigInt> = HashMap::from([((0, 0), BigInt::one())]);
    for &k in a {
        let mut next: HashMap<(u32, u32), BigInt> = HashMap::new();
        for ((r1, r2), c) in &states {
            for x in 0..=k {
                // x copies go to row 2, only under cells filled earlier
                if r2 + x <= *r1 && r1 + k - x <= p {
                    *next.entry((r1 + k - x, r2 + x)).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        states = next;
    }
    Ok(states.remove(&(p, p)).unwrap_or_else(BigInt::zero))
}

/// 9s·t² + (6s²−2)·t + (s³−s).
pub fn four_lines_quadratic(s: &Rational) -> UniPoly {
    let s2 = s * s;
    UniPoly::new(vec![&s2 * s - s, s2 * int(6) - int(2), s * int(9)])
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourLines {
    pub intervals: Vec<Interval>,
    pub approx: Vec<f64>,
    /// 3s² + 1, the discriminant divided by 4; always positive.
    pub reduced_discriminant: Rational,
}

/// The two real parameters of lines meeting four tangent lines to the twisted cubic.
pub fn four_lines_parameters(s: &Rational) -> Result<FourLines, EnumError> {
    if s.is_zero() || s == &int(1) || s == &int(-1) {
        return Err(EnumError::DegenerateParameter);
    }
    let q = four_lines_quadratic(s);
    let w = Rational::new(BigInt::one(), BigInt::one() << 50);
    let intervals = isolate_roots_width(&q, Some(&w)).expect("quadratic is nonzero");
    let approx = intervals.iter().map(|iv| crate::qpoly::rational_to_f64(&iv.midpoint())).collect();
    Ok(FourLines { intervals, approx, reduced_discriminant: s * s * int(3) + int(1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat;
    use proptest::prelude::*;

    fn big(n: u64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn wronskians() {
        let t2 = UniPoly::from_ints(&[0, 0, 1]);
        let one = UniPoly::from_ints(&[1]);
        let t = UniPoly::from_ints(&[0, 1]);
        assert_eq!(wronskian(&[t2.clone(), one.clone()]).unwrap(), UniPoly::from_ints(&[0, -2]));
        assert_eq!(wronskian(&[one.clone(), t.clone(), t2.clone()]).unwrap(), UniPoly::from_ints(&[2]));
        let dep = &t2 + &t;
        assert!(wronskian(&[t2, t, dep]).unwrap().is_zero());
        assert_eq!(wronskian(&[]), Err(EnumError::EmptyInput));
        assert_eq!(wronskian(std::slice::from_ref(&one)).unwrap(), one);
    }

    #[test]
    fn wronski_degrees() {
        assert_eq!(wronski_degree(2, 2).unwrap(), big(2));
        assert_eq!(wronski_degree(4, 3).unwrap(), big(462));
        let row: Vec<BigInt> = (2..=5).map(|m| wronski_degree(m, 11 - m).unwrap()).collect();
        assert_eq!(row, vec![big(4862), big(23371634), big(13672405890), big(396499770810)]);
        assert!(wronski_degree(0, 3).is_err());
        for p in 1..=12u64 {
            assert_eq!(wronski_degree(2, p as u32).unwrap(), binomial(2 * p as i64, p as i64) / (p + 1));
        }
    }

    #[test]
    fn lower_bounds() {
        let row: Vec<BigInt> = (2..=5).map(|m| eg_lower_bound(m, 11 - m).unwrap()).collect();
        assert_eq!(row, vec![big(14), big(110), big(286), big(286)]);
        assert_eq!(eg_lower_bound(2, 2).unwrap(), big(0));
        assert_eq!(eg_lower_bound(1, 2).unwrap(), big(1));
        for m in 1..10 {
            for p in 1..10 {
                let s = eg_lower_bound(m, p).unwrap();
                assert_eq!(s, eg_lower_bound(p, m).unwrap());
                assert_eq!(s.is_zero(), (m + p) % 2 == 0);
            }
        }
        // roughly 3.4e4 at (7, 6)
        let s76 = eg_lower_bound(7, 6).unwrap();
        assert!(s76 > big(33_000) && s76 < big(35_000));
    }

    #[test]
    fn ratios() {
        let cases = [
            (2u64, 99u64, 0.47388),
            (2, 999, 0.49627),
            (10, 91, 0.45419),
            (50, 51, 0.38840),
            (100, 901, 0.47677),
            (500, 501, 0.43510),
            (2, 9999, 0.49951),
        ];
        for (m, p, r) in cases {
            let v = log_ratio(m, p).unwrap();
            assert!((v - r).abs() < 1e-4, "({m}, {p}): {v}");
        }
        assert_eq!(log_ratio(1, 4).unwrap(), 0.0);
        assert_eq!(log_ratio(2, 2), Err(EnumError::EvenSum));
    }

    #[test]
    fn schubert() {
        assert_eq!(schubert_top(4, 3).unwrap(), big(462));
        assert_eq!(schubert_top(2, 2).unwrap(), big(2));
        let t = schubert_delta(4, 3).unwrap();
        assert_eq!(t[&vec![1, 2, 3]], big(1));
        assert_eq!(t.len(), 35);
        assert_eq!(covers_below(&[1, 3, 4]), vec![vec![1, 2, 4]]);
        assert!(matches!(schubert_delta(8, 7), Err(EnumError::TooLarge(15))));
        for n in 2..=10 {
            for m in 1..n {
                assert_eq!(schubert_top(m, n - m).unwrap(), wronski_degree(m, n - m).unwrap());
            }
        }
    }

    #[test]
    fn kontsevich_numbers() {
        let v: Vec<BigInt> = (1..=5).map(|d| kontsevich(d).unwrap()).collect();
        assert_eq!(v, vec![big(1), big(1), big(12), big(620), big(87304)]);
        for d in 1..=7 {
            assert_eq!(kontsevich(d).unwrap(), kontsevich_naive(d));
        }
        assert!(kontsevich(0).is_err());
    }

    #[test]
    fn kostka() {
        assert_eq!(kostka_two_row(&[3, 2, 2, 2, 1]).unwrap(), big(5));
        assert_eq!(kostka_two_row(&[1, 1]).unwrap(), big(1));
        assert_eq!(kostka_two_row(&[1, 1, 1, 1]).unwrap(), big(2));
        for p in 1..=8u32 {
            assert_eq!(kostka_two_row(&vec![1; 2 * p as usize]).unwrap(), wronski_degree(2, p).unwrap());
        }
        assert_eq!(kostka_two_row(&[1, 2]), Err(EnumError::OddContentSum));
        assert_eq!(kostka_two_row(&[3, 1]), Err(EnumError::EntryOutOfRange(3, 2)));
    }

    #[test]
    fn four_lines() {
        let q = four_lines_quadratic(&rat(1, 2));
        assert_eq!(q, UniPoly::new(vec![rat(-3, 8), rat(-1, 2), rat(9, 2)]));
        for s in [rat(1, 2), rat(1, 7), rat(5, 6), rat(-3, 4), int(3)] {
            let r = four_lines_parameters(&s).unwrap();
            assert_eq!(r.intervals.len(), 2);
            let sf = crate::qpoly::rational_to_f64(&s);
            let root = (3.0 * sf * sf + 1.0).sqrt();
            let mut exp = [(-(3.0 * sf * sf - 1.0) - root) / (9.0 * sf), (-(3.0 * sf * sf - 1.0) + root) / (9.0 * sf)];
            exp.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (iv, e) in r.intervals.iter().zip(exp) {
                assert!(iv.contains_f64(e) || (crate::qpoly::rational_to_f64(&iv.midpoint()) - e).abs() < 1e-12);
            }
        }
        assert_eq!(four_lines_parameters(&int(1)).unwrap_err(), EnumError::DegenerateParameter);
        assert_eq!(four_lines_parameters(&int(0)).unwrap_err(), EnumError::DegenerateParameter);
    }

    fn small_poly() -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(-6i64..=6, 1..6).prop_map(|c| UniPoly::from_ints(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn wronskian_covariance(
            f in small_poly(),
            g in small_poly(),
            m in proptest::collection::vec((-5i64..=5, 1i64..=4), 4),
        ) {
            let [a, b, c, d] = [0, 1, 2, 3].map(|i| rat(m[i].0, m[i].1));
            let u = &f.scale(&a) + &g.scale(&b);
            let v = &f.scale(&c) + &g.scale(&d);
            let lhs = wronskian(&[u, v]).unwrap();
            let rhs = wronskian(&[f, g]).unwrap().scale(&(&a * &d - &b * &c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn two_by_two_wronskian(f in small_poly(), g in small_poly()) {
            let w = wronskian(&[f.clone(), g.clone()]).unwrap();
            prop_assert_eq!(w, &(&f * &g.derivative()) - &(&f.derivative() * &g));
        }
    }
}
