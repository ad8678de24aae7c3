//! Systems supported on circuits: primitive relations, the univariate eliminant, real
//! counts, the A_{k,l}^ε family and fewnomial bound calculators.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::groebner::MultiPoly;
use crate::lattice::{hnf, kernel_basis, IntMatrix};
use crate::qpoly::{invert_matrix, poly_gcd, sign, Rational, UniPoly};
use crate::rootcount::{count_real_roots, isolate_roots, refine_root, Endpoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("not a circuit: {0}")]
    NotACircuit(String),
    #[error("degenerate circuit: a proper subset is affinely dependent")]
    DegenerateCircuit,
    #[error("degenerate data: some w_i and v_i both vanish")]
    DegenerateData,
    #[error("coefficient matrix is singular")]
    SingularCoefficients,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Σ_{left} λ_i b_i = Σ_{right} λ_i b_i with N = Σ_{right} λ_i k_i − Σ_{left} λ_i k_i > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveRelation {
    /// λ_i > 0, indexed like a_1, …, a_n.
    pub lambda: Vec<u64>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// N.
    pub shift: u64,
}

/// Relation among the truncations b_i of a_i = b_i + k_i e_n.
pub fn primitive_relation(a: &[Vec<i64>]) -> Result<PrimitiveRelation, CircuitError> {
    let n = a.len();
    if n == 0 || a.iter().any(|v| v.len() != n) {
        return Err(CircuitError::NotACircuit(format!("expected {n} vectors in Z^{n}")));
    }
    let mu: Vec<i64> = if n == 1 {
        vec![1]
    } else {
        let cols: Vec<Vec<i64>> = a.iter().map(|v| v[..n - 1].to_vec()).collect();
        let b = IntMatrix::from_columns(&cols);
        let ker = kernel_basis(&b).ok_or_else(|| CircuitError::NotACircuit("no relation among the b_i".into()))?;
        if ker.rows() != 1 {
            return Err(CircuitError::NotACircuit("the b_i do not span".into()));
        }
        ker.to_i64().expect("small relation")[0].clone()
    };
    if mu.contains(&0) {
        return Err(CircuitError::DegenerateCircuit);
    }
    let s: i64 = mu.iter().zip(a).map(|(m, v)| m * v[n - 1]).sum();
    if s == 0 {
        return Err(CircuitError::DegenerateCircuit);
    }
    let mu: Vec<i64> = if s > 0 { mu.iter().map(|m| -m).collect() } else { mu };
    Ok(PrimitiveRelation {
        lambda: mu.iter().map(|m| m.unsigned_abs()).collect(),
        left: (0..n).filter(|&i| mu[i] > 0).collect(),
        right: (0..n).filter(|&i| mu[i] < 0).collect(),
        shift: s.unsigned_abs(),
    })
}

/// x^{a_i} = w_i + v_i x_n^ℓ for i = 1..n, support {0, ℓe_n, a_1, …, a_n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitSystem {
    pub n: usize,
    pub ell: u64,
    pub exponents: Vec<Vec<i64>>,
    pub w: Vec<Rational>,
    pub v: Vec<Rational>,
    /// Unimodular T applied to the original exponents, when built by `from_general`.
    pub transform: Option<IntMatrix>,
    pub relation: PrimitiveRelation,
}

impl CircuitSystem {
    pub fn new(ell: u64, exponents: Vec<Vec<i64>>, w: Vec<Rational>, v: Vec<Rational>) -> Result<Self, CircuitError> {
        let n = exponents.len();
        if ell == 0 {
            return Err(CircuitError::InvalidParameters("ℓ must be positive".into()));
        }
        if w.len() != n || v.len() != n {
            return Err(CircuitError::InvalidParameters(format!("need {n} values of w and v")));
        }
        let relation = primitive_relation(&exponents)?;
        let mut support = Self::support_of(ell, &exponents);
        support.sort();
        support.dedup();
        if support.len() != n + 2 {
            return Err(CircuitError::NotACircuit("repeated support points".into()));
        }
        if w.iter().zip(&v).any(|(a, b)| a.is_zero() && b.is_zero()) {
            return Err(CircuitError::DegenerateData);
        }
        Ok(CircuitSystem { n, ell, exponents, w, v, transform: None, relation })
    }

    fn support_of(ell: u64, exponents: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = exponents.len();
        let mut a0 = vec![0; n];
        a0[n - 1] = ell as i64;
        let mut s = vec![vec![0; n], a0];
        s.extend(exponents.iter().cloned());
        s
    }

    /// [0, ℓe_n, a_1, …, a_n].
    pub fn support(&self) -> Vec<Vec<i64>> {
        Self::support_of(self.ell, &self.exponents)
    }

    /// Brings a_0 to ℓe_n by a unimodular change of exponents, then diagonalizes the
    /// coefficients. `support` is [0, a_0, a_1, …, a_n]; row i of `coeffs` holds the
    /// coefficients of equation i in the same order.
    pub fn from_general(support: &[Vec<i64>], coeffs: &[Vec<Rational>]) -> Result<Self, CircuitError> {
        let n = support.len().saturating_sub(2);
        if n == 0 || support.iter().any(|p| p.len() != n) || support[0].iter().any(|&x| x != 0) {
            return Err(CircuitError::NotACircuit("support must be [0, a_0, a_1, …, a_n] in Z^n".into()));
        }
        if coeffs.len() != n || coeffs.iter().any(|r| r.len() != n + 2) {
            return Err(CircuitError::InvalidParameters(format!("coefficient matrix must be {n}x{}", n + 2)));
        }
        if support[1].iter().all(|&x| x == 0) {
            return Err(CircuitError::NotACircuit("a_0 is zero".into()));
        }
        let (h, u) = hnf(&IntMatrix::from_columns(&[support[1].clone()]));
        let ell = h.get(0, 0).to_u64().expect("small exponent");
        let u = u.to_i64().expect("small transform");
        let mut t_rows: Vec<Vec<i64>> = u[1..].to_vec();
        t_rows.push(u[0].clone());
        let t = IntMatrix::from_i64(&t_rows);
        let apply = |p: &Vec<i64>| -> Vec<i64> { t_rows.iter().map(|r| r.iter().zip(p).map(|(x, y)| x * y).sum()).collect() };
        let exponents: Vec<Vec<i64>> = support[2..].iter().map(apply).collect();
        let ca: Vec<Vec<Rational>> = coeffs.iter().map(|r| r[2..].to_vec()).collect();
        let inv = invert_matrix(&ca).ok_or(CircuitError::SingularCoefficients)?;
        let mut w = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        for row in &inv {
            let d0: Rational = row.iter().zip(coeffs).map(|(x, c)| x * &c[0]).sum();
            let d1: Rational = row.iter().zip(coeffs).map(|(x, c)| x * &c[1]).sum();
            w.push(-d0);
            v.push(-d1);
        }
        let mut sys = CircuitSystem::new(ell, exponents, w, v)?;
        sys.transform = Some(t);
        Ok(sys)
    }

    fn g(&self, i: usize) -> UniPoly {
        &UniPoly::constant(self.w[i].clone()) + &UniPoly::monomial(self.v[i].clone(), self.ell as usize)
    }

    /// The diagonal equations x^{a_i} − w_i − v_i x_n^ℓ as polynomials; None when an
    /// exponent is negative.
    pub fn polynomials(&self) -> Option<Vec<MultiPoly>> {
        if self.exponents.iter().flatten().any(|&x| x < 0) {
            return None;
        }
        let n = self.n;
        Some(
            (0..n)
                .map(|i| {
                    let e: Vec<u32> = self.exponents[i].iter().map(|&x| x as u32).collect();
                    let mut p = MultiPoly::monomial(n, e, Rational::one());
                    p.add_term(vec![0; n], -self.w[i].clone());
                    let mut z = vec![0u32; n];
                    z[n - 1] = self.ell as u32;
                    p.add_term(z, -self.v[i].clone());
                    p
                })
                .collect(),
        )
    }
}

/// x_n^N Π_{left} g_i^{λ_i} − Π_{right} g_i^{λ_i} with g_i = w_i + v_i x_n^ℓ.
pub fn circuit_eliminant(sys: &CircuitSystem) -> UniPoly {
    let r = &sys.relation;
    let mut f = UniPoly::monomial(Rational::one(), r.shift as usize);
    for &i in &r.left {
        f = &f * &sys.g(i).pow(r.lambda[i] as u32);
    }
    let mut gpart = UniPoly::one();
    for &i in &r.right {
        gpart = &gpart * &sys.g(i).pow(r.lambda[i] as u32);
    }
    &f - &gpart
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitCount {
    /// Distinct nonzero real roots of the eliminant that give torus solutions.
    pub real: usize,
    /// Roots giving solutions in the positive orthant.
    pub positive: usize,
    /// Same roots counted with multiplicity.
    pub real_with_multiplicity: usize,
    pub squarefree: bool,
    pub eliminant_degree: usize,
}

fn distinct_real(f: &UniPoly, a: &Endpoint, b: &Endpoint) -> usize {
    if f.is_constant() {
        0
    } else {
        count_real_roots(f, a, b).expect("endpoints avoid roots")
    }
}

/// Roots z > 0 of the squarefree part of h with every g_i(z) > 0; these are the
/// roots giving positive solutions.
fn positive_solution_roots(h: &UniPoly, gs: &[UniPoly]) -> usize {
    if h.is_constant() {
        return 0;
    }
    let sf = h.squarefree_part();
    let zero = Rational::zero();
    let mut count = 0;
    for mut iv in isolate_roots(&sf).expect("nonconstant") {
        loop {
            let clean = !(iv.lo <= zero && zero <= iv.hi)
                && gs.iter().all(|g| {
                    g.is_constant()
                        || (!g.eval(&iv.lo).is_zero()
                            && !g.eval(&iv.hi).is_zero()
                            && count_real_roots(g, &Endpoint::Finite(iv.lo.clone()), &Endpoint::Finite(iv.hi.clone())).unwrap() == 0)
                });
            if clean {
                break;
            }
            let w = iv.width() / Rational::from_integer(2.into());
            iv = refine_root(&sf, &iv, &w);
        }
        let m = iv.midpoint();
        if m > zero && gs.iter().all(|g| sign(&g.eval(&m)) > 0) {
            count += 1;
        }
    }
    count
}

/// Real roots counted with multiplicity: Σ_j #roots of gcd(f, f′, …, f^{(j)}).
fn real_with_multiplicity(f: &UniPoly) -> usize {
    let mut total = 0;
    let mut g = f.clone();
    let mut d = f.clone();
    while !g.is_constant() {
        total += distinct_real(&g, &Endpoint::NegInf, &Endpoint::PosInf);
        d = d.derivative();
        g = poly_gcd(&g, &d).expect("g is nonzero");
    }
    total
}

pub fn circuit_real_count(sys: &CircuitSystem) -> CircuitCount {
    let f = circuit_eliminant(sys);
    let degree = f.degree().unwrap_or(0);
    let (mut h, _) = f.strip_zero_roots();
    for i in 0..sys.n {
        let g = sys.g(i);
        loop {
            let d = poly_gcd(&h, &g).expect("h is nonzero");
            if d.is_constant() {
                break;
            }
            h = h.div_exact(&d);
        }
    }
    let squarefree = poly_gcd(&f, &f.derivative()).map(|g| g.is_constant()).unwrap_or(false);
    let gs: Vec<UniPoly> = (0..sys.n).map(|i| sys.g(i)).collect();
    CircuitCount {
        real: distinct_real(&h, &Endpoint::NegInf, &Endpoint::PosInf),
        positive: positive_solution_roots(&h, &gs),
        real_with_multiplicity: real_with_multiplicity(&h),
        squarefree,
        eliminant_degree: degree,
    }
}

/// x_1 = g_1, …, x_{n−1} = g_{n−1}, x^ε x_n^l = g_n with deg g_i ≤ k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySystem {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub eps: Vec<u8>,
    pub g: Vec<UniPoly>,
}

impl FamilySystem {
    pub fn from_diagonal(k: usize, l: usize, eps: Vec<u8>, g: Vec<UniPoly>) -> Result<Self, CircuitError> {
        let n = eps.len() + 1;
        if n < 3 || !(l > k && k > 0) {
            return Err(CircuitError::InvalidParameters("need n ≥ 3 and l > k > 0".into()));
        }
        if eps.iter().any(|&e| e > 1) || eps.iter().all(|&e| e == 0) {
            return Err(CircuitError::InvalidParameters("ε must be a nonzero 0/1 vector".into()));
        }
        if g.len() != n || g.iter().any(|p| p.degree().unwrap_or(0) > k) {
            return Err(CircuitError::InvalidParameters(format!("need {n} polynomials of degree at most {k}")));
        }
        Ok(FamilySystem { n, k, l, eps, g })
    }

    /// Generic form Σ_j c_ij x_j + c_in x^ε x_n^l + f_i(x_n) = 0, solved for the
    /// n "linear" monomials by Gaussian elimination.
    pub fn from_coefficients(
        k: usize,
        l: usize,
        eps: Vec<u8>,
        c: &[Vec<Rational>],
        f: &[UniPoly],
    ) -> Result<Self, CircuitError> {
        let n = eps.len() + 1;
        if c.len() != n || c.iter().any(|r| r.len() != n) || f.len() != n {
            return Err(CircuitError::InvalidParameters(format!("need an {n}x{n} matrix and {n} polynomials")));
        }
        let inv = invert_matrix(c).ok_or(CircuitError::SingularCoefficients)?;
        let g = inv
            .iter()
            .map(|row| {
                let s = row.iter().zip(f).fold(UniPoly::zero(), |acc, (x, p)| &acc + &p.scale(x));
                -&s
            })
            .collect();
        Self::from_diagonal(k, l, eps, g)
    }

    pub fn eps_weight(&self) -> usize {
        self.eps.iter().map(|&e| e as usize).sum()
    }

    /// x_n^l Π g_i^{ε_i} − g_n.
    pub fn eliminant(&self) -> UniPoly {
        let mut f = UniPoly::monomial(Rational::one(), self.l);
        for (i, &e) in self.eps.iter().enumerate() {
            if e == 1 {
                f = &f * &self.g[i];
            }
        }
        &f - &self.g[self.n - 1]
    }

    pub fn real_count(&self) -> usize {
        distinct_real(&self.eliminant(), &Endpoint::NegInf, &Endpoint::PosInf)
    }

    pub fn complex_count(&self) -> usize {
        self.l + self.k * self.eps_weight()
    }

    /// k + k|ε| + 2.
    pub fn real_bound(&self) -> usize {
        self.k + self.k * self.eps_weight() + 2
    }

    /// The lattice points of Δ_{k,l}^ε.
    pub fn support(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut pts = vec![vec![0; n]];
        for i in 0..n - 1 {
            let mut e = vec![0; n];
            e[i] = 1;
            pts.push(e);
        }
        for j in 1..=self.k as i64 {
            let mut e = vec![0; n];
            e[n - 1] = j;
            pts.push(e);
        }
        let mut top: Vec<i64> = self.eps.iter().map(|&e| e as i64).collect();
        top.push(self.l as i64);
        pts.push(top);
        pts
    }
}

/// e ∈ [lo, hi] from the Taylor series with the tail bounded by 1/(K!·K).
pub fn e_interval(terms: u32) -> (Rational, Rational) {
    let mut lo = Rational::zero();
    let mut fact = BigInt::one();
    for k in 0..=terms {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        lo += Rational::new(BigInt::one(), fact.clone());
    }
    let tail = Rational::new(BigInt::one(), fact * BigInt::from(terms));
    (lo.clone(), lo + tail)
}

/// A real upper bound given by a certified rational over-approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedBound {
    pub upper: Rational,
    pub floor: BigInt,
    /// Largest integer strictly below `upper`.
    pub strict_integer: BigInt,
}

impl CertifiedBound {
    fn from_upper(upper: Rational) -> Self {
        let floor = upper.floor().to_integer();
        let strict_integer = upper.ceil().to_integer() - BigInt::one();
        CertifiedBound { upper, floor, strict_integer }
    }

    pub fn approx(&self) -> f64 {
        crate::qpoly::rational_to_f64(&self.upper)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FewnomialBounds {
    pub l: u32,
    pub n: u32,
    /// 2^{C(l+n,2)} (n+1)^{l+n}.
    pub khovanskii: BigInt,
    /// (e²+3)/4 · 2^{C(l,2)} n^l, strict bound on positive solutions.
    pub positive: CertifiedBound,
    /// (e⁴+3)/4 · 2^{C(l,2)} n^l, all real solutions for primitive supports.
    pub real: CertifiedBound,
    /// Exact maximum of positive solutions where known: 1 for l = 0, n+1 for l = 1.
    pub exact_positive: Option<u64>,
    /// 2n+1 for primitive circuits (l = 1).
    pub circuit_real: Option<u64>,
    /// ⌈n/l⌉^l for l ≥ 1.
    pub construction_lower: Option<BigInt>,
}

fn binom2(m: u32) -> u32 {
    m * m.saturating_sub(1) / 2
}

pub fn fewnomial_bounds(l: u32, n: u32) -> Result<FewnomialBounds, CircuitError> {
    if n == 0 {
        return Err(CircuitError::InvalidParameters("n must be at least 1".into()));
    }
    let khovanskii = BigInt::one() << binom2(l + n) as usize;
    let khovanskii = khovanskii * num_traits::pow(BigInt::from(n + 1), (l + n) as usize);
    let (_, e_hi) = e_interval(40);
    let e2 = &e_hi * &e_hi;
    let e4 = &e2 * &e2;
    let scale = Rational::from_integer((BigInt::one() << binom2(l) as usize) * num_traits::pow(BigInt::from(n), l as usize));
    let three = Rational::from_integer(3.into());
    let four = Rational::from_integer(4.into());
    let positive = CertifiedBound::from_upper((e2 + &three) / &four * &scale);
    let real = CertifiedBound::from_upper((e4 + &three) / &four * &scale);
    let (exact_positive, circuit_real) = match l {
        0 => (Some(1), None),
        1 => (Some(n as u64 + 1), Some(2 * n as u64 + 1)),
        _ => (None, None),
    };
    let construction_lower =
        (l >= 1).then(|| num_traits::pow(BigInt::from(n.div_ceil(l)), l as usize));
    Ok(FewnomialBounds { l, n, khovanskii, positive, real, exact_positive, circuit_real, construction_lower })
}

impl FewnomialBounds {
    pub fn positive_exceeds_construction(&self) -> bool {
        self.construction_lower.as_ref().is_none_or(|c| Rational::from_integer(c.clone()) < self.positive.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{shape_lemma_real_count_with, ShapeOutcome};
    use crate::lattice::{lattice_index, LatticeIndex};
    use crate::polytope::{normalized_volume, Support};
    use crate::qpoly::int;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn relations() {
        let r = primitive_relation(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]).unwrap();
        assert_eq!(r.lambda, vec![1, 1, 1]);
        assert_eq!((r.left.clone(), r.right.clone(), r.shift), (vec![0, 1], vec![2], 1));
        // A_{1,5}^{(1,1)} is a circuit: N = 5 and degree 5 + 2 = 7
        let r = primitive_relation(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 5]]).unwrap();
        assert_eq!(r.shift, 5);
        assert_eq!(primitive_relation(&[vec![1, 1], vec![2, 2]]), Err(CircuitError::DegenerateCircuit));
        assert_eq!(
            primitive_relation(&[vec![1, 0, 1], vec![2, 0, 1], vec![0, 1, 1]]),
            Err(CircuitError::DegenerateCircuit)
        );
        assert!(matches!(
            primitive_relation(&[vec![1, 0, 1], vec![2, 0, 1], vec![3, 0, 2]]),
            Err(CircuitError::NotACircuit(_))
        ));
    }

    #[test]
    fn small_eliminant() {
        let sys = CircuitSystem::new(1, vec![vec![1, 0], vec![1, 1]], vec![int(1), int(1)], vec![int(1), int(-1)]).unwrap();
        assert_eq!(circuit_eliminant(&sys), ip(&[-1, 2, 1]));
        let c = circuit_real_count(&sys);
        assert_eq!((c.real, c.positive), (2, 1));
        let family = CircuitSystem::new(1, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 5]], vec![int(2), int(3), int(-1)], vec![int(1), int(1), int(1)]).unwrap();
        assert_eq!(circuit_eliminant(&family).degree(), Some(7));
        assert_eq!(
            CircuitSystem::new(1, vec![vec![1, 0], vec![1, 1]], vec![int(0), int(1)], vec![int(0), int(1)]),
            Err(CircuitError::DegenerateData)
        );
    }

    #[test]
    fn general_form() {
        // x − 1 − y² = 0, xy − 2 + 3y² = 0 written with a_0 = (0, 2)
        let support = vec![vec![0, 0], vec![0, 2], vec![1, 0], vec![1, 1]];
        let coeffs = vec![vec![int(-1), int(-1), int(1), int(0)], vec![int(-2), int(3), int(0), int(1)]];
        let sys = CircuitSystem::from_general(&support, &coeffs).unwrap();
        assert_eq!(sys.ell, 2);
        assert_eq!(sys.exponents, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!((sys.w.clone(), sys.v.clone()), (vec![int(1), int(2)], vec![int(1), int(-3)]));
        // a_0 off the axis
        let support = vec![vec![0, 0], vec![2, 2], vec![1, 0], vec![0, 1]];
        let coeffs = vec![vec![int(-1), int(1), int(1), int(0)], vec![int(-3), int(2), int(1), int(1)]];
        let sys = CircuitSystem::from_general(&support, &coeffs).unwrap();
        assert_eq!(sys.ell, 2);
        let nv = normalized_volume(&Support::new(2, support).unwrap()).unwrap();
        assert_eq!(circuit_eliminant(&sys).degree(), Some(nv as usize));
        let singular = vec![vec![int(1), int(1), int(1), int(1)], vec![int(2), int(1), int(2), int(2)]];
        assert_eq!(
            CircuitSystem::from_general(&[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]], &singular),
            Err(CircuitError::SingularCoefficients)
        );
    }

    fn example_g() -> Vec<UniPoly> {
        vec![ip(&[5, 11, 23, 41]), ip(&[8, 18, 38, 72]), ip(&[2, 6, 14, 30])]
    }

    #[test]
    fn family_example_eliminant() {
        let fam = FamilySystem::from_diagonal(3, 5, vec![1, 1], example_g()).unwrap();
        let mut expect = vec![0; 5];
        expect.extend(convolve(&[5, 11, 23, 41], &[8, 18, 38, 72]));
        for (i, c) in [2, 6, 14, 30].iter().enumerate() {
            expect[i] -= c;
        }
        assert_eq!(fam.eliminant(), ip(&expect));
        assert_eq!(fam.eliminant().degree(), Some(11));
        assert_eq!(fam.complex_count(), 11);
        assert_eq!(fam.real_count(), 3);
        assert_eq!(fam.real_bound(), 11);
        assert_eq!(fam.real_count() % 2, fam.complex_count() % 2);
        let s = Support::new(3, fam.support()).unwrap();
        assert_eq!(normalized_volume(&s).unwrap(), 11);
    }

    #[test]
    fn family_from_raw_coefficients() {
        let c: Vec<Vec<Rational>> = [[1, 1, 1], [1, 2, 3], [2, 2, 1]].iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let f = vec![ip(&[1, 1, 1, 1]), ip(&[5, 7, 11, 13]), ip(&[4, 8, 16, 32])];
        let fam = FamilySystem::from_coefficients(3, 5, vec![1, 1], &c, &f).unwrap();
        let g = example_g();
        assert_eq!(fam.g[0], g[0]);
        assert_eq!(fam.g[1], -&g[1]);
        assert_eq!(fam.g[2], g[2]);
        assert_eq!(fam.real_count(), 1);
    }

    #[test]
    fn bounds() {
        let b = fewnomial_bounds(2, 2).unwrap();
        assert_eq!(b.khovanskii, BigInt::from(5184));
        assert_eq!(fewnomial_bounds(0, 5).unwrap().exact_positive, Some(1));
        let b = fewnomial_bounds(1, 4).unwrap();
        assert_eq!((b.exact_positive, b.circuit_real), (Some(5), Some(9)));
        assert_eq!(b.construction_lower, Some(BigInt::from(4)));
        assert!(b.positive_exceeds_construction());
        let e2 = std::f64::consts::E.powi(2);
        let v = fewnomial_bounds(3, 2).unwrap();
        let exact = (e2 + 3.0) / 4.0 * 8.0 * 8.0;
        assert!(v.positive.approx() >= exact && v.positive.approx() - exact < 1e-9);
        assert_eq!(v.positive.floor, BigInt::from(exact.floor() as i64));
        assert_eq!(v.construction_lower, Some(BigInt::one()));
        let (lo, hi) = e_interval(40);
        assert!(lo < hi && crate::qpoly::rational_to_f64(&(hi - lo)) < 1e-45);
        assert!(fewnomial_bounds(1, 0).is_err());
    }

    fn circuit_strategy(max_n: usize, lo: i64) -> impl Strategy<Value = (u64, Vec<Vec<i64>>, Vec<i64>, Vec<i64>)> {
        (1..=max_n, 1u64..=3).prop_flat_map(move |(n, ell)| {
            (
                Just(ell),
                prop::collection::vec(prop::collection::vec(lo..=3i64, n), n),
                prop::collection::vec(prop_oneof![-9i64..=-1, 1i64..=9], n),
                prop::collection::vec(prop_oneof![-9i64..=-1, 1i64..=9], n),
            )
        })
    }

    fn build(ell: u64, a: Vec<Vec<i64>>, w: &[i64], v: &[i64]) -> Option<CircuitSystem> {
        CircuitSystem::new(ell, a, w.iter().map(|&x| int(x)).collect(), v.iter().map(|&x| int(x)).collect()).ok()
    }

    fn is_primitive(sys: &CircuitSystem) -> bool {
        let cols: Vec<Vec<i64>> = sys.support()[1..].to_vec();
        lattice_index(&IntMatrix::from_columns(&cols)) == LatticeIndex::Finite(BigInt::one())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn eliminant_degree_is_volume((ell, a, w, v) in circuit_strategy(3, -3)) {
            let sys = build(ell, a, &w, &v);
            prop_assume!(sys.as_ref().is_some_and(is_primitive));
            let sys = sys.unwrap();
            let f = circuit_eliminant(&sys);
            let r = &sys.relation;
            let top = (r.shift + ell * r.left.iter().map(|&i| r.lambda[i]).sum::<u64>())
                .max(ell * r.right.iter().map(|&i| r.lambda[i]).sum::<u64>());
            prop_assume!(f.degree() == Some(top as usize));
            let s = Support::new(sys.n, sys.support()).unwrap();
            prop_assert_eq!(top, normalized_volume(&s).unwrap());
        }

        #[test]
        fn circuit_count_bounds((ell, a, w, v) in circuit_strategy(3, -3)) {
            let sys = build(ell, a, &w, &v);
            prop_assume!(sys.as_ref().is_some_and(is_primitive));
            let sys = sys.unwrap();
            prop_assume!(circuit_eliminant(&sys).degree().unwrap_or(0) <= 16);
            let c = circuit_real_count(&sys);
            prop_assert!(c.real <= 2 * sys.n + 1);
            prop_assert!(c.positive <= sys.n + 1);
            prop_assert!(c.real <= c.real_with_multiplicity);
        }

        #[test]
        fn family_bound_and_parity(
            k in 1usize..=2,
            extra in 1usize..=3,
            eps in prop::collection::vec(0u8..=1, 2),
            coeffs in prop::collection::vec(prop::collection::vec(-20i64..=20, 3), 3),
        ) {
            prop_assume!(eps.contains(&1));
            let g: Vec<UniPoly> = coeffs.iter().map(|c| ip(&c[..=k])).collect();
            let fam = FamilySystem::from_diagonal(k, k + extra, eps, g).unwrap();
            let f = fam.eliminant();
            prop_assume!(f.degree() == Some(fam.complex_count()));
            prop_assume!(poly_gcd(&f, &f.derivative()).unwrap().is_constant());
            let r = fam.real_count();
            prop_assert!(r <= fam.real_bound());
            prop_assert_eq!(r % 2, fam.complex_count() % 2);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn circuit_count_matches_shape_lemma((ell, a, w, v) in circuit_strategy(2, 0).prop_filter("n = 2", |c| c.1.len() == 2)) {
            let sys = build(ell, a, &w, &v);
            prop_assume!(sys.as_ref().is_some_and(is_primitive));
            let sys = sys.unwrap();
            let c = circuit_real_count(&sys);
            prop_assume!(c.squarefree);
            // roots shared with some g_i give solutions off the torus
            let f = circuit_eliminant(&sys);
            prop_assume!(!f.eval(&Rational::zero()).is_zero());
            prop_assume!((0..sys.n).all(|i| poly_gcd(&f, &sys.g(i)).unwrap().is_constant()));
            let polys = sys.polynomials().unwrap();
            let mut shape = None;
            for seed in [None, Some(1), Some(2)] {
                if let Ok(r) = shape_lemma_real_count_with(&polys, seed) {
                    if let ShapeOutcome::Count(k) = r.outcome {
                        shape = Some((k, r.degree));
                        break;
                    }
                }
            }
            prop_assume!(shape.is_some());
            let (k, degree) = shape.unwrap();
            prop_assume!(degree == c.eliminant_degree);
            prop_assert_eq!(k, c.real);
        }
    }
}
