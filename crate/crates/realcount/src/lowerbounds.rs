//! Posets and their Wronski polynomial systems: order ideals (up-sets), linear extensions,
//! sign-imbalance, the order polytope, Cox orientability mod 2 and the Monte-Carlo count
//! experiment.
//!
//! Order ideals here are closed upwards: x ∈ I and x < y force y ∈ I. This is the
//! opposite of the usual down-set convention.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::groebner::{shape_lemma_real_count, MultiPoly, ShapeOutcome};
use crate::polytope::{Facet, Polytope, PolytopeError, Support, Triangulation};
use crate::qpoly::Rational;

pub const MAX_IDEAL_ELEMENTS: usize = 24;
pub const MAX_EXTENSIONS: usize = 1_000_000;
pub const MAX_EXPERIMENT_ELEMENTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relations contain a cycle")]
    Cyclic,
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("poset too large: {0} elements")]
    TooLarge(usize),
    #[error("more than {MAX_EXTENSIONS} linear extensions")]
    TooMany,
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("experiment intractable for {0} elements")]
    Intractable(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    pub names: Vec<String>,
    /// Hasse diagram: (lower, upper) pairs.
    pub covers: Vec<(usize, usize)>,
    /// less[a][b] iff a < b.
    less: Vec<Vec<bool>>,
}

impl Poset {
    /// The order generated by the given relations; redundant pairs are dropped from the
    /// stored covers.
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        let names = (0..n).map(|i| format!("p{i}")).collect();
        Self::with_names(names, relations)
    }

    pub fn with_names(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = names.len();
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(PosetError::BadIndex(a.max(b)));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if (0..n).any(|i| less[i][i]) {
            return Err(PosetError::Cyclic);
        }
        let covers = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| less[a][b] && !(0..n).any(|c| less[a][c] && less[c][b]))
            .collect();
        Ok(Poset { names, covers, less })
    }

    pub fn from_named(elements: &[String], relations: &[(String, String)]) -> Result<Self, PosetError> {
        let idx = |s: &String| elements.iter().position(|e| e == s).ok_or_else(|| PosetError::UnknownElement(s.clone()));
        let rel = relations.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>, PosetError>>()?;
        Self::with_names(elements.to_vec(), &rel)
    }

    pub fn chain(n: usize) -> Self {
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &rel).expect("chains are acyclic")
    }

    pub fn antichain(n: usize) -> Self {
        Self::new(n, &[]).expect("no relations")
    }

    /// Incomparable union, with the elements of `other` shifted after those of `self`.
    pub fn disjoint_union(&self, other: &Poset) -> Self {
        let k = self.len();
        let rel: Vec<(usize, usize)> =
            self.covers.iter().copied().chain(other.covers.iter().map(|&(a, b)| (a + k, b + k))).collect();
        let names = self.names.iter().chain(&other.names).cloned().collect();
        Self::with_names(names, &rel).expect("union of posets")
    }

    /// Two 2-element chains w < x and y < z.
    pub fn two_plus_two() -> Self {
        let names = ["w", "x", "y", "z"].map(String::from).to_vec();
        Self::with_names(names, &[(0, 1), (2, 3)]).expect("acyclic")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&b| !(0..self.len()).any(|a| self.less[a][b])).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| !(0..self.len()).any(|b| self.less[a][b])).collect()
    }

    fn above_mask(&self, x: usize) -> u32 {
        (0..self.len()).filter(|&y| self.less[x][y]).fold(0, |m, y| m | (1 << y))
    }
}

fn bits(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Up-closed subsets as bit masks, sorted by size and then by their sorted elements.
pub fn order_ideal_masks(p: &Poset) -> Result<Vec<u32>, PosetError> {
    let n = p.len();
    if n > MAX_IDEAL_ELEMENTS {
        return Err(PosetError::TooLarge(n));
    }
    // decide maximal elements first so everything above x is settled when x is
    let order: Vec<usize> = linear_extension_any(p).into_iter().rev().collect();
    let above: Vec<u32> = (0..n).map(|x| p.above_mask(x)).collect();
    let mut out = Vec::new();
    fn go(k: usize, mask: u32, order: &[usize], above: &[u32], out: &mut Vec<u32>) {
        if k == order.len() {
            out.push(mask);
            return;
        }
        let x = order[k];
        go(k + 1, mask, order, above, out);
        if above[x] & !mask == 0 {
            go(k + 1, mask | 1 << x, order, above, out);
        }
    }
    go(0, 0, &order, &above, &mut out);
    out.sort_by_key(|&m| (m.count_ones(), bits(m, n)));
    Ok(out)
}

pub fn order_ideals(p: &Poset) -> Result<Vec<Vec<usize>>, PosetError> {
    Ok(order_ideal_masks(p)?.into_iter().map(|m| bits(m, p.len())).collect())
}

fn linear_extension_any(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let mut placed = vec![false; n];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = (0..n)
            .find(|&x| !placed[x] && (0..n).all(|y| !p.less[y][x] || placed[y]))
            .expect("acyclic order");
        placed[x] = true;
        out.push(x);
    }
    out
}

/// All orderings x₁, …, x_n with x_i < x_j ⇒ i < j, in lexicographic order.
pub fn linear_extensions(p: &Poset) -> Result<Vec<Vec<usize>>, PosetError> {
    let n = p.len();
    let below: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| p.less[y][x]).collect()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    fn go(
        below: &[Vec<usize>],
        cur: &mut Vec<usize>,
        placed: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), PosetError> {
        let n = placed.len();
        if cur.len() == n {
            if out.len() >= MAX_EXTENSIONS {
                return Err(PosetError::TooMany);
            }
            out.push(cur.clone());
            return Ok(());
        }
        for x in 0..n {
            if !placed[x] && below[x].iter().all(|&y| placed[y]) {
                placed[x] = true;
                cur.push(x);
                go(below, cur, placed, out)?;
                cur.pop();
                placed[x] = false;
            }
        }
        Ok(())
    }
    go(&below, &mut cur, &mut placed, &mut out)?;
    Ok(out)
}

/// Sign of the permutation taking `reference` to `w`.
pub fn relative_sign(w: &[usize], reference: &[usize]) -> i8 {
    let mut pos = vec![0usize; reference.len()];
    for (i, &x) in reference.iter().enumerate() {
        pos[x] = i;
    }
    let seq: Vec<usize> = w.iter().map(|&x| pos[x]).collect();
    let inversions = (0..seq.len()).flat_map(|i| (i + 1..seq.len()).map(move |j| (i, j))).filter(|&(i, j)| seq[i] > seq[j]).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// |Σ sgn(w π⁻¹)| over the extensions w, for a given reference extension π.
pub fn sign_imbalance_with(p: &Poset, reference: &[usize]) -> Result<u64, PosetError> {
    let s: i64 = linear_extensions(p)?.iter().map(|w| relative_sign(w, reference) as i64).sum();
    Ok(s.unsigned_abs())
}

pub fn sign_imbalance(p: &Poset) -> Result<u64, PosetError> {
    sign_imbalance_with(p, &linear_extension_any(p))
}

/// One equation Σ_I c_{|I|} α_I x^I per coefficient row, variables indexed by elements.
pub fn wronski_system(
    p: &Poset,
    coeffs: &[Vec<Rational>],
    alpha: Option<&[Rational]>,
) -> Result<Vec<MultiPoly>, PosetError> {
    let n = p.len();
    if coeffs.len() != n || coeffs.iter().any(|c| c.len() != n + 1) {
        return Err(PosetError::ArityMismatch(format!("need {n} rows of {} coefficients", n + 1)));
    }
    let ideals = order_ideal_masks(p)?;
    if let Some(a) = alpha {
        if a.len() != ideals.len() {
            return Err(PosetError::ArityMismatch(format!("need {} ideal multipliers", ideals.len())));
        }
    }
    Ok(coeffs
        .iter()
        .map(|c| {
            let mut f = MultiPoly::zero(n);
            for (k, &m) in ideals.iter().enumerate() {
                let e: Vec<u32> = (0..n).map(|i| m >> i & 1).collect();
                let coef = match alpha {
                    Some(a) => &c[m.count_ones() as usize] * &a[k],
                    None => c[m.count_ones() as usize].clone(),
                };
                f.add_term(e, coef);
            }
            f
        })
        .collect())
}

/// Facet system B·z ≥ −b of the order polytope: z_y ≥ 0 for minimal y, −z_y ≥ −1 for
/// maximal y, z_x − z_y ≥ 0 for each cover y ⋖ x.
pub fn order_polytope(p: &Poset) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = p.len();
    let unit = |i: usize, s: i64| {
        let mut r = vec![0i64; n];
        r[i] = s;
        r
    };
    let mut rows = Vec::new();
    let mut b = Vec::new();
    for y in p.minimal() {
        rows.push(unit(y, 1));
        b.push(0);
    }
    for y in p.maximal() {
        rows.push(unit(y, -1));
        b.push(1);
    }
    for &(y, x) in &p.covers {
        let mut r = unit(x, 1);
        r[y] = -1;
        rows.push(r);
        b.push(0);
    }
    (rows, b)
}

pub fn ideal_points(p: &Poset) -> Result<Vec<Vec<i64>>, PosetError> {
    let n = p.len();
    Ok(order_ideal_masks(p)?.into_iter().map(|m| (0..n).map(|i| (m >> i & 1) as i64).collect()).collect())
}

pub fn order_polytope_hull(p: &Poset) -> Result<Polytope, PolytopeError> {
    let (rows, b) = order_polytope(p);
    let facets = rows.into_iter().zip(b).map(|(normal, bi)| Facet { normal, offset: -bi }).collect();
    let pts = ideal_points(p).map_err(|e| PolytopeError::InvalidSupport(e.to_string()))?;
    Polytope::from_hrep(p.len(), pts, facets)
}

/// Simplex per linear extension x₁…x_n: the up-sets ∅, {x_n}, {x_{n−1}, x_n}, …, P.
pub fn staircase_triangulation(p: &Poset) -> Result<Triangulation, PolytopeError> {
    let err = |e: PosetError| PolytopeError::InvalidSupport(e.to_string());
    let masks = order_ideal_masks(p).map_err(err)?;
    let index: BTreeMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let simplices = linear_extensions(p)
        .map_err(err)?
        .iter()
        .map(|w| {
            let mut m = 0u32;
            let mut s = vec![index[&0]];
            for &x in w.iter().rev() {
                m |= 1 << x;
                s.push(index[&m]);
            }
            s
        })
        .collect();
    let support = Support::new(p.len(), ideal_points(p).map_err(err)?)?;
    Triangulation::new(support, simplices)
}

/// Every maximal chain has the same number of elements mod 2.
pub fn parity_hypothesis(p: &Poset) -> bool {
    let n = p.len();
    // parities[x]: bit k set if some chain from x up to a maximal element has length ≡ k
    let order = linear_extension_any(p);
    let mut parities = vec![0u8; n];
    for &x in order.iter().rev() {
        let ups: Vec<usize> = p.covers.iter().filter(|c| c.0 == x).map(|c| c.1).collect();
        parities[x] = if ups.is_empty() {
            0b10
        } else {
            ups.iter().fold(0, |acc, &y| acc | (parities[y] << 1 & 0b10) | (parities[y] >> 1))
        };
    }
    let all = p.minimal().iter().fold(0, |acc, &x| acc | parities[x]);
    all != 0b11
}

/// Whether the all-ones vector lies in col(B) + Z·b modulo 2.
pub fn cox_orientable(p: &Poset) -> bool {
    let (rows, b) = order_polytope(p);
    let n = p.len();
    let nrows = rows.len();
    let mut gens: Vec<Vec<u8>> = (0..n).map(|j| rows.iter().map(|r| (r[j].rem_euclid(2)) as u8).collect()).collect();
    gens.push(b.iter().map(|v| v.rem_euclid(2) as u8).collect());
    let target = vec![1u8; nrows];
    gf2_rank(&gens) == gf2_rank(&gens.iter().cloned().chain([target]).collect::<Vec<_>>())
}

fn gf2_rank(vs: &[Vec<u8>]) -> usize {
    let mut a = vs.to_vec();
    let cols = a.first().map_or(0, |v| v.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] == 1) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i][c] == 1 {
                let pivot = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GapHistogram {
    pub trials: usize,
    /// real solution count ↦ number of trials
    pub counts: BTreeMap<usize, usize>,
    /// Trials where every draw failed the Shape-Lemma hypothesis.
    pub failed: usize,
    /// Total extra draws taken after a failed attempt.
    pub redraws: usize,
}

const MAX_REDRAWS: usize = 3;

enum TrialOutcome {
    Count(usize, usize),
    Failed(usize),
}

fn run_trial(p: &Poset, seed: u64, trial: u64, range: i64) -> TrialOutcome {
    let n = p.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    for attempt in 0..=MAX_REDRAWS {
        let coeffs: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..=n).map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-range..=range)))).collect())
            .collect();
        let sys = wronski_system(p, &coeffs, None).expect("arity matches");
        if let Ok(ShapeOutcome::Count(c)) = shape_lemma_real_count(&sys) {
            return TrialOutcome::Count(c, attempt);
        }
    }
    TrialOutcome::Failed(MAX_REDRAWS)
}

/// Real solution counts of random Wronski systems, one ChaCha stream per (seed, trial).
pub fn monte_carlo_gap(p: &Poset, trials: usize, seed: u64, range: i64) -> Result<GapHistogram, PosetError> {
    if p.len() > MAX_EXPERIMENT_ELEMENTS {
        return Err(PosetError::Intractable(p.len()));
    }
    let outcomes: Vec<TrialOutcome> = (0..trials as u64).into_par_iter().map(|t| run_trial(p, seed, t, range)).collect();
    let mut h = GapHistogram { trials, ..Default::default() };
    for o in outcomes {
        match o {
            TrialOutcome::Count(c, r) => {
                *h.counts.entry(c).or_insert(0) += 1;
                h.redraws += r;
            }
            TrialOutcome::Failed(r) => {
                h.failed += 1;
                h.redraws += r;
            }
        }
    }
    Ok(h)
}
