//! Sparse multivariate polynomials over Q, Buchberger's algorithm and eliminants.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::qpoly::{int, Rational, UniPoly};
use crate::rootcount;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("all input polynomials are zero")]
    ZeroIdealInput,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("variable index {0} out of range")]
    BadVariable(usize),
}

pub type Exp = Vec<u32>;

/// Polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exp, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exp: Exp, c: Rational) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The i-th coordinate function.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn from_terms(nvars: usize, terms: &[(&[u32], Rational)]) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e.to_vec(), c.clone());
        }
        p
    }

    /// Embeds f(t) as a polynomial in variable `var`.
    pub fn from_univariate(nvars: usize, var: usize, f: &UniPoly) -> Self {
        let mut p = Self::zero(nvars);
        for (i, c) in f.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = i as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, exp: Exp, c: Rational) {
        assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|e| e[var] as usize).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = Self::zero(self.nvars);
        if c.is_zero() {
            return p;
        }
        for (e, v) in &self.terms {
            p.terms.insert(e.clone(), v * c);
        }
        p
    }

    pub fn add(&self, o: &MultiPoly) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &MultiPoly) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn mul(&self, o: &MultiPoly) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut acc: BTreeMap<Exp, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MultiPoly { nvars: self.nvars, terms: acc }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            s += t;
        }
        s
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = crate::qpoly::rational_to_f64(c);
                for (xi, &k) in x.iter().zip(e) {
                    t *= xi.powi(k as i32);
                }
                t
            })
            .sum()
    }

    /// Σ |c|·|x^e|, the scale against which |f(x)| is judged small.
    pub fn eval_abs_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = crate::qpoly::rational_to_f64(c).abs();
                for (xi, &k) in x.iter().zip(e) {
                    t *= xi.abs().powi(k as i32);
                }
                t
            })
            .sum()
    }

    pub fn partial(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut d = e.clone();
                d[var] -= 1;
                out.add_term(d, c * Rational::from_integer(e[var].into()));
            }
        }
        out
    }

    /// Replaces variable i by `images[i]` (all images share an arity).
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let m = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = MultiPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(m, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&img.pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitutes a rational value for variable `var`, keeping the arity.
    pub fn specialize(&self, var: usize, value: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] = 0;
            out.add_term(e2, c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    /// Some(f) when the polynomial involves only variable `var`.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let mut c = vec![Rational::zero(); self.degree_in(var) + 1];
        for (e, v) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k != 0) {
                return None;
            }
            c[e[var] as usize] = v.clone();
        }
        Some(UniPoly::new(c))
    }

    /// Sum of absolute values of coefficients.
    pub fn norm1(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            let m = mono.join("*");
            parts.push(match (m.is_empty(), c.is_one()) {
                (true, _) => format!("{}", c),
                (false, true) => m,
                (false, false) => format!("{}*{}", c, m),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    Grevlex,
}

/// `perm[0]` is the most significant variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: (0..n).collect() }
    }

    pub fn grevlex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, perm: (0..n).collect() }
    }

    /// Lex order in which `var` is the smallest variable.
    pub fn lex_eliminating_to(n: usize, var: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).filter(|&i| i != var).collect();
        perm.push(var);
        MonomialOrder { kind: OrderKind::Lex, perm }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.perm {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                if da != db {
                    return da.cmp(&db);
                }
                for &i in self.perm.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Terms sorted by decreasing monomial order.
#[derive(Clone, Debug)]
struct Poly {
    terms: Vec<(Exp, Rational)>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quot(b: &[u32], a: &[u32]) -> Exp {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

impl Poly {
    fn from_multi(p: &MultiPoly, ord: &MonomialOrder) -> Self {
        let mut terms: Vec<(Exp, Rational)> = p.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Poly { terms }
    }

    fn to_multi(&self, n: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(n);
        for (e, c) in &self.terms {
            p.terms.insert(e.clone(), c.clone());
        }
        p
    }

    fn lm(&self) -> &Exp {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            let inv = lc.recip();
            for t in self.terms.iter_mut() {
                t.1 *= &inv;
            }
        }
    }

    /// self - c * x^m * g, where the product keeps g's order.
    fn sub_mul(&self, c: &Rational, m: &[u32], g: &Poly, ord: &MonomialOrder) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let shifted: Vec<(Exp, Rational)> = g
            .terms
            .iter()
            .map(|(e, v)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), v * c))
            .collect();
        let mut j = 0;
        while i < self.terms.len() && j < shifted.len() {
            match ord.cmp(&self.terms[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &self.terms[i].1 - &shifted[j].1;
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(shifted[j..].iter().map(|(e, v)| (e.clone(), -v.clone())));
        Poly { terms: out }
    }
}

/// Full reduction of p by a list of monic polynomials.
fn reduce(p: &Poly, gs: &[Poly], ord: &MonomialOrder, pick_last: bool) -> Poly {
    let mut rem: Vec<(Exp, Rational)> = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        let (lm, lc) = cur.terms[0].clone();
        let mut found = gs.iter().filter(|g| divides(g.lm(), &lm));
        let hit = if pick_last { found.next_back() } else { found.next() };
        match hit {
            Some(g) => {
                let m = quot(&lm, g.lm());
                cur = cur.sub_mul(&lc, &m, g, ord);
            }
            None => {
                rem.push((lm, lc));
                cur.terms.remove(0);
            }
        }
    }
    Poly { terms: rem }
}

fn spoly(f: &Poly, g: &Poly, ord: &MonomialOrder) -> Poly {
    let l = lcm(f.lm(), g.lm());
    let mf = quot(&l, f.lm());
    let mg = quot(&l, g.lm());
    let zero = Poly { terms: vec![] };
    let a = zero.sub_mul(&-Rational::one(), &mf, f, ord);
    a.sub_mul(&Rational::one(), &mg, g, ord)
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub generators: Vec<MultiPoly>,
    pub order: MonomialOrder,
    pub reduced: bool,
    nvars: usize,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn polys(&self) -> Vec<Poly> {
        self.generators.iter().map(|g| Poly::from_multi(g, &self.order)).collect()
    }

    /// Leading monomials of the generators.
    pub fn leading_monomials(&self) -> Vec<Exp> {
        self.polys().iter().map(|p| p.lm().clone()).collect()
    }

    /// Standard monomials when the ideal is zero-dimensional.
    pub fn standard_monomials(&self) -> Option<Vec<Exp>> {
        let lms = self.leading_monomials();
        if lms.iter().any(|e| e.iter().all(|&k| k == 0)) {
            return Some(vec![]);
        }
        let mut bounds = vec![0u32; self.nvars];
        for (i, b) in bounds.iter_mut().enumerate() {
            let pure = lms
                .iter()
                .filter(|e| e.iter().enumerate().all(|(j, &k)| j == i || k == 0))
                .map(|e| e[i])
                .min()?;
            *b = pure;
        }
        let mut out = Vec::new();
        let mut e = vec![0u32; self.nvars];
        collect_standard(&lms, &bounds, 0, &mut e, &mut out);
        Some(out)
    }
}

fn collect_standard(lms: &[Exp], bounds: &[u32], i: usize, e: &mut Exp, out: &mut Vec<Exp>) {
    if i == bounds.len() {
        if !lms.iter().any(|l| divides(l, e)) {
            out.push(e.clone());
        }
        return;
    }
    for k in 0..bounds[i] {
        e[i] = k;
        // prune: once divisible, larger exponents stay divisible
        if lms.iter().any(|l| divides(l, e) && l[i + 1..].iter().all(|&x| x == 0)) {
            break;
        }
        collect_standard(lms, bounds, i + 1, e, out);
    }
    e[i] = 0;
}

pub fn normal_form(f: &MultiPoly, g: &GroebnerBasis) -> Result<MultiPoly, GroebnerError> {
    if f.nvars != g.nvars {
        return Err(GroebnerError::ArityMismatch { expected: g.nvars, found: f.nvars });
    }
    let p = Poly::from_multi(f, &g.order);
    Ok(reduce(&p, &g.polys(), &g.order, false).to_multi(g.nvars))
}

/// Same remainder, but divides by the last applicable generator at each step.
pub fn normal_form_alt(f: &MultiPoly, g: &GroebnerBasis) -> Result<MultiPoly, GroebnerError> {
    if f.nvars != g.nvars {
        return Err(GroebnerError::ArityMismatch { expected: g.nvars, found: f.nvars });
    }
    let p = Poly::from_multi(f, &g.order);
    Ok(reduce(&p, &g.polys(), &g.order, true).to_multi(g.nvars))
}

/// Reduced Groebner basis; normal selection strategy with the coprime and chain criteria.
pub fn buchberger(fs: &[MultiPoly], order: &MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    let n = fs.first().map(|f| f.nvars).ok_or(GroebnerError::ZeroIdealInput)?;
    for f in fs {
        if f.nvars != n {
            return Err(GroebnerError::ArityMismatch { expected: n, found: f.nvars });
        }
    }
    let mut g: Vec<Poly> = Vec::new();
    for f in fs.iter().filter(|f| !f.is_zero()) {
        let mut p = Poly::from_multi(f, order);
        p.make_monic();
        g.push(p);
    }
    if g.is_empty() {
        return Err(GroebnerError::ZeroIdealInput);
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                let la = lcm(g[a.0].lm(), g[a.1].lm());
                let lb = lcm(g[b.0].lm(), g[b.1].lm());
                order.cmp(&la, &lb).then(a.1.cmp(&b.1)).then(a.0.cmp(&b.0))
            })
            .unwrap();
        pairs.remove(&(i, j));
        let (li, lj) = (g[i].lm().clone(), g[j].lm().clone());
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(&li, &lj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..g.len()).any(|k| {
            k != i && k != j && divides(g[k].lm(), &l) && !pairs.contains(&key(i, k)) && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = spoly(&g[i], &g[j], order);
        let mut r = reduce(&s, &g, order, false);
        if !r.is_zero() {
            r.make_monic();
            let k = g.len();
            g.push(r);
            for i2 in 0..k {
                pairs.insert((i2, k));
            }
        }
    }
    // minimalize then interreduce
    let mut keep: Vec<Poly> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(k, q)| {
            k != idx && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || k < idx)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<Poly> = keep.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, p)| p.clone()).collect();
        let head = Poly { terms: vec![keep[idx].terms[0].clone()] };
        let tail = Poly { terms: keep[idx].terms[1..].to_vec() };
        let mut r = reduce(&tail, &others, order, false);
        r.terms.insert(0, head.terms[0].clone());
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    Ok(GroebnerBasis {
        generators: reduced.iter().map(|p| p.to_multi(n)).collect(),
        order: order.clone(),
        reduced: true,
        nvars: n,
    })
}

/// Number of standard monomials, or None when the ideal is not zero-dimensional.
pub fn ideal_degree(g: &GroebnerBasis) -> Option<usize> {
    g.standard_monomials().map(|s| s.len())
}

/// Monic generator of I ∩ Q[x_var] from a lex basis with `var` smallest.
pub fn eliminant(fs: &[MultiPoly], var: usize) -> Result<UniPoly, GroebnerError> {
    let n = fs.first().map(|f| f.nvars).ok_or(GroebnerError::ZeroIdealInput)?;
    if var >= n {
        return Err(GroebnerError::BadVariable(var));
    }
    let g = buchberger(fs, &MonomialOrder::lex_eliminating_to(n, var))?;
    if ideal_degree(&g).is_none() {
        return Err(GroebnerError::NotZeroDimensional);
    }
    g.generators
        .iter()
        .filter_map(|p| p.to_univariate(var))
        .min_by_key(|u| u.degree())
        .map(|u| u.monic())
        .ok_or(GroebnerError::NotZeroDimensional)
}

/// Minimal polynomial of multiplication by x_var on the quotient ring, from any basis.
pub fn eliminant_from_basis(g: &GroebnerBasis, var: usize) -> Result<UniPoly, GroebnerError> {
    if var >= g.nvars {
        return Err(GroebnerError::BadVariable(var));
    }
    let std = g.standard_monomials().ok_or(GroebnerError::NotZeroDimensional)?;
    let index: BTreeMap<Exp, usize> = std.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let polys = g.polys();
    let x = Poly::from_multi(&MultiPoly::var(g.nvars, var), &g.order);
    // rows: echelon form of the vectors NF(x^k), each carrying its combination of powers
    let mut echelon: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut cur = Poly::from_multi(&MultiPoly::constant(g.nvars, Rational::one()), &g.order);
    for k in 0..=std.len() {
        let mut v = vec![Rational::zero(); std.len()];
        for (e, c) in &cur.terms {
            v[index[e]] = c.clone();
        }
        let mut comb = vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        for (piv, row, rc) in &echelon {
            if !v[*piv].is_zero() {
                let f = v[*piv].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
                for (a, b) in comb.iter_mut().zip(rc) {
                    *a -= &f * b;
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => return Ok(UniPoly::new(comb).monic()),
            Some(p) => {
                let inv = v[p].recip();
                for a in v.iter_mut() {
                    *a *= &inv;
                }
                for a in comb.iter_mut() {
                    *a *= &inv;
                }
                echelon.push((p, v, comb));
            }
        }
        cur = reduce(&mul_poly(&cur, &x, &g.order, g.nvars), &polys, &g.order, false);
    }
    unreachable!("dependency must appear within dim+1 powers")
}

fn mul_poly(a: &Poly, b: &Poly, ord: &MonomialOrder, n: usize) -> Poly {
    Poly::from_multi(&a.to_multi(n).mul(&b.to_multi(n)), ord)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeOutcome {
    Count(usize),
    HypothesesNotSatisfied,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub outcome: ShapeOutcome,
    pub degree: usize,
    /// Variable whose eliminant had full degree.
    pub variable: Option<usize>,
    pub eliminant: Option<UniPoly>,
}

/// Real solution count by degree, eliminant, degree comparison and Sturm, trying each
/// variable in turn. With `coordinate_seed` the system is first moved by a seeded
/// random integer linear change of coordinates.
pub fn shape_lemma_real_count_with(
    fs: &[MultiPoly],
    coordinate_seed: Option<u64>,
) -> Result<ShapeReport, GroebnerError> {
    let n = fs.first().map(|f| f.nvars).ok_or(GroebnerError::ZeroIdealInput)?;
    let moved: Vec<MultiPoly>;
    let system = match coordinate_seed {
        None => fs,
        Some(seed) => {
            let images = random_linear_change(n, seed);
            moved = fs.iter().map(|f| f.substitute(&images)).collect();
            &moved[..]
        }
    };
    let g = buchberger(system, &MonomialOrder::grevlex(n))?;
    let d = ideal_degree(&g).ok_or(GroebnerError::NotZeroDimensional)?;
    for var in 0..n {
        let e = eliminant_from_basis(&g, var)?;
        if e.degree() == Some(d) {
            let count = rootcount::count_real_roots(&e, &rootcount::Endpoint::NegInf, &rootcount::Endpoint::PosInf)
                .expect("infinite endpoints are never roots");
            return Ok(ShapeReport { outcome: ShapeOutcome::Count(count), degree: d, variable: Some(var), eliminant: Some(e) });
        }
    }
    Ok(ShapeReport { outcome: ShapeOutcome::HypothesesNotSatisfied, degree: d, variable: None, eliminant: None })
}

pub fn shape_lemma_real_count(fs: &[MultiPoly]) -> Result<ShapeOutcome, GroebnerError> {
    shape_lemma_real_count_with(fs, None).map(|r| r.outcome)
}

/// x_i ↦ Σ_j m_ij y_j with a seeded, nonsingular small integer matrix.
fn random_linear_change(n: usize, seed: u64) -> Vec<MultiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let rows: Vec<Vec<num_bigint::BigInt>> = m.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        if crate::qpoly::bareiss_det(rows).is_zero() {
            continue;
        }
        return m
            .iter()
            .map(|row| {
                let mut p = MultiPoly::zero(n);
                for (j, &c) in row.iter().enumerate() {
                    p = p.add(&MultiPoly::var(n, j).scale(&int(c)));
                }
                p
            })
            .collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat;

    fn p(n: usize, t: &[(&[u32], i64)]) -> MultiPoly {
        let mut q = MultiPoly::zero(n);
        for (e, c) in t {
            q.add_term(e.to_vec(), int(*c));
        }
        q
    }

    fn example31() -> Vec<MultiPoly> {
        vec![
            p(2, &[(&[2, 1], 1), (&[1, 2], 2), (&[1, 1], 1), (&[0, 0], -1)]),
            p(2, &[(&[2, 1], 1), (&[1, 2], -1), (&[1, 1], -1), (&[0, 0], 2)]),
        ]
    }

    #[test]
    fn orders() {
        let lex = MonomialOrder::lex(2);
        assert_eq!(lex.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
        let gr = MonomialOrder::grevlex(3);
        assert_eq!(gr.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(gr.cmp(&[0, 0, 2], &[2, 0, 0]), Ordering::Less);
        assert_eq!(gr.cmp(&[0, 0, 3], &[2, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn normal_forms() {
        let g = buchberger(&[p(2, &[(&[1, 0], 1), (&[0, 1], -1)])], &MonomialOrder::lex(2)).unwrap();
        assert_eq!(normal_form(&MultiPoly::var(2, 0), &g).unwrap(), MultiPoly::var(2, 1));
        let gens = [p(2, &[(&[2, 0], 1), (&[0, 0], -1)]), p(2, &[(&[0, 1], 1), (&[1, 0], -1)])];
        // with x > y the rewrite is x -> y, with y > x it is y -> x
        let g = buchberger(&gens, &MonomialOrder::lex(2)).unwrap();
        assert_eq!(normal_form(&p(2, &[(&[1, 2], 1)]), &g).unwrap(), MultiPoly::var(2, 1));
        let yx = MonomialOrder { kind: OrderKind::Lex, perm: vec![1, 0] };
        let g = buchberger(&gens, &yx).unwrap();
        assert_eq!(normal_form(&p(2, &[(&[1, 2], 1)]), &g).unwrap(), MultiPoly::var(2, 0));
        let f = g.generators[0].mul(&p(2, &[(&[1, 1], 3), (&[0, 0], 1)]));
        assert!(normal_form(&f, &g).unwrap().is_zero());
        assert!(normal_form(&MultiPoly::var(3, 0), &g).is_err());
    }

    #[test]
    fn basis_of_linear_system_is_itself() {
        let fs = vec![p(2, &[(&[1, 0], 1), (&[0, 0], -1)]), p(2, &[(&[0, 1], 1), (&[0, 0], -2)])];
        let g = buchberger(&fs, &MonomialOrder::lex(2)).unwrap();
        assert_eq!(g.generators, fs);
        assert_eq!(ideal_degree(&g), Some(1));
    }

    #[test]
    fn example_31_basis() {
        let g = buchberger(&example31(), &MonomialOrder::lex(2)).unwrap();
        let target = UniPoly::new(vec![int(1), rat(2, 9), int(1), int(1)]);
        assert!(g.generators.iter().any(|q| q.to_univariate(1) == Some(target.clone())));
        assert_eq!(ideal_degree(&g), Some(3));
        assert_eq!(eliminant(&example31(), 1).unwrap(), target);
        assert_eq!(shape_lemma_real_count(&example31()).unwrap(), ShapeOutcome::Count(1));
    }

    #[test]
    fn circle_and_line() {
        let fs = vec![p(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]), p(2, &[(&[1, 0], 1), (&[0, 1], -1)])];
        assert_eq!(eliminant(&fs, 1).unwrap(), UniPoly::new(vec![rat(-1, 2), int(0), int(1)]));
        assert_eq!(shape_lemma_real_count(&fs).unwrap(), ShapeOutcome::Count(2));
    }

    #[test]
    fn eliminants() {
        let fs = vec![p(2, &[(&[1, 0], 1), (&[0, 0], -1)]), p(2, &[(&[0, 1], 1), (&[0, 0], -2)])];
        assert_eq!(eliminant(&fs, 0).unwrap(), UniPoly::from_ints(&[-1, 1]));
        let fs = vec![p(2, &[(&[2, 0], 1), (&[0, 0], -2)]), p(2, &[(&[0, 1], 1), (&[1, 0], -1)])];
        assert_eq!(eliminant(&fs, 1).unwrap(), UniPoly::from_ints(&[-2, 0, 1]));
        let fs = vec![p(2, &[(&[1, 0], 1)])];
        assert_eq!(eliminant(&fs, 1), Err(GroebnerError::NotZeroDimensional));
    }

    #[test]
    fn degree_sentinel() {
        let g = buchberger(&[p(2, &[(&[1, 0], 1)])], &MonomialOrder::lex(2)).unwrap();
        assert_eq!(ideal_degree(&g), None);
    }

    #[test]
    fn shape_counts() {
        let a = vec![p(2, &[(&[2, 0], 1), (&[0, 0], -1)]), p(2, &[(&[0, 1], 1), (&[1, 0], -1)])];
        assert_eq!(shape_lemma_real_count(&a).unwrap(), ShapeOutcome::Count(2));
        let b = vec![p(2, &[(&[2, 0], 1), (&[0, 0], 1)]), p(2, &[(&[0, 1], 1), (&[1, 0], -1)])];
        assert_eq!(shape_lemma_real_count(&b).unwrap(), ShapeOutcome::Count(0));
        // x^2 = y^2 = 0 style failure: no variable separates the 4 points (±1, ±1)
        let c = vec![p(2, &[(&[2, 0], 1), (&[0, 0], -1)]), p(2, &[(&[0, 2], 1), (&[0, 0], -1)])];
        assert_eq!(shape_lemma_real_count(&c).unwrap(), ShapeOutcome::HypothesesNotSatisfied);
        let r = shape_lemma_real_count_with(&c, Some(1)).unwrap();
        assert_eq!(r.outcome, ShapeOutcome::Count(4));
    }

    #[test]
    fn lex_and_normal_form_eliminants_agree() {
        let g = buchberger(&example31(), &MonomialOrder::grevlex(2)).unwrap();
        assert_eq!(eliminant_from_basis(&g, 1).unwrap(), eliminant(&example31(), 1).unwrap());
        assert_eq!(eliminant_from_basis(&g, 0).unwrap(), eliminant(&example31(), 0).unwrap());
    }
}
