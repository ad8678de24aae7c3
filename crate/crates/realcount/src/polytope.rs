//! Lattice polytopes: exact hulls by facet enumeration, normalized volumes through a
//! pulling triangulation, Ehrhart counts, regular subdivisions, foldability and mixed
//! volumes.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

use itertools::Itertools;
use num_integer::Integer;
use thiserror::Error;

use crate::lattice::{kernel_basis, IntMatrix};

pub const MAX_HULL_DIM: usize = 4;
pub const MAX_SUBDIVISION_DIM: usize = 3;
pub const MAX_POINTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("point set is not full-dimensional (affine dimension {affine} in Z^{dim})")]
    NotFullDimensional { dim: usize, affine: usize },
    #[error("subdivision is not a triangulation")]
    NotATriangulation,
    #[error("dual graph admits no proper 2-coloring")]
    NotFoldable,
    #[error("dual graph is disconnected")]
    DisconnectedDualGraph,
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("too many points ({0})")]
    TooManyPoints(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl Support {
    pub fn new(dim: usize, points: Vec<Vec<i64>>) -> Result<Self, PolytopeError> {
        if dim == 0 {
            return Err(PolytopeError::InvalidSupport("dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(PolytopeError::InvalidSupport("empty point set".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(PolytopeError::InvalidSupport(format!("point {p:?} is not in Z^{dim}")));
        }
        let distinct: BTreeSet<&Vec<i64>> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(PolytopeError::InvalidSupport("duplicate points".into()));
        }
        Ok(Support { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.points)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    /// Minkowski sum of the hull vertices.
    pub fn minkowski_sum(&self, other: &Support) -> Result<Support, PolytopeError> {
        if self.dim != other.dim {
            return Err(PolytopeError::InvalidSupport("Minkowski summands in different dimensions".into()));
        }
        let a = convex_hull(self)?;
        let b = convex_hull(other)?;
        let sums: BTreeSet<Vec<i64>> = a
            .vertices
            .iter()
            .cartesian_product(b.vertices.iter())
            .map(|(&i, &j)| add(&self.points[i], &other.points[j]))
            .collect();
        let s = Support::new(self.dim, sums.into_iter().collect())?;
        let h = convex_hull(&s)?;
        Support::new(self.dim, h.vertices.iter().map(|&i| s.points[i].clone()).collect())
    }
}

/// normal · x ≥ offset (or = offset for an equation).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn value(&self, x: &[i64]) -> i64 {
        dot(&self.normal, x)
    }

    pub fn is_tight(&self, x: &[i64]) -> bool {
        self.value(x) == self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    /// Indices into the support's points.
    pub vertices: Vec<usize>,
    /// Inequalities valid on the affine span, one per facet.
    pub facets: Vec<Facet>,
    /// Equations cutting out the affine span (empty when full-dimensional).
    pub equations: Vec<Facet>,
    pub affine_dim: usize,
}

impl Hull {
    pub fn is_full_dimensional(&self, dim: usize) -> bool {
        self.affine_dim == dim
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn rank_of(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[rank][c], m[i][c]);
            for j in 0..cols {
                m[i][j] = m[i][j] * a - m[rank][j] * b;
            }
            let g = m[i].iter().fold(0i128, |g, x| g.gcd(x));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the affine span.
pub fn affine_rank(points: &[Vec<i64>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let dirs: Vec<Vec<i64>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    rank_of(&dirs)
}

/// Generalized cross product of k−1 vectors in Z^k, reduced to a primitive vector.
fn normal_of(dirs: &[Vec<i64>], k: usize) -> Vec<i64> {
    let mut n: Vec<i64> = (0..k)
        .map(|i| {
            let minor: Vec<Vec<i128>> = dirs
                .iter()
                .map(|d| d.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x as i128).collect())
                .collect();
            let v = det_i128(minor);
            (if i % 2 == 0 { v } else { -v }) as i64
        })
        .collect();
    let g = n.iter().fold(0i64, |g, x| g.gcd(x));
    if g > 1 {
        n.iter_mut().for_each(|x| *x /= g);
    }
    n
}

/// Facets of a full-dimensional point set in Z^k by brute force over k-subsets.
fn facets_full(points: &[Vec<i64>], k: usize) -> Vec<Facet> {
    let mut found = BTreeSet::new();
    for combo in (0..points.len()).combinations(k) {
        let p0 = &points[combo[0]];
        let dirs: Vec<Vec<i64>> = combo[1..].iter().map(|&i| sub(&points[i], p0)).collect();
        let normal = normal_of(&dirs, k);
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let c = dot(&normal, p0);
        let vals: Vec<i64> = points.iter().map(|p| dot(&normal, p)).collect();
        if vals.iter().all(|&v| v >= c) {
            found.insert(Facet { normal, offset: c });
        } else if vals.iter().all(|&v| v <= c) {
            found.insert(Facet { normal: normal.iter().map(|x| -x).collect(), offset: -c });
        }
    }
    found.into_iter().collect()
}

/// Exact hull: vertex indices, facet inequalities and affine-span equations.
pub fn convex_hull(s: &Support) -> Result<Hull, PolytopeError> {
    if s.dim > MAX_HULL_DIM {
        return Err(PolytopeError::DimensionTooLarge { dim: s.dim, max: MAX_HULL_DIM });
    }
    if s.points.len() > MAX_POINTS {
        return Err(PolytopeError::TooManyPoints(s.points.len()));
    }
    Ok(hull_unchecked(s.dim, &s.points))
}

fn hull_unchecked(dim: usize, points: &[Vec<i64>]) -> Hull {
    let k = affine_rank(points);
    if k == 0 {
        let equations = (0..dim)
            .map(|i| {
                let mut normal = vec![0; dim];
                normal[i] = 1;
                Facet { normal, offset: points[0][i] }
            })
            .collect();
        return Hull { vertices: vec![0], facets: vec![], equations, affine_dim: 0 };
    }
    let p0 = &points[0];
    let dirs: Vec<Vec<i64>> = points[1..].iter().map(|p| sub(p, p0)).collect();
    // coordinates on which the span projects isomorphically
    let mut coords = Vec::new();
    for c in 0..dim {
        let mut trial = coords.clone();
        trial.push(c);
        let proj: Vec<Vec<i64>> = dirs.iter().map(|d| trial.iter().map(|&j| d[j]).collect()).collect();
        if rank_of(&proj) == trial.len() {
            coords = trial;
        }
        if coords.len() == k {
            break;
        }
    }
    let projected: Vec<Vec<i64>> = points.iter().map(|p| coords.iter().map(|&j| p[j]).collect()).collect();
    let facets: Vec<Facet> = facets_full(&projected, k)
        .into_iter()
        .map(|f| {
            let mut normal = vec![0; dim];
            for (c, &j) in coords.iter().enumerate() {
                normal[j] = f.normal[c];
            }
            Facet { normal, offset: f.offset }
        })
        .collect();
    let equations = if k < dim {
        let m = IntMatrix::from_i64(&dirs);
        let ker = kernel_basis(&m).expect("span is proper");
        ker.to_i64()
            .expect("small kernel entries")
            .into_iter()
            .map(|w| {
                let offset = dot(&w, p0);
                Facet { normal: w, offset }
            })
            .collect()
    } else {
        vec![]
    };
    let vertices = (0..points.len())
        .filter(|&i| {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|f| f.is_tight(&points[i]))
                .map(|f| coords.iter().map(|&j| f.normal[j]).collect())
                .collect();
            rank_of(&tight) == k
        })
        .collect();
    Hull { vertices, facets, equations, affine_dim: k }
}

/// Vertices plus facet inequalities. Built from a support, or from a trusted
/// H-description (any dimension) when the vertices are known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    equations: Vec<Facet>,
    affine_dim: usize,
}

type Memo = HashMap<Vec<usize>, Rc<Vec<Vec<usize>>>>;

impl Polytope {
    pub fn from_support(s: &Support) -> Result<Self, PolytopeError> {
        let h = convex_hull(s)?;
        Ok(Polytope {
            dim: s.dim,
            vertices: h.vertices.iter().map(|&i| s.points[i].clone()).collect(),
            facets: h.facets,
            equations: h.equations,
            affine_dim: h.affine_dim,
        })
    }

    /// Full-dimensional polytope from its vertices and facet inequalities.
    pub fn from_hrep(dim: usize, vertices: Vec<Vec<i64>>, facets: Vec<Facet>) -> Result<Self, PolytopeError> {
        let affine = affine_rank(&vertices);
        if affine != dim {
            return Err(PolytopeError::NotFullDimensional { dim, affine });
        }
        if let Some(f) = facets.iter().find(|f| vertices.iter().any(|v| f.value(v) < f.offset)) {
            return Err(PolytopeError::InvalidSupport(format!("vertex violates facet {f:?}")));
        }
        Ok(Polytope { dim, vertices, facets, equations: vec![], affine_dim: dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.value(x) >= f.offset) && self.equations.iter().all(|e| e.is_tight(x))
    }

    /// Pulling triangulation: cone from the first vertex over the triangulated facets
    /// that miss it. Simplices are vertex-index lists.
    pub fn pulling_triangulation(&self) -> Result<Vec<Vec<usize>>, PolytopeError> {
        if self.affine_dim != self.dim {
            return Err(PolytopeError::NotFullDimensional { dim: self.dim, affine: self.affine_dim });
        }
        let tights: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| (0..self.vertices.len()).filter(|&i| f.is_tight(&self.vertices[i])).collect())
            .collect();
        let mut memo = Memo::new();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        Ok(self.pull(&all, self.dim, &tights, &mut memo).as_ref().clone())
    }

    fn pull(&self, face: &[usize], d: usize, tights: &[Vec<usize>], memo: &mut Memo) -> Rc<Vec<Vec<usize>>> {
        if let Some(r) = memo.get(face) {
            return r.clone();
        }
        let out = if d == 0 {
            vec![vec![face[0]]]
        } else {
            let apex = face[0];
            let mut subfaces = BTreeSet::new();
            for t in tights {
                let g: Vec<usize> = face.iter().copied().filter(|i| t.binary_search(i).is_ok()).collect();
                if g.len() < d || g.len() == face.len() || g.contains(&apex) {
                    continue;
                }
                let pts: Vec<Vec<i64>> = g.iter().map(|&i| self.vertices[i].clone()).collect();
                if affine_rank(&pts) == d - 1 {
                    subfaces.insert(g);
                }
            }
            let mut out = Vec::new();
            for g in subfaces {
                for s in self.pull(&g, d - 1, tights, memo).iter() {
                    let mut s = s.clone();
                    s.push(apex);
                    out.push(s);
                }
            }
            out
        };
        let rc = Rc::new(out);
        memo.insert(face.to_vec(), rc.clone());
        rc
    }

    pub fn normalized_volume(&self) -> Result<u64, PolytopeError> {
        let simplices = self.pulling_triangulation()?;
        Ok(simplices.iter().map(|s| simplex_volume(&self.vertices, s)).sum())
    }

    /// |dP ∩ Z^n| by enumerating the bounding box of the dilate.
    pub fn lattice_point_count(&self, d: u32) -> u64 {
        let d = d as i64;
        let lo: Vec<i64> = (0..self.dim).map(|j| self.vertices.iter().map(|v| v[j]).min().unwrap() * d).collect();
        let hi: Vec<i64> = (0..self.dim).map(|j| self.vertices.iter().map(|v| v[j]).max().unwrap() * d).collect();
        let mut count = 0u64;
        let mut x = lo.clone();
        loop {
            let inside = self.facets.iter().all(|f| f.value(&x) >= d * f.offset)
                && self.equations.iter().all(|e| e.value(&x) == d * e.offset);
            if inside {
                count += 1;
            }
            let mut j = 0;
            loop {
                if j == self.dim {
                    return count;
                }
                if x[j] < hi[j] {
                    x[j] += 1;
                    break;
                }
                x[j] = lo[j];
                j += 1;
            }
        }
    }
}

/// |det| of the edge matrix of a simplex given by point indices.
pub fn simplex_volume(points: &[Vec<i64>], simplex: &[usize]) -> u64 {
    let p0 = &points[simplex[0]];
    let m: Vec<Vec<i128>> =
        simplex[1..].iter().map(|&i| sub(&points[i], p0).into_iter().map(|x| x as i128).collect()).collect();
    det_i128(m).unsigned_abs() as u64
}

pub fn normalized_volume(s: &Support) -> Result<u64, PolytopeError> {
    let p = Polytope::from_support(s)?;
    if p.affine_dim != s.dim {
        return Err(PolytopeError::NotFullDimensional { dim: s.dim, affine: p.affine_dim });
    }
    p.normalized_volume()
}

pub fn kushnirenko_bound(s: &Support) -> Result<u64, PolytopeError> {
    normalized_volume(s)
}

pub fn ehrhart_count(s: &Support, d: u32) -> Result<u64, PolytopeError> {
    Ok(Polytope::from_support(s)?.lattice_point_count(d))
}

/// A triangulation, or a coarser subdivision when `is_triangulation` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub support: Support,
    pub simplices: Vec<Vec<usize>>,
    pub lifting: Option<Vec<i64>>,
    pub is_triangulation: bool,
}

impl Triangulation {
    /// Explicit triangulation; cells must be affinely independent and, when the hull is
    /// computable, their volumes must add up to the hull volume.
    pub fn new(support: Support, simplices: Vec<Vec<usize>>) -> Result<Self, PolytopeError> {
        let n = support.dim;
        for s in &simplices {
            let distinct: BTreeSet<&usize> = s.iter().collect();
            if s.len() != n + 1 || distinct.len() != s.len() || s.iter().any(|&i| i >= support.len()) {
                return Err(PolytopeError::InvalidTriangulation(format!("bad simplex {s:?}")));
            }
            if simplex_volume(&support.points, s) == 0 {
                return Err(PolytopeError::InvalidTriangulation(format!("degenerate simplex {s:?}")));
            }
        }
        if n <= MAX_HULL_DIM {
            let total: u64 = simplices.iter().map(|s| simplex_volume(&support.points, s)).sum();
            if total != normalized_volume(&support)? {
                return Err(PolytopeError::InvalidTriangulation("volumes do not add up".into()));
            }
        }
        Ok(Triangulation { support, simplices, lifting: None, is_triangulation: true })
    }

    pub fn volumes(&self) -> Vec<u64> {
        self.simplices.iter().map(|s| simplex_volume(&self.support.points, s)).collect()
    }
}

/// Lower facets of the lifted configuration {(a, ω(a))}, projected back.
pub fn regular_subdivision(s: &Support, omega: &[i64]) -> Result<Triangulation, PolytopeError> {
    let n = s.dim;
    if n > MAX_SUBDIVISION_DIM {
        return Err(PolytopeError::DimensionTooLarge { dim: n, max: MAX_SUBDIVISION_DIM });
    }
    if omega.len() != s.len() {
        return Err(PolytopeError::InvalidSupport("lifting length differs from point count".into()));
    }
    let affine = s.affine_dim();
    if affine != n {
        return Err(PolytopeError::NotFullDimensional { dim: n, affine });
    }
    let lifted: Vec<Vec<i64>> = s
        .points
        .iter()
        .zip(omega)
        .map(|(p, &w)| {
            let mut q = p.clone();
            q.push(w);
            q
        })
        .collect();
    let mut cells = BTreeSet::new();
    for combo in (0..lifted.len()).combinations(n + 1) {
        let p0 = &lifted[combo[0]];
        let dirs: Vec<Vec<i64>> = combo[1..].iter().map(|&i| sub(&lifted[i], p0)).collect();
        let mut normal = normal_of(&dirs, n + 1);
        if normal[n] == 0 {
            continue;
        }
        if normal[n] < 0 {
            normal.iter_mut().for_each(|x| *x = -*x);
        }
        let c = dot(&normal, p0);
        if lifted.iter().all(|q| dot(&normal, q) >= c) {
            let cell: Vec<usize> = (0..lifted.len()).filter(|&i| dot(&normal, &lifted[i]) == c).collect();
            cells.insert(cell);
        }
    }
    let simplices: Vec<Vec<usize>> = cells.into_iter().collect();
    let is_triangulation = simplices.iter().all(|c| c.len() == n + 1);
    Ok(Triangulation { support: s.clone(), simplices, lifting: Some(omega.to_vec()), is_triangulation })
}

/// Normalized volume of a subdivision cell (its own hull).
pub fn cell_volume(t: &Triangulation, cell: &[usize]) -> Result<u64, PolytopeError> {
    let pts: Vec<Vec<i64>> = cell.iter().map(|&i| t.support.points[i].clone()).collect();
    normalized_volume(&Support::new(t.support.dim, pts)?)
}

pub fn is_unimodular(t: &Triangulation) -> Result<bool, PolytopeError> {
    if !t.is_triangulation {
        return Err(PolytopeError::NotATriangulation);
    }
    Ok(t.volumes().iter().all(|&v| v == 1))
}

/// Proper 2-coloring of the dual graph; returns the colors (true = black).
pub fn two_coloring(t: &Triangulation) -> Result<Vec<bool>, PolytopeError> {
    if !t.is_triangulation {
        return Err(PolytopeError::NotATriangulation);
    }
    let n = t.support.dim;
    let m = t.simplices.len();
    let sets: Vec<BTreeSet<usize>> = t.simplices.iter().map(|s| s.iter().copied().collect()).collect();
    let adj: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).filter(|&j| j != i && sets[i].intersection(&sets[j]).count() == n).collect())
        .collect();
    let mut color: Vec<Option<bool>> = vec![None; m];
    if m == 0 {
        return Ok(vec![]);
    }
    color[0] = Some(true);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let c = color[i].unwrap();
        for &j in &adj[i] {
            match color[j] {
                None => {
                    color[j] = Some(!c);
                    queue.push_back(j);
                }
                Some(cj) if cj == c => return Err(PolytopeError::NotFoldable),
                _ => {}
            }
        }
    }
    color.into_iter().map(|c| c.ok_or(PolytopeError::DisconnectedDualGraph)).collect()
}

/// |#black − #white|.
pub fn foldable_signature(t: &Triangulation) -> Result<u64, PolytopeError> {
    let colors = two_coloring(t)?;
    let black = colors.iter().filter(|&&c| c).count() as i64;
    Ok((2 * black - colors.len() as i64).unsigned_abs())
}

/// Normalized so that MV(P, …, P) = n!·vol(P).
pub fn mixed_volume(polys: &[Support]) -> Result<u64, PolytopeError> {
    let n = polys.len();
    if n == 0 {
        return Err(PolytopeError::InvalidSupport("no polytopes".into()));
    }
    if let Some(p) = polys.iter().find(|p| p.dim != n) {
        return Err(PolytopeError::InvalidSupport(format!("{n} polytopes but one lives in Z^{}", p.dim)));
    }
    if n > MAX_SUBDIVISION_DIM {
        return Err(PolytopeError::DimensionTooLarge { dim: n, max: MAX_SUBDIVISION_DIM });
    }
    let mut total: i128 = 0;
    for mask in 1u32..(1 << n) {
        let mut sum: Option<Support> = None;
        for (i, p) in polys.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum = Some(match sum {
                    None => p.clone(),
                    Some(s) => s.minkowski_sum(p)?,
                });
            }
        }
        let sum = sum.unwrap();
        let vol = if sum.is_full_dimensional() { normalized_volume(&sum)? as i128 } else { 0 };
        let sgn = if (n - mask.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        total += sgn * vol;
    }
    let fact: i128 = (1..=n as i128).product();
    debug_assert_eq!(total % fact, 0);
    Ok((total / fact) as u64)
}
