//! Finite simplicial complexes on an ordered vertex set, with ghost vertices,
//! and the monomial basis of their face rings.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::exactla::{cohomology_at, GradedPiece, Matrix};
use crate::ring::Ring;

/// Maximum number of vertices; faces are bitsets in a `u64`.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(i: usize) -> Self {
        VertexSet(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        VertexSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// `{0, .., n-1}`
    pub fn full(n: usize) -> Self {
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        VertexSet(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Self {
        VertexSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Number of elements strictly below `i`.
    pub fn rank_of(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self` with exactly `k` elements, in increasing order of
    /// their bit patterns.
    pub fn subsets_of_size(self, k: usize) -> Vec<VertexSet> {
        let elems: Vec<usize> = self.iter().collect();
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(k);
        fn rec(elems: &[usize], start: usize, k: usize, pick: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
            if pick.len() == k {
                out.push(VertexSet::from_indices(pick.iter().copied()));
                return;
            }
            for i in start..elems.len() {
                if elems.len() - i < k - pick.len() {
                    break;
                }
                pick.push(elems[i]);
                rec(elems, i + 1, k, pick, out);
                pick.pop();
            }
        }
        rec(&elems, 0, k, &mut pick, &mut out);
        out.sort();
        out
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A monomial `prod_v t_v^{e_v}` in the polynomial ring on the vertices.
/// Each variable has degree 2.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    /// Sum of exponents.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn internal_degree(&self) -> u32 {
        2 * self.degree()
    }

    pub fn support(&self) -> VertexSet {
        VertexSet::from_indices(self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Writes the monomial as `t_a^2*t_b` using the given variable names; the
    /// unit monomial is `1`.
    pub fn format(&self, prefix: &str, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("{prefix}{}", names[i]) } else { format!("{prefix}{}^{e}", names[i]) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A finite simplicial complex on an ordered vertex set. Vertices that lie in
/// no face are ghost vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// Maximal faces; `[EMPTY]` for the complex `{∅}`.
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Builds a complex from named facets. Redundant facets are dropped.
    pub fn from_facets<S: AsRef<str>>(vertices: &[S], facets: &[Vec<S>]) -> Result<Self, Error> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(vertices.len()));
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let index: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut sets = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut s = VertexSet::EMPTY;
            for v in facet {
                let i = *index.get(v.as_ref()).ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string()))?;
                s = s.insert(i);
            }
            sets.push(s);
        }
        Ok(Self::from_sets(vertices, sets))
    }

    /// Builds a complex from facet bitsets over `vertices`.
    pub fn from_sets(vertices: Vec<String>, facets: Vec<VertexSet>) -> Self {
        assert!(vertices.len() <= MAX_VERTICES, "too many vertices");
        let full = VertexSet::full(vertices.len());
        assert!(facets.iter().all(|f| f.is_subset(full)), "facet outside the vertex set");
        SimplicialComplex { vertices, facets: normalize(facets) }
    }

    /// The complex `{∅}` on the given (ghost) vertices.
    pub fn empty(vertices: Vec<String>) -> Self {
        Self::from_sets(vertices, Vec::new())
    }

    /// The full simplex on the given vertices.
    pub fn simplex(vertices: Vec<String>) -> Self {
        let n = vertices.len();
        Self::from_sets(vertices, vec![VertexSet::full(n)])
    }

    /// The boundary of the simplex on the given vertices.
    pub fn simplex_boundary(vertices: Vec<String>) -> Self {
        let n = vertices.len();
        let full = VertexSet::full(n);
        Self::from_sets(vertices, (0..n).map(|i| full.remove(i)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    pub fn dimension(&self) -> i32 {
        self.facets.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1)
    }

    pub fn ghosts(&self) -> VertexSet {
        let used = self.facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
        VertexSet::full(self.vertices.len()).difference(used)
    }

    /// All faces, including the empty face, sorted by size and then bitset.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut all = BTreeSet::new();
        for f in &self.facets {
            let mut sub = f.0;
            loop {
                all.insert(VertexSet(sub));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f.0;
            }
        }
        let mut v: Vec<VertexSet> = all.into_iter().collect();
        v.sort_by_key(|s| (s.len(), s.0));
        v
    }

    /// Faces with exactly `k` vertices.
    pub fn faces_of_size(&self, k: usize) -> Vec<VertexSet> {
        self.faces().into_iter().filter(|f| f.len() == k).collect()
    }

    /// Monomials of the given degree whose support is a face, in graded
    /// lexicographic order with respect to the vertex order (`t_1^2`,
    /// `t_1 t_2`, `t_2^2`, ...).
    pub fn face_ring_basis(&self, degree: u32) -> Vec<Monomial> {
        let m = self.vertices.len();
        let mut out = Vec::new();
        let mut exps = vec![0u32; m];
        self.basis_rec(0, degree, VertexSet::EMPTY, &mut exps, &mut out);
        out
    }

    fn basis_rec(&self, i: usize, remaining: u32, support: VertexSet, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial(exps.clone()));
            return;
        }
        if i == exps.len() {
            return;
        }
        let with = support.insert(i);
        if self.contains(with) {
            for e in (1..=remaining).rev() {
                exps[i] = e;
                self.basis_rec(i + 1, remaining - e, with, exps, out);
            }
            exps[i] = 0;
        }
        self.basis_rec(i + 1, remaining, support, exps, out);
    }

    /// The full subcomplex on `w`, with vertex set `w` in the original order.
    pub fn full_subcomplex(&self, w: VertexSet) -> SimplicialComplex {
        let keep: Vec<usize> = w.iter().collect();
        let names = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let reindex = |s: VertexSet| VertexSet::from_indices(keep.iter().enumerate().filter(|(_, &v)| s.contains(v)).map(|(k, _)| k));
        let facets = self.facets.iter().map(|f| reindex(f.intersection(w))).collect();
        SimplicialComplex::from_sets(names, facets)
    }

    pub fn full_subcomplex_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<SimplicialComplex, Error> {
        let mut w = VertexSet::EMPTY;
        for n in names {
            let i = self.vertex_index(n.as_ref()).ok_or_else(|| Error::UnknownVertex(n.as_ref().to_string()))?;
            w = w.insert(i);
        }
        Ok(self.full_subcomplex(w))
    }

    /// The join, on the disjoint union of the vertex sets. Names of the second
    /// complex that collide with the first get a `'` suffix.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let offset = self.vertices.len();
        let mut names = self.vertices.clone();
        for v in &other.vertices {
            let mut name = v.clone();
            while names.contains(&name) {
                name.push('\'');
            }
            names.push(name);
        }
        let mut facets = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.union(VertexSet(b.0 << offset)));
            }
        }
        SimplicialComplex::from_sets(names, facets)
    }

    /// Coboundary `C^j -> C^{j+1}` of the reduced cochain complex, where
    /// `C^j` has the faces with `j + 1` vertices as basis.
    fn coboundary<R: Ring>(&self, ring: &R, faces: &BTreeMap<usize, Vec<VertexSet>>, j: i32) -> Matrix<R::Elem> {
        let src_size = (j + 1) as usize;
        let empty = Vec::new();
        let src = faces.get(&src_size).unwrap_or(&empty);
        let dst = faces.get(&(src_size + 1)).unwrap_or(&empty);
        let dst_index: BTreeMap<VertexSet, usize> = dst.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let columns = src
            .iter()
            .map(|sigma| {
                (0..self.vertices.len())
                    .filter(|&v| !sigma.contains(v))
                    .filter_map(|v| {
                        let tau = sigma.insert(v);
                        dst_index.get(&tau).map(|&row| {
                            let sign = if sigma.rank_of(v) % 2 == 0 { 1 } else { -1 };
                            (row, ring.from_i64(sign))
                        })
                    })
                    .collect()
            })
            .collect();
        Matrix::from_columns(ring, dst.len(), columns)
    }

    /// Reduced cohomology `H̃^j(Σ; k)` for `-1 <= j <= max_degree`, with
    /// `H̃^{-1}({∅}) = k`.
    pub fn reduced_cohomology<R: Ring>(&self, ring: &R, max_degree: i32) -> BTreeMap<i32, GradedPiece> {
        let mut by_size: BTreeMap<usize, Vec<VertexSet>> = BTreeMap::new();
        for f in self.faces() {
            by_size.entry(f.len()).or_default().push(f);
        }
        let mut out = BTreeMap::new();
        for j in -1..=max_degree {
            let d_in = if j == -1 {
                Matrix::zero(ring, 1, 0)
            } else {
                self.coboundary(ring, &by_size, j - 1)
            };
            let d_out = self.coboundary(ring, &by_size, j);
            let piece = cohomology_at(ring, &d_in, &d_out).expect("coboundary squares to zero");
            out.insert(j, piece);
        }
        out
    }

    /// Reduced Euler characteristic `sum_faces (-1)^{dim}` (the empty face
    /// counts with dimension -1).
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces().iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum()
    }
}

fn normalize(facets: Vec<VertexSet>) -> Vec<VertexSet> {
    let mut sorted = facets;
    sorted.sort_by_key(|f| (core::cmp::Reverse(f.len()), f.0));
    sorted.dedup();
    let mut kept: Vec<VertexSet> = Vec::new();
    for f in sorted {
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    if kept.is_empty() {
        kept.push(VertexSet::EMPTY);
    }
    kept.sort_by_key(|f| f.0);
    kept
}
