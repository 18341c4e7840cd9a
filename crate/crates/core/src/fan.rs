//! Characteristic matrices, simplicial fans, regularity over a coefficient
//! ring, ghost completion and products of fans.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactla::{smith_normal_form, DenseMatrix};
use crate::integer::Integer;
use crate::ring::{Coefficients, IntegerRing};
use crate::simplicial::{SimplicialComplex, VertexSet, MAX_VERTICES};

/// The integer matrix `Λ` with one column `x_v ∈ Z^n` per vertex. Row `i`
/// holds the coordinates `x_v^i` with respect to the chosen lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicMatrix {
    rank: usize,
    columns: Vec<Vec<Integer>>,
}

impl CharacteristicMatrix {
    pub fn from_columns(rank: usize, columns: Vec<Vec<Integer>>) -> Result<Self, Error> {
        if let Some(c) = columns.iter().find(|c| c.len() != rank) {
            return Err(Error::DimensionMismatch(format!("column of length {} in a rank {rank} matrix", c.len())));
        }
        Ok(CharacteristicMatrix { rank, columns })
    }

    /// Builds `Λ` from its rows; `vertices` fixes the column count (needed
    /// when there are no rows).
    pub fn from_rows(vertices: usize, rows: &[Vec<Integer>]) -> Result<Self, Error> {
        if let Some(r) = rows.iter().find(|r| r.len() != vertices) {
            return Err(Error::DimensionMismatch(format!("row of length {} for {vertices} vertices", r.len())));
        }
        let columns = (0..vertices).map(|v| rows.iter().map(|r| r[v].clone()).collect()).collect();
        Ok(CharacteristicMatrix { rank: rows.len(), columns })
    }

    pub fn from_i64_rows(vertices: usize, rows: &[Vec<i64>]) -> Result<Self, Error> {
        let rows: Vec<Vec<Integer>> = rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect();
        Self::from_rows(vertices, &rows)
    }

    pub fn identity(m: usize) -> Self {
        let columns = (0..m)
            .map(|v| (0..m).map(|i| if i == v { Integer::ONE } else { Integer::ZERO }).collect())
            .collect();
        CharacteristicMatrix { rank: m, columns }
    }

    /// The `n × n` matrix with first column `(b, -1, .., -1)` and `e_k` as
    /// column `k` for `k > 1`.
    pub fn lens(b: i64, n: usize) -> Self {
        let columns = (0..n)
            .map(|v| {
                (0..n)
                    .map(|i| match (v, i) {
                        (0, 0) => Integer::from(b),
                        (0, _) => Integer::from(-1),
                        _ if i == v => Integer::ONE,
                        _ => Integer::ZERO,
                    })
                    .collect()
            })
            .collect();
        CharacteristicMatrix { rank: n, columns }
    }

    /// `n`, the number of rows.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `m`, the number of columns.
    pub fn vertex_count(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, v: usize) -> &[Integer] {
        &self.columns[v]
    }

    pub fn columns(&self) -> &[Vec<Integer>] {
        &self.columns
    }

    /// `x_v^i` with 0-based `i` and `v`.
    pub fn entry(&self, i: usize, v: usize) -> &Integer {
        &self.columns[v][i]
    }

    pub fn rows(&self) -> Vec<Vec<Integer>> {
        (0..self.rank).map(|i| self.columns.iter().map(|c| c[i].clone()).collect()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.columns.len())
    }

    /// The `n × |cone|` submatrix on the given columns.
    pub fn submatrix(&self, cone: VertexSet) -> DenseMatrix<Integer> {
        let cols: Vec<usize> = cone.iter().collect();
        DenseMatrix::from_fn(self.rank, cols.len(), |i, j| self.columns[cols[j]][i].clone())
    }

    /// The matrix with columns permuted: column `v` of the result is column
    /// `perm[v]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        CharacteristicMatrix { rank: self.rank, columns: perm.iter().map(|&v| self.columns[v].clone()).collect() }
    }

    /// Block diagonal matrix `diag(self, other)`.
    pub fn block_diagonal(&self, other: &CharacteristicMatrix) -> Self {
        let n = self.rank + other.rank;
        let mut columns = Vec::with_capacity(self.vertex_count() + other.vertex_count());
        for c in &self.columns {
            let mut col = c.clone();
            col.resize(n, Integer::ZERO);
            columns.push(col);
        }
        for c in &other.columns {
            let mut col = vec![Integer::ZERO; self.rank];
            col.extend(c.iter().cloned());
            columns.push(col);
        }
        CharacteristicMatrix { rank: n, columns }
    }
}

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitivize(v: &[Integer]) -> Result<Vec<Integer>, Error> {
    let g = v.iter().fold(Integer::ZERO, |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x.div_rem(&g).0).collect())
}

fn is_primitive(v: &[Integer]) -> bool {
    v.iter().fold(Integer::ZERO, |g, x| g.gcd(x)).is_one()
}

/// True iff the columns of `λ` on `cone` are independent and every invariant
/// factor of that submatrix is a unit in `k`.
pub fn submatrix_is_regular(lambda: &CharacteristicMatrix, cone: VertexSet, k: Coefficients) -> bool {
    let snf = smith_normal_form(&IntegerRing, &lambda.submatrix(cone));
    snf.rank() == cone.len() && snf.invariant_factors.iter().all(|d| k.is_unit_image(d))
}

/// Regularity of a single cone of `complex` with respect to `λ`.
pub fn k_regularity(
    lambda: &CharacteristicMatrix,
    complex: &SimplicialComplex,
    cone: VertexSet,
    k: Coefficients,
) -> Result<bool, Error> {
    if !complex.contains(cone) {
        return Err(Error::ConeNotInFan);
    }
    Ok(submatrix_is_regular(lambda, cone, k))
}

/// A simplicial fan given by primitive rays and cones, possibly with ghost
/// columns completing the ray lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    rays: Vec<Vec<Integer>>,
    ghosts: Vec<Vec<Integer>>,
    complex: SimplicialComplex,
}

impl Fan {
    /// Validates rays (primitive, of length `ambient_dim`) and cones (0-based
    /// ray indices, independent over Q). Cones are closed under faces
    /// automatically.
    pub fn new(ambient_dim: usize, rays: Vec<Vec<Integer>>, cones: &[Vec<usize>]) -> Result<Self, Error> {
        if rays.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(rays.len()));
        }
        for (index, r) in rays.iter().enumerate() {
            if r.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!("ray {index} has {} coordinates, expected {ambient_dim}", r.len())));
            }
            if r.iter().all(Integer::is_zero) {
                return Err(Error::ZeroVector);
            }
            if !is_primitive(r) {
                return Err(Error::NonPrimitiveRay { index });
            }
        }
        let mut sets: Vec<VertexSet> = Vec::with_capacity(cones.len());
        for cone in cones {
            let mut s = VertexSet::EMPTY;
            for &i in cone {
                if i >= rays.len() {
                    return Err(Error::UnknownVertex(format!("{i}")));
                }
                s = s.insert(i);
            }
            sets.push(s);
        }
        let names = ray_names(rays.len(), 0);
        let complex = SimplicialComplex::from_sets(names, sets.clone());
        let fan = Fan { ambient_dim, rays, ghosts: Vec::new(), complex };
        let lambda = fan.characteristic_matrix();
        for (index, s) in sets.iter().enumerate() {
            if smith_normal_form(&IntegerRing, &lambda.submatrix(*s)).rank() != s.len() {
                return Err(Error::DependentCone { cone: index });
            }
        }
        Ok(fan)
    }

    pub fn from_i64(ambient_dim: usize, rays: &[Vec<i64>], cones: &[Vec<usize>]) -> Result<Self, Error> {
        let rays = rays.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect();
        Self::new(ambient_dim, rays, cones)
    }

    /// The fan whose maximal cones are all `(n-1)`-subsets of the columns of
    /// [`CharacteristicMatrix::lens`].
    pub fn lens_boundary(b: i64, n: usize) -> Result<Self, Error> {
        let lambda = CharacteristicMatrix::lens(b, n);
        let cones: Vec<Vec<usize>> = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
        Self::new(n, lambda.columns().to_vec(), &cones)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Vec<Integer>] {
        &self.rays
    }

    pub fn ghosts(&self) -> &[Vec<Integer>] {
        &self.ghosts
    }

    /// The complex on rays followed by ghost vertices.
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Columns are the rays followed by the ghost columns.
    pub fn characteristic_matrix(&self) -> CharacteristicMatrix {
        let columns = self.rays.iter().chain(&self.ghosts).cloned().collect();
        CharacteristicMatrix { rank: self.ambient_dim, columns }
    }

    /// Maximal cones as ray index sets.
    pub fn maximal_cones(&self) -> Vec<VertexSet> {
        self.complex.facets().iter().copied().filter(|f| !f.is_empty()).collect()
    }

    /// Adds ghost columns spanning a lattice complement of the saturation of
    /// the ray span, so that the rays and ghosts together generate `Z^n` up
    /// to finite index. The complement is read off the inverse left transform
    /// of the Smith form of the ray matrix, in column order.
    pub fn complete_ghosts(&self) -> Fan {
        let all = self.characteristic_matrix();
        let m = DenseMatrix::from_fn(self.ambient_dim, all.vertex_count(), |i, j| all.columns[j][i].clone());
        let snf = smith_normal_form(&IntegerRing, &m);
        let mut fan = self.clone();
        for j in snf.rank()..self.ambient_dim {
            fan.ghosts.push(snf.left_inverse.column(j));
        }
        fan.rebuild_complex();
        fan
    }

    fn rebuild_complex(&mut self) {
        let mut names = ray_names(self.rays.len(), 0);
        names.extend((1..=self.ghosts.len()).map(|i| format!("g{i}")));
        let facets = self.complex.facets().to_vec();
        self.complex = SimplicialComplex::from_sets(names, facets);
    }

    /// True iff every maximal cone is regular over `k`.
    pub fn is_k_smooth(&self, k: Coefficients) -> bool {
        let lambda = self.characteristic_matrix();
        self.maximal_cones().into_iter().all(|c| submatrix_is_regular(&lambda, c, k))
    }

    /// The product fan in `Z^{n1 + n2}`: rays of both factors embedded
    /// block-wise, cones all unions, ghosts of both factors kept.
    pub fn product(&self, other: &Fan) -> Fan {
        let (n1, n2) = (self.ambient_dim, other.ambient_dim);
        let left = |v: &Vec<Integer>| {
            let mut w = v.clone();
            w.resize(n1 + n2, Integer::ZERO);
            w
        };
        let right = |v: &Vec<Integer>| {
            let mut w = vec![Integer::ZERO; n1];
            w.extend(v.iter().cloned());
            w
        };
        let rays: Vec<Vec<Integer>> = self.rays.iter().map(left).chain(other.rays.iter().map(right)).collect();
        let ghosts = self.ghosts.iter().map(left).chain(other.ghosts.iter().map(right)).collect();
        let r1 = self.rays.len();
        let mut sets = Vec::new();
        for a in self.complex.facets() {
            for b in other.complex.facets() {
                sets.push(a.union(VertexSet(b.0 << r1)));
            }
        }
        let mut fan = Fan {
            ambient_dim: n1 + n2,
            complex: SimplicialComplex::from_sets(ray_names(rays.len(), 0), sets),
            rays,
            ghosts,
        };
        fan.rebuild_complex();
        fan
    }
}

fn ray_names(count: usize, offset: usize) -> Vec<String> {
    (1..=count).map(|i| format!("v{}", i + offset)).collect()
}
