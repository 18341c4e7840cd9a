use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::elimination::{invariant_factors, rank};
use super::matrix::{DenseMatrix, Matrix};
use super::snf::{reduce, smith_normal_form, Track};
use crate::error::Error;
use crate::integer::Integer;
use crate::ring::{IntegerRing, Ring};

/// A finitely generated module over `k`: free rank plus torsion invariant
/// factors `> 1`, each dividing the next. Over a field the torsion is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedPiece {
    pub free_rank: usize,
    pub torsion: Vec<Integer>,
}

impl GradedPiece {
    pub fn zero() -> Self {
        GradedPiece::default()
    }

    pub fn free(rank: usize) -> Self {
        GradedPiece { free_rank: rank, torsion: Vec::new() }
    }

    /// Builds a piece from arbitrary cyclic torsion orders, putting them into
    /// invariant-factor form (`[2, 3]` becomes `[6]`).
    pub fn new(free_rank: usize, torsion: Vec<Integer>) -> Self {
        GradedPiece { free_rank, torsion: canonical_torsion(torsion) }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &GradedPiece) -> GradedPiece {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        GradedPiece::new(self.free_rank + other.free_rank, torsion)
    }

    /// Number of generators in a minimal presentation.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

impl fmt::Display for GradedPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "free {}", self.free_rank)?;
        for d in &self.torsion {
            write!(f, " + Z_{d}")?;
        }
        Ok(())
    }
}

fn canonical_torsion(orders: Vec<Integer>) -> Vec<Integer> {
    let orders: Vec<Integer> = orders.into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
    if orders.len() <= 1 || orders.windows(2).all(|w| w[0].divides(&w[1])) {
        return orders;
    }
    let n = orders.len();
    let ring = IntegerRing;
    let diag = DenseMatrix::from_fn(n, n, |i, j| if i == j { orders[i].clone() } else { Integer::ZERO });
    smith_normal_form(&ring, &diag)
        .invariant_factors
        .into_iter()
        .filter(|d| !d.is_one())
        .collect()
}

/// Assembles `ker(d_out) / im(d_in)` from the invariant factors of `d_in` and
/// the rank of `d_out`.
pub fn piece_from_factors<R: Ring>(ring: &R, dim: usize, in_factors: &[R::Elem], out_rank: usize) -> GradedPiece {
    let free_rank = dim - in_factors.len() - out_rank;
    let torsion = in_factors.iter().filter_map(|d| ring.torsion_order(d)).collect();
    GradedPiece { free_rank, torsion }
}

/// Homology `ker(d_out) / im(d_in)` of `. --d_in--> C --d_out--> .`.
///
/// The torsion of the quotient is the torsion of `coker(d_in)`, since the
/// kernel of `d_out` is saturated; so only invariant factors are needed.
pub fn cohomology_at<R: Ring>(ring: &R, d_in: &Matrix<R::Elem>, d_out: &Matrix<R::Elem>) -> Result<GradedPiece, Error> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "incoming map has {} rows but outgoing map has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.product_is_zero(ring, d_in) {
        return Err(Error::CompositionNotZero);
    }
    let factors = invariant_factors(ring, d_in);
    let out_rank = rank(ring, d_out);
    Ok(piece_from_factors(ring, d_in.rows(), &factors, out_rank))
}

/// Some `x` with `m * x = v`, if one exists over the ring.
pub fn solve_in_image<R: Ring>(ring: &R, m: &DenseMatrix<R::Elem>, v: &[R::Elem]) -> Result<Option<Vec<R::Elem>>, Error> {
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but the vector has length {}",
            m.rows(),
            v.len()
        )));
    }
    let snf = smith_normal_form(ring, m);
    let y = snf.left.mul_vec(ring, v);
    let r = snf.rank();
    let mut z = Vec::with_capacity(m.cols());
    for (i, yi) in y.iter().enumerate() {
        if i < r {
            match ring.divide(yi, &snf.invariant_factors[i]) {
                Some(q) => z.push(q),
                None => return Ok(None),
            }
        } else if !ring.is_zero(yi) {
            return Ok(None);
        }
    }
    z.resize(m.cols(), ring.zero());
    Ok(Some(snf.right.mul_vec(ring, &z)))
}

/// One basis class of a homology module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass<E> {
    /// Cocycle representative, in chain-basis coordinates.
    pub representative: Vec<E>,
    /// `None` for a free generator, otherwise the annihilator `d` (a non-unit).
    pub annihilator: Option<E>,
}

/// A basis of `ker(d_out) / im(d_in)` adapted to its cyclic decomposition,
/// together with the data to read off coordinates of arbitrary cocycles.
#[derive(Clone, Debug)]
pub struct HomologyDecomposition<E> {
    dim: usize,
    kernel_coords: DenseMatrix<E>,
    class_transform: DenseMatrix<E>,
    class_slots: Vec<usize>,
    pub classes: Vec<HomologyClass<E>>,
}

impl<E: Clone> HomologyDecomposition<E> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of the class of the cocycle `z`; torsion coordinates are
    /// reduced modulo their annihilator. Coboundaries map to zero.
    pub fn coordinates<R: Ring<Elem = E>>(&self, ring: &R, z: &[E]) -> Vec<E> {
        let y = self.kernel_coords.mul_vec(ring, z);
        let x = self.class_transform.mul_vec(ring, &y);
        self.class_slots
            .iter()
            .zip(&self.classes)
            .map(|(&slot, class)| match &class.annihilator {
                Some(d) => ring.reduce_mod(&x[slot], d),
                None => x[slot].clone(),
            })
            .collect()
    }
}

/// Cyclic decomposition of `ker(d_out) / im(d_in)` with representatives.
pub fn decompose<R: Ring>(
    ring: &R,
    d_in: &Matrix<R::Elem>,
    d_out: &Matrix<R::Elem>,
) -> Result<HomologyDecomposition<R::Elem>, Error> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "incoming map has {} rows but outgoing map has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.product_is_zero(ring, d_in) {
        return Err(Error::CompositionNotZero);
    }
    let dim = d_in.rows();
    let out = reduce(ring, d_out.to_dense(ring), Track { left: false, right: true });
    let (t, t_inv) = out.right.expect("tracked");
    let out_rank = out.rank;
    let kernel: Vec<usize> = (out_rank..dim).collect();
    let all: Vec<usize> = (0..dim).collect();
    let kernel_basis = t.select(&all, &kernel);
    let kernel_coords = t_inv.select(&kernel, &all);

    let restricted = kernel_coords.mul(ring, &d_in.to_dense(ring));
    let inner = reduce(ring, restricted, Track { left: true, right: false });
    let (s, s_inv) = inner.left.expect("tracked");

    let mut classes = Vec::new();
    let mut class_slots = Vec::new();
    for j in 0..kernel.len() {
        let annihilator = if j < inner.rank {
            let d = inner.m.get(j, j);
            if ring.is_unit(d) {
                continue;
            }
            Some(d.clone())
        } else {
            None
        };
        let y = s_inv.column(j);
        classes.push(HomologyClass { representative: kernel_basis.mul_vec(ring, &y), annihilator });
        class_slots.push(j);
    }
    Ok(HomologyDecomposition { dim, kernel_coords, class_transform: s, class_slots, classes })
}
