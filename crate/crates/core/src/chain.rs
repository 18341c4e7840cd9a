//! Bigraded cochain complexes with a differential of bidegree `(+1, 0)`:
//! sparse elements, Tor tables computed bidegree by bidegree, and cohomology
//! bases with coordinate reduction.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::Error;
use crate::exactla::{decompose, invariant_factors, piece_from_factors, GradedPiece, HomologyDecomposition, Matrix};
use crate::ring::{Coefficients, Ring};

/// A finite linear combination of basis keys. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Combination<K: Ord, E> {
    terms: BTreeMap<K, E>,
}

impl<K: Ord, E> Default for Combination<K, E> {
    fn default() -> Self {
        Combination { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, E: Clone> Combination<K, E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term<R: Ring<Elem = E>>(ring: &R, key: K, coeff: E) -> Self {
        let mut c = Self::zero();
        c.add_term(ring, key, coeff);
        c
    }

    pub fn from_terms<R: Ring<Elem = E>>(ring: &R, terms: impl IntoIterator<Item = (K, E)>) -> Self {
        let mut c = Self::zero();
        for (k, e) in terms {
            c.add_term(ring, k, e);
        }
        c
    }

    pub fn add_term<R: Ring<Elem = E>>(&mut self, ring: &R, key: K, coeff: E) {
        if ring.is_zero(&coeff) {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                let s = ring.add(c, &coeff);
                if ring.is_zero(&s) {
                    self.terms.remove(&key);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    /// `self += f * other`
    pub fn add_scaled<R: Ring<Elem = E>>(&mut self, ring: &R, f: &E, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(ring, k.clone(), ring.mul(f, c));
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(ring, &ring.one(), other);
        out
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(ring, &ring.from_i64(-1), other);
        out
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.scale(ring, &ring.from_i64(-1))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, f: &E) -> Self {
        let mut out = Self::zero();
        out.add_scaled(ring, f, self);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &K) -> Option<&E> {
        self.terms.get(key)
    }

    pub fn terms(&self) -> &BTreeMap<K, E> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &E)> {
        self.terms.iter()
    }

    /// Terms whose key satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Combination { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, e)| (k.clone(), e.clone())).collect() }
    }
}

pub type Elem<C> = <<C as BigradedComplex>::R as Ring>::Elem;
pub type Element<C> = Combination<<C as BigradedComplex>::Key, Elem<C>>;

/// A cochain complex of free modules with a distinguished basis in each
/// bidegree `(p, q)`, `p <= 0`, `q >= 0` even, and total degree `p + q`.
pub trait BigradedComplex: Sync {
    type R: Ring;
    type Key: Ord + Clone + Debug + Send + Sync;

    fn ring(&self) -> &Self::R;

    /// Lower bound on `p` for nonzero chain modules, if any.
    fn homological_bound(&self) -> Option<usize>;

    fn bidegree(&self, key: &Self::Key) -> (i64, i64);

    /// The basis in bidegree `(p, q)`, in a fixed order.
    fn basis(&self, p: i64, q: i64) -> Vec<Self::Key>;

    /// The differential of a basis element, of bidegree `(+1, 0)`.
    fn differential_of(&self, key: &Self::Key) -> Element<Self>;

    fn differential(&self, x: &Element<Self>) -> Element<Self> {
        let ring = self.ring();
        let mut out = Combination::zero();
        for (k, c) in x.iter() {
            out.add_scaled(ring, c, &self.differential_of(k));
        }
        out
    }
}

/// The matrix of the differential from `src` (columns) to `dst` (rows).
pub fn differential_matrix<C: BigradedComplex + ?Sized>(c: &C, src: &[C::Key], dst: &[C::Key]) -> Matrix<Elem<C>> {
    let index: BTreeMap<&C::Key, usize> = dst.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let columns = src
        .iter()
        .map(|k| {
            c.differential_of(k)
                .iter()
                .map(|(t, e)| (*index.get(t).expect("differential lands in the target basis"), e.clone()))
                .collect()
        })
        .collect();
    Matrix::from_columns(c.ring(), dst.len(), columns)
}

/// Bigraded free ranks and torsion. Only nonzero entries are stored; every
/// bidegree of total degree at most `max_total_degree` was computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    pub coefficients: Coefficients,
    pub max_total_degree: usize,
    /// Lattice rank `n`; homological degrees satisfy `-n <= p <= 0`.
    pub rank: usize,
    pub entries: BTreeMap<(i64, i64), GradedPiece>,
}

impl TorTable {
    pub fn get(&self, p: i64, q: i64) -> GradedPiece {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Direct sum over all bidegrees of total degree `t`.
    pub fn total_degree(&self, t: i64) -> GradedPiece {
        self.entries
            .iter()
            .filter(|((p, q), _)| p + q == t)
            .fold(GradedPiece::zero(), |acc, (_, g)| acc.direct_sum(g))
    }

    /// Same coefficients, degree bound and entries; the rendering width is
    /// ignored.
    pub fn same_entries(&self, other: &TorTable) -> bool {
        self.coefficients == other.coefficients
            && self.max_total_degree == other.max_total_degree
            && self.entries == other.entries
    }
}

/// Homological degrees `p` occurring in total degree `t`.
fn p_range_for_total<C: BigradedComplex + ?Sized>(c: &C, t: i64) -> impl Iterator<Item = i64> {
    let lo = match c.homological_bound() {
        Some(n) => (-t).max(-(n as i64)),
        None => -t,
    };
    (lo..=0).rev().filter(move |p| (t - p) % 2 == 0)
}

fn row_entries<C: BigradedComplex + ?Sized>(c: &C, q: i64, d: i64) -> Result<Vec<((i64, i64), GradedPiece)>, Error> {
    let ring = c.ring();
    let mut lo = -(q / 2);
    if let Some(n) = c.homological_bound() {
        lo = lo.max(-(n as i64));
    }
    let hi = 0.min(d - q);
    if lo > hi {
        return Ok(Vec::new());
    }
    // bases for p in lo-1 ..= hi+1
    let bases: Vec<Vec<C::Key>> = (lo - 1..=hi + 1).map(|p| if p > 0 { Vec::new() } else { c.basis(p, q) }).collect();
    let maps: Vec<Matrix<Elem<C>>> = (0..bases.len() - 1).map(|i| differential_matrix(c, &bases[i], &bases[i + 1])).collect();
    for w in maps.windows(2) {
        if !w[1].product_is_zero(ring, &w[0]) {
            return Err(Error::CompositionNotZero);
        }
    }
    let factors: Vec<Vec<Elem<C>>> = maps.iter().map(|m| invariant_factors(ring, m)).collect();
    let mut out = Vec::new();
    for (offset, p) in (lo..=hi).enumerate() {
        let i = offset + 1;
        let piece = piece_from_factors(ring, bases[i].len(), &factors[i - 1], factors[i].len());
        if !piece.is_zero() {
            out.push(((p, q), piece));
        }
    }
    Ok(out)
}

/// The cohomology of `c` in every bidegree of total degree at most `d`.
pub fn tor_table<C: BigradedComplex + ?Sized>(c: &C, max_total_degree: usize) -> Result<TorTable, Error> {
    let d = max_total_degree as i64;
    let qs: Vec<i64> = (0..=2 * d).step_by(2).collect();
    #[cfg(feature = "parallel")]
    let rows: Vec<_> = {
        use rayon::prelude::*;
        qs.par_iter().map(|&q| row_entries(c, q, d)).collect::<Result<Vec<_>, Error>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<_> = qs.iter().map(|&q| row_entries(c, q, d)).collect::<Result<Vec<_>, Error>>()?;
    let entries = rows.into_iter().flatten().collect();
    Ok(TorTable {
        coefficients: c.ring().coefficients(),
        max_total_degree,
        rank: c.homological_bound().unwrap_or(0),
        entries,
    })
}

/// One basis class of the cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass<K: Ord, E> {
    pub bidegree: (i64, i64),
    pub representative: Combination<K, E>,
    /// `None` for a free class, otherwise its (non-unit) annihilator.
    pub annihilator: Option<E>,
}

struct BidegreeData<K, E> {
    bidegree: (i64, i64),
    index: BTreeMap<K, usize>,
    decomposition: HomologyDecomposition<E>,
}

struct DegreeData<K: Ord, E> {
    pieces: Vec<BidegreeData<K, E>>,
    classes: Vec<CohomologyClass<K, E>>,
}

/// Cohomology bases for a chosen set of total degrees.
pub struct CohomologyBasis<'c, C: BigradedComplex + ?Sized> {
    complex: &'c C,
    max_total_degree: usize,
    degrees: BTreeMap<i64, DegreeData<C::Key, Elem<C>>>,
}

fn degree_data<C: BigradedComplex + ?Sized>(c: &C, t: i64) -> Result<DegreeData<C::Key, Elem<C>>, Error> {
    let ring = c.ring();
    let mut pieces = Vec::new();
    let mut classes = Vec::new();
    // p from 0 downwards, i.e. q ascending
    for p in p_range_for_total(c, t) {
        let q = t - p;
        let prev = c.basis(p - 1, q);
        let here = c.basis(p, q);
        if here.is_empty() {
            continue;
        }
        let next = if p >= 0 { Vec::new() } else { c.basis(p + 1, q) };
        let d_in = differential_matrix(c, &prev, &here);
        let d_out = differential_matrix(c, &here, &next);
        let decomposition = decompose(ring, &d_in, &d_out)?;
        for class in &decomposition.classes {
            let representative =
                Combination::from_terms(ring, here.iter().cloned().zip(class.representative.iter().cloned()));
            classes.push(CohomologyClass { bidegree: (p, q), representative, annihilator: class.annihilator.clone() });
        }
        let index = here.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        pieces.push(BidegreeData { bidegree: (p, q), index, decomposition });
    }
    Ok(DegreeData { pieces, classes })
}

impl<'c, C: BigradedComplex + ?Sized> CohomologyBasis<'c, C> {
    /// Computes bases in the given total degrees, each at most
    /// `max_total_degree`.
    pub fn new(complex: &'c C, max_total_degree: usize, degrees: impl IntoIterator<Item = i64>) -> Result<Self, Error> {
        let mut out = CohomologyBasis { complex, max_total_degree, degrees: BTreeMap::new() };
        for t in degrees {
            out.ensure(t)?;
        }
        Ok(out)
    }

    /// Bases in every total degree `0..=max_total_degree`.
    pub fn all(complex: &'c C, max_total_degree: usize) -> Result<Self, Error> {
        Self::new(complex, max_total_degree, 0..=max_total_degree as i64)
    }

    pub fn complex(&self) -> &'c C {
        self.complex
    }

    pub fn max_total_degree(&self) -> usize {
        self.max_total_degree
    }

    fn check_degree(&self, t: i64) -> Result<(), Error> {
        if t < 0 || t > self.max_total_degree as i64 {
            return Err(Error::DegreeOutOfRange { degree: t, bound: self.max_total_degree });
        }
        Ok(())
    }

    /// Makes sure the basis in total degree `t` is available.
    pub fn ensure(&mut self, t: i64) -> Result<(), Error> {
        self.check_degree(t)?;
        if !self.degrees.contains_key(&t) {
            let data = degree_data(self.complex, t)?;
            self.degrees.insert(t, data);
        }
        Ok(())
    }

    pub fn computed_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.degrees.keys().copied()
    }

    /// Basis classes in total degree `t`, ordered by increasing `q`.
    pub fn classes(&self, t: i64) -> Result<&[CohomologyClass<C::Key, Elem<C>>], Error> {
        self.check_degree(t)?;
        self.degrees
            .get(&t)
            .map(|d| d.classes.as_slice())
            .ok_or(Error::DegreeOutOfRange { degree: t, bound: self.max_total_degree })
    }

    /// Coordinates of the class of the cocycle `z` of total degree `t` in the
    /// basis [`classes`](Self::classes)`(t)`.
    pub fn reduce(&self, z: &Element<C>, t: i64) -> Result<Vec<Elem<C>>, Error> {
        let c = self.complex;
        let ring = c.ring();
        self.check_degree(t)?;
        let data = self.degrees.get(&t).ok_or(Error::DegreeOutOfRange { degree: t, bound: self.max_total_degree })?;
        if z.iter().any(|(k, _)| {
            let (p, q) = c.bidegree(k);
            p + q != t
        }) {
            return Err(Error::NotHomogeneous);
        }
        if !c.differential(z).is_zero() {
            return Err(Error::NotACocycle);
        }
        let mut coords = Vec::with_capacity(data.classes.len());
        let mut used = 0usize;
        for piece in &data.pieces {
            let mut v = alloc::vec![ring.zero(); piece.decomposition.dim()];
            for (k, e) in z.iter() {
                if c.bidegree(k) == piece.bidegree {
                    let i = *piece.index.get(k).ok_or(Error::NotHomogeneous)?;
                    v[i] = e.clone();
                    used += 1;
                }
            }
            coords.extend(piece.decomposition.coordinates(ring, &v));
        }
        if used != z.len() {
            return Err(Error::NotHomogeneous);
        }
        Ok(coords)
    }

    /// True iff `z` is a coboundary, i.e. all its coordinates vanish.
    pub fn is_coboundary(&self, z: &Element<C>, t: i64) -> Result<bool, Error> {
        let ring = self.complex.ring();
        Ok(self.reduce(z, t)?.iter().all(|e| ring.is_zero(e)))
    }
}
