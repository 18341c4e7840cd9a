//! The Koszul complex `Λ(α_1, .., α_n) ⊗ k[Σ]` with `dα_i = -Σ_v x_v^i t_v`.
//!
//! Exterior generators are 0-based in this API: `α_1` is index `0`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::chain::{tor_table, BigradedComplex, CohomologyBasis, Combination, TorTable};
use crate::error::Error;
use crate::fan::CharacteristicMatrix;
use crate::ring::Ring;
use crate::simplicial::{Monomial, SimplicialComplex, VertexSet};

/// A basis element `α_S · m` of the Koszul complex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct KoszulKey {
    pub exterior: VertexSet,
    pub monomial: Monomial,
}

impl KoszulKey {
    /// `(-|S|, 2 deg m + 2|S|)`
    pub fn bidegree(&self) -> (i64, i64) {
        let s = self.exterior.len() as i64;
        (-s, self.monomial.internal_degree() as i64 + 2 * s)
    }

    pub fn total_degree(&self) -> i64 {
        let (p, q) = self.bidegree();
        p + q
    }
}

pub type KoszulElement<E> = Combination<KoszulKey, E>;

/// The Koszul complex of `(Σ, Λ)` over a coefficient ring.
#[derive(Clone, Debug)]
pub struct KoszulComplex<R: Ring> {
    ring: R,
    complex: SimplicialComplex,
    lambda: CharacteristicMatrix,
    /// `dα_i` as a list of `(v, -x_v^i)` with nonzero coefficients.
    d_alpha: Vec<Vec<(usize, R::Elem)>>,
}

impl<R: Ring> KoszulComplex<R> {
    pub fn new(ring: R, complex: SimplicialComplex, lambda: CharacteristicMatrix) -> Result<Self, Error> {
        if lambda.vertex_count() != complex.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns but the complex has {} vertices",
                lambda.vertex_count(),
                complex.vertex_count()
            )));
        }
        if lambda.rank() > 64 {
            return Err(Error::TooManyVertices(lambda.rank()));
        }
        let d_alpha = (0..lambda.rank())
            .map(|i| {
                (0..lambda.vertex_count())
                    .filter_map(|v| {
                        let c = ring.neg(&ring.from_integer(lambda.entry(i, v)));
                        (!ring.is_zero(&c)).then_some((v, c))
                    })
                    .collect()
            })
            .collect();
        Ok(KoszulComplex { ring, complex, lambda, d_alpha })
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn matrix(&self) -> &CharacteristicMatrix {
        &self.lambda
    }

    pub fn vertex_count(&self) -> usize {
        self.complex.vertex_count()
    }

    fn key(&self, exterior: VertexSet, monomial: Monomial) -> KoszulKey {
        KoszulKey { exterior, monomial }
    }

    /// The unit `1`.
    pub fn one(&self) -> KoszulElement<R::Elem> {
        Combination::term(&self.ring, self.key(VertexSet::EMPTY, Monomial::one(self.vertex_count())), self.ring.one())
    }

    pub fn scalar(&self, c: R::Elem) -> KoszulElement<R::Elem> {
        Combination::term(&self.ring, self.key(VertexSet::EMPTY, Monomial::one(self.vertex_count())), c)
    }

    /// `α_{i+1}`
    pub fn alpha(&self, i: usize) -> Result<KoszulElement<R::Elem>, Error> {
        if i >= self.rank() {
            return Err(Error::RankMismatch { index: i + 1, rank: self.rank() });
        }
        Ok(Combination::term(&self.ring, self.key(VertexSet::singleton(i), Monomial::one(self.vertex_count())), self.ring.one()))
    }

    /// `t_v`, zero for a ghost vertex.
    pub fn t(&self, v: usize) -> KoszulElement<R::Elem> {
        self.monomial_element(VertexSet::EMPTY, Monomial::var(self.vertex_count(), v), self.ring.one())
    }

    /// `c · α_S · m`, zero if the support of `m` is not a face.
    pub fn monomial_element(&self, exterior: VertexSet, monomial: Monomial, c: R::Elem) -> KoszulElement<R::Elem> {
        if !self.complex.contains(monomial.support()) {
            return Combination::zero();
        }
        Combination::term(&self.ring, self.key(exterior, monomial), c)
    }

    /// Checks that exterior indices are below `n` and monomials live on faces.
    pub fn validate(&self, el: &KoszulElement<R::Elem>) -> Result<(), Error> {
        let full = VertexSet::full(self.rank());
        for (k, _) in el.iter() {
            if !k.exterior.is_subset(full) {
                let index = k.exterior.difference(full).iter().next().expect("outside index") + 1;
                return Err(Error::RankMismatch { index, rank: self.rank() });
            }
            if k.monomial.vars() != self.vertex_count() || !self.complex.contains(k.monomial.support()) {
                return Err(Error::DimensionMismatch(format!("monomial {:?} is not a face-ring monomial", k.monomial)));
            }
        }
        Ok(())
    }

    /// `d(el)`, checking the input first.
    pub fn koszul_differential(&self, el: &KoszulElement<R::Elem>) -> Result<KoszulElement<R::Elem>, Error> {
        self.validate(el)?;
        Ok(self.differential(el))
    }

    /// `x · f` for a face-ring element `f` given as a Koszul element; terms
    /// leaving the face ring are dropped.
    pub fn multiply_monomial(&self, x: &KoszulElement<R::Elem>, m: &Monomial, c: &R::Elem) -> KoszulElement<R::Elem> {
        let ring = &self.ring;
        let mut out = Combination::zero();
        for (k, e) in x.iter() {
            let prod = k.monomial.mul(m);
            if self.complex.contains(prod.support()) {
                out.add_term(ring, self.key(k.exterior, prod), ring.mul(e, c));
            }
        }
        out
    }

    /// The Tor table in total degrees up to `max_total_degree`.
    pub fn tor_table(&self, max_total_degree: usize) -> Result<TorTable, Error> {
        tor_table(self, max_total_degree)
    }

    /// Cohomology bases in all total degrees up to `max_total_degree`.
    pub fn cohomology_basis(&self, max_total_degree: usize) -> Result<CohomologyBasis<'_, Self>, Error> {
        CohomologyBasis::all(self, max_total_degree)
    }

    /// Writes an element in the expression syntax, e.g. `a1*t_v2^2 - 2*a2*a3`.
    pub fn format(&self, el: &KoszulElement<R::Elem>) -> String {
        format_element(&self.ring, self.complex.vertex_names(), el)
    }
}

pub(crate) fn format_element<R: Ring>(ring: &R, names: &[String], el: &KoszulElement<R::Elem>) -> String {
    if el.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    // lower exterior degree first, then the key order
    let mut terms: Vec<(&KoszulKey, &R::Elem)> = el.iter().collect();
    terms.sort_by(|a, b| (a.0.exterior.len(), a.0).cmp(&(b.0.exterior.len(), b.0)));
    for (i, (k, c)) in terms.into_iter().enumerate() {
        let mut text = ring.format(c);
        let negative = text.starts_with('-');
        if negative {
            text.remove(0);
        }
        let mut factors = Vec::new();
        if text != "1" {
            factors.push(text);
        }
        factors.extend(k.exterior.iter().map(|j| format!("a{}", j + 1)));
        if !k.monomial.is_one() {
            factors.push(k.monomial.format("t_", names));
        }
        let body = if factors.is_empty() { String::from("1") } else { factors.join("*") };
        match (i, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                // the grammar has no unary minus
                out.push_str("0 - ");
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

impl<R: Ring> BigradedComplex for KoszulComplex<R> {
    type R = R;
    type Key = KoszulKey;

    fn ring(&self) -> &R {
        &self.ring
    }

    fn homological_bound(&self) -> Option<usize> {
        Some(self.rank())
    }

    fn bidegree(&self, key: &KoszulKey) -> (i64, i64) {
        key.bidegree()
    }

    fn basis(&self, p: i64, q: i64) -> Vec<KoszulKey> {
        let s = -p;
        if p > 0 || s > self.rank() as i64 || q < 0 || q % 2 != 0 {
            return Vec::new();
        }
        let deg = q / 2 - s;
        if deg < 0 {
            return Vec::new();
        }
        let monomials = self.complex.face_ring_basis(deg as u32);
        let mut out = Vec::new();
        for exterior in VertexSet::full(self.rank()).subsets_of_size(s as usize) {
            for m in &monomials {
                out.push(self.key(exterior, m.clone()));
            }
        }
        out
    }

    fn differential_of(&self, key: &KoszulKey) -> KoszulElement<R::Elem> {
        let ring = &self.ring;
        let mut out = Combination::zero();
        for (r, i) in key.exterior.iter().enumerate() {
            let rest = key.exterior.remove(i);
            for (v, c) in &self.d_alpha[i] {
                let m = key.monomial.times_var(*v);
                if self.complex.contains(m.support()) {
                    let coeff = if r % 2 == 0 { c.clone() } else { ring.neg(c) };
                    out.add_term(ring, self.key(rest, m), coeff);
                }
            }
        }
        out
    }
}
