//! Twisting terms `q_ij`, contractions and the twisted product on the Koszul
//! complex, and the induced multiplication on cohomology.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::chain::{BigradedComplex, CohomologyBasis, CohomologyClass, Combination};
use crate::error::Error;
use crate::integer::Integer;
use crate::koszul::{KoszulComplex, KoszulElement, KoszulKey};
use crate::ring::Ring;
use crate::simplicial::{Monomial, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductMode {
    Twisted,
    /// All twisting terms zero; needs 2 invertible in the coefficients.
    Canonical,
}

/// The linear forms `q_ij = Σ_v c_v t_v` for `j <= i`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingData<E> {
    pub mode: ProductMode,
    /// `forms[i][j]` for `j <= i`, as `(v, c_v)` with nonzero `c_v`.
    forms: Vec<Vec<Vec<(usize, E)>>>,
}

impl<E: Clone> TwistingData<E> {
    /// Arbitrary linear forms; `forms[i]` must have length `i + 1`.
    pub fn from_forms(mode: ProductMode, forms: Vec<Vec<Vec<(usize, E)>>>) -> Self {
        assert!(forms.iter().enumerate().all(|(i, row)| row.len() == i + 1), "lower triangular forms expected");
        TwistingData { mode, forms }
    }

    pub fn zero(mode: ProductMode, n: usize) -> Self {
        TwistingData { mode, forms: (0..n).map(|i| alloc::vec![Vec::new(); i + 1]).collect() }
    }

    pub fn rank(&self) -> usize {
        self.forms.len()
    }

    /// `q_ij` for `j <= i` (0-based).
    pub fn form(&self, i: usize, j: usize) -> &[(usize, E)] {
        &self.forms[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().flatten().all(|f| f.is_empty())
    }
}

/// `q_ii = Σ_v x(x-1)/2 t_v` with `x = x_v^i`, and `q_ij = Σ_v x_v^i x_v^j t_v`
/// for `i > j`; in canonical mode all zero.
pub fn twisting_terms<R: Ring>(k: &KoszulComplex<R>, mode: ProductMode) -> Result<TwistingData<R::Elem>, Error> {
    let ring = k.ring();
    let n = k.rank();
    if mode == ProductMode::Canonical {
        let coefficients = ring.coefficients();
        if !coefficients.two_is_invertible() {
            return Err(Error::CanonicalModeNeedsHalf(coefficients));
        }
        return Ok(TwistingData::zero(mode, n));
    }
    let lambda = k.matrix();
    let forms = (0..n)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    (0..lambda.vertex_count())
                        .filter_map(|v| {
                            let xi = lambda.entry(i, v);
                            let c = if i == j {
                                (xi * &(xi - &Integer::ONE)).div_rem(&Integer::from(2)).0
                            } else {
                                xi * lambda.entry(j, v)
                            };
                            let c = ring.from_integer(&c);
                            (!ring.is_zero(&c)).then_some((v, c))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(TwistingData { mode, forms })
}

impl<R: Ring> KoszulComplex<R> {
    /// `ι(x_i)` (0-based `i`): removes `α_i` with sign `(-1)^r`, `r` the
    /// number of smaller indices present.
    pub fn contract(&self, i: usize, el: &KoszulElement<R::Elem>) -> Result<KoszulElement<R::Elem>, Error> {
        if i >= self.rank() {
            return Err(Error::RankMismatch { index: i + 1, rank: self.rank() });
        }
        Ok(contract_unchecked(self.ring(), i, el))
    }

    /// `α_i ∧ el`
    pub fn wedge_alpha(&self, i: usize, el: &KoszulElement<R::Elem>) -> KoszulElement<R::Elem> {
        let ring = self.ring();
        let mut out = Combination::zero();
        for (k, c) in el.iter() {
            if k.exterior.contains(i) {
                continue;
            }
            let c = if k.exterior.rank_of(i) % 2 == 0 { c.clone() } else { ring.neg(c) };
            out.add_term(ring, KoszulKey { exterior: k.exterior.insert(i), monomial: k.monomial.clone() }, c);
        }
        out
    }

    /// `el · Σ_v c_v t_v`
    fn multiply_form(&self, el: &KoszulElement<R::Elem>, form: &[(usize, R::Elem)]) -> KoszulElement<R::Elem> {
        let mut out = Combination::zero();
        for (v, c) in form {
            let m = Monomial::var(self.vertex_count(), *v);
            out.add_scaled(self.ring(), &self.ring().one(), &self.multiply_monomial(el, &m, c));
        }
        out
    }

    /// Left multiplication by `α_i` for the twisted product:
    /// `y ↦ α_i ∧ y + Σ_{j <= i} q_ij ι(x_j)(y)`.
    fn left_alpha(&self, tw: &TwistingData<R::Elem>, i: usize, y: &KoszulElement<R::Elem>) -> KoszulElement<R::Elem> {
        let ring = self.ring();
        let mut out = self.wedge_alpha(i, y);
        for j in 0..=i {
            let form = tw.form(i, j);
            if form.is_empty() {
                continue;
            }
            let contracted = contract_unchecked(ring, j, y);
            out.add_scaled(ring, &ring.one(), &self.multiply_form(&contracted, form));
        }
        out
    }

    /// The twisted product `a * b`.
    pub fn star_multiply(
        &self,
        tw: &TwistingData<R::Elem>,
        a: &KoszulElement<R::Elem>,
        b: &KoszulElement<R::Elem>,
    ) -> Result<KoszulElement<R::Elem>, Error> {
        self.validate(a)?;
        self.validate(b)?;
        if tw.rank() != self.rank() {
            return Err(Error::RankMismatch { index: tw.rank(), rank: self.rank() });
        }
        let ring = self.ring();
        let mut out = Combination::zero();
        // group the terms of a by exterior part
        let mut by_exterior: BTreeMap<VertexSet, Vec<(&Monomial, &R::Elem)>> = BTreeMap::new();
        for (k, c) in a.iter() {
            by_exterior.entry(k.exterior).or_default().push((&k.monomial, c));
        }
        for (exterior, parts) in by_exterior {
            let indices: Vec<usize> = exterior.iter().collect();
            let mut y = b.clone();
            for &i in indices.iter().rev() {
                y = self.left_alpha(tw, i, &y);
                if y.is_zero() {
                    break;
                }
            }
            for (m, c) in parts {
                out.add_scaled(ring, &ring.one(), &self.multiply_monomial(&y, m, c));
            }
        }
        Ok(out)
    }

    /// The untwisted product `α_S f · α_T g = α_S ∧ α_T · f g`.
    pub fn canonical_multiply(&self, a: &KoszulElement<R::Elem>, b: &KoszulElement<R::Elem>) -> KoszulElement<R::Elem> {
        let ring = self.ring();
        let mut out = Combination::zero();
        for (ka, ca) in a.iter() {
            for (kb, cb) in b.iter() {
                if !ka.exterior.intersection(kb.exterior).is_empty() {
                    continue;
                }
                let m = ka.monomial.mul(&kb.monomial);
                if !self.complex().contains(m.support()) {
                    continue;
                }
                let c = ring.mul(ca, cb);
                let c = if exterior_sign(ka.exterior, kb.exterior) { ring.neg(&c) } else { c };
                out.add_term(ring, KoszulKey { exterior: ka.exterior.union(kb.exterior), monomial: m }, c);
            }
        }
        out
    }
}

/// True iff `α_S ∧ α_T = -α_{S ∪ T}` (for disjoint `S`, `T`).
pub(crate) fn exterior_sign(s: VertexSet, t: VertexSet) -> bool {
    let inversions: usize = t.iter().map(|j| s.len() - s.rank_of(j)).sum();
    inversions % 2 == 1
}

fn contract_unchecked<R: Ring>(ring: &R, i: usize, el: &KoszulElement<R::Elem>) -> KoszulElement<R::Elem> {
    let mut out = Combination::zero();
    for (k, c) in el.iter() {
        if !k.exterior.contains(i) {
            continue;
        }
        let c = if k.exterior.rank_of(i) % 2 == 0 { c.clone() } else { ring.neg(c) };
        out.add_term(ring, KoszulKey { exterior: k.exterior.remove(i), monomial: k.monomial.clone() }, c);
    }
    out
}

/// Structure constants of the cohomology ring on a fixed cohomology basis.
pub struct CohomologyRing<'k, R: Ring> {
    koszul: &'k KoszulComplex<R>,
    twisting: TwistingData<R::Elem>,
    basis: CohomologyBasis<'k, KoszulComplex<R>>,
    /// `((s, a), (t, b))` ↦ coordinates of `[z_a] [z_b]` in degree `s + t`.
    constants: BTreeMap<((i64, usize), (i64, usize)), Vec<R::Elem>>,
}

impl<'k, R: Ring> CohomologyRing<'k, R> {
    /// Products of all pairs of basis classes whose degrees sum to at most
    /// `max_total_degree`.
    pub fn compute(koszul: &'k KoszulComplex<R>, max_total_degree: usize, mode: ProductMode) -> Result<Self, Error> {
        let twisting = twisting_terms(koszul, mode)?;
        let basis = koszul.cohomology_basis(max_total_degree)?;
        let d = max_total_degree as i64;
        let mut pairs = Vec::new();
        for s in 0..=d {
            for t in 0..=d - s {
                let (na, nb) = (basis.classes(s)?.len(), basis.classes(t)?.len());
                for a in 0..na {
                    for b in 0..nb {
                        pairs.push(((s, a), (t, b)));
                    }
                }
            }
        }
        let compute = |&((s, a), (t, b)): &((i64, usize), (i64, usize))| -> Result<_, Error> {
            let za = &basis.classes(s)?[a].representative;
            let zb = &basis.classes(t)?[b].representative;
            let prod = koszul.star_multiply(&twisting, za, zb)?;
            Ok((((s, a), (t, b)), basis.reduce(&prod, s + t)?))
        };
        #[cfg(feature = "parallel")]
        let constants = {
            use rayon::prelude::*;
            pairs.par_iter().map(compute).collect::<Result<BTreeMap<_, _>, Error>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let constants = pairs.iter().map(compute).collect::<Result<BTreeMap<_, _>, Error>>()?;
        Ok(CohomologyRing { koszul, twisting, basis, constants })
    }

    pub fn twisting(&self) -> &TwistingData<R::Elem> {
        &self.twisting
    }

    pub fn basis(&self) -> &CohomologyBasis<'k, KoszulComplex<R>> {
        &self.basis
    }

    pub fn classes(&self, t: i64) -> Result<&[CohomologyClass<KoszulKey, R::Elem>], Error> {
        self.basis.classes(t)
    }

    /// Coordinates of the product of basis classes `a` (degree `s`) and `b`
    /// (degree `t`).
    pub fn product(&self, s: i64, a: usize, t: i64, b: usize) -> Option<&[R::Elem]> {
        self.constants.get(&((s, a), (t, b))).map(Vec::as_slice)
    }

    pub fn constants(&self) -> &BTreeMap<((i64, usize), (i64, usize)), Vec<R::Elem>> {
        &self.constants
    }

    /// Class coordinates of `z1 * z2` for cocycles of degrees `s` and `t`.
    pub fn multiply_cocycles(&self, z1: &KoszulElement<R::Elem>, s: i64, z2: &KoszulElement<R::Elem>, t: i64) -> Result<Vec<R::Elem>, Error> {
        self.basis.reduce(z1, s)?;
        self.basis.reduce(z2, t)?;
        let prod = self.koszul.star_multiply(&self.twisting, z1, z2)?;
        self.basis.reduce(&prod, s + t)
    }

    /// True iff the structure constants agree with those of `other`.
    pub fn same_constants(&self, other: &CohomologyRing<'_, R>) -> bool {
        self.constants == other.constants
    }

    /// The Koszul complex the ring was computed on.
    pub fn koszul(&self) -> &'k KoszulComplex<R> {
        self.koszul
    }

    /// Total degrees covered.
    pub fn max_total_degree(&self) -> usize {
        self.basis.max_total_degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{CharacteristicMatrix, Fan};
    use crate::ring::{IntegerRing, PrimeField, RationalField};
    use crate::simplicial::SimplicialComplex;
    use alloc::string::ToString;
    use alloc::vec;

    fn lens<R: Ring>(ring: R, b: i64, n: usize) -> KoszulComplex<R> {
        let fan = Fan::lens_boundary(b, n).unwrap();
        KoszulComplex::new(ring, fan.complex().clone(), fan.characteristic_matrix()).unwrap()
    }

    fn form_element<R: Ring>(k: &KoszulComplex<R>, form: &[(usize, R::Elem)]) -> KoszulElement<R::Elem> {
        let mut out = Combination::zero();
        for (v, c) in form {
            out.add_scaled(k.ring(), c, &k.t(*v));
        }
        out
    }

    #[test]
    fn lens_twisting_terms() {
        for b in [2i64, 3, 5] {
            let k = lens(IntegerRing, b, 3);
            let tw = twisting_terms(&k, ProductMode::Twisted).unwrap();
            assert_eq!(tw.form(0, 0), &[(0, Integer::from(b * (b - 1) / 2))]);
            assert_eq!(tw.form(1, 0), &[(0, Integer::from(-b))]);
            assert_eq!(tw.form(2, 0), &[(0, Integer::from(-b))]);
            assert_eq!(tw.form(2, 1), &[(0, Integer::ONE)]);
            // x(x-1)/2 vanishes for x in {0, 1} and is 1 for x = -1
            assert_eq!(tw.form(1, 1), &[(0, Integer::ONE)]);
        }
    }

    #[test]
    fn zero_one_columns_have_no_twisting() {
        let complex = SimplicialComplex::simplex_boundary(vec!["1".to_string(), "2".to_string(), "3".to_string()]);
        let lambda = CharacteristicMatrix::from_i64_rows(3, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        let k = KoszulComplex::new(IntegerRing, complex, lambda).unwrap();
        assert!(twisting_terms(&k, ProductMode::Twisted).unwrap().is_zero());
    }

    #[test]
    fn canonical_mode_needs_two_invertible() {
        assert_eq!(
            twisting_terms(&lens(IntegerRing, 3, 2), ProductMode::Canonical),
            Err(Error::CanonicalModeNeedsHalf(crate::ring::Coefficients::Integers))
        );
        let f2 = PrimeField::new(2).unwrap();
        assert!(twisting_terms(&lens(f2, 2, 2), ProductMode::Canonical).is_err());
        let f3 = PrimeField::new(3).unwrap();
        assert!(twisting_terms(&lens(f3, 3, 2), ProductMode::Canonical).unwrap().is_zero());
    }

    #[test]
    fn contractions() {
        let k = lens(IntegerRing, 2, 3);
        let ring = IntegerRing;
        let a12 = k.star_multiply(&TwistingData::zero(ProductMode::Twisted, 3), &k.alpha(0).unwrap(), &k.alpha(1).unwrap()).unwrap();
        assert_eq!(k.contract(0, &a12).unwrap(), k.alpha(1).unwrap());
        assert_eq!(k.contract(1, &a12).unwrap(), k.alpha(0).unwrap().neg(&ring));
        assert!(k.contract(2, &a12).unwrap().is_zero());
        assert_eq!(k.contract(3, &a12), Err(Error::RankMismatch { index: 4, rank: 3 }));
        let twice = k.contract(0, &k.contract(0, &a12).unwrap()).unwrap();
        assert!(twice.is_zero());
    }

    #[test]
    fn degree_one_products() {
        let ring = IntegerRing;
        let k = lens(ring, 3, 3);
        let tw = twisting_terms(&k, ProductMode::Twisted).unwrap();
        let a: Vec<_> = (0..3).map(|i| k.alpha(i).unwrap()).collect();
        let q = |i: usize, j: usize| form_element(&k, tw.form(i, j));
        assert_eq!(k.star_multiply(&tw, &a[0], &a[0]).unwrap(), q(0, 0));
        assert_eq!(q(0, 0), k.t(0).scale(&ring, &Integer::from(3)));
        let a01 = k.star_multiply(&tw, &a[0], &a[1]).unwrap();
        assert_eq!(a01, k.wedge_alpha(0, &a[1]));
        // α_j * α_i = -α_i α_j + q_ji for i < j
        let a10 = k.star_multiply(&tw, &a[1], &a[0]).unwrap();
        assert_eq!(a10, a01.neg(&ring).add(&ring, &q(1, 0)));
    }

    #[test]
    fn worked_example() {
        // α_1α_3 * α_1α_2 = q_11 α_2α_3 + q_31 α_1α_2 - q_11 q_32
        let ring = IntegerRing;
        let k = lens(ring, 2, 3);
        let tw = twisting_terms(&k, ProductMode::Twisted).unwrap();
        let zero = TwistingData::zero(ProductMode::Twisted, 3);
        let a = |i: usize| k.alpha(i).unwrap();
        let ext = |i: usize, j: usize| k.star_multiply(&zero, &a(i), &a(j)).unwrap();
        let q = |i: usize, j: usize| form_element(&k, tw.form(i, j));
        let lhs = k.star_multiply(&tw, &ext(0, 2), &ext(0, 1)).unwrap();
        let rhs = k
            .star_multiply(&zero, &q(0, 0), &ext(1, 2))
            .unwrap()
            .add(&ring, &k.star_multiply(&zero, &q(2, 0), &ext(0, 1)).unwrap())
            .sub(&ring, &k.star_multiply(&zero, &q(0, 0), &q(2, 1)).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_laws() {
        let ring = RationalField;
        let k = lens(ring, 2, 3);
        let tw = twisting_terms(&k, ProductMode::Twisted).unwrap();
        let x = k.star_multiply(&tw, &k.alpha(2).unwrap(), &k.alpha(0).unwrap()).unwrap().add(&ring, &k.t(1));
        assert_eq!(k.star_multiply(&tw, &k.one(), &x).unwrap(), x);
        assert_eq!(k.star_multiply(&tw, &x, &k.one()).unwrap(), x);
    }

    #[test]
    fn rp3_generator_squares_to_nonzero() {
        let f2 = PrimeField::new(2).unwrap();
        let k = lens(f2, 2, 2);
        let ring = CohomologyRing::compute(&k, 4, ProductMode::Twisted).unwrap();
        assert_eq!(ring.product(1, 0, 1, 0), Some(&[1u64][..]));
        assert_eq!(ring.product(2, 0, 2, 0), Some(&[][..]));
    }

    #[test]
    fn lens_mod_three_generator_squares_to_zero() {
        let f3 = PrimeField::new(3).unwrap();
        let k = lens(f3, 3, 2);
        let twisted = CohomologyRing::compute(&k, 3, ProductMode::Twisted).unwrap();
        let canonical = CohomologyRing::compute(&k, 3, ProductMode::Canonical).unwrap();
        assert_eq!(twisted.product(1, 0, 1, 0), Some(&[0u64][..]));
        assert!(twisted.same_constants(&canonical));
    }
}
