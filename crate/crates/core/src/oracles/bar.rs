//! The one-sided bar construction `B(k, R, k[Σ])` with `R = k[c_1, .., c_n]`,
//! `deg c_i = 2`, acting on `k[Σ]` through `c_i ↦ Σ_v x_v^i t_v`.
//!
//! A basis element `[r_1 | .. | r_s] ⊗ m` has bidegree
//! `(-s, 2 Σ deg r_i + 2 deg m)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::chain::{tor_table, BigradedComplex, Combination, TorTable};
use crate::error::Error;
use crate::fan::CharacteristicMatrix;
use crate::ring::Ring;
use crate::simplicial::{Monomial, SimplicialComplex};

/// Default refusal threshold on the estimated number of basis tensors.
pub const BAR_SIZE_BOUND: u128 = 1_000_000;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BarKey {
    /// Monomials of positive degree in `c_1, .., c_n`.
    pub bars: Vec<Monomial>,
    /// A face-ring monomial.
    pub tail: Monomial,
}

impl BarKey {
    pub fn bidegree(&self) -> (i64, i64) {
        let bars: u32 = self.bars.iter().map(Monomial::degree).sum();
        (-(self.bars.len() as i64), 2 * (bars + self.tail.degree()) as i64)
    }

    pub fn total_degree(&self) -> i64 {
        let (p, q) = self.bidegree();
        p + q
    }
}

pub type BarElement<E> = Combination<BarKey, E>;

#[derive(Clone, Debug)]
pub struct BarComplex<R: Ring> {
    ring: R,
    complex: SimplicialComplex,
    lambda: CharacteristicMatrix,
    /// `g(c_i)` as `(v, x_v^i)`.
    images: Vec<Vec<(usize, R::Elem)>>,
}

fn binomial(n: u128, k: u128) -> u128 {
    (1..=k).fold(1u128, |acc, i| acc.saturating_mul(n + 1 - i) / i)
}

/// All monomials of degree `d` in `vars` variables, lexicographically
/// descending exponent vectors.
fn all_monomials(vars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(Monomial::from_exponents(e.clone()));
            e[i] = 0;
            return;
        }
        for x in (0..=left).rev() {
            e[i] = x;
            rec(i + 1, left - x, e, out);
        }
        e[i] = 0;
    }
    if vars == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; vars], &mut out);
    out
}

impl<R: Ring> BarComplex<R> {
    pub fn new(ring: R, complex: SimplicialComplex, lambda: CharacteristicMatrix) -> Result<Self, Error> {
        if lambda.vertex_count() != complex.vertex_count() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "matrix has {} columns but the complex has {} vertices",
                lambda.vertex_count(),
                complex.vertex_count()
            )));
        }
        let images = (0..lambda.rank())
            .map(|i| {
                (0..lambda.vertex_count())
                    .filter_map(|v| {
                        let c = ring.from_integer(lambda.entry(i, v));
                        (!ring.is_zero(&c)).then_some((v, c))
                    })
                    .collect()
            })
            .collect();
        Ok(BarComplex { ring, complex, lambda, images })
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// `[bars] ⊗ tail` with coefficient `c`; zero if `tail` is not on a face.
    pub fn element(&self, bars: Vec<Monomial>, tail: Monomial, c: R::Elem) -> BarElement<R::Elem> {
        if !self.complex.contains(tail.support()) || bars.iter().any(|b| b.degree() == 0) {
            return Combination::zero();
        }
        Combination::term(&self.ring, BarKey { bars, tail }, c)
    }

    /// `g(r) · m` in `k[Σ]`, as a map from monomials to coefficients.
    fn act(&self, r: &Monomial, m: &Monomial) -> BTreeMap<Monomial, R::Elem> {
        let ring = &self.ring;
        let mut acc: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        acc.insert(m.clone(), ring.one());
        for (i, &e) in r.exponents().iter().enumerate() {
            for _ in 0..e {
                let mut next: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
                for (mono, c) in &acc {
                    for (v, x) in &self.images[i] {
                        let prod = mono.times_var(*v);
                        if !self.complex.contains(prod.support()) {
                            continue;
                        }
                        let add = ring.mul(c, x);
                        let slot = next.entry(prod).or_insert_with(|| ring.zero());
                        *slot = ring.add(slot, &add);
                    }
                }
                next.retain(|_, c| !ring.is_zero(c));
                acc = next;
            }
        }
        acc
    }

    /// Number of basis tensors in bidegree `(-s, 2 * internal)`.
    fn count(&self, s: usize, internal: usize, faces: &[u128]) -> u128 {
        let n = self.rank() as u128;
        // ways[j][left]: sequences of j bars with total degree `left`
        let mut ways = vec![vec![0u128; internal + 1]; s + 1];
        ways[0][0] = 1;
        for j in 1..=s {
            for left in 1..=internal {
                let mut total = 0u128;
                for d in 1..=left {
                    if n == 0 {
                        break;
                    }
                    let dims = binomial(n + d as u128 - 1, d as u128);
                    total = total.saturating_add(dims.saturating_mul(ways[j - 1][left - d]));
                }
                ways[j][left] = total;
            }
        }
        (0..=internal).map(|e| faces[e].saturating_mul(ways[s][internal - e])).fold(0u128, u128::saturating_add)
    }

    /// Estimated number of basis tensors touched by a Tor computation up to
    /// total degree `d`.
    pub fn estimated_size(&self, d: usize) -> u128 {
        let faces: Vec<u128> = (0..=d).map(|e| self.complex.face_ring_basis(e as u32).len() as u128).collect();
        let mut total = 0u128;
        for internal in 0..=d {
            for s in 0..=internal.min(d + 1) {
                // internal degree q/2 = internal, total degree 2*internal - s
                if 2 * internal > d + s + 1 {
                    continue;
                }
                total = total.saturating_add(self.count(s, internal, &faces));
            }
        }
        total
    }

    /// The shuffle product: shuffles of the bar factors with the permutation
    /// sign, face-ring parts multiplied.
    pub fn shuffle_product(&self, x: &BarElement<R::Elem>, y: &BarElement<R::Elem>) -> BarElement<R::Elem> {
        let ring = &self.ring;
        let mut out = Combination::zero();
        for (kx, cx) in x.iter() {
            for (ky, cy) in y.iter() {
                let tail = kx.tail.mul(&ky.tail);
                if !self.complex.contains(tail.support()) {
                    continue;
                }
                let c = ring.mul(cx, cy);
                shuffles(&kx.bars, &ky.bars, &mut |bars, odd| {
                    let c = if odd { ring.neg(&c) } else { c.clone() };
                    out.add_term(ring, BarKey { bars, tail: tail.clone() }, c);
                });
            }
        }
        out
    }

    pub fn tor_table(&self, max_total_degree: usize) -> Result<TorTable, Error> {
        let mut t = tor_table(self, max_total_degree)?;
        t.rank = self.rank();
        Ok(t)
    }
}

/// Calls `f` with every shuffle of `a` and `b` and whether its permutation
/// is odd.
fn shuffles(a: &[Monomial], b: &[Monomial], f: &mut dyn FnMut(Vec<Monomial>, bool)) {
    fn rec(a: &[Monomial], b: &[Monomial], cur: &mut Vec<Monomial>, odd: bool, f: &mut dyn FnMut(Vec<Monomial>, bool)) {
        if a.is_empty() && b.is_empty() {
            f(cur.clone(), odd);
            return;
        }
        if let Some((h, rest)) = a.split_first() {
            cur.push(h.clone());
            rec(rest, b, cur, odd, f);
            cur.pop();
        }
        if let Some((h, rest)) = b.split_first() {
            // b's head jumps over the remaining elements of a
            cur.push(h.clone());
            rec(a, rest, cur, odd ^ (a.len() % 2 == 1), f);
            cur.pop();
        }
    }
    rec(a, b, &mut Vec::with_capacity(a.len() + b.len()), false, f);
}

impl<R: Ring> BigradedComplex for BarComplex<R> {
    type R = R;
    type Key = BarKey;

    fn ring(&self) -> &R {
        &self.ring
    }

    fn homological_bound(&self) -> Option<usize> {
        None
    }

    fn bidegree(&self, key: &BarKey) -> (i64, i64) {
        key.bidegree()
    }

    fn basis(&self, p: i64, q: i64) -> Vec<BarKey> {
        if p > 0 || q < 0 || q % 2 != 0 {
            return Vec::new();
        }
        let s = (-p) as usize;
        let internal = (q / 2) as usize;
        if s > internal || (s > 0 && self.rank() == 0) {
            return Vec::new();
        }
        let n = self.rank();
        let mut out = Vec::new();
        for e in 0..=internal - s {
            let tails = self.complex.face_ring_basis(e as u32);
            if tails.is_empty() {
                continue;
            }
            let mut seqs: Vec<Vec<Monomial>> = Vec::new();
            compositions(s, internal - e, &mut Vec::new(), &mut |degs| {
                let mut partial: Vec<Vec<Monomial>> = vec![Vec::new()];
                for &d in degs {
                    let monos = all_monomials(n, d as u32);
                    partial = partial
                        .into_iter()
                        .flat_map(|p| {
                            monos.iter().map(move |m| {
                                let mut p = p.clone();
                                p.push(m.clone());
                                p
                            })
                        })
                        .collect();
                }
                seqs.extend(partial);
            });
            for bars in seqs {
                for t in &tails {
                    out.push(BarKey { bars: bars.clone(), tail: t.clone() });
                }
            }
        }
        out
    }

    fn differential_of(&self, key: &BarKey) -> BarElement<R::Elem> {
        let ring = &self.ring;
        let s = key.bars.len();
        let mut out = Combination::zero();
        for i in 0..s.saturating_sub(1) {
            let mut bars = key.bars.clone();
            let merged = bars[i].mul(&bars[i + 1]);
            bars.splice(i..i + 2, [merged]);
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            out.add_term(ring, BarKey { bars, tail: key.tail.clone() }, ring.from_i64(sign));
        }
        if s > 0 {
            let sign = ring.from_i64(if s.is_multiple_of(2) { 1 } else { -1 });
            let bars = key.bars[..s - 1].to_vec();
            for (m, c) in self.act(&key.bars[s - 1], &key.tail) {
                out.add_term(ring, BarKey { bars: bars.clone(), tail: m }, ring.mul(&sign, &c));
            }
        }
        out
    }
}

/// Sequences of `parts` positive integers summing to `total`.
fn compositions(parts: usize, total: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if parts == 0 {
        if total == 0 {
            f(cur);
        }
        return;
    }
    if total < parts {
        return;
    }
    for d in 1..=total - (parts - 1) {
        cur.push(d);
        compositions(parts - 1, total - d, cur, f);
        cur.pop();
    }
}

/// The bar Tor table with the default size bound.
pub fn bar_tor<R: Ring>(
    ring: R,
    complex: SimplicialComplex,
    lambda: CharacteristicMatrix,
    max_total_degree: usize,
) -> Result<TorTable, Error> {
    bar_tor_with_bound(ring, complex, lambda, max_total_degree, BAR_SIZE_BOUND)
}

/// The bar Tor table, refusing if more than `bound` basis tensors would be
/// generated.
pub fn bar_tor_with_bound<R: Ring>(
    ring: R,
    complex: SimplicialComplex,
    lambda: CharacteristicMatrix,
    max_total_degree: usize,
    bound: u128,
) -> Result<TorTable, Error> {
    let bar = BarComplex::new(ring, complex, lambda)?;
    let estimate = bar.estimated_size(max_total_degree);
    if estimate > bound {
        return Err(Error::TooLarge { estimate, bound });
    }
    bar.tor_table(max_total_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::GradedPiece;
    use crate::fan::Fan;
    use crate::integer::Integer;
    use crate::ring::{IntegerRing, PrimeField};
    use alloc::string::{String, ToString};

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn c(vars: usize, e: &[u32]) -> Monomial {
        let mut v = e.to_vec();
        v.resize(vars, 0);
        Monomial::from_exponents(v)
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(all_monomials(2, 2).len(), 3);
        assert_eq!(all_monomials(3, 2).len(), 6);
        assert_eq!(all_monomials(0, 0).len(), 1);
        assert!(all_monomials(0, 1).is_empty());
    }

    #[test]
    fn length_one_differential() {
        let ring = IntegerRing;
        let fan = Fan::lens_boundary(2, 2).unwrap();
        let bar = BarComplex::new(ring, fan.complex().clone(), fan.characteristic_matrix()).unwrap();
        let x = bar.element(vec![c(2, &[1])], Monomial::one(2), Integer::ONE);
        // -g(c_1) = -(2 t_1)
        let expected = bar.element(Vec::new(), Monomial::var(2, 0), Integer::from(-2));
        assert_eq!(bar.differential(&x), expected);
        let tail_only = bar.element(Vec::new(), Monomial::var(2, 1), Integer::ONE);
        assert!(bar.differential(&tail_only).is_zero());
        let y = bar.element(vec![c(2, &[1]), c(2, &[2])], Monomial::var(2, 0), Integer::ONE);
        assert!(bar.differential(&bar.differential(&y)).is_zero());
    }

    #[test]
    fn shuffle_examples() {
        let ring = IntegerRing;
        let bar = BarComplex::new(ring, SimplicialComplex::simplex(names(2)), CharacteristicMatrix::identity(2)).unwrap();
        let m = bar.element(Vec::new(), Monomial::var(2, 0), Integer::ONE);
        let m2 = bar.element(Vec::new(), Monomial::var(2, 1), Integer::from(3));
        assert_eq!(bar.shuffle_product(&m, &m2), bar.element(Vec::new(), c(2, &[1, 1]), Integer::from(3)));
        let x = bar.element(vec![c(2, &[1])], Monomial::one(2), Integer::ONE);
        assert!(bar.shuffle_product(&x, &x).is_zero());
        let y = bar.element(vec![c(2, &[0, 1])], Monomial::one(2), Integer::ONE);
        let xy = bar.shuffle_product(&x, &y);
        let expected = bar
            .element(vec![c(2, &[1]), c(2, &[0, 1])], Monomial::one(2), Integer::ONE)
            .sub(&ring, &bar.element(vec![c(2, &[0, 1]), c(2, &[1])], Monomial::one(2), Integer::ONE));
        assert_eq!(xy, expected);
    }

    #[test]
    fn free_module_has_no_higher_tor() {
        let ring = PrimeField::new(3).unwrap();
        let t = bar_tor(ring, SimplicialComplex::simplex(names(2)), CharacteristicMatrix::identity(2), 4).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.get(0, 0), GradedPiece::free(1));
    }

    #[test]
    fn trivial_lattice_gives_face_ring() {
        let complex = SimplicialComplex::from_facets(&["1", "2"], &[vec!["1"], vec!["2"]]).unwrap();
        let lambda = CharacteristicMatrix::from_rows(2, &[]).unwrap();
        let t = bar_tor(IntegerRing, complex.clone(), lambda, 4).unwrap();
        for q in 0..=2 {
            let dim = complex.face_ring_basis(q).len();
            assert_eq!(t.get(0, 2 * q as i64), GradedPiece::free(dim));
        }
    }

    #[test]
    fn intro_example_dimensions() {
        let f2 = PrimeField::new(2).unwrap();
        let fan = Fan::lens_boundary(2, 2).unwrap();
        let t = bar_tor(f2, fan.complex().clone(), fan.characteristic_matrix(), 4).unwrap();
        let dims: Vec<usize> = (0..=4).map(|d| t.total_degree(d).free_rank).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 0]);
    }

    #[test]
    fn size_guard() {
        let fan = Fan::lens_boundary(2, 2).unwrap();
        let r = bar_tor_with_bound(IntegerRing, fan.complex().clone(), fan.characteristic_matrix(), 4, 10);
        assert!(matches!(r, Err(Error::TooLarge { bound: 10, .. })));
    }

    #[test]
    fn estimate_counts_basis() {
        let fan = Fan::lens_boundary(2, 2).unwrap();
        let bar = BarComplex::new(IntegerRing, fan.complex().clone(), fan.characteristic_matrix()).unwrap();
        let faces: Vec<u128> = (0..=4).map(|e| bar.complex().face_ring_basis(e).len() as u128).collect();
        for internal in 0..=4usize {
            for s in 0..=internal {
                let actual = bar.basis(-(s as i64), 2 * internal as i64).len() as u128;
                assert_eq!(bar.count(s, internal, &faces), actual);
            }
        }
    }
}
