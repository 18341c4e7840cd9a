#![allow(dead_code)]

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_tor::{
    BigradedComplex, CharacteristicMatrix, Combination, Fan, Integer, KoszulComplex, KoszulElement, KoszulKey, Monomial,
    Ring, SimplicialComplex, VertexSet,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

pub fn random_complex(rng: &mut ChaCha8Rng, max_vertices: usize) -> SimplicialComplex {
    let m = rng.gen_range(1..=max_vertices);
    let facets = (0..rng.gen_range(0..=5)).map(|_| VertexSet(rng.gen_range(0..(1u64 << m)))).collect();
    SimplicialComplex::from_sets(names(m), facets)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rank: usize, vertices: usize) -> CharacteristicMatrix {
    let rows: Vec<Vec<i64>> = (0..rank).map(|_| (0..vertices).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    CharacteristicMatrix::from_i64_rows(vertices, &rows).unwrap()
}

pub fn random_koszul<R: Ring>(rng: &mut ChaCha8Rng, ring: R, max_vertices: usize, max_rank: usize) -> KoszulComplex<R> {
    let complex = random_complex(rng, max_vertices);
    let n = rng.gen_range(1..=max_rank);
    let lambda = random_matrix(rng, n, complex.vertex_count());
    KoszulComplex::new(ring, complex, lambda).unwrap()
}

/// A random element with up to `terms` terms and monomials of degree at most
/// `max_degree`.
pub fn random_element<R: Ring>(rng: &mut ChaCha8Rng, k: &KoszulComplex<R>, terms: usize, max_degree: u32) -> KoszulElement<R::Elem> {
    let ring = k.ring();
    let mut out = Combination::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let exterior = VertexSet(rng.gen_range(0..(1u64 << k.rank())));
        let basis = k.complex().face_ring_basis(rng.gen_range(0..=max_degree));
        if basis.is_empty() {
            continue;
        }
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let c = ring.from_i64(rng.gen_range(-3..=3));
        out.add_term(ring, KoszulKey { exterior, monomial: m }, c);
    }
    out
}

/// A random element of fixed total degree, or zero if none exists there.
pub fn random_homogeneous<R: Ring>(rng: &mut ChaCha8Rng, k: &KoszulComplex<R>, t: i64, terms: usize) -> KoszulElement<R::Elem> {
    let ring = k.ring();
    let mut keys = Vec::new();
    for p in -(k.rank() as i64)..=0 {
        let q = t - p;
        if q >= 0 && q % 2 == 0 {
            keys.extend(k.basis(p, q));
        }
    }
    let mut out = Combination::zero();
    if keys.is_empty() {
        return out;
    }
    for _ in 0..terms {
        let key = keys[rng.gen_range(0..keys.len())].clone();
        out.add_term(ring, key, ring.from_i64(rng.gen_range(-3..=3)));
    }
    out
}

pub fn lens<R: Ring>(ring: R, b: i64, n: usize) -> KoszulComplex<R> {
    from_fan(ring, &Fan::lens_boundary(b, n).unwrap())
}

pub fn from_fan<R: Ring>(ring: R, fan: &Fan) -> KoszulComplex<R> {
    KoszulComplex::new(ring, fan.complex().clone(), fan.characteristic_matrix()).unwrap()
}

pub fn monomial(k_vars: usize, exps: &[(usize, u32)]) -> Monomial {
    let mut e = vec![0; k_vars];
    for &(v, x) in exps {
        e[v] = x;
    }
    Monomial::from_exponents(e)
}

pub fn int(x: i64) -> Integer {
    Integer::from(x)
}
