mod common;

use common::*;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;
use toric_tor::oracles::{bar_tor, hochster_tor, BarComplex, BarElement};
use toric_tor::{
    BigradedComplex, CharacteristicMatrix, Combination, Fan, IntegerRing, KoszulComplex, Monomial, PrimeField,
    RationalField, Ring, SimplicialComplex,
};

fn random_monomial(rng: &mut ChaCha8Rng, vars: usize, min: u32, max: u32) -> Monomial {
    let d = rng.gen_range(min..=max);
    let mut e = vec![0u32; vars];
    for _ in 0..d {
        e[rng.gen_range(0..vars)] += 1;
    }
    Monomial::from_exponents(e)
}

fn random_bar_element<R: Ring>(rng: &mut ChaCha8Rng, bar: &BarComplex<R>, terms: usize, max_len: usize) -> BarElement<R::Elem> {
    let ring = bar.ring();
    let n = bar.rank();
    let mut out = Combination::zero();
    for _ in 0..terms {
        let s = if n == 0 { 0 } else { rng.gen_range(0..=max_len) };
        let bars = (0..s).map(|_| random_monomial(rng, n, 1, 2)).collect();
        let basis = bar.complex().face_ring_basis(rng.gen_range(0..=2));
        if basis.is_empty() {
            continue;
        }
        let tail = basis[rng.gen_range(0..basis.len())].clone();
        out.add_scaled(ring, &ring.from_i64(rng.gen_range(-2..=2)), &bar.element(bars, tail, ring.one()));
    }
    out
}

/// A bar element whose terms all have `s` bars.
fn random_bar_of_length<R: Ring>(rng: &mut ChaCha8Rng, bar: &BarComplex<R>, s: usize, terms: usize) -> BarElement<R::Elem> {
    let ring = bar.ring();
    let mut out = Combination::zero();
    for _ in 0..terms {
        let bars = (0..s).map(|_| random_monomial(rng, bar.rank(), 1, 2)).collect();
        let basis = bar.complex().face_ring_basis(rng.gen_range(0..=2));
        if let Some(tail) = basis.get(rng.gen_range(0..basis.len().max(1))) {
            out.add_scaled(ring, &ring.from_i64(rng.gen_range(-2..=2)), &bar.element(bars, tail.clone(), ring.one()));
        }
    }
    out
}

fn random_bar<R: Ring>(rng: &mut ChaCha8Rng, ring: R) -> BarComplex<R> {
    let complex = random_complex(rng, 4);
    let n = rng.gen_range(1..=3);
    let lambda = random_matrix(rng, n, complex.vertex_count());
    BarComplex::new(ring, complex, lambda).unwrap()
}

#[test]
fn bar_differential_squares_to_zero() {
    let mut rng = rng(20);
    for _ in 0..10 {
        let bar = random_bar(&mut rng, IntegerRing);
        for _ in 0..10 {
            let x = random_bar_element(&mut rng, &bar, 3, 4);
            assert!(bar.differential(&bar.differential(&x)).is_zero());
        }
    }
}

#[test]
fn shuffle_product_is_associative_and_graded_commutative() {
    let mut rng = rng(21);
    let ring = IntegerRing;
    for _ in 0..10 {
        let bar = random_bar(&mut rng, ring);
        for _ in 0..10 {
            let (s, t) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
            let x = random_bar_of_length(&mut rng, &bar, s, 2);
            let y = random_bar_of_length(&mut rng, &bar, t, 2);
            let z = random_bar_element(&mut rng, &bar, 2, 2);
            assert_eq!(
                bar.shuffle_product(&bar.shuffle_product(&x, &y), &z),
                bar.shuffle_product(&x, &bar.shuffle_product(&y, &z))
            );
            let yx = bar.shuffle_product(&y, &x);
            let yx = if s * t % 2 == 1 { yx.neg(&ring) } else { yx };
            assert_eq!(bar.shuffle_product(&x, &y), yx);
        }
    }
}

#[test]
fn bar_differential_is_a_derivation_of_the_shuffle_product() {
    let mut rng = rng(22);
    let ring = IntegerRing;
    for _ in 0..10 {
        let bar = random_bar(&mut rng, ring);
        for _ in 0..10 {
            let s = rng.gen_range(0..=2);
            let x = random_bar_of_length(&mut rng, &bar, s, 2);
            let y = random_bar_element(&mut rng, &bar, 2, 2);
            let lhs = bar.differential(&bar.shuffle_product(&x, &y));
            let mut rhs = bar.shuffle_product(&bar.differential(&x), &y);
            let sign = ring.from_i64(if s % 2 == 0 { 1 } else { -1 });
            rhs.add_scaled(&ring, &sign, &bar.shuffle_product(&x, &bar.differential(&y)));
            assert_eq!(lhs, rhs);
        }
    }
}

fn hochster_matches<R: Ring + Clone>(ring: R, seed: u64, rounds: usize) {
    let mut rng = rng(seed);
    for _ in 0..rounds {
        let complex = random_complex(&mut rng, 6);
        let m = complex.vertex_count();
        let lambda = CharacteristicMatrix::identity(m);
        let d = 2 * m;
        let expected = hochster_tor(&ring, &complex, &lambda, d).unwrap();
        let k = KoszulComplex::new(ring.clone(), complex, lambda).unwrap();
        assert!(k.tor_table(d).unwrap().same_entries(&expected));
    }
}

#[test]
fn hochster_formula_matches_the_koszul_complex_over_z() {
    hochster_matches(IntegerRing, 23, 10);
}

#[test]
fn hochster_formula_matches_the_koszul_complex_over_f2() {
    hochster_matches(PrimeField::new(2).unwrap(), 24, 10);
}

fn fixed_cases() -> Vec<(SimplicialComplex, CharacteristicMatrix)> {
    let mut out = Vec::new();
    for b in [2, 3] {
        let fan = Fan::lens_boundary(b, 2).unwrap();
        out.push((fan.complex().clone(), fan.characteristic_matrix()));
    }
    let ray = Fan::from_i64(2, &[vec![1, 0]], &[vec![0]]).unwrap().complete_ghosts();
    out.push((ray.complex().clone(), ray.characteristic_matrix()));
    out.push((SimplicialComplex::empty(names(2)), CharacteristicMatrix::identity(2)));
    out.push((SimplicialComplex::simplex(names(3)), CharacteristicMatrix::identity(3)));
    out
}

fn bar_matches<R: Ring + Clone>(ring: R) {
    for (complex, lambda) in fixed_cases() {
        let d = 6;
        let expected = bar_tor(ring.clone(), complex.clone(), lambda.clone(), d).unwrap();
        let k = KoszulComplex::new(ring.clone(), complex, lambda).unwrap();
        let table = k.tor_table(d).unwrap();
        assert!(table.same_entries(&expected), "{:?}\n{:?}", table.entries, expected.entries);
    }
}

#[test]
fn bar_construction_matches_the_koszul_complex() {
    bar_matches(IntegerRing);
    bar_matches(PrimeField::new(2).unwrap());
    bar_matches(PrimeField::new(3).unwrap());
    bar_matches(RationalField);
}
