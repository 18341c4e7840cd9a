//! One line per acceptance criterion; exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::*;
use rand::Rng as _;
use toric_tor::exactla::smith_normal_form;
use toric_tor::expr::evaluate;
use toric_tor::fan::submatrix_is_regular;
use toric_tor::oracles::{bar_tor, hochster_tor, BarComplex};
use toric_tor::{
    twisting_terms, BigradedComplex, CharacteristicMatrix, CohomologyRing, Coefficients, Combination, Fan, GradedPiece,
    Integer, IntegerRing, KoszulComplex, Monomial, PrimeField, ProductMode, RationalField, Ring, SimplicialComplex,
    TorTable, VertexSet,
};
use toric_tor_cli::{run, Command, Format, Problem};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z(free: usize, torsion: &[i64]) -> GradedPiece {
    GradedPiece::new(free, torsion.iter().map(|&d| Integer::from(d)).collect())
}

fn table_is(t: &TorTable, want: &[((i64, i64), GradedPiece)]) -> Check {
    let want: BTreeMap<_, _> = want.iter().cloned().collect();
    ensure(t.entries == want, || format!("got {:?}, expected {:?}", t.entries, want))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn lens_json(b: i64, n: usize, k: &str) -> String {
    let mut rays = Vec::new();
    let mut first = vec![-1; n];
    first[0] = b;
    rays.push(first);
    for i in 1..n {
        let mut e = vec![0; n];
        e[i] = 1;
        rays.push(e);
    }
    let cones: Vec<Vec<usize>> = (0..n).map(|skip| (0..n).filter(|&i| i != skip).collect()).collect();
    format!(r#"{{"rays": {rays:?}, "cones": {cones:?}, "coefficients": {k}, "max_total_degree": {}}}"#, 2 * n)
}

fn mult_class_is_zero(json: &str, x: &str, y: &str) -> Result<bool, String> {
    let problem = Problem::from_json(json).map_err(err)?;
    let out = run(&problem, &Command::Mult(x.into(), y.into()), Format::Json).map_err(err)?.output;
    let v: serde_json::Value = serde_json::from_str(&out).map_err(err)?;
    v["coboundary"].as_bool().ok_or_else(|| "missing coboundary field".into())
}

fn intro_example() -> Check {
    let k = lens(PrimeField::new(2).unwrap(), 2, 2);
    let t = k.tor_table(4).map_err(err)?;
    let one = z(1, &[]);
    table_is(&t, &[((0, 0), one.clone()), ((0, 2), one.clone()), ((-1, 2), one.clone()), ((-1, 4), one)])?;
    // additively H*(RP^3; F_2)
    let dims: Vec<usize> = (0..=4).map(|d| t.total_degree(d).free_rank).collect();
    ensure(dims == [1, 1, 1, 1, 0], || format!("total dimensions {dims:?}"))?;
    let zero = mult_class_is_zero(&lens_json(2, 2, r#"{"Fp": 2}"#), "a1", "a1")?;
    ensure(!zero, || "a1 * a1 is a coboundary".into())
}

fn lens_f2_n4() -> Check {
    let k = lens(PrimeField::new(2).unwrap(), 2, 4);
    let t = k.tor_table(8).map_err(err)?;
    let mut want = Vec::new();
    for j in 1..=4 {
        want.push(((-1, 2 * j), z(1, &[])));
    }
    for j in 0..=3 {
        want.push(((0, 2 * j), z(1, &[])));
    }
    table_is(&t, &want)
}

fn lens_over_z() -> Check {
    for n in 2..=4usize {
        let k = lens(IntegerRing, 2, n);
        let d = 2 * n;
        let t = k.tor_table(d).map_err(err)?;
        let mut want = vec![((0, 0), z(1, &[])), ((-1, d as i64), z(1, &[]))];
        for j in 1..n as i64 {
            want.push(((0, 2 * j), z(0, &[2])));
        }
        table_is(&t, &want).map_err(|e| format!("n = {n}: {e}"))?;
        let basis = k.cohomology_basis(d).map_err(err)?;
        let power = k.monomial_element(VertexSet::EMPTY, monomial(n, &[(0, n as u32)]), Integer::from(1));
        ensure(basis.is_coboundary(&power, d as i64).map_err(err)?, || format!("t_1^{n} is not zero"))?;
    }
    Ok(())
}

fn odd_torsion() -> Check {
    for n in [2usize, 3] {
        let json = lens_json(3, n, r#"{"Fp": 3}"#);
        ensure(mult_class_is_zero(&json, "a1", "a1")?, || format!("n = {n}: a1 * a1 is not zero"))?;
        let k = lens(PrimeField::new(3).unwrap(), 3, n);
        let d = 2 * n;
        let twisted = CohomologyRing::compute(&k, d, ProductMode::Twisted).map_err(err)?;
        let canonical = CohomologyRing::compute(&k, d, ProductMode::Canonical).map_err(err)?;
        ensure(twisted.same_constants(&canonical), || format!("n = {n}: structure constants differ"))?;
    }
    Ok(())
}

fn product_example() -> Check {
    let x2 = Fan::lens_boundary(2, 2).map_err(err)?;
    let x3 = Fan::lens_boundary(2, 3).map_err(err)?;
    let k = from_fan(IntegerRing, &x2.product(&x3));
    let t = k.tor_table(10).map_err(err)?;
    table_is(
        &t,
        &[
            ((0, 0), z(1, &[])),
            ((0, 2), z(0, &[2, 2])),
            ((0, 4), z(0, &[2, 2])),
            ((0, 6), z(0, &[2])),
            ((-1, 4), z(1, &[2])),
            ((-1, 6), z(1, &[2, 2])),
            ((-1, 8), z(0, &[2, 2])),
            ((-2, 10), z(1, &[])),
        ],
    )?;
    // X_2 contributes v1, v2 (beta_1 = a1, s_1 = t_v1); X_3 contributes v3, v4, v5 (alpha_1 = a3, t_1 = t_v3)
    let ring = CohomologyRing::compute(&k, 6, ProductMode::Twisted).map_err(err)?;
    let x = evaluate("a3*t_v1 - a1*t_v3", &k, ring.twisting()).map_err(err)?;
    let square = ring.multiply_cocycles(&x, 3, &x, 3).map_err(err)?;
    let target = evaluate("t_v1*t_v3^2", &k, ring.twisting()).map_err(err)?;
    let target = ring.basis().reduce(&target, 6).map_err(err)?;
    ensure(target.iter().any(|c| !c.is_zero()), || "t_1^2 s_1 is zero".into())?;
    ensure(square == target, || format!("x_11^2 has coordinates {square:?}, expected {target:?}"))
}

fn single_ray() -> Check {
    fn one<R: Ring>(ring: R, n: usize) -> Check {
        let mut e = vec![0; n];
        e[0] = 1;
        let fan = Fan::from_i64(n, &[e], &[vec![0]]).map_err(err)?.complete_ghosts();
        let t = from_fan(ring, &fan).tor_table(2 * n).map_err(err)?;
        let binom = |m: usize, j: usize| (0..j).fold(1usize, |acc, i| acc * (m - i) / (i + 1));
        let want: Vec<_> = (0..n).map(|j| ((-(j as i64), 2 * j as i64), z(binom(n - 1, j), &[]))).collect();
        table_is(&t, &want).map_err(|e| format!("n = {n}: {e}"))
    }
    for n in 1..=4 {
        one(IntegerRing, n)?;
        one(RationalField, n)?;
        one(PrimeField::new(2).unwrap(), n)?;
        one(PrimeField::new(3).unwrap(), n)?;
    }
    Ok(())
}

fn x_prime_4() -> Check {
    let lens = Fan::lens_boundary(2, 4).map_err(err)?;
    let mut rays: Vec<Vec<i64>> = lens.rays().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect();
    rays.push(vec![1, 0, 0, 0]);
    let mut cones: Vec<Vec<usize>> = lens.maximal_cones().iter().map(|c| c.iter().collect()).collect();
    cones.push(vec![4]);
    let fan = Fan::from_i64(4, &rays, &cones).map_err(err)?;
    let f2 = PrimeField::new(2).unwrap();
    let k = from_fan(f2, &fan);
    let t = k.tor_table(8).map_err(err)?;
    let one = z(1, &[]);
    table_is(
        &t,
        &[
            ((-3, 8), one.clone()),
            ((-1, 8), one.clone()),
            ((-2, 6), z(3, &[])),
            ((-1, 6), one.clone()),
            ((0, 6), one.clone()),
            ((-1, 4), z(4, &[])),
            ((0, 4), one.clone()),
            ((0, 2), one.clone()),
            ((0, 0), one),
        ],
    )?;
    let ring = CohomologyRing::compute(&k, 6, ProductMode::Twisted).map_err(err)?;
    let x = evaluate("a1*t_v1", &k, ring.twisting()).map_err(err)?;
    let square = ring.multiply_cocycles(&x, 3, &x, 3).map_err(err)?;
    let target = evaluate("t_v1^3", &k, ring.twisting()).map_err(err)?;
    let target = ring.basis().reduce(&target, 6).map_err(err)?;
    ensure(target.iter().any(|&c| c != 0), || "t_1^3 is zero".into())?;
    ensure(square == target, || format!("(a1 t_1)^2 has coordinates {square:?}, expected {target:?}"))
}

fn property_suites() -> Check {
    let mut rng = rng(2024);
    // d^2 = 0 on the Koszul complex
    for case in 0..100 {
        let k = random_koszul(&mut rng, IntegerRing, 5, 4);
        let x = random_element(&mut rng, &k, 4, 3);
        ensure(k.differential(&k.differential(&x)).is_zero(), || format!("Koszul d^2 != 0 in case {case}"))?;
    }
    // d^2 = 0 on the bar construction
    for case in 0..100 {
        let complex = random_complex(&mut rng, 4);
        let n = rng.gen_range(1..=3);
        let lambda = random_matrix(&mut rng, n, complex.vertex_count());
        let bar = BarComplex::new(IntegerRing, complex, lambda).map_err(err)?;
        let mut x = Combination::zero();
        for _ in 0..3 {
            let s = rng.gen_range(0..=3);
            let bars: Vec<Monomial> = (0..s)
                .map(|_| {
                    let mut e = vec![0u32; n];
                    e[rng.gen_range(0..n)] += rng.gen_range(1..=2);
                    Monomial::from_exponents(e)
                })
                .collect();
            let tails = bar.complex().face_ring_basis(rng.gen_range(0..=2));
            if let Some(tail) = tails.first() {
                x.add_scaled(&IntegerRing, &Integer::from(rng.gen_range(-2..=2i64)), &bar.element(bars, tail.clone(), Integer::from(1)));
            }
        }
        ensure(bar.differential(&bar.differential(&x)).is_zero(), || format!("bar d^2 != 0 in case {case}"))?;
    }
    // associativity and the Leibniz rule for the twisted product
    for case in 0..200 {
        let k = random_koszul(&mut rng, IntegerRing, 5, 4);
        let tw = twisting_terms(&k, ProductMode::Twisted).map_err(err)?;
        let [a, b, c] = [0, 1, 2].map(|_| random_element(&mut rng, &k, 3, 2));
        let star = |x: &_, y: &_| k.star_multiply(&tw, x, y).unwrap();
        ensure(star(&star(&a, &b), &c) == star(&a, &star(&b, &c)), || format!("associativity fails in case {case}"))?;
        let t = rng.gen_range(-1..=3);
        let a = random_homogeneous(&mut rng, &k, t, 3);
        let parity = a.iter().next().map_or(0, |(key, _)| key.exterior.len() % 2);
        let mut rhs = star(&k.differential(&a), &b);
        let sign = Integer::from(if parity == 0 { 1 } else { -1 });
        rhs.add_scaled(&IntegerRing, &sign, &star(&a, &k.differential(&b)));
        ensure(k.differential(&star(&a, &b)) == rhs, || format!("Leibniz rule fails in case {case}"))?;
    }
    // Hochster decomposition against the Koszul complex
    for case in 0..10 {
        let complex = random_complex(&mut rng, 6);
        let m = complex.vertex_count();
        let lambda = CharacteristicMatrix::identity(m);
        let d = 2 * m;
        let zk = KoszulComplex::new(IntegerRing, complex.clone(), lambda.clone()).map_err(err)?;
        let h = hochster_tor(&IntegerRing, &complex, &lambda, d).map_err(err)?;
        ensure(zk.tor_table(d).map_err(err)?.same_entries(&h), || format!("Hochster over Z differs in case {case}"))?;
        let f2 = PrimeField::new(2).unwrap();
        let h = hochster_tor(&f2, &complex, &lambda, d).map_err(err)?;
        let fk = KoszulComplex::new(f2, complex, lambda).map_err(err)?;
        ensure(fk.tor_table(d).map_err(err)?.same_entries(&h), || format!("Hochster over F_2 differs in case {case}"))?;
    }
    // bar construction against the Koszul complex, total degrees
    let ray = Fan::from_i64(2, &[vec![1, 0]], &[vec![0]]).map_err(err)?.complete_ghosts();
    let mut cases = Vec::new();
    for b in [2, 3] {
        let fan = Fan::lens_boundary(b, 2).map_err(err)?;
        cases.push((format!("lens b={b}"), fan.complex().clone(), fan.characteristic_matrix()));
    }
    cases.push(("single ray".into(), ray.complex().clone(), ray.characteristic_matrix()));
    cases.push(("ghosts".into(), SimplicialComplex::empty(names(2)), CharacteristicMatrix::identity(2)));
    cases.push(("simplex".into(), SimplicialComplex::simplex(names(3)), CharacteristicMatrix::identity(3)));
    fn compare<R: Ring>(ring: R, name: &str, complex: &SimplicialComplex, lambda: &CharacteristicMatrix) -> Check {
        let d = 6;
        let bar = bar_tor(ring.clone(), complex.clone(), lambda.clone(), d).map_err(err)?;
        let k = KoszulComplex::new(ring.clone(), complex.clone(), lambda.clone()).map_err(err)?.tor_table(d).map_err(err)?;
        for t in 0..=d as i64 {
            ensure(bar.total_degree(t) == k.total_degree(t), || {
                format!("bar differs on {name} over {} in degree {t}", ring.coefficients())
            })?;
        }
        Ok(())
    }
    for (name, complex, lambda) in &cases {
        compare(IntegerRing, name, complex, lambda)?;
        compare(PrimeField::new(2).unwrap(), name, complex, lambda)?;
        compare(PrimeField::new(3).unwrap(), name, complex, lambda)?;
        compare(RationalField, name, complex, lambda)?;
    }
    // dual-basis (K = 1) matrices have no twisting
    for perm in [vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]] {
        let lambda = CharacteristicMatrix::identity(3).permute_columns(&perm);
        let k = KoszulComplex::new(IntegerRing, SimplicialComplex::simplex_boundary(names(3)), lambda).map_err(err)?;
        ensure(twisting_terms(&k, ProductMode::Twisted).map_err(err)?.is_zero(), || format!("q != 0 for {perm:?}"))?;
    }
    Ok(())
}

fn regularity() -> Check {
    let fan = Fan::lens_boundary(2, 3).map_err(err)?;
    ensure(fan.is_k_smooth(Coefficients::Integers), || "boundary fan b=2 not Z-smooth".into())?;
    for b in 2..=6i64 {
        let lambda = CharacteristicMatrix::lens(b, 3);
        let full = VertexSet::full(3);
        let factors = smith_normal_form(&IntegerRing, &lambda.submatrix(full)).invariant_factors;
        ensure(factors == [Integer::from(1), Integer::from(1), Integer::from(b)], || format!("b = {b}: factors {factors:?}"))?;
        ensure(!submatrix_is_regular(&lambda, full, Coefficients::Integers), || format!("b = {b} regular over Z"))?;
        for p in [2u64, 3, 5, 7] {
            let regular = submatrix_is_regular(&lambda, full, Coefficients::PrimeField(p));
            ensure(regular == (b % p as i64 != 0), || format!("b = {b}, p = {p}: regular = {regular}"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("intro example: lens b=2 n=2 over F_2", intro_example),
        ("lens b=2 n=4 over F_2", lens_f2_n4),
        ("lens b=2 n=2..4 over Z, t_1^n = 0", lens_over_z),
        ("odd torsion: lens b=3 over F_3", odd_torsion),
        ("product X_2 x X_3 over Z and x_11^2", product_example),
        ("single ray in Z^n", single_ray),
        ("X'_4 over F_2 and (a1 t_1)^2", x_prime_4),
        ("property suites", property_suites),
        ("regularity of the boundary fan", regularity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => println!("[PASS] {} {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {} {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
