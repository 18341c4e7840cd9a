//! The subcommands.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Value};
use toric_tor::exactla::smith_normal_form;
use toric_tor::expr::parse;
use toric_tor::oracles::{bar_tor, hochster_tor};
use toric_tor::{
    twisting_terms, BigradedComplex, CohomologyBasis, CohomologyRing, IntegerRing, KoszulComplex, KoszulElement,
    PrimeField, ProductMode, RationalField, Ring, TorTable, VertexSet,
};

use crate::problem::{Geometry, Problem};
use crate::render::{format_piece, render_table};
use crate::table_json::table_to_json;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Tor,
    Ring,
    Mult(String, String),
    Hochster,
    Bar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    /// False iff an oracle comparison failed.
    pub passed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, passed: true }
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            3
        }
    }
}

pub fn run(problem: &Problem, command: &Command, format: Format) -> Result<Outcome, CliError> {
    problem.check_mode()?;
    if *command == Command::Check {
        return Ok(check(problem, format));
    }
    match problem.coefficients {
        toric_tor::Coefficients::Integers => run_with(IntegerRing, problem, command, format),
        toric_tor::Coefficients::Rationals => run_with(RationalField, problem, command, format),
        toric_tor::Coefficients::PrimeField(p) => run_with(PrimeField::new(p)?, problem, command, format),
    }
}

fn run_with<R: Ring>(ring: R, problem: &Problem, command: &Command, format: Format) -> Result<Outcome, CliError> {
    let d = problem.degree()?;
    match command {
        Command::Check => unreachable!("handled without a ring"),
        Command::Hochster => {
            let oracle = hochster_tor(&ring, &problem.complex, &problem.matrix, d)?;
            let k = koszul(ring, problem)?;
            Ok(compare("hochster", &k.tor_table(d)?, &oracle, format))
        }
        Command::Bar => {
            let oracle = bar_tor(ring.clone(), problem.complex.clone(), problem.matrix.clone(), d)?;
            let k = koszul(ring, problem)?;
            Ok(compare("bar", &k.tor_table(d)?, &oracle, format))
        }
        Command::Tor => {
            let table = koszul(ring, problem)?.tor_table(d)?;
            Ok(Outcome::ok(match format {
                Format::Text => render_table(&table),
                Format::Json => pretty(&table_to_json(&table)),
            }))
        }
        Command::Ring => {
            let k = koszul(ring, problem)?;
            let cohomology = CohomologyRing::compute(&k, d, problem.mode.into())?;
            Ok(Outcome::ok(ring_report(&cohomology, format)))
        }
        Command::Mult(x, y) => {
            let k = koszul(ring, problem)?;
            mult(&k, problem.mode.into(), d, x, y, format).map(Outcome::ok)
        }
    }
}

fn koszul<R: Ring>(ring: R, problem: &Problem) -> Result<KoszulComplex<R>, CliError> {
    Ok(KoszulComplex::new(ring, problem.complex.clone(), problem.matrix.clone())?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn cone_name(problem: &Problem, cone: VertexSet) -> String {
    let names = problem.complex.vertex_names();
    let inner: Vec<&str> = cone.iter().map(|v| names[v].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

fn check(problem: &Problem, format: Format) -> Outcome {
    let k = problem.coefficients;
    let cones: Vec<VertexSet> = match &problem.geometry {
        Geometry::Fan { fan, .. } => fan.maximal_cones(),
        Geometry::Complex => problem.complex.facets().to_vec(),
    };
    let ghosts = match &problem.geometry {
        Geometry::Fan { ghosts, .. } => *ghosts,
        Geometry::Complex => 0,
    };
    let mut rows = Vec::new();
    let mut smooth = true;
    for &cone in &cones {
        let snf = smith_normal_form(&IntegerRing, &problem.matrix.submatrix(cone));
        let regular = snf.rank() == cone.len() && snf.invariant_factors.iter().all(|d| k.is_unit_image(d));
        smooth &= regular;
        rows.push((cone, regular, snf.invariant_factors));
    }
    let output = match format {
        Format::Text => {
            let mut s = format!("coefficients: {k}\n");
            for (cone, regular, factors) in &rows {
                let factors: Vec<String> = factors.iter().map(|d| d.to_string()).collect();
                let verdict = if *regular { "regular" } else { "not regular" };
                let _ = writeln!(s, "cone {}: {verdict} (invariant factors [{}])", cone_name(problem, *cone), factors.join(", "));
            }
            let _ = writeln!(s, "ghost columns added: {ghosts}");
            let _ = writeln!(s, "k-smooth: {smooth}");
            s
        }
        Format::Json => pretty(&json!({
            "coefficients": k.to_string(),
            "cones": rows.iter().map(|(cone, regular, factors)| json!({
                "vertices": cone.iter().map(|v| problem.complex.vertex_names()[v].clone()).collect::<Vec<_>>(),
                "regular": regular,
                "invariant_factors": factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "ghosts_added": ghosts,
            "smooth": smooth,
        })),
    };
    Outcome::ok(output)
}

fn compare(oracle_name: &str, koszul: &TorTable, oracle: &TorTable, format: Format) -> Outcome {
    let keys: BTreeSet<(i64, i64)> = koszul.entries.keys().chain(oracle.entries.keys()).copied().collect();
    let lines: Vec<((i64, i64), bool)> = keys.iter().map(|&(p, q)| ((p, q), koszul.get(p, q) == oracle.get(p, q))).collect();
    let passed = koszul.same_entries(oracle);
    let verdict = if passed { "PASS" } else { "FAIL" };
    let output = match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "koszul:\n{}", render_table(koszul));
            let _ = writeln!(s, "{oracle_name}:\n{}", render_table(oracle));
            for ((p, q), ok) in &lines {
                let k = format_piece(koszul.coefficients, &koszul.get(*p, *q));
                let o = format_piece(oracle.coefficients, &oracle.get(*p, *q));
                let _ = writeln!(s, "{} ({p},{q}): koszul {k}, {oracle_name} {o}", if *ok { "PASS" } else { "FAIL" });
            }
            let _ = writeln!(s, "verdict: {verdict}");
            s
        }
        Format::Json => pretty(&json!({
            "koszul": table_to_json(koszul),
            oracle_name: table_to_json(oracle),
            "mismatches": lines.iter().filter(|(_, ok)| !ok).map(|((p, q), _)| json!([p, q])).collect::<Vec<_>>(),
            "verdict": verdict,
        })),
    };
    Outcome { output, passed }
}

fn class_order<R: Ring>(ring: &R, annihilator: &Option<R::Elem>) -> String {
    match annihilator {
        None => "free".into(),
        Some(a) => format!("order {}", ring.format(a)),
    }
}

fn ring_report<R: Ring>(c: &CohomologyRing<'_, R>, format: Format) -> String {
    let k = c.koszul();
    let ring = k.ring();
    let d = c.max_total_degree() as i64;
    let coords = |v: &[R::Elem]| v.iter().map(|e| ring.format(e)).collect::<Vec<_>>();
    match format {
        Format::Text => {
            let mut s = String::new();
            for t in 0..=d {
                let classes = c.classes(t).expect("all degrees computed");
                if classes.is_empty() {
                    continue;
                }
                let _ = writeln!(s, "degree {t}:");
                for (i, cl) in classes.iter().enumerate() {
                    let (p, q) = cl.bidegree;
                    let _ = writeln!(s, "  x{t}_{i} ({p},{q}) {}: {}", class_order(ring, &cl.annihilator), k.format(&cl.representative));
                }
            }
            let _ = writeln!(s, "products:");
            for (&((s1, a), (t1, b)), v) in c.constants() {
                if v.iter().all(|e| ring.is_zero(e)) || s1 == 0 || t1 == 0 {
                    continue;
                }
                let _ = writeln!(s, "  x{s1}_{a} * x{t1}_{b} = [{}]", coords(v).join(", "));
            }
            s
        }
        Format::Json => {
            let degrees: Vec<Value> = (0..=d)
                .map(|t| {
                    let classes = c.classes(t).expect("all degrees computed");
                    json!({
                        "degree": t,
                        "classes": classes.iter().map(|cl| json!({
                            "bidegree": [cl.bidegree.0, cl.bidegree.1],
                            "order": cl.annihilator.as_ref().map(|a| ring.format(a)),
                            "representative": k.format(&cl.representative),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let products: Vec<Value> = c
                .constants()
                .iter()
                .map(|(&((s1, a), (t1, b)), v)| json!({"left": [s1, a], "right": [t1, b], "coordinates": coords(v)}))
                .collect();
            pretty(&json!({"coefficients": ring.coefficients().to_string(), "degrees": degrees, "products": products}))
        }
    }
}

/// The common total degree of `x`, or `None` for zero.
fn total_degree<E: Clone>(x: &KoszulElement<E>) -> Result<Option<i64>, CliError> {
    let mut degree = None;
    for (key, _) in x.iter() {
        let t = key.total_degree();
        if degree.is_some_and(|d| d != t) {
            return Err(toric_tor::Error::NotHomogeneous.into());
        }
        degree = Some(t);
    }
    Ok(degree)
}

fn mult<R: Ring>(k: &KoszulComplex<R>, mode: ProductMode, d: usize, x: &str, y: &str, format: Format) -> Result<String, CliError> {
    let tw = twisting_terms(k, mode)?;
    let mut cocycles = Vec::new();
    for text in [x, y] {
        let z = parse(text)?.evaluate(k, &tw)?;
        let dz = k.differential(&z);
        if !dz.is_zero() {
            return Err(CliError::NotACocycle { expr: text.into(), differential: k.format(&dz) });
        }
        let t = total_degree(&z)?.unwrap_or(0);
        cocycles.push((z, t));
    }
    let (s, t) = (cocycles[0].1, cocycles[1].1);
    let product = k.star_multiply(&tw, &cocycles[0].0, &cocycles[1].0)?;
    let degree = total_degree(&product)?.unwrap_or(s + t);
    let basis = CohomologyBasis::new(k, d, [s, t, degree])?;
    let ring = k.ring();
    let coordinates: Vec<String> = basis.reduce(&product, degree)?.iter().map(|e| ring.format(e)).collect();
    let coboundary = basis.is_coboundary(&product, degree)?;
    let classes = basis.classes(degree)?;
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "product: {}", k.format(&product));
            let _ = writeln!(out, "total degree: {degree}");
            let _ = writeln!(out, "basis:");
            for (i, cl) in classes.iter().enumerate() {
                let (p, q) = cl.bidegree;
                let _ = writeln!(out, "  [{i}] ({p},{q}) {}: {}", class_order(ring, &cl.annihilator), k.format(&cl.representative));
            }
            let _ = writeln!(out, "coordinates: [{}]", coordinates.join(", "));
            let _ = writeln!(out, "coboundary: {coboundary}");
            out
        }
        Format::Json => pretty(&json!({
            "product": k.format(&product),
            "total_degree": degree,
            "basis": classes.iter().map(|cl| json!({
                "bidegree": [cl.bidegree.0, cl.bidegree.1],
                "order": cl.annihilator.as_ref().map(|a| ring.format(a)),
                "representative": k.format(&cl.representative),
            })).collect::<Vec<_>>(),
            "coordinates": coordinates,
            "coboundary": coboundary,
        })),
    })
}
