//! Invariant factors without transforms.
//!
//! Unit pivots are eliminated first on a sparse row representation (the
//! differentials built here are dominated by `±1` entries), and only the
//! leftover block without unit entries goes through the dense Smith reduction.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::matrix::{DenseMatrix, Matrix};
use super::snf::{reduce, Track};
use crate::ring::Ring;

type Row<E> = Vec<(usize, E)>;

/// `target + f * source`, both sorted by column.
fn axpy<R: Ring>(ring: &R, target: &Row<R::Elem>, f: &R::Elem, source: &Row<R::Elem>) -> Row<R::Elem> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let take_t = j >= source.len() || (i < target.len() && target[i].0 < source[j].0);
        let take_s = i >= target.len() || (j < source.len() && source[j].0 < target[i].0);
        if take_t {
            out.push(target[i].clone());
            i += 1;
        } else if take_s {
            out.push((source[j].0, ring.mul(f, &source[j].1)));
            j += 1;
        } else {
            let v = ring.add(&target[i].1, &ring.mul(f, &source[j].1));
            if !ring.is_zero(&v) {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Nonzero invariant factors of `m`, normalized and ordered by divisibility.
pub fn invariant_factors<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Vec<R::Elem> {
    let mut rows = m.to_rows(ring);
    let mut col_rows: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); m.cols()];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut alive: BTreeSet<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let mut unit_pivots = 0usize;

    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        'scan: for &r in &alive {
            let len = rows[r].len() - 1;
            for (c, v) in &rows[r] {
                if !ring.is_unit(v) {
                    continue;
                }
                let score = len * (col_rows[*c].len() - 1);
                if best.is_none_or(|(_, _, s)| score < s) {
                    best = Some((r, *c, score));
                    if score == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let pivot_row = core::mem::take(&mut rows[pr]);
        let pv = &pivot_row.iter().find(|(c, _)| *c == pc).expect("pivot present").1;
        let pv_inv = ring.inverse(pv).expect("unit pivot");
        let targets: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in targets {
            let a = &rows[r].iter().find(|(c, _)| *c == pc).expect("column index consistent").1;
            let f = ring.neg(&ring.mul(a, &pv_inv));
            let updated = axpy(ring, &rows[r], &f, &pivot_row);
            for (c, _) in &rows[r] {
                col_rows[*c].remove(&r);
            }
            for (c, _) in &updated {
                col_rows[*c].insert(r);
            }
            rows[r] = updated;
            if rows[r].is_empty() {
                alive.remove(&r);
            }
        }
        for (c, _) in &pivot_row {
            col_rows[*c].remove(&pr);
        }
        alive.remove(&pr);
        unit_pivots += 1;
    }

    let mut factors: Vec<R::Elem> = (0..unit_pivots).map(|_| ring.one()).collect();
    let rest_rows: Vec<usize> = alive.iter().copied().collect();
    if rest_rows.is_empty() {
        return factors;
    }
    let mut cols: Vec<usize> = rest_rows.iter().flat_map(|&r| rows[r].iter().map(|(c, _)| *c)).collect();
    cols.sort_unstable();
    cols.dedup();
    let mut dense = DenseMatrix::zeros(ring, rest_rows.len(), cols.len());
    for (i, &r) in rest_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            let j = cols.binary_search(c).expect("collected column");
            dense.set(i, j, v.clone());
        }
    }
    let red = reduce(ring, dense, Track::default());
    factors.extend((0..red.rank).map(|i| red.m.get(i, i).clone()));
    factors
}

pub fn rank<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> usize {
    invariant_factors(ring, m).len()
}
