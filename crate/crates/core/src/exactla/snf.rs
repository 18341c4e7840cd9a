//! Smith normal form over a Euclidean ring with optional transform tracking.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::matrix::DenseMatrix;
use crate::ring::Ring;

/// `left * M * right = diagonal`, with both transforms invertible over the ring.
#[derive(Clone, Debug)]
pub struct SnfDecomposition<E> {
    pub diagonal: DenseMatrix<E>,
    pub left: DenseMatrix<E>,
    pub left_inverse: DenseMatrix<E>,
    pub right: DenseMatrix<E>,
    pub right_inverse: DenseMatrix<E>,
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, normalized.
    pub invariant_factors: Vec<E>,
}

impl<E> SnfDecomposition<E> {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Which transforms to carry along.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub left: bool,
    pub right: bool,
}

pub(crate) struct Reduction<E> {
    pub m: DenseMatrix<E>,
    pub left: Option<(DenseMatrix<E>, DenseMatrix<E>)>,
    pub right: Option<(DenseMatrix<E>, DenseMatrix<E>)>,
    pub rank: usize,
}

struct Reducer<'r, R: Ring> {
    ring: &'r R,
    m: DenseMatrix<R::Elem>,
    // (S, S^{-1}) and (T, T^{-1})
    left: Option<(DenseMatrix<R::Elem>, DenseMatrix<R::Elem>)>,
    right: Option<(DenseMatrix<R::Elem>, DenseMatrix<R::Elem>)>,
}

impl<R: Ring> Reducer<'_, R> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some((s, si)) = &mut self.left {
            s.swap_rows(a, b);
            si.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some((t, ti)) = &mut self.right {
            t.swap_cols(a, b);
            ti.swap_rows(a, b);
        }
    }

    /// row[target] += f * row[source]
    fn add_row(&mut self, target: usize, source: usize, f: &R::Elem) {
        let ring = self.ring;
        self.m.add_row_multiple(ring, target, source, f);
        if let Some((s, si)) = &mut self.left {
            s.add_row_multiple(ring, target, source, f);
            si.add_col_multiple(ring, source, target, &ring.neg(f));
        }
    }

    /// col[target] += f * col[source]
    fn add_col(&mut self, target: usize, source: usize, f: &R::Elem) {
        let ring = self.ring;
        self.m.add_col_multiple(ring, target, source, f);
        if let Some((t, ti)) = &mut self.right {
            t.add_col_multiple(ring, target, source, f);
            ti.add_row_multiple(ring, source, target, &ring.neg(f));
        }
    }

    fn scale_row(&mut self, row: usize, unit: &R::Elem) {
        let ring = self.ring;
        self.m.scale_row(ring, row, unit);
        if let Some((s, si)) = &mut self.left {
            s.scale_row(ring, row, unit);
            let inv = ring.inverse(unit).expect("unit");
            si.scale_col(ring, row, &inv);
        }
    }

    fn smallest_in(&self, k: usize) -> Option<(usize, usize)> {
        let ring = self.ring;
        let mut best: Option<(usize, usize)> = None;
        for j in k..self.m.cols() {
            for i in k..self.m.rows() {
                let e = self.m.get(i, j);
                if ring.is_zero(e) {
                    continue;
                }
                if ring.is_unit(e) {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if ring.size_cmp(e, self.m.get(bi, bj)) != Ordering::Less => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row and column `k` outside the pivot. Returns the position of a
    /// remainder smaller than the pivot, if one appeared.
    fn clear_cross(&mut self, k: usize) -> Option<(usize, usize)> {
        let ring = self.ring;
        let mut smaller: Option<(usize, usize)> = None;
        for i in k + 1..self.m.rows() {
            if ring.is_zero(self.m.get(i, k)) {
                continue;
            }
            let (q, r) = ring.div_rem(self.m.get(i, k), self.m.get(k, k));
            self.add_row(i, k, &ring.neg(&q));
            if !ring.is_zero(&r) {
                smaller = pick_smaller(ring, &self.m, smaller, (i, k));
            }
        }
        for j in k + 1..self.m.cols() {
            if ring.is_zero(self.m.get(k, j)) {
                continue;
            }
            let (q, r) = ring.div_rem(self.m.get(k, j), self.m.get(k, k));
            self.add_col(j, k, &ring.neg(&q));
            if !ring.is_zero(&r) {
                smaller = pick_smaller(ring, &self.m, smaller, (k, j));
            }
        }
        smaller
    }

    fn run(&mut self) -> usize {
        let ring = self.ring;
        let bound = self.m.rows().min(self.m.cols());
        let mut k = 0;
        while k < bound {
            let Some((pi, pj)) = self.smallest_in(k) else { break };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            loop {
                if let Some((i, j)) = self.clear_cross(k) {
                    self.swap_rows(k, i);
                    self.swap_cols(k, j);
                    continue;
                }
                if ring.is_unit(self.m.get(k, k)) {
                    break;
                }
                let pivot = self.m.get(k, k).clone();
                let offender = (k + 1..self.m.rows()).find(|&i| {
                    (k + 1..self.m.cols()).any(|j| ring.divide(self.m.get(i, j), &pivot).is_none())
                });
                match offender {
                    Some(i) => self.add_row(k, i, &ring.one()),
                    None => break,
                }
            }
            let unit = ring.normalizing_unit(self.m.get(k, k));
            if unit != ring.one() {
                self.scale_row(k, &unit);
            }
            k += 1;
        }
        k
    }
}

fn pick_smaller<R: Ring>(
    ring: &R,
    m: &DenseMatrix<R::Elem>,
    current: Option<(usize, usize)>,
    candidate: (usize, usize),
) -> Option<(usize, usize)> {
    let e = m.get(candidate.0, candidate.1);
    if ring.is_zero(e) {
        return current;
    }
    match current {
        Some((i, j)) if ring.size_cmp(m.get(i, j), e) != Ordering::Greater => current,
        _ => Some(candidate),
    }
}

pub(crate) fn reduce<R: Ring>(ring: &R, m: DenseMatrix<R::Elem>, track: Track) -> Reduction<R::Elem> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut reducer = Reducer {
        ring,
        m,
        left: track
            .left
            .then(|| (DenseMatrix::identity(ring, rows), DenseMatrix::identity(ring, rows))),
        right: track
            .right
            .then(|| (DenseMatrix::identity(ring, cols), DenseMatrix::identity(ring, cols))),
    };
    let rank = reducer.run();
    Reduction { m: reducer.m, left: reducer.left, right: reducer.right, rank }
}

/// Smith normal form with both transforms and their inverses.
///
/// The pivot at each step is a smallest nonzero entry of the remaining block,
/// which keeps intermediate coefficients small on the matrices seen here.
pub fn smith_normal_form<R: Ring>(ring: &R, m: &DenseMatrix<R::Elem>) -> SnfDecomposition<R::Elem> {
    let red = reduce(ring, m.clone(), Track { left: true, right: true });
    let invariant_factors = (0..red.rank).map(|i| red.m.get(i, i).clone()).collect();
    let (left, left_inverse) = red.left.expect("tracked");
    let (right, right_inverse) = red.right.expect("tracked");
    SnfDecomposition { diagonal: red.m, left, left_inverse, right, right_inverse, invariant_factors }
}
