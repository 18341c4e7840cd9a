//! `Tor^{-p, 2q} = ⊕_{|W| = q} H̃^{q-p-1}(Σ_W)` for the identity matrix.

use alloc::collections::BTreeMap;

use crate::chain::TorTable;
use crate::error::Error;
use crate::exactla::GradedPiece;
use crate::fan::CharacteristicMatrix;
use crate::ring::Ring;
use crate::simplicial::{SimplicialComplex, VertexSet};

/// The Tor table of `k[Σ]` over the full polynomial ring, assembled from the
/// reduced cohomology of all full subcomplexes. Requires `λ` to be the
/// identity.
pub fn hochster_tor<R: Ring>(
    ring: &R,
    complex: &SimplicialComplex,
    lambda: &CharacteristicMatrix,
    max_total_degree: usize,
) -> Result<TorTable, Error> {
    if lambda.vertex_count() != complex.vertex_count() || !lambda.is_identity() {
        return Err(Error::NotMomentAngleCase);
    }
    let m = complex.vertex_count();
    let d = max_total_degree as i64;
    let subsets: alloc::vec::Vec<VertexSet> = (0..=m).flat_map(|q| VertexSet::full(m).subsets_of_size(q)).collect();
    let contribution = |w: &VertexSet| {
        let q = w.len() as i64;
        let sub = complex.full_subcomplex(*w);
        sub.reduced_cohomology(ring, q as i32 - 1)
            .into_iter()
            .filter(|(_, piece)| !piece.is_zero())
            .map(move |(j, piece)| (((j as i64) + 1 - q, 2 * q), piece))
            .filter(move |((p, q2), _)| p + q2 <= d)
            .collect::<alloc::vec::Vec<_>>()
    };
    #[cfg(feature = "parallel")]
    let parts: alloc::vec::Vec<_> = {
        use rayon::prelude::*;
        subsets.par_iter().map(contribution).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: alloc::vec::Vec<_> = subsets.iter().map(contribution).collect();
    let mut entries: BTreeMap<(i64, i64), GradedPiece> = BTreeMap::new();
    for (key, piece) in parts.into_iter().flatten() {
        let slot = entries.entry(key).or_default();
        *slot = slot.direct_sum(&piece);
    }
    Ok(TorTable { coefficients: ring.coefficients(), max_total_degree, rank: m, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::IntegerRing;
    use alloc::string::{String, ToString};
    use alloc::vec;
    use alloc::vec::Vec;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn ghosts_give_exterior_algebra() {
        let c = SimplicialComplex::empty(names(3));
        let t = hochster_tor(&IntegerRing, &c, &CharacteristicMatrix::identity(3), 6).unwrap();
        let expected: Vec<((i64, i64), GradedPiece)> = vec![
            ((-3, 6), GradedPiece::free(1)),
            ((-2, 4), GradedPiece::free(3)),
            ((-1, 2), GradedPiece::free(3)),
            ((0, 0), GradedPiece::free(1)),
        ];
        assert_eq!(t.entries.into_iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn square() {
        let c = SimplicialComplex::from_facets(
            &["1", "2", "3", "4"],
            &[vec!["1", "2"], vec!["2", "3"], vec!["3", "4"], vec!["1", "4"]],
        )
        .unwrap();
        let t = hochster_tor(&IntegerRing, &c, &CharacteristicMatrix::identity(4), 6).unwrap();
        let expected: Vec<((i64, i64), GradedPiece)> =
            vec![((-2, 8), GradedPiece::free(1)), ((-1, 4), GradedPiece::free(2)), ((0, 0), GradedPiece::free(1))];
        assert_eq!(t.entries.into_iter().collect::<Vec<_>>(), expected);
        let ranks: Vec<usize> = (0..=6).map(|d| t_total(&hochster_tor(&IntegerRing, &c, &CharacteristicMatrix::identity(4), 6).unwrap(), d)).collect();
        assert_eq!(ranks, vec![1, 0, 0, 2, 0, 0, 1]);
    }

    fn t_total(t: &TorTable, d: i64) -> usize {
        t.total_degree(d).free_rank
    }

    #[test]
    fn simplex_is_trivial() {
        let c = SimplicialComplex::simplex(names(3));
        let t = hochster_tor(&IntegerRing, &c, &CharacteristicMatrix::identity(3), 6).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.get(0, 0), GradedPiece::free(1));
    }

    #[test]
    fn rejects_other_matrices() {
        let c = SimplicialComplex::simplex(names(2));
        assert_eq!(hochster_tor(&IntegerRing, &c, &CharacteristicMatrix::lens(2, 2), 4), Err(Error::NotMomentAngleCase));
    }
}
