use num_traits::One;

use super::group::CanonicalGroup;
use crate::linalg::invariant_factors;
use crate::poset::{ChainSet, Poset};
use crate::Matrix;

/// The order complex of a finite poset: its simplices are the strict chains.
///
/// Chains are stored top-down (`c₀ > c₁ > …`), matching the diagram
/// complexes; only orientation signs depend on this.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    chains: Vec<ChainSet>,
}

impl OrderComplex {
    /// Simplices of dimension `0..=max_dim`, or all of them when `None`.
    pub fn new(poset: &Poset, max_dim: Option<usize>) -> Self {
        let top = poset.longest_chain_length();
        let last = max_dim.map_or(top, |m| m.min(top));
        let mut chains: Vec<ChainSet> = (0..=last).map(|n| poset.chains(n)).collect();
        if poset.is_empty() {
            chains.clear();
        }
        OrderComplex { chains }
    }

    pub fn dimension(&self) -> Option<usize> {
        self.chains.len().checked_sub(1)
    }

    pub fn simplices(&self, n: usize) -> &[Vec<usize>] {
        self.chains.get(n).map_or(&[], |c| c.chains.as_slice())
    }

    /// `∂_n : C_n → C_{n-1}` with `∂(c₀…c_n) = Σ (−1)^i (c₀…ĉ_i…c_n)`.
    pub fn boundary(&self, n: usize) -> Matrix {
        let cols = self.simplices(n);
        if n == 0 {
            return Matrix::zeros(0, cols.len());
        }
        let faces = match self.chains.get(n - 1) {
            Some(f) => f,
            None => return Matrix::zeros(0, cols.len()),
        };
        let index = faces.position_map();
        let mut m = Matrix::zeros(faces.len(), cols.len());
        for (j, chain) in cols.iter().enumerate() {
            for i in 0..chain.len() {
                let mut face = chain.clone();
                face.remove(i);
                let row = index[face.as_slice()];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(row, j, crate::Int::from(sign));
            }
        }
        m
    }
}

/// `H_n` of the order complex from ranks and invariant factors of the
/// boundary matrices.
pub fn simplicial_homology(k: &OrderComplex, n: usize) -> CanonicalGroup {
    let cells = k.simplices(n).len();
    if cells == 0 {
        return CanonicalGroup::zero();
    }
    let rank_out = if n == 0 {
        0
    } else {
        invariant_factors(&k.boundary(n)).len()
    };
    let incoming = invariant_factors(&k.boundary(n + 1));
    let rank = cells - rank_out - incoming.len();
    CanonicalGroup::from_diagonal(rank, incoming.into_iter().filter(|d| !d.is_one()))
}

/// Outcome of testing the order complex of a poset for acyclicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Acyclicity {
    Acyclic,
    /// First failing degree; degree `0` reports the unreduced `H₀ = ℤ^k`.
    FailsAt {
        degree: usize,
        group: CanonicalGroup,
    },
}

impl Acyclicity {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Acyclicity::Acyclic)
    }
}

/// Whether the order complex has the homology of a point in degrees up to
/// `max_degree` (the longest chain length by default).
pub fn acyclicity_check(poset: &Poset, max_degree: Option<usize>) -> Acyclicity {
    if poset.is_empty() {
        return Acyclicity::FailsAt {
            degree: 0,
            group: CanonicalGroup::zero(),
        };
    }
    let top = max_degree.unwrap_or_else(|| poset.longest_chain_length());
    let k = OrderComplex::new(poset, Some(top + 1));
    for n in 0..=top {
        let h = simplicial_homology(&k, n);
        let ok = if n == 0 {
            h.is_integers()
        } else {
            h.is_trivial()
        };
        if !ok {
            return Acyclicity::FailsAt {
                degree: n,
                group: h,
            };
        }
    }
    Acyclicity::Acyclic
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::tests::c2;

    fn poset(names: &[&str], rel: &[(&str, &str)]) -> Poset {
        Poset::from_named(names, rel).unwrap()
    }

    #[test]
    fn boundary_squares_to_zero() {
        let p = poset(&["a", "b", "c", "d"], &[("b", "a"), ("c", "b"), ("d", "c")]);
        let k = OrderComplex::new(&p, None);
        for n in 1..=3 {
            assert!((&k.boundary(n) * &k.boundary(n + 1)).is_zero());
        }
        assert_eq!(k.simplices(3).len(), 1);
    }

    #[test]
    fn circle_from_crown() {
        // C₂ is a 4-cycle as a graph: the circle
        let k = OrderComplex::new(&c2(), None);
        assert_eq!(simplicial_homology(&k, 0), CanonicalGroup::free(1));
        assert_eq!(simplicial_homology(&k, 1), CanonicalGroup::free(1));
        assert_eq!(
            acyclicity_check(&c2(), None),
            Acyclicity::FailsAt {
                degree: 1,
                group: CanonicalGroup::free(1)
            }
        );
    }

    #[test]
    fn cones_and_disconnected() {
        let cone = poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")]);
        assert!(acyclicity_check(&cone, None).is_acyclic());
        let antichain = poset(&["a", "b", "c"], &[]);
        assert_eq!(
            acyclicity_check(&antichain, None),
            Acyclicity::FailsAt {
                degree: 0,
                group: CanonicalGroup::free(3)
            }
        );
    }

    #[test]
    fn suspended_circle_is_a_sphere() {
        // S₂: two maxima over two middle elements over two minima
        let p = poset(
            &["0", "1", "2", "3", "4", "5"],
            &[
                ("2", "0"),
                ("3", "0"),
                ("2", "1"),
                ("3", "1"),
                ("4", "2"),
                ("5", "2"),
                ("4", "3"),
                ("5", "3"),
            ],
        );
        let k = OrderComplex::new(&p, None);
        let hs: Vec<_> = (0..=2).map(|n| simplicial_homology(&k, n)).collect();
        assert_eq!(
            hs,
            vec![
                CanonicalGroup::free(1),
                CanonicalGroup::zero(),
                CanonicalGroup::free(1)
            ]
        );
    }
}
