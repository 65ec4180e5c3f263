use super::group::{homology_at, CanonicalGroup, GroupHom, Homology, PresentedAbGroup};
use crate::error::{Error, Result};
use crate::Matrix;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    /// Differentials raise degree.
    Cochain,
    /// Differentials lower degree.
    Chain,
}

/// A labelled block of generators inside one degree of a complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Summand {
    pub label: String,
    pub offset: usize,
    pub generators: usize,
}

/// A bounded complex of presented groups in degrees `0..len`.
///
/// `differentials[k]` joins degrees `k` and `k + 1`, pointing up for cochain
/// complexes and down for chain complexes.
#[derive(Clone, Debug)]
pub struct Complex {
    grading: Grading,
    groups: Vec<PresentedAbGroup>,
    summands: Vec<Vec<Summand>>,
    differentials: Vec<Matrix>,
}

impl Complex {
    pub fn new(
        grading: Grading,
        groups: Vec<PresentedAbGroup>,
        summands: Vec<Vec<Summand>>,
        differentials: Vec<Matrix>,
    ) -> Result<Self> {
        if summands.len() != groups.len() || differentials.len() + 1 != groups.len().max(1) {
            return Err(Error::Dimension(format!(
                "{} groups, {} summand lists and {} differentials",
                groups.len(),
                summands.len(),
                differentials.len()
            )));
        }
        let c = Complex {
            grading,
            groups,
            summands,
            differentials,
        };
        for k in 0..c.differentials.len() {
            let (lo, hi) = (&c.groups[k], &c.groups[k + 1]);
            let (rows, cols) = match grading {
                Grading::Cochain => (hi.generators(), lo.generators()),
                Grading::Chain => (lo.generators(), hi.generators()),
            };
            let d = &c.differentials[k];
            if d.rows() != rows || d.cols() != cols {
                return Err(Error::Dimension(format!(
                    "differential {k} is {}x{}, expected {rows}x{cols}",
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for n in 0..c.len() {
            let out = c.outgoing(n);
            if !out.is_well_defined() {
                return Err(Error::IllDefinedHom(format!(
                    "differential leaving degree {n}"
                )));
            }
            if !c.incoming(n).then(&out)?.is_zero() {
                return Err(Error::NonzeroComposite(format!(
                    "d∘d ≠ 0 through degree {n}"
                )));
            }
        }
        Ok(c)
    }

    /// Builds a complex whose groups are direct sums of labelled blocks.
    pub fn from_blocks(
        grading: Grading,
        blocks: Vec<Vec<(String, PresentedAbGroup)>>,
        differentials: Vec<Matrix>,
    ) -> Result<Self> {
        let mut groups = Vec::with_capacity(blocks.len());
        let mut summands = Vec::with_capacity(blocks.len());
        for degree in blocks {
            let mut offset = 0;
            let mut labels = Vec::with_capacity(degree.len());
            for (label, g) in &degree {
                labels.push(Summand {
                    label: label.clone(),
                    offset,
                    generators: g.generators(),
                });
                offset += g.generators();
            }
            let parts: Vec<&PresentedAbGroup> = degree.iter().map(|(_, g)| g).collect();
            groups.push(PresentedAbGroup::direct_sum(&parts));
            summands.push(labels);
        }
        Self::new(grading, groups, summands, differentials)
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Number of stored degrees.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn group(&self, n: usize) -> PresentedAbGroup {
        self.groups
            .get(n)
            .cloned()
            .unwrap_or_else(PresentedAbGroup::trivial)
    }

    pub fn summands(&self, n: usize) -> &[Summand] {
        self.summands.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Raw differential matrix between degrees `k` and `k + 1`.
    pub fn differential_matrix(&self, k: usize) -> Option<&Matrix> {
        self.differentials.get(k)
    }

    fn hom(&self, from: usize, to: usize, k: Option<usize>) -> GroupHom {
        let (s, t) = (self.group(from), self.group(to));
        match k.and_then(|k| self.differentials.get(k)) {
            Some(m) => GroupHom {
                source: s,
                target: t,
                matrix: m.clone(),
            },
            None => GroupHom::zero(&s, &t),
        }
    }

    /// The differential leaving degree `n`; zero past either end.
    pub fn outgoing(&self, n: usize) -> GroupHom {
        match self.grading {
            Grading::Cochain => self.hom(n, n + 1, Some(n)),
            Grading::Chain if n == 0 => {
                GroupHom::zero(&self.group(0), &PresentedAbGroup::trivial())
            }
            Grading::Chain => self.hom(n, n - 1, Some(n - 1)),
        }
    }

    /// The differential arriving at degree `n`; zero past either end.
    pub fn incoming(&self, n: usize) -> GroupHom {
        match self.grading {
            Grading::Cochain if n == 0 => {
                GroupHom::zero(&PresentedAbGroup::trivial(), &self.group(0))
            }
            Grading::Cochain => self.hom(n - 1, n, Some(n - 1)),
            Grading::Chain => self.hom(n + 1, n, Some(n)),
        }
    }

    pub fn homology(&self, n: usize) -> Result<Homology> {
        homology_at(&self.incoming(n), &self.outgoing(n))
    }

    /// Canonical homology in every stored degree.
    pub fn homology_groups(&self) -> Result<Vec<CanonicalGroup>> {
        (0..self.len())
            .map(|n| Ok(self.homology(n)?.canonical_form()))
            .collect()
    }
}

/// Degreewise maps between two complexes of the same grading.
#[derive(Clone, Debug)]
pub struct ChainMap<'a> {
    pub source: &'a Complex,
    pub target: &'a Complex,
    components: Vec<Matrix>,
}

impl<'a> ChainMap<'a> {
    /// `components[n]` maps degree `n`; missing degrees are zero.
    pub fn new(source: &'a Complex, target: &'a Complex, components: Vec<Matrix>) -> Result<Self> {
        if source.grading != target.grading {
            return Err(Error::Dimension(
                "chain map between different gradings".into(),
            ));
        }
        for (n, m) in components.iter().enumerate() {
            let (r, c) = (target.group(n).generators(), source.group(n).generators());
            if m.rows() != r || m.cols() != c {
                return Err(Error::Dimension(format!(
                    "component {n} is {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    pub fn component(&self, n: usize) -> GroupHom {
        let (s, t) = (self.source.group(n), self.target.group(n));
        match self.components.get(n) {
            Some(m) => GroupHom {
                source: s,
                target: t,
                matrix: m.clone(),
            },
            None => GroupHom::zero(&s, &t),
        }
    }

    /// Whether `f ∘ d = d' ∘ f` on the differential leaving degree `n`.
    pub fn commutes_at(&self, n: usize) -> Result<bool> {
        let d = self.source.outgoing(n);
        let d2 = self.target.outgoing(n);
        let next = match self.source.grading {
            Grading::Cochain => n + 1,
            Grading::Chain if n == 0 => return Ok(true),
            Grading::Chain => n - 1,
        };
        let left = d.then(&self.component(next))?;
        let right = self.component(n).then(&d2)?;
        if left.matrix.rows() == 0 || left.matrix.cols() == 0 {
            return Ok(true);
        }
        left.equals(&right)
    }

    pub fn is_chain_map(&self) -> Result<bool> {
        let top = self.source.len().max(self.target.len());
        for n in 0..=top {
            if !self.commutes_at(n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The map `H_n(f)` in the homology generators of `H_n(source)` and
/// `H_n(target)`.
pub fn induced_on_homology(f: &ChainMap<'_>, n: usize) -> Result<GroupHom> {
    let squares = match f.source.grading {
        Grading::Cochain => vec![Some(n), n.checked_sub(1)],
        Grading::Chain => vec![Some(n), Some(n + 1)],
    };
    for k in squares.into_iter().flatten() {
        if !f.commutes_at(k)? {
            return Err(Error::NotChainMap(k));
        }
    }
    let h = f.source.homology(n)?;
    let h2 = f.target.homology(n)?;
    let comp = f.component(n).matrix;
    let m = h.group.generators();
    let mut columns = Vec::with_capacity(m);
    for j in 0..m {
        let image = comp.mul_vec(&h.lift(j))?;
        let coords = h2.coordinates(&image)?.ok_or(Error::NotChainMap(n))?;
        columns.push(coords);
    }
    let matrix = Matrix::from_columns(&columns, h2.group.generators())?;
    GroupHom::new(h.group, h2.group, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn free(n: usize) -> PresentedAbGroup {
        PresentedAbGroup::free(n)
    }

    fn mat(rows: usize, cols: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(rows, cols, e)
    }

    fn circle() -> Complex {
        // simplicial circle: 3 vertices, 3 edges
        Complex::new(
            Grading::Chain,
            vec![free(3), free(3)],
            vec![vec![], vec![]],
            vec![mat(3, 3, &[-1, 0, 1, 1, -1, 0, 0, 1, -1])],
        )
        .unwrap()
    }

    #[test]
    fn circle_homology() {
        let hs = circle().homology_groups().unwrap();
        assert_eq!(hs[0], CanonicalGroup::free(1));
        assert_eq!(hs[1], CanonicalGroup::free(1));
        assert!(circle().homology(5).unwrap().canonical_form().is_trivial());
    }

    #[test]
    fn rejects_nonzero_square() {
        let err = Complex::new(
            Grading::Cochain,
            vec![free(1), free(1), free(1)],
            vec![vec![], vec![], vec![]],
            vec![mat(1, 1, &[1]), mat(1, 1, &[1])],
        );
        assert!(matches!(err, Err(Error::NonzeroComposite(_))));
    }

    #[test]
    fn blocks_record_offsets() {
        let c = Complex::from_blocks(
            Grading::Cochain,
            vec![vec![
                ("a".into(), free(2)),
                ("b".into(), PresentedAbGroup::cyclic(Int::from(3))),
            ]],
            vec![],
        )
        .unwrap();
        assert_eq!(c.summands(0)[1].offset, 2);
        assert_eq!(c.group(0).canonical_form().to_string(), "Z^2 ⊕ Z/3");
    }

    #[test]
    fn induced_maps() {
        let c = circle();
        let id = ChainMap::new(&c, &c, vec![Matrix::identity(3), Matrix::identity(3)]).unwrap();
        assert!(id.is_chain_map().unwrap());
        assert!(induced_on_homology(&id, 1).unwrap().is_isomorphism());
        // rotation of the circle is degree one
        let rot = mat(3, 3, &[0, 0, 1, 1, 0, 0, 0, 1, 0]);
        let r = ChainMap::new(&c, &c, vec![rot.clone(), rot]).unwrap();
        assert!(induced_on_homology(&r, 1).unwrap().is_isomorphism());
        // collapsing to a vertex kills H₁ but not H₀
        let k = ChainMap::new(
            &c,
            &c,
            vec![mat(3, 3, &[1, 1, 1, 0, 0, 0, 0, 0, 0]), Matrix::zeros(3, 3)],
        )
        .unwrap();
        assert!(induced_on_homology(&k, 1).unwrap().is_zero());
        assert!(induced_on_homology(&k, 0).unwrap().is_isomorphism());
        // not a chain map
        let bad = ChainMap::new(&c, &c, vec![Matrix::identity(3), Matrix::zeros(3, 3)]).unwrap();
        assert!(matches!(
            induced_on_homology(&bad, 1),
            Err(Error::NotChainMap(_))
        ));
    }
}
