use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, kernel_basis, lattice_basis, SmithSolver};
use crate::{Int, Matrix};

/// Isomorphism class of a finitely generated abelian group:
/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `2 ≤ d₁ | d₂ | … | d_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CanonicalGroup {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl CanonicalGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        CanonicalGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Normalizes arbitrary diagonal entries: units drop out, the rest are
    /// sorted into a divisibility chain.
    pub fn from_diagonal(rank: usize, diagonal: impl IntoIterator<Item = Int>) -> Self {
        let mut torsion: Vec<Int> = diagonal
            .into_iter()
            .map(|d| d.abs())
            .filter(|d| !d.is_one() && !d.is_zero())
            .collect();
        torsion.sort();
        CanonicalGroup { rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Whether this is the homology of a point in degree zero.
    pub fn is_integers(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for CanonicalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

impl Serialize for CanonicalGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Num {
            Small(i64),
            Big(String),
        }
        let torsion: Vec<Num> = self
            .torsion
            .iter()
            .map(|d| {
                d.to_i64()
                    .map(Num::Small)
                    .unwrap_or_else(|| Num::Big(d.to_string()))
            })
            .collect();
        let mut s = serializer.serialize_struct("CanonicalGroup", 2)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

/// `ℤ^g / L` where `L` is spanned by the columns (relators) of a `g`-row matrix.
#[derive(Clone, Debug)]
pub struct PresentedAbGroup {
    relations: Matrix,
    lattice: Arc<OnceLock<SmithSolver<Int>>>,
}

impl PresentedAbGroup {
    pub fn new(generators: usize, relations: Matrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows for {generators} generators",
                relations.rows()
            )));
        }
        Ok(PresentedAbGroup {
            relations,
            lattice: Arc::default(),
        })
    }

    pub fn free(generators: usize) -> Self {
        Self::new(generators, Matrix::zeros(generators, 0)).expect("shape is consistent")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `ℤ/d` (or `ℤ` when `d = 0`).
    pub fn cyclic(d: Int) -> Self {
        Self::new(1, Matrix::from_fn(1, 1, |_, _| d.clone())).expect("shape is consistent")
    }

    /// The standard presentation of a canonical form.
    pub fn from_canonical(c: &CanonicalGroup) -> Self {
        let g = c.torsion.len() + c.rank;
        let relations = Matrix::from_fn(g, c.torsion.len(), |i, j| {
            if i == j {
                c.torsion[j].clone()
            } else {
                Int::zero()
            }
        });
        Self::new(g, relations).expect("shape is consistent")
    }

    pub fn direct_sum(parts: &[&PresentedAbGroup]) -> Self {
        let blocks: Vec<&Matrix> = parts.iter().map(|g| &g.relations).collect();
        let relations = Matrix::block_diagonal(&blocks);
        let g = relations.rows();
        Self::new(g, relations).expect("block diagonal keeps the shape")
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    fn smith(&self) -> &SmithSolver<Int> {
        self.lattice
            .get_or_init(|| SmithSolver::new(&self.relations))
    }

    /// Same generators and the same relation lattice.
    pub fn same_presentation(&self, other: &PresentedAbGroup) -> bool {
        if self.generators() != other.generators() {
            return false;
        }
        if self.relations == other.relations {
            return true;
        }
        self.relations.columns().all(|c| other.is_zero_element(&c))
            && other.relations.columns().all(|c| self.is_zero_element(&c))
    }

    /// Whether the coordinate vector `v` represents zero.
    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.generators(), "element has the wrong length");
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if self.relations.cols() == 0 {
            return false;
        }
        self.smith().spans(v).expect("length checked above")
    }

    pub fn canonical_form(&self) -> CanonicalGroup {
        let s = self.smith();
        CanonicalGroup::from_diagonal(
            self.generators() - s.rank(),
            s.invariant_factors().iter().cloned(),
        )
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical_form().is_trivial()
    }
}

/// A homomorphism between presented groups, given on generators: column `j`
/// holds the image of source generator `j`.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: PresentedAbGroup,
    pub target: PresentedAbGroup,
    pub matrix: Matrix,
}

impl GroupHom {
    /// Validates shape and well-definedness.
    pub fn new(source: PresentedAbGroup, target: PresentedAbGroup, matrix: Matrix) -> Result<Self> {
        let h = Self::unchecked(source, target, matrix)?;
        if !h.is_well_defined() {
            return Err(Error::IllDefinedHom(
                "a source relator maps outside the target relation lattice".into(),
            ));
        }
        Ok(h)
    }

    /// Checks only the shape.
    pub fn unchecked(
        source: PresentedAbGroup,
        target: PresentedAbGroup,
        matrix: Matrix,
    ) -> Result<Self> {
        if matrix.rows() != target.generators() || matrix.cols() != source.generators() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix cannot map {} generators to {}",
                matrix.rows(),
                matrix.cols(),
                source.generators(),
                target.generators()
            )));
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &PresentedAbGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: Matrix::identity(g.generators()),
        }
    }

    pub fn zero(source: &PresentedAbGroup, target: &PresentedAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(target.generators(), source.generators()),
        }
    }

    pub fn is_well_defined(&self) -> bool {
        if self.source.relations.cols() == 0 {
            return true;
        }
        let images = &self.matrix * &self.source.relations;
        let ok = images.columns().all(|c| self.target.is_zero_element(&c));
        ok
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if next.source.generators() != self.target.generators() {
            return Err(Error::Dimension(format!(
                "cannot compose: {} generators feed a map expecting {}",
                self.target.generators(),
                next.source.generators()
            )));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: &next.matrix * &self.matrix,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix
            .columns()
            .all(|c| self.target.is_zero_element(&c))
    }

    /// Equality as homomorphisms: the matrices agree modulo target relations.
    pub fn equals(&self, other: &GroupHom) -> Result<bool> {
        let diff = self.matrix.checked_sub(&other.matrix)?;
        let ok = diff.columns().all(|c| self.target.is_zero_element(&c));
        Ok(ok)
    }

    /// Generators of `{x ∈ ℤ^g : A x ∈ L_target}`, the lifted kernel.
    pub fn kernel_lift(&self) -> Matrix {
        let g = self.source.generators();
        if self.target.relations.cols() == 0 {
            return kernel_basis(&self.matrix);
        }
        let stacked = self
            .matrix
            .hstack(&self.target.relations.scale(&-Int::one()))
            .expect("row counts agree");
        kernel_basis(&stacked).row_range(0, g)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_lift()
            .columns()
            .all(|c| self.source.is_zero_element(&c))
    }

    pub fn is_surjective(&self) -> bool {
        let gens = self.target.generators();
        let d = invariant_factors(
            &self
                .matrix
                .hstack(&self.target.relations)
                .expect("row counts agree"),
        );
        d.len() == gens && d.iter().all(One::is_one)
    }

    pub fn cokernel(&self) -> PresentedAbGroup {
        let rel = self
            .matrix
            .hstack(&self.target.relations)
            .expect("row counts agree");
        PresentedAbGroup::new(self.target.generators(), rel).expect("shape is consistent")
    }

    /// `ker` as a presented group, generated by lifted kernel elements.
    pub fn kernel(&self) -> Result<PresentedAbGroup> {
        let g = self.source.generators();
        let free = PresentedAbGroup::free(g);
        let relators = self.source.relations().cols();
        let d_in = GroupHom {
            source: PresentedAbGroup::free(relators),
            target: free.clone(),
            matrix: self.source.relations().clone(),
        };
        let d_out = GroupHom {
            source: free,
            target: self.target.clone(),
            matrix: self.matrix.clone(),
        };
        Ok(homology_at(&d_in, &d_out)?.group)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Whether a homomorphism respects relations.
pub fn hom_well_defined(h: &GroupHom) -> bool {
    h.is_well_defined()
}

/// `ker(d_out) / im(d_in)` as a presented group, together with a basis of
/// lifted cycles in the middle group's generators.
///
/// Homology generator `j` is the class of cycle column `j`; any cycle has
/// unique coordinates in that basis.
#[derive(Clone, Debug)]
pub struct Homology {
    pub group: PresentedAbGroup,
    cycles: Matrix,
    solver: Option<SmithSolver<Int>>,
}

impl Homology {
    pub fn cycles(&self) -> &Matrix {
        &self.cycles
    }

    /// A middle-group cycle representing homology generator `j`.
    pub fn lift(&self, j: usize) -> Vec<Int> {
        self.cycles.column(j)
    }

    /// Coordinates of a cycle in homology generators; `None` if `cycle` is
    /// not in the lifted cycle lattice.
    pub fn coordinates(&self, cycle: &[Int]) -> Result<Option<Vec<Int>>> {
        match &self.solver {
            None => {
                if cycle.len() != self.cycles.rows() {
                    return Err(Error::Dimension(format!(
                        "cycle has length {}, expected {}",
                        cycle.len(),
                        self.cycles.rows()
                    )));
                }
                Ok(Some(cycle.to_vec()))
            }
            Some(s) => s.solve(cycle),
        }
    }

    pub fn canonical_form(&self) -> CanonicalGroup {
        self.group.canonical_form()
    }
}

/// Homology at the middle group of `A --d_in--> B --d_out--> C`.
pub fn homology_at(d_in: &GroupHom, d_out: &GroupHom) -> Result<Homology> {
    let middle = &d_out.source;
    if d_in.target.generators() != middle.generators() || d_in.target.relations != middle.relations
    {
        return Err(Error::Dimension(
            "d_in and d_out do not share their middle group".into(),
        ));
    }
    if !d_in.then(d_out)?.is_zero() {
        return Err(Error::NonzeroComposite("d_out ∘ d_in ≠ 0".into()));
    }
    let b = middle.generators();
    let (cycles, solver) = if d_out.target.generators() == 0 {
        (Matrix::identity(b), None)
    } else if d_out.target.relations.cols() == 0 {
        let k = kernel_basis(&d_out.matrix);
        let s = SmithSolver::new(&k);
        (k, Some(s))
    } else {
        let k = lattice_basis(&d_out.kernel_lift());
        let s = SmithSolver::new(&k);
        (k, Some(s))
    };
    let boundaries = d_in.matrix.hstack(&middle.relations)?;
    let mut rel_columns = Vec::with_capacity(boundaries.cols());
    for w in boundaries.columns() {
        if w.iter().all(Zero::is_zero) {
            continue;
        }
        let c = match &solver {
            None => w,
            Some(s) => s
                .solve(&w)?
                .ok_or_else(|| Error::NonzeroComposite("a boundary is not a cycle".into()))?,
        };
        rel_columns.push(c);
    }
    let m = cycles.cols();
    let relations = Matrix::from_columns(&rel_columns, m)?;
    Ok(Homology {
        group: PresentedAbGroup::new(m, relations)?,
        cycles,
        solver,
    })
}
