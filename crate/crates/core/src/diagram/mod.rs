//! Diagrams of abelian groups on finite posets and their derived limits.
//!
//! A [`Diagram`] on `P` is a functor on `P^op`: an element `a` carries a
//! group `F(a)` and every relation `b < a` carries `F(a → b)`.

mod complexes;
mod presheaf;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::homology::{homology_at, GroupHom, Homology, PresentedAbGroup};
use crate::poset::{Poset, Subset};
use crate::{Int, Matrix};

pub use complexes::{derived_colimit, derived_limit, full_complex_truncated, reduced_complex};
pub use presheaf::{
    cech_cohomology, cech_ordered_complex, compare_report, comparison_map, topos_cohomology,
    ComparisonReport, DegreeComparison, Presheaf,
};

#[derive(Clone, Debug)]
pub struct Diagram {
    base: Poset,
    values: Vec<PresentedAbGroup>,
    // maps[a][b] = F(a → b) for b ≤ a
    maps: Vec<Vec<Option<Matrix>>>,
}

impl Diagram {
    /// Builds a diagram from maps on Hasse edges `(upper, lower)`, deriving
    /// composites and checking functoriality on every pair of paths.
    pub fn new(
        base: Poset,
        values: Vec<PresentedAbGroup>,
        edges: impl IntoIterator<Item = ((usize, usize), Matrix)>,
    ) -> Result<Self> {
        let n = base.len();
        if values.len() != n {
            return Err(Error::Dimension(format!(
                "{} values for {n} elements",
                values.len()
            )));
        }
        let mut given: HashMap<(usize, usize), Matrix> = HashMap::new();
        for ((a, b), m) in edges {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    len: n,
                });
            }
            if !base.lower_covers(a).contains(&b) {
                return Err(Error::Dimension(format!(
                    "{}->{} is not a Hasse edge",
                    base.name(a),
                    base.name(b)
                )));
            }
            let edge = format!("{}->{}", base.name(a), base.name(b));
            let h = GroupHom::unchecked(values[a].clone(), values[b].clone(), m)
                .map_err(|e| Error::Dimension(format!("{edge}: {e}")))?;
            if !h.is_well_defined() {
                return Err(Error::IllDefinedHom(edge));
            }
            given.insert((a, b), h.matrix);
        }
        let mut maps: Vec<Vec<Option<Matrix>>> = vec![vec![None; n]; n];
        for a in base.linear_extension() {
            maps[a][a] = Some(Matrix::identity(values[a].generators()));
            let covers = base.lower_covers(a);
            for &c in &covers {
                if !given.contains_key(&(a, c)) {
                    return Err(Error::Missing(format!(
                        "map {}->{}",
                        base.name(a),
                        base.name(c)
                    )));
                }
            }
            for b in base.down_set(a).iter().filter(|&b| b != a) {
                let mut chosen: Option<(usize, Matrix)> = None;
                for &c in covers.iter().filter(|&&c| base.leq(b, c)) {
                    let via = maps[c][b].as_ref().expect("processed earlier") * &given[&(a, c)];
                    match &chosen {
                        None => chosen = Some((c, via)),
                        Some((left, m)) => {
                            let agree = GroupHom {
                                source: values[a].clone(),
                                target: values[b].clone(),
                                matrix: m.clone(),
                            }
                            .equals(&GroupHom {
                                source: values[a].clone(),
                                target: values[b].clone(),
                                matrix: via,
                            })?;
                            if !agree {
                                return Err(Error::NotFunctorial {
                                    top: base.name(a).into(),
                                    left: base.name(*left).into(),
                                    right: base.name(c).into(),
                                    bottom: base.name(b).into(),
                                });
                            }
                        }
                    }
                }
                maps[a][b] = chosen.map(|(_, m)| m);
            }
        }
        Ok(Diagram { base, values, maps })
    }

    /// Trusted constructor from a complete table of composites.
    pub(crate) fn from_table(
        base: Poset,
        values: Vec<PresentedAbGroup>,
        maps: Vec<Vec<Option<Matrix>>>,
    ) -> Self {
        debug_assert!(
            (0..base.len()).all(|a| { base.down_set(a).iter().all(|b| maps[a][b].is_some()) })
        );
        Diagram { base, values, maps }
    }

    /// The constant diagram with identity maps.
    pub fn constant(base: &Poset, group: &PresentedAbGroup) -> Self {
        let n = base.len();
        let values = vec![group.clone(); n];
        let id = Matrix::identity(group.generators());
        let maps = (0..n)
            .map(|a| (0..n).map(|b| base.leq(b, a).then(|| id.clone())).collect())
            .collect();
        Diagram::from_table(base.clone(), values, maps)
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn value(&self, a: usize) -> &PresentedAbGroup {
        &self.values[a]
    }

    pub fn values(&self) -> &[PresentedAbGroup] {
        &self.values
    }

    /// `F(a → b)` for `b ≤ a`.
    pub fn map(&self, a: usize, b: usize) -> Option<&Matrix> {
        self.maps
            .get(a)
            .and_then(|row| row.get(b))
            .and_then(Option::as_ref)
    }

    pub fn hom(&self, a: usize, b: usize) -> Option<GroupHom> {
        self.map(a, b).map(|m| GroupHom {
            source: self.values[a].clone(),
            target: self.values[b].clone(),
            matrix: m.clone(),
        })
    }

    /// Maps on Hasse edges, in the order of [`Poset::covers`].
    pub fn edges(&self) -> Vec<((usize, usize), Matrix)> {
        self.base
            .covers()
            .into_iter()
            .map(|(a, b)| ((a, b), self.maps[a][b].clone().expect("covers are related")))
            .collect()
    }

    /// Restriction to a nonempty subset, indexed like `base.induced_subposet(s)`.
    pub fn restrict(&self, s: &Subset) -> Result<Diagram> {
        let sub = self.base.induced_subposet(s)?;
        let members = s.indices();
        let values = members.iter().map(|&i| self.values[i].clone()).collect();
        let maps = members
            .iter()
            .map(|&a| members.iter().map(|&b| self.maps[a][b].clone()).collect())
            .collect();
        Ok(Diagram::from_table(sub, values, maps))
    }

    /// `F ∘ f` for an order-preserving `f : Q → base`.
    pub fn pullback(&self, q: &Poset, f: &[usize]) -> Result<Diagram> {
        if f.len() != q.len() {
            return Err(Error::Dimension(format!(
                "map has {} entries for {} elements",
                f.len(),
                q.len()
            )));
        }
        let n = q.len();
        let mut maps = vec![vec![None; n]; n];
        for a in 0..n {
            for b in q.down_set(a).iter() {
                let m = self.map(f[a], f[b]).ok_or_else(|| {
                    Error::InvalidOrder(format!("{} <= {} is not preserved", q.name(b), q.name(a)))
                })?;
                maps[a][b] = Some(m.clone());
            }
        }
        let values = f.iter().map(|&x| self.values[x].clone()).collect();
        Ok(Diagram::from_table(q.clone(), values, maps))
    }

    /// The inverse limit as compatible threads over the Hasse edges.
    pub fn limit(&self) -> Result<Limit> {
        thread_limit(self)
    }
}

/// `lim F` with its projections.
///
/// Generator `j` of `group` is the thread `homology.lift(j)`, written in the
/// generators of `⊕_a F(a)` with block offsets `offsets`.
#[derive(Clone, Debug)]
pub struct Limit {
    pub group: PresentedAbGroup,
    homology: Homology,
    offsets: Vec<usize>,
}

impl Limit {
    /// The projection `lim F → F(a)` as a matrix on limit generators.
    pub fn projection(&self, a: usize, value: &PresentedAbGroup) -> Matrix {
        let start = self.offsets[a];
        self.homology
            .cycles()
            .row_range(start, start + value.generators())
    }

    pub fn thread(&self, j: usize) -> Vec<Int> {
        self.homology.lift(j)
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Coordinates of a compatible thread in limit generators.
    pub fn coordinates(&self, thread: &[Int]) -> Result<Option<Vec<Int>>> {
        self.homology.coordinates(thread)
    }
}

fn thread_limit(f: &Diagram) -> Result<Limit> {
    let n = f.base.len();
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0;
    for v in &f.values {
        offsets.push(total);
        total += v.generators();
    }
    let parts: Vec<&PresentedAbGroup> = f.values.iter().collect();
    let product = PresentedAbGroup::direct_sum(&parts);
    let covers = f.base.covers();
    let targets: Vec<&PresentedAbGroup> = covers.iter().map(|&(_, b)| &f.values[b]).collect();
    let edge_group = PresentedAbGroup::direct_sum(&targets);
    let mut d = Matrix::zeros(edge_group.generators(), total);
    let mut row = 0;
    for &(a, b) in &covers {
        let m = f.maps[a][b].as_ref().expect("covers are related");
        d.add_block(row, offsets[a], m);
        let neg = Matrix::identity(f.values[b].generators()).scale(&Int::from(-1));
        d.add_block(row, offsets[b], &neg);
        row += f.values[b].generators();
    }
    let d_out = GroupHom {
        source: product.clone(),
        target: edge_group,
        matrix: d,
    };
    let d_in = GroupHom::zero(&PresentedAbGroup::trivial(), &product);
    let homology = homology_at(&d_in, &d_out)?;
    Ok(Limit {
        group: homology.group.clone(),
        homology,
        offsets,
    })
}

/// `ℱ̂(U) = lim_{U^op} F` for an open `U ⊆ I`, with its projections to each
/// `F(i)`, `i ∈ U` (in increasing index order).
pub fn sheafify_value(
    f: &Diagram,
    u: &Subset,
) -> Result<(PresentedAbGroup, Vec<(usize, GroupHom)>)> {
    check_open(f.base(), u)?;
    let sub = f.restrict(u)?;
    let lim = sub.limit()?;
    let projections = u
        .indices()
        .into_iter()
        .enumerate()
        .map(|(k, i)| {
            let m = lim.projection(k, sub.value(k));
            (
                i,
                GroupHom {
                    source: lim.group.clone(),
                    target: f.value(i).clone(),
                    matrix: m,
                },
            )
        })
        .collect();
    Ok((lim.group, projections))
}

pub(crate) fn check_open(p: &Poset, u: &Subset) -> Result<()> {
    if u.is_empty() {
        return Err(Error::EmptySubset);
    }
    for i in u.iter() {
        if !p.down_set(i).is_subset(u) {
            return Err(Error::NotOpen(p.render(u)));
        }
    }
    Ok(())
}
