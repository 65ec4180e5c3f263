use super::complexes::reduced_complex_upto;
use super::{check_open, Diagram, Limit};
use crate::error::{Error, Result};
use crate::homology::{
    induced_on_homology, CanonicalGroup, ChainMap, Complex, Grading, GroupHom, PresentedAbGroup,
};
use crate::poset::{IntersectionPoset, Poset};
use crate::{Int, Matrix};

/// A presheaf on a finite Alexandrov space, recorded by its values on the
/// intersection poset `Ũ` of the canonical covering.
#[derive(Clone, Debug)]
pub struct Presheaf {
    cover: IntersectionPoset,
    diagram: Diagram,
}

impl Presheaf {
    /// `diagram` must live on `cover.node_poset()`.
    pub fn new(cover: IntersectionPoset, diagram: Diagram) -> Result<Self> {
        if diagram.base() != cover.node_poset() {
            return Err(Error::Dimension(
                "diagram is not defined on the intersection poset".into(),
            ));
        }
        Ok(Presheaf { cover, diagram })
    }

    /// The sheaf generated by a diagram `F` on `I`: `W ↦ lim_{W^op} F` with
    /// restriction of threads.
    pub fn from_sheaf(f: &Diagram) -> Result<Self> {
        let cover = f.base().intersection_poset()?;
        let limits: Vec<(Diagram, Limit)> = cover
            .nodes()
            .iter()
            .map(|w| {
                check_open(f.base(), w)?;
                let sub = f.restrict(w)?;
                let lim = sub.limit()?;
                Ok((sub, lim))
            })
            .collect::<Result<_>>()?;
        let np = cover.node_poset();
        let mut edges = Vec::new();
        for (big, small) in np.covers() {
            let (w, w2) = (cover.node(big), cover.node(small));
            let (_, lim) = &limits[big];
            let (sub2, lim2) = &limits[small];
            let members = w.indices();
            let mut columns = Vec::with_capacity(lim.group.generators());
            for j in 0..lim.group.generators() {
                let thread = lim.thread(j);
                let mut restricted = Vec::new();
                for (k, &i) in members.iter().enumerate() {
                    if w2.contains(i) {
                        let start = lim.offsets()[k];
                        restricted
                            .extend_from_slice(&thread[start..start + f.value(i).generators()]);
                    }
                }
                debug_assert_eq!(
                    restricted.len(),
                    sub2.values().iter().map(|v| v.generators()).sum::<usize>()
                );
                let coords = lim2.coordinates(&restricted)?.ok_or_else(|| {
                    Error::Dimension("restricted thread is not compatible".into())
                })?;
                columns.push(coords);
            }
            let m = Matrix::from_columns(&columns, lim2.group.generators())?;
            edges.push(((big, small), m));
        }
        let values = limits.into_iter().map(|(_, l)| l.group).collect();
        let diagram = Diagram::new(np.clone(), values, edges)?;
        Presheaf::new(cover, diagram)
    }

    pub fn cover(&self) -> &IntersectionPoset {
        &self.cover
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn base(&self) -> &Poset {
        self.cover.base()
    }

    /// `ℱ ∘ Λ^op` on `I`.
    pub fn on_elements(&self) -> Result<Diagram> {
        let lambda: Vec<usize> = (0..self.base().len())
            .map(|i| self.cover.lambda(i))
            .collect();
        self.diagram.pullback(self.base(), &lambda)
    }
}

/// Topos cohomology `Hⁿ(I, ℱ̃) = limⁿ_{I^op} ℱ∘Λ^op`.
pub fn topos_cohomology(p: &Presheaf, n: usize) -> Result<CanonicalGroup> {
    super::derived_limit(&p.on_elements()?, n)
}

/// Čech cohomology of the canonical covering, `limⁿ` over `Ũ^op`.
pub fn cech_cohomology(p: &Presheaf, n: usize) -> Result<CanonicalGroup> {
    super::derived_limit(&p.diagram, n)
}

/// The alternating Čech complex of `{Λ_i}` for a total order on `I`, given
/// as a permutation of element indices (smallest first).
pub fn cech_ordered_complex(p: &Presheaf, order: &[usize]) -> Result<Complex> {
    let base = p.base();
    let n = base.len();
    let mut seen = vec![false; n];
    if order.len() != n
        || order
            .iter()
            .any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::InvalidOrder(format!(
            "expected a permutation of {n} elements"
        )));
    }
    // tuples of positions in `order`, increasing, with nonempty intersection
    let mut tuples: Vec<Vec<(Vec<usize>, usize)>> = Vec::new();
    let mut frontier: Vec<(Vec<usize>, usize)> = (0..n)
        .map(|k| (vec![k], p.cover.lambda(order[k])))
        .collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (tuple, node) in &frontier {
            let last = *tuple.last().expect("tuples are nonempty");
            for (k, &i) in order.iter().enumerate().skip(last + 1) {
                let meet = p
                    .cover
                    .node(*node)
                    .intersection(p.cover.node(p.cover.lambda(i)));
                if meet.is_empty() {
                    continue;
                }
                let w = p
                    .cover
                    .node_of(&meet)
                    .expect("Ũ is closed under intersection");
                let mut t = tuple.clone();
                t.push(k);
                next.push((t, w));
            }
        }
        tuples.push(std::mem::replace(&mut frontier, next));
    }
    let f = &p.diagram;
    let blocks: Vec<Vec<(String, PresentedAbGroup)>> = tuples
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|(t, w)| {
                    let names: Vec<&str> = t.iter().map(|&k| base.name(order[k])).collect();
                    (format!("({})", names.join(",")), f.value(*w).clone())
                })
                .collect()
        })
        .collect();
    let offsets: Vec<Vec<usize>> = blocks
        .iter()
        .map(|level| {
            level
                .iter()
                .scan(0, |acc, (_, g)| {
                    let o = *acc;
                    *acc += g.generators();
                    Some(o)
                })
                .collect()
        })
        .collect();
    let gens = |d: usize| blocks[d].iter().map(|(_, g)| g.generators()).sum::<usize>();
    let mut differentials = Vec::new();
    for d in 0..tuples.len().saturating_sub(1) {
        let index: std::collections::HashMap<&[usize], usize> = tuples[d]
            .iter()
            .enumerate()
            .map(|(i, (t, _))| (t.as_slice(), i))
            .collect();
        let mut m = Matrix::zeros(gens(d + 1), gens(d));
        for (r, (t, w)) in tuples[d + 1].iter().enumerate() {
            for k in 0..t.len() {
                let mut face = t.clone();
                face.remove(k);
                let c = index[face.as_slice()];
                let wk = tuples[d][c].1;
                let restriction = f.map(wk, *w).expect("faces contain the intersection");
                let sign = Int::from(if k % 2 == 0 { 1 } else { -1 });
                m.add_block(offsets[d + 1][r], offsets[d][c], &restriction.scale(&sign));
            }
        }
        differentials.push(m);
    }
    Complex::from_blocks(Grading::Cochain, blocks, differentials)
}

/// Per-degree comparison of Čech and topos cohomology.
#[derive(Clone, Debug)]
pub struct DegreeComparison {
    pub degree: usize,
    pub cech: CanonicalGroup,
    pub topos: CanonicalGroup,
    /// `λ_n` in the homology generators of both sides.
    pub map: GroupHom,
    pub iso: bool,
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub cap: usize,
    pub degrees: Vec<DegreeComparison>,
}

impl ComparisonReport {
    pub fn all_iso(&self) -> bool {
        self.degrees.iter().all(|d| d.iso)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DegreeComparison> {
        self.degrees.iter().filter(|d| !d.iso)
    }
}

/// The complexes on both sides of `ρ` and its components through `top`.
struct Comparison {
    cech: Complex,
    topos: Complex,
    components: Vec<Matrix>,
}

impl Comparison {
    fn new(p: &Presheaf, top: usize) -> Result<Self> {
        let cech = reduced_complex_upto(&p.diagram, Some(top + 1))?;
        let elements = p.on_elements()?;
        let topos = reduced_complex_upto(&elements, Some(top + 1))?;
        let base = p.base();
        let np = p.cover.node_poset();
        let mut components = Vec::new();
        for n in 0..cech.len().max(topos.len()) {
            let rows = topos.group(n).generators();
            let cols = cech.group(n).generators();
            let mut m = Matrix::zeros(rows, cols);
            if n < topos.len() && n < cech.len() {
                let src = np.chains(n);
                let index = src.position_map();
                let src_offsets: Vec<usize> = cech.summands(n).iter().map(|s| s.offset).collect();
                for (k, chain) in base.chains(n).chains.iter().enumerate() {
                    let image: Vec<usize> = chain.iter().map(|&i| p.cover.lambda(i)).collect();
                    let s = index[image.as_slice()];
                    let block = &topos.summands(n)[k];
                    m.add_block(
                        block.offset,
                        src_offsets[s],
                        &Matrix::identity(block.generators),
                    );
                }
            }
            components.push(m);
        }
        Ok(Comparison {
            cech,
            topos,
            components,
        })
    }

    fn chain_map(&self) -> Result<ChainMap<'_>> {
        let rho = ChainMap::new(&self.cech, &self.topos, self.components.clone())?;
        for n in 0..self.cech.len().max(self.topos.len()) {
            if !rho.commutes_at(n)? {
                return Err(Error::NotChainMap(n));
            }
        }
        Ok(rho)
    }
}

/// `λ_n : Ȟⁿ(ℱ) → Hⁿ(I, ℱ̃)`, induced by restricting cochains along `Λ`.
pub fn comparison_map(p: &Presheaf, n: usize) -> Result<GroupHom> {
    let c = Comparison::new(p, n)?;
    induced_on_homology(&c.chain_map()?, n)
}

/// `λ_n` for `n ≤ cap`; the default cap is the longest chain of `Ũ`, above
/// which both sides vanish.
pub fn compare_report(p: &Presheaf, cap: Option<usize>) -> Result<ComparisonReport> {
    let cap = cap.unwrap_or_else(|| p.cover.node_poset().longest_chain_length());
    let c = Comparison::new(p, cap)?;
    let rho = c.chain_map()?;
    let mut degrees = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let map = induced_on_homology(&rho, n)?;
        degrees.push(DegreeComparison {
            degree: n,
            cech: map.source.canonical_form(),
            topos: map.target.canonical_form(),
            iso: map.is_isomorphism(),
            map,
        });
    }
    Ok(ComparisonReport { cap, degrees })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{one, z};
    use super::*;
    use crate::poset::tests::c2;
    use crate::random::{random_poset, random_presheaf, DiagramParams};
    use proptest::prelude::*;

    /// Nodes of Ũ(C₂) in order: {p0,p2,p3}, {p1,p2,p3}, {p2,p3}, {p2}, {p3}.
    fn crown_presheaf(values: [usize; 5]) -> Presheaf {
        let cover = c2().intersection_poset().unwrap();
        let np = cover.node_poset().clone();
        let vals: Vec<PresentedAbGroup> =
            values.iter().map(|&g| PresentedAbGroup::free(g)).collect();
        let edges: Vec<_> = np
            .covers()
            .into_iter()
            .map(|(a, b)| {
                (
                    (a, b),
                    Matrix::from_fn(values[b], values[a], |i, j| Int::from((i == j) as i64)),
                )
            })
            .collect();
        let d = Diagram::new(np, vals, edges).unwrap();
        Presheaf::new(cover, d).unwrap()
    }

    #[test]
    fn mismatch_in_degree_zero() {
        let p = crown_presheaf([1, 1, 1, 0, 0]);
        assert_eq!(cech_cohomology(&p, 0).unwrap(), CanonicalGroup::free(1));
        assert_eq!(topos_cohomology(&p, 0).unwrap(), CanonicalGroup::free(2));
        let l0 = comparison_map(&p, 0).unwrap();
        assert!(l0.is_injective() && !l0.is_surjective());
        let r = compare_report(&p, None).unwrap();
        assert_eq!(r.failures().next().unwrap().degree, 0);
    }

    #[test]
    fn mismatch_in_degree_one() {
        let p = crown_presheaf([1, 1, 1, 1, 1]);
        assert!(cech_cohomology(&p, 1).unwrap().is_trivial());
        assert_eq!(topos_cohomology(&p, 1).unwrap(), CanonicalGroup::free(1));
        assert!(!comparison_map(&p, 1).unwrap().is_isomorphism());
        assert!(comparison_map(&p, 0).unwrap().is_isomorphism());
    }

    #[test]
    fn ordered_complex_agrees() {
        let p = crown_presheaf([1, 1, 1, 0, 0]);
        let c = cech_ordered_complex(&p, &[0, 1, 2, 3]).unwrap();
        assert_eq!(
            c.homology(0).unwrap().canonical_form(),
            CanonicalGroup::free(1)
        );
        let c = cech_ordered_complex(&p, &[3, 1, 0, 2]).unwrap();
        assert_eq!(
            c.homology(0).unwrap().canonical_form(),
            CanonicalGroup::free(1)
        );
        assert!(matches!(
            cech_ordered_complex(&p, &[0, 0, 1, 2]),
            Err(Error::InvalidOrder(_))
        ));
    }

    #[test]
    fn sphere_sheaf() {
        let s2 = Poset::from_named(
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
        )
        .unwrap();
        let p = Presheaf::from_sheaf(&Diagram::constant(&s2, &z())).unwrap();
        assert_eq!(p.cover().len(), 8);
        assert_eq!(topos_cohomology(&p, 2).unwrap(), CanonicalGroup::free(1));
        for n in 2..5 {
            assert!(cech_cohomology(&p, n).unwrap().is_trivial());
        }
        let r = compare_report(&p, None).unwrap();
        assert!(!r.all_iso());
        assert_eq!(r.failures().map(|d| d.degree).collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn sheaf_values_on_opens() {
        // {p2,p3} gets ℤ² from constant ℤ on C₂
        let f = Diagram::constant(&c2(), &z());
        let p = Presheaf::from_sheaf(&f).unwrap();
        assert_eq!(
            p.diagram().value(2).canonical_form(),
            CanonicalGroup::free(2)
        );
        // restriction to {p2} projects onto one factor
        let r = p.diagram().hom(2, 3).unwrap();
        assert!(r.is_surjective() && !r.is_injective());
        let _ = one(1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn routes_agree(n in 1usize..6, density in 0.0f64..1.0, seed in any::<u64>(), perm in any::<u64>()) {
            let base = random_poset(n, density, seed);
            let cover = base.intersection_poset().unwrap();
            let p = random_presheaf(&cover, &DiagramParams::small(), seed);
            let mut order: Vec<usize> = (0..n).collect();
            let mut s = perm;
            for i in (1..n).rev() {
                order.swap(i, (s % (i as u64 + 1)) as usize);
                s /= i as u64 + 1;
            }
            let ordered = cech_ordered_complex(&p, &order).unwrap();
            let top = ordered.len().max(cover.node_poset().longest_chain_length() + 1);
            for d in 0..top {
                prop_assert_eq!(ordered.homology(d).unwrap().canonical_form(), cech_cohomology(&p, d).unwrap());
            }
        }
    }
}
