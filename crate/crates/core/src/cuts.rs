//! Dedekind–MacNeille cuts with nonempty lower section, and the acyclicity
//! criterion for Čech and topos cohomology to agree on every presheaf.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{acyclicity_check, Acyclicity, CanonicalGroup};
use crate::poset::{Bound, Poset, Subset};

/// A cut `⟨X⁻, X⁻⁺⟩` together with a set `X` generating it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cut {
    pub lower: Subset,
    pub upper: Subset,
    pub witness: Vec<usize>,
}

impl Cut {
    pub fn render(&self, p: &Poset) -> String {
        format!("⟨{}, {}⟩", p.render(&self.lower), p.render(&self.upper))
    }
}

/// One cut per node `W` of the intersection poset: `⟨W, W⁺⟩`, in node order.
pub fn enumerate_cuts(p: &Poset) -> Result<Vec<Cut>> {
    let u = p.intersection_poset()?;
    Ok(u.nodes()
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let upper = p.bounds(w, Bound::Upper);
            assert!(!upper.is_empty(), "W⁺ contains the generating set");
            Cut {
                lower: w.clone(),
                upper,
                witness: u.generators(k).to_vec(),
            }
        })
        .collect())
}

/// Acyclicity of the upper section of `cut` as a subposet of `p`. With
/// `shortcuts`, cones and disconnected sections are decided without
/// homology computations.
pub fn upper_section_acyclicity(p: &Poset, cut: &Cut, shortcuts: bool) -> Result<Acyclicity> {
    Ok(section_verdict(p, cut, shortcuts)?.0)
}

fn section_verdict(p: &Poset, cut: &Cut, shortcuts: bool) -> Result<(Acyclicity, bool)> {
    let sub = p.induced_subposet(&cut.upper)?;
    if shortcuts {
        if sub.least_element().is_some() || sub.greatest_element().is_some() {
            return Ok((Acyclicity::Acyclic, true));
        }
        let k = sub.components().len();
        if k > 1 {
            return Ok((
                Acyclicity::FailsAt {
                    degree: 0,
                    group: CanonicalGroup::free(k),
                },
                false,
            ));
        }
    }
    Ok((acyclicity_check(&sub, None), false))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shortcut {
    None,
    /// Every examined upper section had a least or greatest element.
    LeastElement,
    /// `I` with a bottom adjoined is a lower semilattice.
    Semilattice,
    /// Every connected component has a greatest element.
    DirectedComponents,
}

#[derive(Clone, Debug)]
pub struct CutFailure {
    pub cut: Cut,
    pub degree: usize,
    pub group: CanonicalGroup,
}

#[derive(Clone, Copy, Debug)]
pub struct CriterionOptions {
    pub shortcuts: bool,
}

impl Default for CriterionOptions {
    fn default() -> Self {
        CriterionOptions { shortcuts: true }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub cuts_examined: usize,
    pub failures: Vec<CutFailure>,
    pub shortcut: Shortcut,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every connected component has a greatest element.
pub fn components_directed(p: &Poset) -> bool {
    p.components()
        .iter()
        .all(|c| c.iter().any(|&g| c.iter().all(|&x| p.leq(x, g))))
}

/// Every pair has either no common lower bound or a greatest one.
pub fn bottomed_lower_semilattice(p: &Poset) -> bool {
    let n = p.len();
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let lower = p.down_set(a).intersection(p.down_set(b));
            lower.is_empty() || lower.iter().any(|m| p.down_set(m) == &lower)
        })
    })
}

/// Decides whether every cut `⟨X, Y⟩` with `X ≠ ∅` has an acyclic upper
/// section `Y`; failures are reported for all cuts.
pub fn criterion(p: &Poset, options: CriterionOptions) -> Result<CriterionReport> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let cuts = enumerate_cuts(p)?;
    if options.shortcuts {
        let fast = if components_directed(p) {
            Some(Shortcut::DirectedComponents)
        } else if bottomed_lower_semilattice(p) {
            Some(Shortcut::Semilattice)
        } else {
            None
        };
        if let Some(shortcut) = fast {
            return Ok(CriterionReport {
                cuts_examined: cuts.len(),
                failures: Vec::new(),
                shortcut,
            });
        }
    }
    let verdicts: Vec<(Acyclicity, bool)> = cuts
        .par_iter()
        .map(|c| section_verdict(p, c, options.shortcuts))
        .collect::<Result<_>>()?;
    let all_cones = verdicts.iter().all(|(_, cone)| *cone);
    let failures = cuts
        .iter()
        .zip(verdicts)
        .filter_map(|(cut, (v, _))| match v {
            Acyclicity::Acyclic => None,
            Acyclicity::FailsAt { degree, group } => Some(CutFailure {
                cut: cut.clone(),
                degree,
                group,
            }),
        })
        .collect();
    Ok(CriterionReport {
        cuts_examined: cuts.len(),
        failures,
        shortcut: if options.shortcuts && all_cones {
            Shortcut::LeastElement
        } else {
            Shortcut::None
        },
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::poset::tests::c2;
    use crate::random::random_poset;
    use proptest::prelude::*;

    fn named(n: usize, rel: &[(usize, usize)]) -> Poset {
        let names = (0..n).map(|i| i.to_string()).collect();
        Poset::from_relations(names, rel).unwrap()
    }

    pub(crate) fn eight() -> Poset {
        named(
            8,
            &[
                (2, 0),
                (3, 0),
                (3, 1),
                (4, 1),
                (5, 2),
                (6, 2),
                (5, 3),
                (6, 3),
                (7, 3),
                (6, 4),
                (7, 4),
            ],
        )
    }

    pub(crate) fn seven() -> Poset {
        named(
            7,
            &[
                (3, 0),
                (3, 1),
                (4, 1),
                (4, 2),
                (5, 3),
                (6, 3),
                (5, 4),
                (6, 4),
            ],
        )
    }

    pub(crate) fn cellular() -> Poset {
        named(
            9,
            &[
                (2, 0),
                (3, 0),
                (4, 0),
                (2, 1),
                (3, 1),
                (4, 1),
                (5, 2),
                (6, 2),
                (5, 3),
                (7, 3),
                (6, 4),
                (7, 4),
                (8, 5),
                (8, 6),
                (8, 7),
            ],
        )
    }

    fn set(p: &Poset, names: &[&str]) -> Subset {
        p.subset(names.iter().copied()).unwrap()
    }

    #[test]
    fn crown_cuts() {
        let p = c2();
        let cuts = enumerate_cuts(&p).unwrap();
        assert_eq!(cuts.len(), 5);
        assert!(cuts
            .iter()
            .any(|c| c.lower == set(&p, &["p2", "p3"]) && c.upper == set(&p, &["p0", "p1"])));
        let r = criterion(&p, CriterionOptions::default()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.failures[0].degree, 0);
    }

    #[test]
    fn singleton() {
        let p = named(1, &[]);
        let cuts = enumerate_cuts(&p).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].lower, cuts[0].upper);
        assert!(criterion(&p, CriterionOptions::default()).unwrap().passed());
    }

    #[test]
    fn eight_element_example() {
        let p = eight();
        let cuts = enumerate_cuts(&p).unwrap();
        // {2,3,4}⁻ = {6}, whose upper bounds are {0,1,2,3,4,6}
        let six = cuts.iter().find(|c| c.lower == set(&p, &["6"])).unwrap();
        assert_eq!(six.upper, set(&p, &["0", "1", "2", "3", "4", "6"]));
        assert_eq!(
            p.bounds(&set(&p, &["2", "3", "4"]), Bound::Lower),
            set(&p, &["6"])
        );
        let tree = cuts
            .iter()
            .find(|c| c.lower == set(&p, &["5", "6"]))
            .unwrap();
        assert_eq!(tree.upper, set(&p, &["0", "1", "2", "3"]));
        assert!(upper_section_acyclicity(&p, tree, false)
            .unwrap()
            .is_acyclic());
        let r = criterion(&p, CriterionOptions { shortcuts: false }).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn seven_element_example() {
        let p = seven();
        assert!(!components_directed(&p) && !bottomed_lower_semilattice(&p));
        assert!(criterion(&p, CriterionOptions { shortcuts: false })
            .unwrap()
            .passed());
        // {0,4}⁻ = {5,6}, and {5,6}⁺ = {0,1,2,3,4}
        let x = p.bounds(&set(&p, &["0", "4"]), Bound::Lower);
        assert_eq!(x, set(&p, &["5", "6"]));
        assert_eq!(
            p.bounds(&x, Bound::Upper),
            set(&p, &["0", "1", "2", "3", "4"])
        );
    }

    #[test]
    fn cellular_fails_at_top_pair() {
        let p = cellular();
        for shortcuts in [true, false] {
            let r = criterion(&p, CriterionOptions { shortcuts }).unwrap();
            assert!(!r.passed());
            let f = r
                .failures
                .iter()
                .find(|f| f.cut.upper == set(&p, &["0", "1"]))
                .unwrap();
            assert_eq!((f.degree, f.group.clone()), (0, CanonicalGroup::free(2)));
        }
    }

    #[test]
    fn fast_paths() {
        let n = Poset::from_named(
            &["p0", "p1", "p2", "p3"],
            &[("p2", "p0"), ("p3", "p0"), ("p3", "p1")],
        )
        .unwrap();
        assert!(bottomed_lower_semilattice(&n));
        assert_eq!(
            criterion(&n, CriterionOptions::default()).unwrap().shortcut,
            Shortcut::Semilattice
        );
        let v = named(3, &[(0, 2), (1, 2)]);
        assert!(components_directed(&v));
        assert_eq!(
            criterion(&v, CriterionOptions::default()).unwrap().shortcut,
            Shortcut::DirectedComponents
        );
        assert!(!bottomed_lower_semilattice(&c2()) && !components_directed(&c2()));
    }

    /// All `(X⁻, X⁻⁺)` over nonempty `X` with `X⁻ ≠ ∅`, by brute force.
    pub(crate) fn brute_force_cuts(p: &Poset) -> Vec<(Subset, Subset)> {
        let n = p.len();
        let mut out = std::collections::BTreeSet::new();
        for mask in 1u32..(1 << n) {
            let x = Subset::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)).unwrap();
            let lower = p.bounds(&x, Bound::Lower);
            if lower.is_empty() {
                continue;
            }
            let upper = p.bounds(&lower, Bound::Upper);
            // X⁻⁺ only depends on X⁻, and the pair is a cut
            assert_eq!(p.bounds(&upper, Bound::Lower), lower);
            out.insert((lower, upper));
        }
        out.into_iter().collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cuts_are_exhaustive(n in 1usize..9, density in 0.0f64..1.0, seed in any::<u64>()) {
            let p = random_poset(n, density, seed);
            let mut ours: Vec<_> = enumerate_cuts(&p).unwrap().into_iter().map(|c| {
                assert_eq!(p.bounds(&c.upper, Bound::Lower), c.lower);
                let w = Subset::from_indices(n, c.witness.iter().copied()).unwrap();
                assert_eq!(p.bounds(&w, Bound::Lower), c.lower);
                (c.lower, c.upper)
            }).collect();
            ours.sort();
            prop_assert_eq!(ours, brute_force_cuts(&p));
        }

        #[test]
        fn shortcuts_do_not_change_verdicts(n in 1usize..9, density in 0.0f64..1.0, seed in any::<u64>()) {
            let p = random_poset(n, density, seed);
            let fast = criterion(&p, CriterionOptions::default()).unwrap();
            let slow = criterion(&p, CriterionOptions { shortcuts: false }).unwrap();
            prop_assert_eq!(fast.passed(), slow.passed());
            let key = |r: &CriterionReport| r.failures.iter().map(|f| (f.cut.lower.clone(), f.degree, f.group.clone())).collect::<Vec<_>>();
            prop_assert_eq!(key(&fast), key(&slow));
        }
    }
}
