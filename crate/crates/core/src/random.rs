//! Seeded random posets, diagrams and presheaves for fuzzing.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Diagram, Presheaf};
use crate::homology::{GroupHom, PresentedAbGroup};
use crate::poset::{IntersectionPoset, Poset, Subset};
use crate::{Int, Matrix};

/// A random poset on elements named `"0"…"n-1"`: each pair that is ordered by
/// a random linear extension becomes related with probability `density`,
/// then the order is closed transitively.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ext: Vec<usize> = (0..n).collect();
    ext.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for lo in 0..n {
        for hi in lo + 1..n {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                pairs.push((ext[lo], ext[hi]));
            }
        }
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    Poset::from_relations(names, &pairs).expect("pairs follow a linear extension")
}

/// Size controls for random diagrams.
#[derive(Clone, Debug)]
pub struct DiagramParams {
    /// Upper bound on the generators of a freshly drawn value.
    pub max_generators: usize,
    /// Matrix entries are drawn from `-max_entry..=max_entry`.
    pub max_entry: i64,
    /// Allow cyclic summands `ℤ/d`, `2 ≤ d ≤ 4`.
    pub torsion: bool,
    /// Produce the constant diagram `ℤ` instead.
    pub constant: bool,
}

impl DiagramParams {
    pub fn small() -> Self {
        DiagramParams {
            max_generators: 2,
            max_entry: 2,
            torsion: true,
            constant: false,
        }
    }

    pub fn constant() -> Self {
        DiagramParams {
            constant: true,
            ..Self::small()
        }
    }
}

impl Default for DiagramParams {
    fn default() -> Self {
        Self::small()
    }
}

fn random_group(rng: &mut ChaCha8Rng, params: &DiagramParams) -> PresentedAbGroup {
    let g = rng.gen_range(0..=params.max_generators);
    let relations = Matrix::from_fn(g, g, |i, j| {
        if i == j && params.torsion && rng.gen_bool(0.3) {
            Int::from(rng.gen_range(2..=4))
        } else {
            Int::from(0)
        }
    });
    let kept: Vec<Vec<Int>> = relations
        .columns()
        .filter(|c| !c.iter().all(Zero::is_zero))
        .collect();
    PresentedAbGroup::new(g, Matrix::from_columns(&kept, g).expect("rows agree"))
        .expect("shape is consistent")
}

fn random_entry(rng: &mut ChaCha8Rng, bound: i64) -> Int {
    Int::from(rng.gen_range(-bound..=bound))
}

/// A random well-defined map `source → target`, built column by column.
fn random_hom(
    rng: &mut ChaCha8Rng,
    source: &PresentedAbGroup,
    target: &PresentedAbGroup,
    bound: i64,
) -> Matrix {
    let rows = target.generators();
    let mut columns = Vec::with_capacity(source.generators());
    for j in 0..source.generators() {
        // the single relator touching generator j, if any
        let order = source
            .relations()
            .columns()
            .find(|c| !c[j].is_zero())
            .map(|c| c[j].clone());
        let mut chosen = vec![Int::from(0); rows];
        for _ in 0..8 {
            let col: Vec<Int> = (0..rows).map(|_| random_entry(rng, bound)).collect();
            let ok = match &order {
                None => true,
                Some(d) => target.is_zero_element(&col.iter().map(|x| x * d).collect::<Vec<_>>()),
            };
            if ok {
                chosen = col;
                break;
            }
        }
        columns.push(chosen);
    }
    Matrix::from_columns(&columns, rows).expect("rows agree")
}

/// A random functor on `base^op`, built bottom-up: each element gets a group
/// and a map into the limit of what lies strictly below it, and its maps to
/// lower elements are that map followed by the limit projections.
pub fn random_diagram(base: &Poset, params: &DiagramParams, seed: u64) -> Diagram {
    if params.constant {
        return Diagram::constant(base, &PresentedAbGroup::free(1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = base.len();
    let mut values: Vec<Option<PresentedAbGroup>> = vec![None; n];
    let mut maps: Vec<Vec<Option<Matrix>>> = vec![vec![None; n]; n];
    for a in base.linear_extension() {
        let mut below = base.down_set(a).clone();
        below =
            Subset::from_indices(n, below.iter().filter(|&b| b != a)).expect("indices in range");
        let limit = if below.is_empty() {
            None
        } else {
            let sub = partial(base, &below, &values, &maps);
            let lim = sub.limit().expect("partial diagram is valid");
            Some((sub, lim))
        };
        let (value, h) = match &limit {
            Some((_, lim)) if lim.group.generators() > 0 && rng.gen_bool(0.2) => {
                (lim.group.clone(), Matrix::identity(lim.group.generators()))
            }
            Some((_, lim)) => {
                let v = random_group(&mut rng, params);
                let h = random_hom(&mut rng, &v, &lim.group, params.max_entry);
                (v, h)
            }
            None => (random_group(&mut rng, params), Matrix::zeros(0, 0)),
        };
        maps[a][a] = Some(Matrix::identity(value.generators()));
        if let Some((sub, lim)) = &limit {
            debug_assert!(
                GroupHom::unchecked(value.clone(), lim.group.clone(), h.clone())
                    .map(|g| g.is_well_defined())
                    .unwrap_or(false)
            );
            for (k, b) in below.iter().enumerate() {
                let proj = lim.projection(k, sub.value(k));
                maps[a][b] = Some(&proj * &h);
            }
        }
        values[a] = Some(value);
    }
    let values = values
        .into_iter()
        .map(|v| v.expect("every element visited"))
        .collect();
    Diagram::from_table(base.clone(), values, maps)
}

fn partial(
    base: &Poset,
    s: &Subset,
    values: &[Option<PresentedAbGroup>],
    maps: &[Vec<Option<Matrix>>],
) -> Diagram {
    let sub = base.induced_subposet(s).expect("subset is nonempty");
    let members = s.indices();
    let vals = members
        .iter()
        .map(|&i| values[i].clone().expect("processed earlier"))
        .collect();
    let table = members
        .iter()
        .map(|&a| members.iter().map(|&b| maps[a][b].clone()).collect())
        .collect();
    Diagram::from_table(sub, vals, table)
}

/// A random presheaf given by its values on `Ũ`.
pub fn random_presheaf(cover: &IntersectionPoset, params: &DiagramParams, seed: u64) -> Presheaf {
    let d = random_diagram(cover.node_poset(), params, seed);
    Presheaf::new(cover.clone(), d).expect("diagram lives on the node poset")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn posets_are_deterministic() {
        assert_eq!(random_poset(7, 0.4, 11), random_poset(7, 0.4, 11));
        assert_eq!(random_poset(1, 0.9, 3).len(), 1);
        let anti = random_poset(5, 0.0, 1);
        assert_eq!(anti.longest_chain_length(), 0);
        let total = random_poset(5, 1.0, 1);
        assert_eq!(total.longest_chain_length(), 4);
    }

    #[test]
    fn diagrams_are_functorial() {
        for seed in 0..40 {
            let p = random_poset(6, 0.5, seed);
            let d = random_diagram(&p, &DiagramParams::small(), seed);
            // rebuilding from Hasse edges re-runs every check
            let again = Diagram::new(p.clone(), d.values().to_vec(), d.edges()).unwrap();
            for a in 0..p.len() {
                for b in p.down_set(a).iter() {
                    assert!(again
                        .hom(a, b)
                        .unwrap()
                        .equals(&d.hom(a, b).unwrap())
                        .unwrap());
                }
            }
            let e = random_diagram(&p, &DiagramParams::small(), seed);
            assert_eq!(format!("{:?}", d.edges()), format!("{:?}", e.edges()));
        }
    }

    #[test]
    fn constant_mode() {
        let p = random_poset(4, 0.5, 2);
        let d = random_diagram(&p, &DiagramParams::constant(), 9);
        assert!(d.values().iter().all(|v| v.canonical_form().is_integers()));
    }
}
