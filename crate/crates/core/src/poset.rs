//! Finite posets, lower/upper bounds, the intersection poset of the canonical
//! covering, and chain enumeration.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A set of element indices of some poset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subset(FixedBitSet);

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Subset(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut s = FixedBitSet::with_capacity(universe);
        s.insert_range(..);
        Subset(s)
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = FixedBitSet::with_capacity(universe);
        for i in indices {
            if i >= universe {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: universe,
                });
            }
            s.insert(i);
        }
        Ok(Subset(s))
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.ones().collect()
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.0.clone();
        s.intersect_with(&other.0);
        Subset(s)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.0.clone();
        s.union_with(&other.0);
        Subset(s)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.0.is_subset(&other.0)
    }
}

/// Which bound operator to apply: `X⁻` (common lower bounds) or `X⁺`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bound {
    Lower,
    Upper,
}

/// A finite partially ordered set with named elements.
///
/// The order is stored twice, as principal down-sets `Λ_i = {j : j ≤ i}` and
/// principal up-sets `V_i = {j : j ≥ i}`.
#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    below: Vec<Subset>,
    above: Vec<Subset>,
    index: HashMap<String, usize>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.below == other.below
    }
}

impl Eq for Poset {}

impl Poset {
    /// Reflexive-transitive closure of the given `low ≤ high` pairs.
    pub fn from_relations(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        // above[i] grows into the up-closure of i
        let mut above: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(i);
                s
            })
            .collect();
        for &(lo, hi) in pairs {
            for i in [lo, hi] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, len: n });
                }
            }
            above[lo].insert(hi);
        }
        // Warshall over bitset rows
        for k in 0..n {
            let row_k = above[k].clone();
            for row in above.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in above[i].ones() {
                if j != i && above[j].contains(i) {
                    return Err(Error::Antisymmetry(names[i].clone(), names[j].clone()));
                }
            }
        }
        let mut below: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in above.iter().enumerate() {
            for j in row.ones() {
                below[j].insert(i);
            }
        }
        Ok(Poset {
            names,
            below: below.into_iter().map(Subset).collect(),
            above: above.into_iter().map(Subset).collect(),
            index,
        })
    }

    /// Convenience constructor from name pairs.
    pub fn from_named<S: AsRef<str>>(names: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let find = |s: &S| {
            lookup
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.as_ref().to_string()))
        };
        let pairs = pairs
            .iter()
            .map(|(a, b)| Ok((find(a)?, find(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::from_relations(names, &pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// `Λ_i`.
    pub fn down_set(&self, i: usize) -> &Subset {
        &self.below[i]
    }

    /// `V_i`.
    pub fn up_set(&self, i: usize) -> &Subset {
        &self.above[i]
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<Subset> {
        let idx = names
            .into_iter()
            .map(|n| {
                self.index_of(n)
                    .ok_or_else(|| Error::UnknownElement(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Subset::from_indices(self.len(), idx)
    }

    /// `{a,b,…}` with member names sorted, independent of element order.
    pub fn render(&self, s: &Subset) -> String {
        let mut members: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        members.sort_unstable();
        format!("{{{}}}", members.join(","))
    }

    /// Hasse edges as `(upper, lower)` pairs with `lower` covered by `upper`,
    /// sorted lexicographically.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in self.below[a].iter() {
                if b == a {
                    continue;
                }
                let between = self.below[a]
                    .iter()
                    .any(|c| c != a && c != b && self.lt(b, c));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Elements covered by `a`.
    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        self.below[a]
            .iter()
            .filter(|&b| {
                b != a
                    && !self.below[a]
                        .iter()
                        .any(|c| c != a && c != b && self.lt(b, c))
            })
            .collect()
    }

    /// Indices ordered so that every element precedes the elements above it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.below[i].len(), i));
        order
    }

    /// Number of edges in the longest strict chain (0 for an antichain).
    pub fn longest_chain_length(&self) -> usize {
        let mut height = vec![0usize; self.len()];
        for i in self.linear_extension() {
            height[i] = self.below[i]
                .iter()
                .filter(|&j| j != i)
                .map(|j| height[j] + 1)
                .max()
                .unwrap_or(0);
        }
        height.into_iter().max().unwrap_or(0)
    }

    pub fn least_element(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.above[i].len() == self.len())
    }

    pub fn greatest_element(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.below[i].len() == self.len())
    }

    /// Connected components of the comparability graph, each sorted, in order
    /// of their smallest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in self.below[x].iter().chain(self.above[x].iter()) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// `X⁻ = ⋂ Λ_x` or `X⁺ = ⋂ V_x`; the empty set maps to the whole poset.
    pub fn bounds(&self, x: &Subset, direction: Bound) -> Subset {
        let table = match direction {
            Bound::Lower => &self.below,
            Bound::Upper => &self.above,
        };
        x.iter()
            .fold(self.full_subset(), |acc, i| acc.intersection(&table[i]))
    }

    /// Restriction of the order to `s`, keeping names and relative index order.
    pub fn induced_subposet(&self, s: &Subset) -> Result<Poset> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        let members = s.indices();
        let names = members.iter().map(|&i| self.names[i].clone()).collect();
        let mut pairs = Vec::new();
        for (a, &i) in members.iter().enumerate() {
            for (b, &j) in members.iter().enumerate() {
                if i != j && self.leq(i, j) {
                    pairs.push((a, b));
                }
            }
        }
        Poset::from_relations(names, &pairs)
    }

    /// All strictly decreasing chains `c₀ > c₁ > … > c_n`, lexicographic in
    /// element indices.
    pub fn chains(&self, n: usize) -> ChainSet {
        self.collect_chains(n, false)
    }

    /// Weakly decreasing chains `c₀ ≥ … ≥ c_n` (nerve simplices including
    /// degenerate ones), lexicographic in element indices.
    pub fn weak_chains(&self, n: usize) -> ChainSet {
        self.collect_chains(n, true)
    }

    fn collect_chains(&self, n: usize, weak: bool) -> ChainSet {
        fn extend(
            p: &Poset,
            n: usize,
            weak: bool,
            prefix: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if prefix.len() == n + 1 {
                out.push(prefix.clone());
                return;
            }
            let last = *prefix.last().expect("prefix is nonempty");
            for next in p.below[last].iter() {
                if weak || next != last {
                    prefix.push(next);
                    extend(p, n, weak, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(n + 1);
        for c0 in 0..self.len() {
            prefix.push(c0);
            extend(self, n, weak, &mut prefix, &mut out);
            prefix.pop();
        }
        ChainSet {
            degree: n,
            chains: out,
        }
    }

    /// The intersection poset `Ũ` of the canonical covering `{Λ_i}`.
    pub fn intersection_poset(&self) -> Result<IntersectionPoset> {
        IntersectionPoset::new(self)
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{} < {}", self.name(b), self.name(a)))
            .collect();
        write!(
            f,
            "{{{}}} with {}",
            self.names.join(", "),
            covers.join(", ")
        )
    }
}

/// Chains of a fixed degree, in deterministic lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainSet {
    pub degree: usize,
    pub chains: Vec<Vec<usize>>,
}

impl ChainSet {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn position_map(&self) -> HashMap<&[usize], usize> {
        self.chains
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_slice(), i))
            .collect()
    }
}

/// Distinct nonempty finite intersections of the sets `Λ_i`, ordered by
/// inclusion.
///
/// Nodes are sorted by decreasing size, ties broken by member indices, which
/// is a linear extension of reverse inclusion. Node names are
/// `{a,b,…}` with member names sorted.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    base: Poset,
    nodes: Vec<Subset>,
    generators: Vec<Vec<usize>>,
    lambda: Vec<usize>,
    node_poset: Poset,
    lookup: HashMap<Subset, usize>,
}

impl IntersectionPoset {
    pub fn new(base: &Poset) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::EmptyPoset);
        }
        let n = base.len();
        let mut found: HashMap<Subset, Vec<usize>> = HashMap::new();
        let mut frontier: Vec<Subset> = Vec::new();
        for i in 0..n {
            // Λ_i are pairwise distinct in a T₀ space
            found.insert(base.below[i].clone(), vec![i]);
            frontier.push(base.below[i].clone());
        }
        let generating: Vec<Subset> = frontier.clone();
        // every intersection of Λ's is reached by intersecting with one Λ at a time
        while let Some(w) = frontier.pop() {
            for (i, lam) in generating.iter().enumerate() {
                let meet = w.intersection(lam);
                if meet.is_empty() || found.contains_key(&meet) {
                    continue;
                }
                let mut gens = found[&w].clone();
                gens.push(i);
                gens.sort_unstable();
                found.insert(meet.clone(), gens);
                frontier.push(meet);
            }
        }
        let mut entries: Vec<(Subset, Vec<usize>)> = found.into_iter().collect();
        entries.sort_by(|(a, _), (b, _)| {
            b.len()
                .cmp(&a.len())
                .then_with(|| a.indices().cmp(&b.indices()))
        });
        let (nodes, generators): (Vec<Subset>, Vec<Vec<usize>>) = entries.into_iter().unzip();
        let lookup: HashMap<Subset, usize> = nodes
            .iter()
            .enumerate()
            .map(|(k, s)| (s.clone(), k))
            .collect();
        let lambda = (0..n).map(|i| lookup[&base.below[i]]).collect();
        let names = nodes.iter().map(|s| base.render(s)).collect();
        let mut pairs = Vec::new();
        for (a, sa) in nodes.iter().enumerate() {
            for (b, sb) in nodes.iter().enumerate() {
                if a != b && sa.is_subset(sb) {
                    pairs.push((a, b));
                }
            }
        }
        let node_poset = Poset::from_relations(names, &pairs)?;
        Ok(IntersectionPoset {
            base: base.clone(),
            nodes,
            generators,
            lambda,
            node_poset,
            lookup,
        })
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Subset] {
        &self.nodes
    }

    pub fn node(&self, k: usize) -> &Subset {
        &self.nodes[k]
    }

    /// A set `S` of base elements with `S⁻` equal to node `k`.
    pub fn generators(&self, k: usize) -> &[usize] {
        &self.generators[k]
    }

    /// Node index of `Λ_i`.
    pub fn lambda(&self, i: usize) -> usize {
        self.lambda[i]
    }

    pub fn node_of(&self, s: &Subset) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    /// The nodes as a poset ordered by inclusion.
    pub fn node_poset(&self) -> &Poset {
        &self.node_poset
    }

    pub fn node_name(&self, k: usize) -> &str {
        self.node_poset.name(k)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn c2() -> Poset {
        Poset::from_named(
            &["p0", "p1", "p2", "p3"],
            &[("p2", "p0"), ("p2", "p1"), ("p3", "p0"), ("p3", "p1")],
        )
        .unwrap()
    }

    fn s2() -> Poset {
        let names = ["0", "1", "2", "3", "4", "5"];
        let pairs = [
            ("2", "0"),
            ("3", "0"),
            ("2", "1"),
            ("3", "1"),
            ("4", "2"),
            ("5", "2"),
            ("4", "3"),
            ("5", "3"),
        ];
        Poset::from_named(&names, &pairs).unwrap()
    }

    fn eight() -> Poset {
        let names: Vec<String> = (0..8).map(|i| i.to_string()).collect();
        let edges = [
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
        ];
        Poset::from_relations(names, &edges).unwrap()
    }

    fn random(n: usize, density: f64, seed: u64) -> Poset {
        crate::random::random_poset(n, density, seed)
    }

    #[test]
    fn closure_and_errors() {
        let p = c2();
        assert!(p.leq(2, 0) && !p.leq(0, 2) && p.leq(1, 1));
        let single = Poset::from_named(&["a"], &[]).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single.leq(0, 0));
        let cyc = Poset::from_named(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(cyc, Err(Error::Antisymmetry(..))));
        let dup = Poset::from_named(&["a", "a"], &[]);
        assert!(matches!(dup, Err(Error::DuplicateElement(n)) if n == "a"));
        let unknown = Poset::from_named(&["a"], &[("a", "z")]);
        assert!(matches!(unknown, Err(Error::UnknownElement(n)) if n == "z"));
        // transitive closure of a 3-chain given as non-cover pairs
        let t = Poset::from_named(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(t.leq(0, 2));
        assert_eq!(t.covers(), vec![(1, 0), (2, 1)]);
    }

    #[test]
    fn bounds_on_c2() {
        let p = c2();
        let top = p.subset(["p0", "p1"]).unwrap();
        assert_eq!(
            p.bounds(&top, Bound::Lower),
            p.subset(["p2", "p3"]).unwrap()
        );
        let bottom = p.subset(["p2", "p3"]).unwrap();
        assert_eq!(p.bounds(&bottom, Bound::Upper), top);
        let one = p.subset(["p0"]).unwrap();
        assert_eq!(&p.bounds(&one, Bound::Lower), p.down_set(0));
        assert_eq!(p.bounds(&Subset::empty(4), Bound::Lower), p.full_subset());
    }

    #[test]
    fn intersection_poset_c2() {
        let u = c2().intersection_poset().unwrap();
        let names: Vec<&str> = (0..u.len()).map(|k| u.node_name(k)).collect();
        assert_eq!(
            names,
            vec!["{p0,p2,p3}", "{p1,p2,p3}", "{p2,p3}", "{p2}", "{p3}"]
        );
        assert_eq!(u.lambda(0), 0);
        assert_eq!(u.lambda(3), 4);
        assert_eq!(u.node_poset().covers().len(), 4);
    }

    #[test]
    fn intersection_poset_s2() {
        let p = s2();
        let u = p.intersection_poset().unwrap();
        assert_eq!(u.len(), 8);
        let meet01 = p.down_set(0).intersection(p.down_set(1));
        let meet23 = p.down_set(2).intersection(p.down_set(3));
        assert!(u.node_of(&meet01).is_some());
        assert!(u.node_of(&meet23).is_some());
    }

    #[test]
    fn intersection_poset_n_is_isomorphic_to_n() {
        let n = Poset::from_named(
            &["p0", "p1", "p2", "p3"],
            &[("p2", "p0"), ("p3", "p0"), ("p3", "p1")],
        )
        .unwrap();
        let u = n.intersection_poset().unwrap();
        assert_eq!(u.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(n.leq(i, j), u.node_poset().leq(u.lambda(i), u.lambda(j)));
            }
        }
    }

    #[test]
    fn chain_enumeration() {
        let p = c2();
        assert_eq!(
            p.chains(1).chains,
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]
        );
        assert_eq!(p.chains(0).len(), 4);
        assert!(p.chains(2).is_empty());
        let anti = Poset::from_named(&["a", "b"], &[]).unwrap();
        assert!(anti.chains(1).is_empty());
        assert_eq!(p.longest_chain_length(), 1);
        assert_eq!(s2().longest_chain_length(), 2);
        // weak chains on a point: one per degree
        let pt = Poset::from_named(&["a"], &[]).unwrap();
        assert_eq!(pt.weak_chains(3).chains, vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn induced_subposets() {
        let p = s2();
        let tops = p.induced_subposet(&p.subset(["0", "1"]).unwrap()).unwrap();
        assert!(tops.covers().is_empty());
        assert_eq!(p.induced_subposet(&p.full_subset()).unwrap(), p);
        assert!(matches!(
            p.induced_subposet(&Subset::empty(6)),
            Err(Error::EmptySubset)
        ));
        let e = eight();
        let upper = e.bounds(&e.subset(["5", "6"]).unwrap(), Bound::Upper);
        assert_eq!(upper, e.subset(["0", "1", "2", "3"]).unwrap());
        let tree = e.induced_subposet(&upper).unwrap();
        assert_eq!(tree.covers().len(), 3);
        assert_eq!(tree.components().len(), 1);
    }

    #[test]
    fn components_and_extremes() {
        let p = c2();
        assert_eq!(p.components(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(p.least_element(), None);
        let anti = Poset::from_named(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(anti.components().len(), 3);
        let v = Poset::from_named(&["p0", "p1", "p2"], &[("p2", "p0"), ("p2", "p1")]).unwrap();
        assert_eq!(v.least_element(), Some(2));
    }

    proptest! {
        #[test]
        fn galois_idempotence(n in 1usize..9, density in 0.0f64..1.0, seed in any::<u64>(), mask in any::<u16>()) {
            let p = random(n, density, seed);
            let x = Subset::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)).unwrap();
            let lo = p.bounds(&x, Bound::Lower);
            let lo_up_lo = p.bounds(&p.bounds(&lo, Bound::Upper), Bound::Lower);
            prop_assert_eq!(lo_up_lo, lo);
        }

        #[test]
        fn nodes_are_exactly_the_nonempty_lower_bound_sets(n in 1usize..8, density in 0.0f64..1.0, seed in any::<u64>()) {
            let p = random(n, density, seed);
            let u = p.intersection_poset().unwrap();
            let mut expected = std::collections::BTreeSet::new();
            for mask in 1u32..(1 << n) {
                let x = Subset::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)).unwrap();
                let lo = p.bounds(&x, Bound::Lower);
                if !lo.is_empty() {
                    expected.insert(lo);
                }
            }
            let got: std::collections::BTreeSet<Subset> = u.nodes().iter().cloned().collect();
            prop_assert_eq!(got.len(), u.len());
            prop_assert_eq!(got, expected);
            for k in 0..u.len() {
                let gens = Subset::from_indices(n, u.generators(k).iter().copied()).unwrap();
                prop_assert_eq!(&p.bounds(&gens, Bound::Lower), u.node(k));
            }
            for i in 0..n {
                for j in 0..n {
                    if p.lt(i, j) {
                        prop_assert!(u.node(u.lambda(i)).is_subset(u.node(u.lambda(j))));
                        prop_assert_ne!(u.lambda(i), u.lambda(j));
                    }
                }
            }
        }

        #[test]
        fn chains_vanish_above_height(n in 1usize..8, density in 0.0f64..1.0, seed in any::<u64>()) {
            let p = random(n, density, seed);
            let h = p.longest_chain_length();
            prop_assert!(!p.chains(h).is_empty());
            prop_assert!(p.chains(h + 1).is_empty());
        }
    }
}
