//! Symmetric pair relations and equivalence relations over a bounded universe.
//!
//! Relations are stored as unordered index pairs `{i, j}` with `i <= j`.
//! Equivalences are stored as partitions into cosets; their diagonal is
//! implicit and never materialized.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{Universe, Word};

/// Disjoint-set forest over `0..n` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `x` and `y`; returns false if they were already merged.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        if self.size[rx] < self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        self.size[rx] += self.size[ry];
        true
    }

    pub fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|i| self.find(i)).collect()
    }
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

/// A symmetric binary relation on a bounded universe, viewed as a set of pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRelation {
    universe: Arc<Universe>,
    pairs: BTreeSet<(usize, usize)>,
}

impl PairRelation {
    pub fn empty(universe: Arc<Universe>) -> Self {
        PairRelation {
            universe,
            pairs: BTreeSet::new(),
        }
    }

    pub fn from_pairs<I>(universe: Arc<Universe>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rel = PairRelation::empty(universe);
        for (i, j) in pairs {
            rel.insert(i, j)?;
        }
        Ok(rel)
    }

    /// Builds a relation from rendered word pairs.
    pub fn from_words(universe: Arc<Universe>, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut rel = PairRelation::empty(universe.clone());
        for (u, v) in pairs {
            rel.insert(universe.parse_index(u)?, universe.parse_index(v)?)?;
        }
        Ok(rel)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn insert(&mut self, i: usize, j: usize) -> Result<bool> {
        let n = self.universe.len();
        if i >= n || j >= n {
            return Err(Error::OutsideUniverse(format!("#{}", i.max(j))));
        }
        Ok(self.pairs.insert(ordered(i, j)))
    }

    pub(crate) fn insert_unchecked(&mut self, i: usize, j: usize) {
        self.pairs.insert(ordered(i, j));
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&ordered(i, j))
    }

    pub fn contains_words(&self, u: &Word, v: &Word) -> bool {
        match (self.universe.index_of(u), self.universe.index_of(v)) {
            (Ok(i), Ok(j)) => self.contains(i, j),
            _ => false,
        }
    }

    /// Pairs `(i, j)` with `i <= j`, in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied().filter(|(i, j)| i != j)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_subset(&self, other: &PairRelation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// Pairs rendered as words, in canonical order.
    pub fn rendered(&self) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(i, j)| {
                (
                    self.universe.word(i).render(),
                    self.universe.word(j).render(),
                )
            })
            .collect()
    }

    fn check_universe(&self, other: &Arc<Universe>) -> Result<()> {
        if Arc::ptr_eq(&self.universe, other) || *self.universe == **other {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }
}

/// An equivalence relation on a bounded universe, stored as its cosets.
#[derive(Debug, Clone)]
pub struct Partition {
    universe: Arc<Universe>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        *self.universe == *other.universe && self.class_of == other.class_of
    }
}

impl Eq for Partition {}

impl Partition {
    /// The partition into singletons (the equality relation).
    pub fn discrete(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        Partition::from_labels(universe, &(0..n).collect::<Vec<_>>())
    }

    /// Groups universe words by equal label. Class ids are assigned in order
    /// of each class's least canonical index.
    pub fn from_labels<L: Eq + std::hash::Hash + Clone>(
        universe: Arc<Universe>,
        labels: &[L],
    ) -> Self {
        assert_eq!(labels.len(), universe.len(), "one label per universe word");
        let mut ids = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, label) in labels.iter().enumerate() {
            let id = *ids.entry(label.clone()).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[id].push(i);
            class_of.push(id);
        }
        Partition {
            universe,
            class_of,
            classes,
        }
    }

    /// Builds a partition from explicit classes; unlisted words become singletons.
    pub fn from_classes(universe: Arc<Universe>, classes: &[Vec<usize>]) -> Result<Self> {
        let n = universe.len();
        let mut labels: Vec<Option<usize>> = vec![None; n];
        for (c, members) in classes.iter().enumerate() {
            for &i in members {
                if i >= n {
                    return Err(Error::OutsideUniverse(format!("#{i}")));
                }
                if labels[i].is_some() {
                    return Err(Error::OverlappingClasses(universe.word(i).render()));
                }
                labels[i] = Some(c);
            }
        }
        let labels: Vec<(bool, usize)> = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| match l {
                Some(c) => (true, c),
                None => (false, i),
            })
            .collect();
        Ok(Partition::from_labels(universe, &labels))
    }

    /// Builds a partition from classes of rendered words.
    pub fn from_word_classes(universe: Arc<Universe>, classes: &[&[&str]]) -> Result<Self> {
        let classes = classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|w| universe.parse_index(w))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_classes(universe, &classes)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &[usize] {
        &self.classes[id]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }

    /// Off-diagonal related pairs `(i, j)`, `i < j`, in canonical order.
    pub fn related_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .classes
            .iter()
            .flat_map(|c| {
                c.iter()
                    .enumerate()
                    .flat_map(move |(a, &i)| c[a + 1..].iter().map(move |&j| (i, j)))
            })
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// True when every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.classes.iter().all(|c| {
            c.iter()
                .all(|&i| coarser.class_of[i] == coarser.class_of[c[0]])
        })
    }

    /// Restriction to the words of a smaller universe over the same alphabet.
    pub fn restrict(&self, smaller: &Arc<Universe>) -> Result<Partition> {
        if smaller.bound() > self.universe.bound()
            || !crate::word::same_alphabet(smaller.alphabet(), self.universe.alphabet())
        {
            return Err(Error::UniverseMismatch);
        }
        // canonical indices of U_L are a prefix of those of U_L' for L <= L'
        Ok(Partition::from_labels(
            smaller.clone(),
            &self.class_of[..smaller.len()],
        ))
    }
}

/// A chain `c_0, …, c_n` of words, consecutive entries related by the input relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureTrace {
    pub chain: Vec<usize>,
}

impl ClosureTrace {
    pub fn render(&self, universe: &Universe) -> Vec<String> {
        self.chain
            .iter()
            .map(|&i| universe.word(i).render())
            .collect()
    }
}

/// `r^tc`: the finest partition in which related words share a class.
/// Chains only pass through universe words.
pub fn transitive_closure(r: &PairRelation) -> Partition {
    let mut uf = UnionFind::new(r.universe.len());
    for (i, j) in r.off_diagonal() {
        uf.union(i, j);
    }
    Partition::from_labels(r.universe.clone(), &uf.labels())
}

/// Shortest chain from `a` to `b` through `r`, if any.
pub fn closure_trace(r: &PairRelation, a: usize, b: usize) -> Option<ClosureTrace> {
    let n = r.universe.len();
    let mut adjacency = vec![Vec::new(); n];
    for (i, j) in r.off_diagonal() {
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    let mut parent = vec![usize::MAX; n];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut chain = vec![b];
            let mut cur = b;
            while cur != a {
                cur = parent[cur];
                chain.push(cur);
            }
            chain.reverse();
            return Some(ClosureTrace { chain });
        }
        for &y in &adjacency[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Set union of a family of relations on one universe.
pub fn union_family(rs: &[PairRelation]) -> Result<PairRelation> {
    let Some(first) = rs.first() else {
        return Err(Error::UniverseMismatch);
    };
    let mut out = first.clone();
    for r in &rs[1..] {
        r.check_universe(&out.universe)?;
        out.pairs.extend(r.pairs.iter().copied());
    }
    Ok(out)
}

/// The equivalence generated by `r` (its transitive closure).
pub fn relation_to_partition(r: &PairRelation) -> Partition {
    transitive_closure(r)
}

/// All off-diagonal pairs inside each class.
pub fn partition_to_relation(p: &Partition) -> PairRelation {
    PairRelation {
        universe: p.universe.clone(),
        pairs: p.related_pairs().into_iter().collect(),
    }
}

/// A spanning set of pairs: each member paired with its class's least member.
pub fn spanning_relation(p: &Partition) -> PairRelation {
    let mut pairs = BTreeSet::new();
    for c in &p.classes {
        for &i in &c[1..] {
            pairs.insert((c[0], i));
        }
    }
    PairRelation {
        universe: p.universe.clone(),
        pairs,
    }
}

/// The coset `(u)≈`, canonically sorted.
pub fn coset(p: &Partition, u: &Word) -> Result<Vec<Word>> {
    let i = p.universe.index_of(u)?;
    Ok(p.classes[p.class_of[i]]
        .iter()
        .map(|&j| p.universe.word(j).clone())
        .collect())
}
