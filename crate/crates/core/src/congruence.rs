//! Congruence checking, bounded generation of congruences from seed pairs,
//! and quotient semigroups.
//!
//! All verdicts are relative to the universe bound `L`: the one-letter
//! compatibility condition is only checked where both extended words still
//! fit in `U_L` ("L-consistency"). A partition that passes at `L` may fail
//! at `L + 1`.

use std::fmt::Write as _;

use crate::closure::{first_violation, invariant_closure, ContextViolation};
use crate::error::{Error, Result};
use crate::par;
use crate::relation::{
    spanning_relation, transitive_closure, union_family, PairRelation, Partition,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceVerdict {
    pub bound: usize,
    pub counterexample: Option<ContextViolation>,
}

impl CongruenceVerdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `u ≈ v ⟹ au ≈ av, ua ≈ va` for every related pair and letter
/// whose extensions fit in the universe. One-letter compatibility implies
/// compatibility with arbitrary contexts inside the bound.
pub fn check_congruence(p: &Partition) -> CongruenceVerdict {
    let pairs = p.related_pairs();
    CongruenceVerdict {
        bound: p.universe().bound(),
        counterexample: first_violation(p.universe(), &pairs, |x, y| p.related(x, y)),
    }
}

/// The smallest equivalence on `U_L` containing `seed` and closed under
/// context extension within the bound.
///
/// Alternates an invariant-closure step and a transitive-closure step until
/// the partition stops changing. Each class enters the closure step through
/// its spanning pairs (member, least member); the least member is also the
/// shortest, so its extensions fit whenever any member's do.
pub fn generate_congruence(seed: &PairRelation) -> Partition {
    let mut current = transitive_closure(seed);
    loop {
        let extended = invariant_closure(&spanning_relation(&current));
        let next =
            transitive_closure(&union_family(&[extended, seed.clone()]).expect("same universe"));
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Cosets of a congruence with the partial product `(u)≈ ⋄ (v)≈ = (uv)≈`.
///
/// A product cell is undefined when no representative product fits in the
/// universe; it is computed from the least (hence shortest) representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSemigroup {
    partition: Partition,
    product: Vec<Vec<Option<usize>>>,
}

/// A product cell that disagrees with some in-bound representative product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDiscrepancy {
    pub left: usize,
    pub right: usize,
    pub u: usize,
    pub v: usize,
    pub expected: Option<usize>,
    pub found: usize,
}

pub fn class_label(id: usize) -> String {
    format!("C{id}")
}

impl QuotientSemigroup {
    /// Assembles a quotient without checking it; see [`verify_well_defined`].
    pub fn from_parts(partition: Partition, product: Vec<Vec<Option<usize>>>) -> Self {
        QuotientSemigroup { partition, product }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn num_classes(&self) -> usize {
        self.partition.num_classes()
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.product[i][j]
    }

    pub fn table(&self) -> &[Vec<Option<usize>>] {
        &self.product
    }

    /// The canonical quotient map on a universe word.
    pub fn class_of(&self, word: usize) -> usize {
        self.partition.class_of(word)
    }

    /// Legend followed by the tab-separated product table; `-` marks undefined cells.
    pub fn render_table(&self) -> String {
        let universe = self.partition.universe();
        let n = self.num_classes();
        let mut out = String::new();
        let _ = writeln!(out, "alphabet {}", universe.alphabet());
        let _ = writeln!(out, "bound {}", universe.bound());
        for (id, class) in self.partition.classes().iter().enumerate() {
            let members: Vec<String> = class.iter().map(|&w| universe.word(w).render()).collect();
            let _ = writeln!(out, "{}\t{}", class_label(id), members.join(" "));
        }
        out.push_str("table");
        for j in 0..n {
            let _ = write!(out, "\t{}", class_label(j));
        }
        out.push('\n');
        for i in 0..n {
            out.push_str(&class_label(i));
            for j in 0..n {
                match self.product[i][j] {
                    Some(k) => {
                        let _ = write!(out, "\t{}", class_label(k));
                    }
                    None => out.push_str("\t-"),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Cayley-style graph: one node per coset, one edge per defined left
    /// multiplication by a generator.
    pub fn render_dot(&self) -> String {
        let universe = self.partition.universe();
        let mut out = String::from("digraph quotient {\n");
        for (id, class) in self.partition.classes().iter().enumerate() {
            let members: Vec<String> = class.iter().map(|&w| universe.word(w).render()).collect();
            let _ = writeln!(
                out,
                "  {} [label=\"{}: {}\"];",
                class_label(id),
                class_label(id),
                members.join(" ")
            );
        }
        for id in 0..self.num_classes() {
            for letter in universe.alphabet().letters() {
                let generator = self.partition.class_of(letter as usize);
                if let Some(target) = self.product[generator][id] {
                    let _ = writeln!(
                        out,
                        "  {} -> {} [label=\"{}\"];",
                        class_label(id),
                        class_label(target),
                        universe.alphabet().symbol(letter)
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Builds `S/≈`. Refuses partitions that are not congruences at their bound,
/// and verifies the product against every in-bound representative pair.
pub fn build_quotient(p: &Partition) -> Result<QuotientSemigroup> {
    let verdict = check_congruence(p);
    if let Some(v) = verdict.counterexample {
        return Err(Error::NotACongruence(v.render(p.universe())));
    }
    let universe = p.universe();
    let n = p.num_classes();
    let product = par::map_range(n, |i| {
        (0..n)
            .map(|j| {
                universe
                    .concat_index(p.class(i)[0], p.class(j)[0])
                    .map(|w| p.class_of(w))
            })
            .collect()
    });
    let q = QuotientSemigroup::from_parts(p.clone(), product);
    if let Err(d) = verify_well_defined(&q) {
        return Err(Error::Internal(format!(
            "quotient product C{}*C{} disagrees on representatives {} {}",
            d.left,
            d.right,
            universe.word(d.u),
            universe.word(d.v)
        )));
    }
    Ok(q)
}

/// Checks that every product cell equals the class of every in-bound
/// representative product, and is defined whenever one exists.
pub fn verify_well_defined(q: &QuotientSemigroup) -> std::result::Result<(), ProductDiscrepancy> {
    let p = &q.partition;
    let universe = p.universe();
    let n = p.num_classes();
    let found = par::find_map_first_range(n, |i| {
        for j in 0..n {
            let expected = q.product[i][j];
            for &u in p.class(i) {
                for &v in p.class(j) {
                    if let Some(w) = universe.concat_index(u, v) {
                        let found = p.class_of(w);
                        if expected != Some(found) {
                            return Some(ProductDiscrepancy {
                                left: i,
                                right: j,
                                u,
                                v,
                                expected,
                                found,
                            });
                        }
                    }
                }
            }
        }
        None
    });
    match found {
        Some(d) => Err(d),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Alphabet, Universe};
    use std::sync::Arc;

    fn universe(symbols: &[&str], bound: usize) -> Arc<Universe> {
        Universe::new(
            Arc::new(Alphabet::new(symbols.iter().copied()).unwrap()),
            bound,
        )
        .unwrap()
    }

    fn parity(u: &Arc<Universe>) -> Partition {
        let labels: Vec<usize> = u.words().iter().map(|w| w.len() % 2).collect();
        Partition::from_labels(u.clone(), &labels)
    }

    #[test]
    fn discrete_partition_is_congruence() {
        let u = universe(&["a", "b"], 3);
        assert!(check_congruence(&Partition::discrete(u)).holds());
    }

    #[test]
    fn non_congruence_counterexample() {
        let u = universe(&["a", "b"], 3);
        let p = Partition::from_word_classes(u.clone(), &[&["a", "bb"]]).unwrap();
        let verdict = check_congruence(&p);
        assert_eq!(verdict.bound, 3);
        let v = verdict.counterexample.unwrap();
        assert_eq!(v.render(&u), "a bb a left");
        let (x, y) = v.extended(&u).unwrap();
        assert!(!p.related(x, y));
        assert!(matches!(build_quotient(&p), Err(Error::NotACongruence(_))));
    }

    #[test]
    fn generation_examples() {
        let u = universe(&["a", "b"], 3);
        assert_eq!(
            generate_congruence(&PairRelation::empty(u.clone())),
            Partition::discrete(u)
        );
        let unary = universe(&["a"], 4);
        let seed = PairRelation::from_words(unary.clone(), &[("a", "aa")]).unwrap();
        let p = generate_congruence(&seed);
        assert_eq!(p.num_classes(), 1);
    }

    #[test]
    fn parity_quotient_is_cyclic_group() {
        let u = universe(&["a"], 4);
        let q = build_quotient(&parity(&u)).unwrap();
        assert_eq!(q.num_classes(), 2);
        // C0 = odd, C1 = even
        assert_eq!(q.table(), &[vec![Some(1), Some(0)], vec![Some(0), Some(1)]]);
        assert_eq!(verify_well_defined(&q), Ok(()));
    }

    #[test]
    fn trivial_quotient_matches_word_product() {
        let u = universe(&["a", "b"], 2);
        let q = build_quotient(&Partition::discrete(u.clone())).unwrap();
        for i in 0..u.len() {
            for j in 0..u.len() {
                assert_eq!(q.product(i, j), u.concat_index(i, j));
            }
        }
    }

    #[test]
    fn forged_quotient_reports_discrepancy() {
        let u = universe(&["a"], 4);
        let p = parity(&u);
        let q =
            QuotientSemigroup::from_parts(p, vec![vec![Some(0), Some(0)], vec![Some(0), Some(1)]]);
        let d = verify_well_defined(&q).unwrap_err();
        assert_eq!((d.left, d.right, d.found, d.expected), (0, 0, 1, Some(0)));
    }

    #[test]
    fn single_class_quotient() {
        let u = universe(&["a", "b"], 3);
        let labels = vec![0; u.len()];
        let q = build_quotient(&Partition::from_labels(u, &labels)).unwrap();
        assert_eq!(q.table(), &[vec![Some(0)]]);
    }

    #[test]
    fn rendering_is_stable() {
        let u = universe(&["a"], 4);
        let q = build_quotient(&parity(&u)).unwrap();
        assert_eq!(
            q.render_table(),
            "alphabet a\nbound 4\nC0\ta aaa\nC1\taa aaaa\ntable\tC0\tC1\nC0\tC1\tC0\nC1\tC0\tC1\n"
        );
        assert_eq!(
            q.render_dot(),
            "digraph quotient {\n  C0 [label=\"C0: a aaa\"];\n  C1 [label=\"C1: aa aaaa\"];\n  C0 -> C1 [label=\"a\"];\n  C1 -> C0 [label=\"a\"];\n}\n"
        );
    }
}
