//! Brute-force verifiers and seed-deterministic generators.
//!
//! The inclusion chain `≈_min ⊆ ≈_min^tc ⊆ ≈ ⊆ ≈_min^ic` and the equality
//! `≈ = ≈_min^ic` are checked as pair-set containments on the universe.
//! The rewriting search in [`bfs_word_equivalence`] works on raw letter
//! sequences and shares no code with the saturation engine it cross-checks.
//!
//! Random generators use ChaCha8 seeded with `seed_from_u64(seed)`:
//!
//! * [`random_equivalence`] walks the universe in canonical order; the word
//!   at position `i` draws `r` uniformly from `0..=i` and joins the class of
//!   word `r` when `r < i`, otherwise opens a new class. This is the Chinese
//!   restaurant process with concentration 1.
//! * [`random_hom_instance`] draws an order `n` from `1..=3`, one of the
//!   associative tables of that order uniformly, then each letter's image
//!   uniformly from `0..n`.
//! * [`random_presentation`] draws a pair count from `1..=max_pairs`, and for
//!   each side of each pair a length from `1..=max_len` and its letters.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closure::{invariant_closure, minimal_kernel, ContextViolation};
use crate::congruence::check_congruence;
use crate::error::{Error, Result};
use crate::hom::{associative_tables, kernel, FiniteSemigroup, LetterMap};
use crate::relation::{transitive_closure, PairRelation, Partition};
use crate::word::{Alphabet, Letter, Universe, Word};

/// Outcome of the three inclusions; each field holds the first violating pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub bound: usize,
    pub min_in_tc: Option<(usize, usize)>,
    pub tc_in_equivalence: Option<(usize, usize)>,
    pub equivalence_in_ic: Option<(usize, usize)>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.min_in_tc.is_none()
            && self.tc_in_equivalence.is_none()
            && self.equivalence_in_ic.is_none()
    }

    /// One `PASS`/`FAIL` line per inclusion, failing lines followed by the witness pair.
    pub fn render(&self, universe: &Universe) -> String {
        let mut out = format!("bound {}\n", self.bound);
        for (name, witness) in [
            ("min-subset-tc", self.min_in_tc),
            ("tc-subset-eq", self.tc_in_equivalence),
            ("eq-subset-ic", self.equivalence_in_ic),
        ] {
            out.push_str(&status_line(name, witness, universe));
        }
        out
    }
}

fn status_line(name: &str, witness: Option<(usize, usize)>, universe: &Universe) -> String {
    match witness {
        None => format!("PASS {name}\n"),
        Some((i, j)) => format!("FAIL {name} {} {}\n", universe.word(i), universe.word(j)),
    }
}

/// Checks `≈_min ⊆ ≈_min^tc ⊆ ≈ ⊆ ≈_min^ic` for an arbitrary partition.
pub fn check_inclusion_chain(p: &Partition) -> LemmaReport {
    let min = minimal_kernel(p);
    let tc = transitive_closure(&min);
    let ic = invariant_closure(&min);
    let min_in_tc = min.pairs().find(|&(i, j)| !tc.related(i, j));
    LemmaReport {
        bound: p.universe().bound(),
        min_in_tc,
        tc_in_equivalence: tc
            .related_pairs()
            .into_iter()
            .find(|&(i, j)| !p.related(i, j)),
        equivalence_in_ic: p
            .related_pairs()
            .into_iter()
            .find(|&(i, j)| !ic.contains(i, j)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub bound: usize,
    pub is_l_consistent: bool,
    pub counterexample: Option<ContextViolation>,
    /// Off-diagonal pair sets of `≈` and `≈_min^ic` coincide.
    pub equality_holds: bool,
    /// Least pair in the symmetric difference.
    pub witness: Option<(usize, usize)>,
    pub minimal_kernel: PairRelation,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.is_l_consistent && self.equality_holds
    }

    pub fn render(&self, universe: &Universe) -> String {
        let mut out = format!("bound {}\n", self.bound);
        match &self.counterexample {
            None => out.push_str("PASS l-consistent\n"),
            Some(v) => out.push_str(&format!("FAIL l-consistent {}\n", v.render(universe))),
        }
        out.push_str(&status_line("equality", self.witness, universe));
        out
    }
}

/// Compares `≈` with the invariant closure of its minimal kernel, and
/// checks L-consistency of `≈`.
pub fn check_characterization(p: &Partition) -> TheoremReport {
    let verdict = check_congruence(p);
    let min = minimal_kernel(p);
    let ic = invariant_closure(&min);
    let lhs = p.related_pairs();
    let rhs: Vec<(usize, usize)> = ic.off_diagonal().collect();
    let witness = first_difference(&lhs, &rhs);
    TheoremReport {
        bound: verdict.bound,
        is_l_consistent: verdict.holds(),
        counterexample: verdict.counterexample,
        equality_holds: witness.is_none(),
        witness,
        minimal_kernel: min,
    }
}

/// Least element of the symmetric difference of two sorted, deduplicated lists.
fn first_difference(a: &[(usize, usize)], b: &[(usize, usize)]) -> Option<(usize, usize)> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => return Some(a[i]),
            std::cmp::Ordering::Greater => return Some(b[j]),
        }
    }
    a.get(i).or(b.get(j)).copied()
}

/// Result of the rewriting search: the rewrite sequence from `u` to `v` when reachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordEquivalence {
    pub reachable: bool,
    pub trace: Vec<Word>,
}

impl WordEquivalence {
    pub fn steps(&self) -> Option<usize> {
        self.reachable.then(|| self.trace.len() - 1)
    }
}

/// Breadth-first search from `u` for `v`, where a step replaces one
/// occurrence of a factor `x` by `y` for a seed pair `{x, y}` (either
/// direction) and no intermediate word grows longer than `cap`.
pub fn bfs_word_equivalence(
    seed: &PairRelation,
    u: &Word,
    v: &Word,
    cap: usize,
) -> Result<WordEquivalence> {
    let needed = u.len().max(v.len());
    if cap < needed {
        return Err(Error::CapTooSmall { cap, needed });
    }
    let alphabet = seed.universe().alphabet().clone();
    if u.alphabet() != &alphabet || v.alphabet() != &alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let universe = seed.universe();
    let mut rules: Vec<(Vec<Letter>, Vec<Letter>)> = Vec::new();
    for (i, j) in seed.off_diagonal() {
        let (x, y) = (
            universe.word(i).letters().to_vec(),
            universe.word(j).letters().to_vec(),
        );
        rules.push((x.clone(), y.clone()));
        rules.push((y, x));
    }
    let start = u.letters().to_vec();
    let goal = v.letters().to_vec();
    let mut parent: HashMap<Vec<Letter>, Option<Vec<Letter>>> =
        HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        if w == goal {
            let mut trace = vec![w.clone()];
            let mut cur = w;
            while let Some(Some(prev)) = parent.get(&cur) {
                trace.push(prev.clone());
                cur = prev.clone();
            }
            trace.reverse();
            let trace = trace
                .into_iter()
                .map(|letters| Word::new(alphabet.clone(), letters))
                .collect::<Result<Vec<_>>>()?;
            return Ok(WordEquivalence {
                reachable: true,
                trace,
            });
        }
        for (x, y) in &rules {
            if x.len() > w.len() || w.len() - x.len() + y.len() > cap {
                continue;
            }
            for at in 0..=w.len() - x.len() {
                if w[at..at + x.len()] != x[..] {
                    continue;
                }
                let mut next = Vec::with_capacity(w.len() - x.len() + y.len());
                next.extend_from_slice(&w[..at]);
                next.extend_from_slice(y);
                next.extend_from_slice(&w[at + x.len()..]);
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some(w.clone()));
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(WordEquivalence {
        reachable: false,
        trace: Vec::new(),
    })
}

/// A uniformly-seeded random equivalence on the universe (see module docs).
pub fn random_equivalence(universe: &Arc<Universe>, seed: u64) -> Partition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = Vec::with_capacity(universe.len());
    for i in 0..universe.len() {
        let r = rng.random_range(0..=i);
        let label = if r < i { labels[r] } else { i };
        labels.push(label);
    }
    Partition::from_labels(universe.clone(), &labels)
}

/// A random associative table of order at most 3 and a random letter map into it.
pub fn random_hom_instance(alphabet: &Arc<Alphabet>, seed: u64) -> (FiniteSemigroup, LetterMap) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = rng.random_range(1..=3usize);
    let tables = associative_tables(order);
    let table = tables[rng.random_range(0..tables.len())].clone();
    let images = (0..alphabet.len())
        .map(|_| rng.random_range(0..order))
        .collect();
    let map = LetterMap::new(alphabet.clone(), images, &table).expect("images are in range");
    (table, map)
}

/// The kernel of a random homomorphism into a semigroup of order at most 3.
pub fn random_congruence(universe: &Arc<Universe>, seed: u64) -> Partition {
    let (table, map) = random_hom_instance(universe.alphabet(), seed);
    kernel(&map, &table, universe).expect("map is over the universe alphabet")
}

/// Random seed pairs for congruence generation.
pub fn random_presentation(
    universe: &Arc<Universe>,
    seed: u64,
    max_pairs: usize,
    max_len: usize,
) -> PairRelation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = universe.alphabet().len() as Letter;
    let max_len = max_len.clamp(1, universe.bound());
    let mut rel = PairRelation::empty(universe.clone());
    let count = rng.random_range(1..=max_pairs.max(1));
    let draw = |rng: &mut ChaCha8Rng| {
        let n = rng.random_range(1..=max_len);
        let letters: Vec<Letter> = (0..n).map(|_| rng.random_range(0..k)).collect();
        universe.index_of_letters(&letters).expect("word fits")
    };
    for _ in 0..count {
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        rel.insert_unchecked(x, y);
    }
    rel
}
