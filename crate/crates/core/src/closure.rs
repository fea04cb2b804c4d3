//! Context operators on word relations: invariance under one-letter
//! extension, the invariant closure `r^ic`, the minimal kernel `≈_min`
//! of an equivalence, and the decomposition of a related pair into a
//! shared context around a minimal core.
//!
//! Every operator here only looks at words no longer than the pair it is
//! applied to, so results computed on `U_L` agree with the same computation
//! on any larger universe restricted to `U_L`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::par;
use crate::relation::{PairRelation, Partition};
use crate::word::{Alphabet, Letter, Universe, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A related pair `(u, v)` whose one-letter extension by `letter` on `side`
/// is missing from the relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContextViolation {
    pub u: usize,
    pub v: usize,
    pub letter: Letter,
    pub side: Side,
}

impl ContextViolation {
    /// The extended pair `(au, av)` or `(ua, va)`.
    pub fn extended(&self, universe: &Universe) -> Option<(usize, usize)> {
        let ext = |i| match self.side {
            Side::Left => universe.extend_left(i, self.letter),
            Side::Right => universe.extend_right(i, self.letter),
        };
        Some((ext(self.u)?, ext(self.v)?))
    }

    /// `u v letter side`, space separated.
    pub fn render(&self, universe: &Universe) -> String {
        format!(
            "{} {} {} {}",
            universe.word(self.u),
            universe.word(self.v),
            universe.alphabet().symbol(self.letter),
            self.side
        )
    }
}

/// First pair in `pairs` (in order) whose fitting one-letter extension is not related.
/// Letters are tried in alphabet order, left before right.
pub(crate) fn first_violation<F>(
    universe: &Universe,
    pairs: &[(usize, usize)],
    related: F,
) -> Option<ContextViolation>
where
    F: Fn(usize, usize) -> bool + Sync + Send,
{
    let bound = universe.bound();
    par::find_map_first(pairs, |&(u, v)| {
        if universe.word(u).len().max(universe.word(v).len()) + 1 > bound {
            return None;
        }
        for letter in universe.alphabet().letters() {
            for side in [Side::Left, Side::Right] {
                let violation = ContextViolation { u, v, letter, side };
                let (x, y) = violation.extended(universe).expect("extension fits");
                if !related(x, y) {
                    return Some(violation);
                }
            }
        }
        None
    })
}

/// Whether `r` is closed under one-letter extension on both sides, wherever
/// the extended words fit in the universe. On failure returns the first
/// violation in canonical order.
pub fn is_invariant(r: &PairRelation) -> std::result::Result<(), ContextViolation> {
    let pairs: Vec<_> = r.pairs().collect();
    match first_violation(r.universe(), &pairs, |x, y| r.contains(x, y)) {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// All letter sequences of length `n`, lexicographic.
pub(crate) fn sequences(k: usize, n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..k as Letter).map(move |l| {
                    let mut t = s.clone();
                    t.push(l);
                    t
                })
            })
            .collect();
    }
    out
}

/// `r^ic`: every pair `(α u' β, α v' β)` with `(u', v') ∈ r` and possibly
/// empty contexts `α`, `β`, restricted to pairs inside the universe.
pub fn invariant_closure(r: &PairRelation) -> PairRelation {
    let universe = r.universe();
    let k = universe.alphabet().len();
    let bound = universe.bound();
    let pairs: Vec<_> = r.pairs().collect();
    let contexts: Vec<Vec<Vec<Letter>>> = (0..bound).map(|n| sequences(k, n)).collect();
    let wrapped = par::map(&pairs, |&(i, j)| {
        let (u, v) = (universe.word(i).letters(), universe.word(j).letters());
        let room = bound - u.len().max(v.len());
        let mut out = Vec::new();
        let mut x = Vec::with_capacity(bound);
        let mut y = Vec::with_capacity(bound);
        for total in 0..=room {
            for prefix_len in 0..=total {
                for alpha in &contexts[prefix_len] {
                    for beta in &contexts[total - prefix_len] {
                        x.clear();
                        y.clear();
                        x.extend_from_slice(alpha);
                        x.extend_from_slice(u);
                        x.extend_from_slice(beta);
                        y.extend_from_slice(alpha);
                        y.extend_from_slice(v);
                        y.extend_from_slice(beta);
                        let xi = universe.index_of_letters(&x).expect("wrapped word fits");
                        let yi = universe.index_of_letters(&y).expect("wrapped word fits");
                        out.push((xi, yi));
                    }
                }
            }
        }
        out
    });
    let mut closed = PairRelation::empty(universe.clone());
    for (x, y) in wrapped.into_iter().flatten() {
        closed.insert_unchecked(x, y);
    }
    closed
}

/// A pair written as `α u' β`, `α v' β` with nonempty core `(u', v')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextDecomposition {
    pub prefix: Vec<Letter>,
    pub core: (Word, Word),
    pub suffix: Vec<Letter>,
}

impl ContextDecomposition {
    fn alphabet(&self) -> &Arc<Alphabet> {
        self.core.0.alphabet()
    }

    /// Rebuilds the decomposed pair.
    pub fn reconstruct(&self) -> (Word, Word) {
        let wrap = |core: &Word| {
            let mut letters = self.prefix.clone();
            letters.extend_from_slice(core.letters());
            letters.extend_from_slice(&self.suffix);
            Word::new(self.alphabet().clone(), letters).expect("core is nonempty")
        };
        (wrap(&self.core.0), wrap(&self.core.1))
    }

    /// `α | u' ~ v' | β`, with `ε` for an empty context.
    pub fn render(&self) -> String {
        let e = self.alphabet();
        format!(
            "{} | {} ~ {} | {}",
            e.render(&self.prefix),
            self.core.0,
            self.core.1,
            e.render(&self.suffix)
        )
    }
}

impl fmt::Display for ContextDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn common_prefix(u: &[Letter], v: &[Letter]) -> usize {
    u.iter().zip(v).take_while(|(a, b)| a == b).count()
}

fn common_suffix(u: &[Letter], v: &[Letter]) -> usize {
    u.iter()
        .rev()
        .zip(v.iter().rev())
        .take_while(|(a, b)| a == b)
        .count()
}

fn decomposition(
    universe: &Universe,
    u: &[Letter],
    v: &[Letter],
    prefix_len: usize,
    suffix_len: usize,
) -> ContextDecomposition {
    let e = universe.alphabet();
    let core = |w: &[Letter]| {
        Word::new(e.clone(), w[prefix_len..w.len() - suffix_len].to_vec()).expect("nonempty core")
    };
    ContextDecomposition {
        prefix: u[..prefix_len].to_vec(),
        core: (core(u), core(v)),
        suffix: u[u.len() - suffix_len..].to_vec(),
    }
}

/// Core indices of `(u, v)` after removing `prefix_len` and `suffix_len`
/// shared letters, if both cores stay nonempty and the context is shared.
fn core_indices(
    universe: &Universe,
    u: &[Letter],
    v: &[Letter],
    prefix_len: usize,
    suffix_len: usize,
) -> Option<(usize, usize)> {
    let context = prefix_len + suffix_len;
    if context >= u.len() || context >= v.len() {
        return None;
    }
    if common_prefix(u, v) < prefix_len || common_suffix(u, v) < suffix_len {
        return None;
    }
    let cu = universe.index_of_letters(&u[prefix_len..u.len() - suffix_len])?;
    let cv = universe.index_of_letters(&v[prefix_len..v.len() - suffix_len])?;
    Some((cu, cv))
}

/// Membership in `r^ic`. The witness has the shortest prefix, then the shortest suffix.
pub fn ic_member(r: &PairRelation, u: &Word, v: &Word) -> Result<Option<ContextDecomposition>> {
    let universe = r.universe();
    universe.index_of(u)?;
    universe.index_of(v)?;
    let (ul, vl) = (u.letters(), v.letters());
    let max_prefix = common_prefix(ul, vl);
    let max_suffix = common_suffix(ul, vl);
    for prefix_len in 0..=max_prefix {
        for suffix_len in 0..=max_suffix {
            if let Some((cu, cv)) = core_indices(universe, ul, vl, prefix_len, suffix_len) {
                if r.contains(cu, cv) {
                    return Ok(Some(decomposition(
                        universe, ul, vl, prefix_len, suffix_len,
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// Whether a related pair can lose a shared first letter (`Side::Left`) or a
/// shared last letter (`Side::Right`) and stay related.
fn strippable(p: &Partition, i: usize, j: usize, side: Side) -> bool {
    let universe = p.universe();
    let (u, v) = (universe.word(i).letters(), universe.word(j).letters());
    if u.len() < 2 || v.len() < 2 {
        return false;
    }
    let (tu, tv) = match side {
        Side::Left if u[0] == v[0] => (&u[1..], &v[1..]),
        Side::Right if u[u.len() - 1] == v[v.len() - 1] => (&u[..u.len() - 1], &v[..v.len() - 1]),
        _ => return false,
    };
    let ti = universe
        .index_of_letters(tu)
        .expect("shorter word is in the universe");
    let tj = universe
        .index_of_letters(tv)
        .expect("shorter word is in the universe");
    p.related(ti, tj)
}

/// `≈_min`: related pairs from which neither a shared first letter nor a
/// shared last letter can be stripped while staying related. Diagonal pairs
/// are included; only single letters survive on the diagonal.
pub fn minimal_kernel(p: &Partition) -> PairRelation {
    let per_class = par::map(p.classes(), |class| {
        let mut out = Vec::new();
        for (a, &i) in class.iter().enumerate() {
            for &j in &class[a..] {
                if !strippable(p, i, j, Side::Left) && !strippable(p, i, j, Side::Right) {
                    out.push((i, j));
                }
            }
        }
        out
    });
    let mut kernel = PairRelation::empty(p.universe().clone());
    for (i, j) in per_class.into_iter().flatten() {
        kernel.insert_unchecked(i, j);
    }
    kernel
}

/// Strips shared letters off a related pair until its core lies in `≈_min`.
///
/// Every order of prefix and suffix strips is explored (breadth-first over
/// the `(prefix, suffix)` lattice), each intermediate pair staying related.
/// Among the terminal decompositions the one with the shortest suffix, then
/// the shortest prefix, is returned.
pub fn strip_to_core(p: &Partition, u: &Word, v: &Word) -> Result<ContextDecomposition> {
    let universe = p.universe();
    let (i, j) = (universe.index_of(u)?, universe.index_of(v)?);
    if !p.related(i, j) {
        return Err(Error::NotRelated {
            u: u.render(),
            v: v.render(),
        });
    }
    let (ul, vl) = (u.letters(), v.letters());
    let valid = |pl: usize, sl: usize| {
        core_indices(universe, ul, vl, pl, sl).is_some_and(|(cu, cv)| p.related(cu, cv))
    };
    let mut seen = BTreeSet::from([(0usize, 0usize)]);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    let mut terminal = Vec::new();
    while let Some((pl, sl)) = queue.pop_front() {
        let mut stuck = true;
        for next in [(pl + 1, sl), (pl, sl + 1)] {
            if valid(next.0, next.1) {
                stuck = false;
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        if stuck {
            terminal.push((pl, sl));
        }
    }
    let best = terminal
        .into_iter()
        .map(|(pl, sl)| {
            let core = core_indices(universe, ul, vl, pl, sl).expect("valid state");
            (sl, pl, core)
        })
        .min()
        .expect("the unstripped pair is reachable");
    Ok(decomposition(universe, ul, vl, best.1, best.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::partition_to_relation;

    fn universe(bound: usize) -> Arc<Universe> {
        Universe::new(Arc::new(Alphabet::new(["a", "b"]).unwrap()), bound).unwrap()
    }

    fn abelian(u: &Arc<Universe>) -> Partition {
        let labels: Vec<Vec<usize>> = u
            .words()
            .iter()
            .map(|w| {
                let mut counts = vec![0; u.alphabet().len()];
                for &l in w.letters() {
                    counts[l as usize] += 1;
                }
                counts
            })
            .collect();
        Partition::from_labels(u.clone(), &labels)
    }

    fn word(u: &Universe, s: &str) -> Word {
        Word::parse(s, u.alphabet()).unwrap()
    }

    fn pairs(r: &PairRelation) -> Vec<(String, String)> {
        r.rendered()
    }

    fn expect(list: &[(&str, &str)], u: &Arc<Universe>) -> Vec<(String, String)> {
        PairRelation::from_words(u.clone(), list)
            .unwrap()
            .rendered()
    }

    #[test]
    fn invariance_examples() {
        let u3 = universe(3);
        assert_eq!(is_invariant(&partition_to_relation(&abelian(&u3))), Ok(()));
        assert_eq!(is_invariant(&PairRelation::empty(u3)), Ok(()));
        let u2 = universe(2);
        let r = PairRelation::from_words(u2.clone(), &[("a", "b")]).unwrap();
        let v = is_invariant(&r).unwrap_err();
        assert_eq!(v.render(&u2), "a b a left");
        assert_eq!(v.extended(&u2), Some((2, 3)));
    }

    #[test]
    fn invariant_closure_examples() {
        let u3 = universe(3);
        let r = PairRelation::from_words(u3.clone(), &[("ab", "ba")]).unwrap();
        assert_eq!(
            pairs(&invariant_closure(&r)),
            expect(
                &[
                    ("ab", "ba"),
                    ("aab", "aba"),
                    ("bab", "bba"),
                    ("aba", "baa"),
                    ("abb", "bab")
                ],
                &u3
            )
        );
        assert!(invariant_closure(&PairRelation::empty(u3)).is_empty());
        let u2 = universe(2);
        let r = PairRelation::from_words(u2.clone(), &[("a", "b")]).unwrap();
        assert_eq!(
            pairs(&invariant_closure(&r)),
            expect(
                &[
                    ("a", "b"),
                    ("aa", "ab"),
                    ("ba", "bb"),
                    ("aa", "ba"),
                    ("ab", "bb")
                ],
                &u2
            )
        );
    }

    #[test]
    fn ic_member_examples() {
        let u3 = universe(3);
        let r = PairRelation::from_words(u3.clone(), &[("ab", "ba")]).unwrap();
        let w = ic_member(&r, &word(&u3, "aab"), &word(&u3, "aba"))
            .unwrap()
            .unwrap();
        assert_eq!(w.render(), "a | ab ~ ba | ε");
        assert_eq!(w.reconstruct(), (word(&u3, "aab"), word(&u3, "aba")));
        let w = ic_member(&r, &word(&u3, "ab"), &word(&u3, "ba"))
            .unwrap()
            .unwrap();
        assert!(w.prefix.is_empty() && w.suffix.is_empty());
        assert_eq!(
            ic_member(&r, &word(&u3, "aab"), &word(&u3, "baa")).unwrap(),
            None
        );
    }

    #[test]
    fn minimal_kernel_of_abelian() {
        let u3 = universe(3);
        let kernel = minimal_kernel(&abelian(&u3));
        assert_eq!(
            pairs(&kernel),
            expect(
                &[
                    ("a", "a"),
                    ("b", "b"),
                    ("ab", "ba"),
                    ("aab", "baa"),
                    ("abb", "bba")
                ],
                &u3
            )
        );
    }

    #[test]
    fn length_one_pairs_are_minimal() {
        let u3 = universe(3);
        let parity: Vec<usize> = u3.words().iter().map(|w| w.len() % 2).collect();
        let p = Partition::from_labels(u3.clone(), &parity);
        let kernel = minimal_kernel(&p);
        assert!(kernel.contains(0, 1));
        assert!(kernel.contains(0, 0) && kernel.contains(1, 1));
        assert!(!kernel.contains(2, 2));
    }

    #[test]
    fn strip_examples() {
        let u3 = universe(3);
        let p = abelian(&u3);
        let d = strip_to_core(&p, &word(&u3, "aab"), &word(&u3, "aba")).unwrap();
        assert_eq!(d.render(), "a | ab ~ ba | ε");
        let d = strip_to_core(&p, &word(&u3, "aa"), &word(&u3, "aa")).unwrap();
        assert_eq!(d.render(), "a | a ~ a | ε");
        let d = strip_to_core(&p, &word(&u3, "ab"), &word(&u3, "ba")).unwrap();
        assert_eq!(d.render(), "ε | ab ~ ba | ε");
        assert!(matches!(
            strip_to_core(&p, &word(&u3, "a"), &word(&u3, "b")),
            Err(Error::NotRelated { .. })
        ));
    }

    #[test]
    fn strip_core_is_minimal_everywhere() {
        let u3 = universe(3);
        let p = abelian(&u3);
        let kernel = minimal_kernel(&p);
        for (i, j) in p.related_pairs() {
            let d = strip_to_core(&p, u3.word(i), u3.word(j)).unwrap();
            assert_eq!(d.reconstruct(), (u3.word(i).clone(), u3.word(j).clone()));
            assert!(kernel.contains_words(&d.core.0, &d.core.1));
        }
    }
}
