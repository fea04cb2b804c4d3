//! Finite semigroups given by multiplication tables, homomorphisms out of
//! the free semigroup, their kernels, and the factorization of a
//! homomorphism through its kernel quotient.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::congruence::{build_quotient, QuotientSemigroup};
use crate::error::{Error, Result};
use crate::par;
use crate::relation::Partition;
use crate::word::{same_alphabet, Alphabet, Letter, Universe, Word};

/// A finite semigroup: named elements and a total, associative product table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

fn check_shape(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    if n == 0 {
        return Err(Error::MalformedTable("no elements".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::MalformedTable(format!(
                "entry {bad} in row {i} is out of range"
            )));
        }
    }
    Ok(())
}

/// Searches for a triple with `x(yz) ≠ (xy)z`. The table must be square and closed.
pub fn check_associativity(table: &[Vec<usize>]) -> Result<Option<(usize, usize, usize)>> {
    check_shape(table)?;
    let n = table.len();
    Ok(par::find_map_first_range(n, |x| {
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return Some((x, y, z));
                }
            }
        }
        None
    }))
}

impl FiniteSemigroup {
    pub fn new<S: Into<String>>(elements: Vec<S>, table: Vec<Vec<usize>>) -> Result<Self> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.len() != table.len() {
            return Err(Error::MalformedTable(format!(
                "{} elements but {} rows",
                elements.len(),
                table.len()
            )));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::MalformedTable(format!("duplicate element `{e}`")));
            }
        }
        if let Some((x, y, z)) = check_associativity(&table)? {
            return Err(Error::NotAssociative(x, y, z));
        }
        Ok(FiniteSemigroup { elements, table })
    }

    /// Elements named `0..n`.
    pub fn numbered(table: Vec<Vec<usize>>) -> Result<Self> {
        let names = (0..table.len()).map(|i| i.to_string()).collect();
        FiniteSemigroup::new(names, table)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// First pair with `xy ≠ yx`, if any.
    pub fn commutativity_violation(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.table[x][y] != self.table[y][x])
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_violation().is_none()
    }
}

/// A map `j: E → S` from alphabet symbols to semigroup elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterMap {
    alphabet: Arc<Alphabet>,
    images: Vec<usize>,
}

impl LetterMap {
    pub fn new(
        alphabet: Arc<Alphabet>,
        images: Vec<usize>,
        target: &FiniteSemigroup,
    ) -> Result<Self> {
        if images.len() < alphabet.len() {
            return Err(Error::UnassignedLetter(
                alphabet.symbol(images.len() as Letter).to_string(),
            ));
        }
        if images.len() > alphabet.len() || images.iter().any(|&x| x >= target.len()) {
            return Err(Error::MalformedTable("letter image out of range".into()));
        }
        Ok(LetterMap { alphabet, images })
    }

    /// Builds a map from `(symbol, element name)` assignments; every symbol must be assigned once.
    pub fn from_names(
        alphabet: Arc<Alphabet>,
        assignments: &[(&str, &str)],
        target: &FiniteSemigroup,
    ) -> Result<Self> {
        let mut images: Vec<Option<usize>> = vec![None; alphabet.len()];
        for (symbol, element) in assignments {
            let l = alphabet
                .letter(symbol)
                .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
            let x = target
                .index_of(element)
                .ok_or_else(|| Error::MalformedTable(format!("unknown element `{element}`")))?;
            images[l as usize] = Some(x);
        }
        let images = images
            .iter()
            .enumerate()
            .map(|(l, x)| {
                x.ok_or_else(|| Error::UnassignedLetter(alphabet.symbol(l as Letter).into()))
            })
            .collect::<Result<Vec<_>>>()?;
        LetterMap::new(alphabet, images, target)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn image(&self, letter: Letter) -> usize {
        self.images[letter as usize]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

/// The unique homomorphism `f: E⁺ → S` extending `j`, evaluated at `w`
/// by a left-to-right fold.
pub fn extend_hom(j: &LetterMap, w: &Word, t: &FiniteSemigroup) -> Result<usize> {
    if !same_alphabet(&j.alphabet, w.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    Ok(fold(j, w.letters(), t))
}

fn fold(j: &LetterMap, letters: &[Letter], t: &FiniteSemigroup) -> usize {
    let mut acc = j.images[letters[0] as usize];
    for &l in &letters[1..] {
        acc = t.table[acc][j.images[l as usize]];
    }
    acc
}

/// `extend_hom` over every universe word, by canonical index.
pub fn tabulate(j: &LetterMap, t: &FiniteSemigroup, universe: &Universe) -> Result<Vec<usize>> {
    if !same_alphabet(&j.alphabet, universe.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    Ok(par::map(universe.words(), |w| fold(j, w.letters(), t)))
}

/// Checks `f(uv) = f(u) f(v)` for all `u, v` with `|u| + |v| <= L`.
/// Returns the first failing pair `(u, v)` in canonical order.
pub fn check_homomorphism(
    f: &[usize],
    universe: &Universe,
    t: &FiniteSemigroup,
) -> Result<Option<(usize, usize)>> {
    if f.len() != universe.len() || f.iter().any(|&x| x >= t.len()) {
        return Err(Error::MalformedTable(
            "map must assign an element to every universe word".into(),
        ));
    }
    let n = universe.len();
    Ok(par::find_map_first_range(n, |u| {
        (0..n).find_map(|v| {
            let uv = universe.concat_index(u, v)?;
            (f[uv] != t.mul(f[u], f[v])).then_some((u, v))
        })
    }))
}

/// `ker f`: words grouped by their image under the extension of `j`.
pub fn kernel(j: &LetterMap, t: &FiniteSemigroup, universe: &Arc<Universe>) -> Result<Partition> {
    let f = tabulate(j, t, universe)?;
    Ok(Partition::from_labels(universe.clone(), &f))
}

/// Quotient by `ker f` and the induced map `g` with `f = g ∘ i_{ker f}`.
#[derive(Debug, Clone)]
pub struct FactorizationResult {
    pub quotient: QuotientSemigroup,
    /// `g[class] = f(representative)`.
    pub g: Vec<usize>,
    pub monomorphism: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorizationCheck {
    pub injective: bool,
    pub homomorphism: bool,
    pub commutes: bool,
}

impl FactorizationCheck {
    pub fn all(&self) -> bool {
        self.injective && self.homomorphism && self.commutes
    }
}

impl FactorizationResult {
    /// Re-checks injectivity of `g`, the homomorphism law on every defined
    /// quotient product, and `f = g ∘ i` pointwise.
    pub fn check(&self, f: &[usize], t: &FiniteSemigroup) -> FactorizationCheck {
        let n = self.g.len();
        let mut seen = vec![false; t.len()];
        let injective = self
            .g
            .iter()
            .all(|&x| !std::mem::replace(&mut seen[x], true));
        let homomorphism = (0..n).all(|i| {
            (0..n).all(|k| match self.quotient.product(i, k) {
                Some(c) => self.g[c] == t.mul(self.g[i], self.g[k]),
                None => true,
            })
        });
        let commutes = f
            .iter()
            .enumerate()
            .all(|(w, &x)| self.g[self.quotient.class_of(w)] == x);
        FactorizationCheck {
            injective,
            homomorphism,
            commutes,
        }
    }
}

pub fn factorize(
    j: &LetterMap,
    t: &FiniteSemigroup,
    universe: &Arc<Universe>,
) -> Result<FactorizationResult> {
    let f = tabulate(j, t, universe)?;
    let partition = Partition::from_labels(universe.clone(), &f);
    let quotient = build_quotient(&partition)?;
    let g = partition.classes().iter().map(|c| f[c[0]]).collect();
    let mut result = FactorizationResult {
        quotient,
        g,
        monomorphism: false,
    };
    let check = result.check(&f, t);
    if !check.all() {
        return Err(Error::Internal(format!("factorization failed: {check:?}")));
    }
    result.monomorphism = check.injective && check.homomorphism;
    Ok(result)
}

fn parikh(word: &Word, k: usize) -> Vec<usize> {
    let mut counts = vec![0; k];
    for &l in word.letters() {
        counts[l as usize] += 1;
    }
    counts
}

/// Words related iff one is a permutation of the other (equal letter counts).
pub fn abelian_congruence(universe: &Arc<Universe>) -> Partition {
    let k = universe.alphabet().len();
    let labels: Vec<Vec<usize>> = universe.words().iter().map(|w| parikh(w, k)).collect();
    Partition::from_labels(universe.clone(), &labels)
}

/// Words related iff their lengths have equal parity.
pub fn length_parity_congruence(universe: &Arc<Universe>) -> Partition {
    let labels: Vec<usize> = universe.words().iter().map(|w| w.len() % 2).collect();
    Partition::from_labels(universe.clone(), &labels)
}

/// Distinct rearrangements of `letters`, lexicographic.
fn rearrangements(letters: &[Letter]) -> Vec<Vec<Letter>> {
    let mut counts: BTreeMap<Letter, usize> = BTreeMap::new();
    for &l in letters {
        *counts.entry(l).or_default() += 1;
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(letters.len());
    fn go(
        counts: &mut BTreeMap<Letter, usize>,
        current: &mut Vec<Letter>,
        n: usize,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        let keys: Vec<Letter> = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&l, _)| l)
            .collect();
        for l in keys {
            *counts.get_mut(&l).unwrap() -= 1;
            current.push(l);
            go(counts, current, n, out);
            current.pop();
            *counts.get_mut(&l).unwrap() += 1;
        }
    }
    go(&mut counts, &mut current, letters.len(), &mut out);
    out
}

/// Image of the abelian class of `w` in a commutative semigroup: the value
/// of `w`, verified equal for every rearrangement of its letters.
pub fn commutative_image(w: &Word, j: &LetterMap, t: &FiniteSemigroup) -> Result<usize> {
    if let Some((x, y)) = t.commutativity_violation() {
        return Err(Error::NotCommutative(x, y));
    }
    let value = extend_hom(j, w, t)?;
    for letters in rearrangements(w.letters()) {
        if fold(j, &letters, t) != value {
            return Err(Error::Internal(format!(
                "rearrangement {} of {w} has a different image",
                w.alphabet().render(&letters)
            )));
        }
    }
    Ok(value)
}

static TABLES: OnceLock<[Vec<FiniteSemigroup>; 3]> = OnceLock::new();

fn enumerate_tables(n: usize) -> Vec<FiniteSemigroup> {
    let cells = n * n;
    let count = n.pow(cells as u32);
    let found = par::map_range(count, |code| {
        let mut rest = code;
        let mut table = vec![vec![0; n]; n];
        for cell in 0..cells {
            table[cell / n][cell % n] = rest % n;
            rest /= n;
        }
        match check_associativity(&table) {
            Ok(None) => FiniteSemigroup::numbered(table).ok(),
            _ => None,
        }
    });
    found.into_iter().flatten().collect()
}

/// Every associative table on `{0, …, n-1}`, for `1 <= n <= 3`, in a fixed order.
pub fn associative_tables(n: usize) -> &'static [FiniteSemigroup] {
    assert!(
        (1..=3).contains(&n),
        "tables are enumerated for orders 1 to 3"
    );
    let all = TABLES.get_or_init(|| {
        [
            enumerate_tables(1),
            enumerate_tables(2),
            enumerate_tables(3),
        ]
    });
    &all[n - 1]
}
