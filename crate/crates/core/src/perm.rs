//! Atoms and finitely supported permutations of atoms.
//!
//! Atoms are drawn from a countable well-ordered supply `a, b, …, z, a1, b1, …`.
//! The order is fixed, so "the least atoms outside a set" is always well
//! defined and reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// A name. Ordered by its position in the global atom supply.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

pub type AtomSet = BTreeSet<Atom>;

const LETTERS: u32 = 26;

impl Atom {
    pub const fn from_index(index: u32) -> Atom {
        Atom(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    /// Parses the canonical spelling: one lowercase letter, optionally
    /// followed by a positive decimal number without leading zeros.
    pub fn parse(name: &str) -> Option<Atom> {
        let mut chars = name.chars();
        let first = chars.next()?;
        if !first.is_ascii_lowercase() {
            return None;
        }
        let letter = first as u32 - 'a' as u32;
        let rest = chars.as_str();
        if rest.is_empty() {
            return Some(Atom(letter));
        }
        if rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let suffix: u32 = rest.parse().ok()?;
        suffix
            .checked_mul(LETTERS)
            .and_then(|n| n.checked_add(letter))
            .map(Atom)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = char::from(b'a' + (self.0 % LETTERS) as u8);
        let suffix = self.0 / LETTERS;
        if suffix == 0 {
            write!(f, "{letter}")
        } else {
            write!(f, "{letter}{suffix}")
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("atom {0} occurs twice in a tuple")]
    DuplicateAtom(Atom),
    #[error("tuples have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("tuples share atom {0}")]
    NotDisjoint(Atom),
    #[error("mapping is not a bijection at atom {0}")]
    NotBijective(Atom),
}

/// A finite permutation, stored as its non-fixpoints only.
///
/// Because fixpoints are never stored, structural equality is extensional
/// equality.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    map: BTreeMap<Atom, Atom>,
}

impl Perm {
    pub fn identity() -> Perm {
        Perm::default()
    }

    pub fn swap(a: Atom, b: Atom) -> Perm {
        let mut map = BTreeMap::new();
        if a != b {
            map.insert(a, b);
            map.insert(b, a);
        }
        Perm { map }
    }

    /// Builds a permutation from explicit `(from, to)` pairs. Pairs with
    /// `from == to` are dropped; the rest must form a bijection of their
    /// carrier.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Atom, Atom)>) -> Result<Perm, PermError> {
        let mut map = BTreeMap::new();
        let mut image = BTreeSet::new();
        for (from, to) in pairs {
            if map.insert(from, to).is_some() {
                return Err(PermError::NotBijective(from));
            }
            if !image.insert(to) {
                return Err(PermError::NotBijective(to));
            }
        }
        let keys: BTreeSet<Atom> = map.keys().copied().collect();
        if let Some(a) = keys.symmetric_difference(&image).next() {
            return Err(PermError::NotBijective(*a));
        }
        map.retain(|k, v| k != v);
        Ok(Perm { map })
    }

    /// The cycle `a0 ↦ a1 ↦ … ↦ a0`.
    pub fn cycle(atoms: &[Atom]) -> Result<Perm, PermError> {
        let mut seen = BTreeSet::new();
        for a in atoms {
            if !seen.insert(*a) {
                return Err(PermError::DuplicateAtom(*a));
            }
        }
        let n = atoms.len();
        Perm::from_pairs((0..n).map(|i| (atoms[i], atoms[(i + 1) % n])))
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.map.get(&a).copied().unwrap_or(a)
    }

    /// `self ∘ first`: maps `a` to `self(first(a))`.
    pub fn compose(&self, first: &Perm) -> Perm {
        let carrier: AtomSet = self.map.keys().chain(first.map.keys()).copied().collect();
        let map = carrier
            .into_iter()
            .filter_map(|a| {
                let b = self.apply(first.apply(a));
                (a != b).then_some((a, b))
            })
            .collect();
        Perm { map }
    }

    pub fn invert(&self) -> Perm {
        Perm {
            map: self.map.iter().map(|(k, v)| (*v, *k)).collect(),
        }
    }

    /// `self ∘ p ∘ self⁻¹`, the conjugation action of permutations on themselves.
    pub fn conjugate(&self, p: &Perm) -> Perm {
        self.compose(p).compose(&self.invert())
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn support(&self) -> AtomSet {
        self.map.keys().copied().collect()
    }

    /// The atoms on which the two permutations differ.
    pub fn disagreement_set(&self, other: &Perm) -> AtomSet {
        self.map
            .keys()
            .chain(other.map.keys())
            .filter(|a| self.apply(**a) != other.apply(**a))
            .copied()
            .collect()
    }

    pub fn act_set(&self, atoms: &AtomSet) -> AtomSet {
        atoms.iter().map(|a| self.apply(*a)).collect()
    }

    /// Disjoint cycles, each starting at its least atom, ordered by that atom.
    pub fn cycles(&self) -> Vec<Vec<Atom>> {
        let mut done = AtomSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if done.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            done.insert(start);
            let mut next = self.apply(start);
            while next != start {
                cycle.push(next);
                done.insert(next);
                next = self.apply(next);
            }
            out.push(cycle);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (Atom, Atom)> + '_ {
        self.map.iter().map(|(k, v)| (*k, *v))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, a) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered tuple of pairwise distinct atoms.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomTuple(Vec<Atom>);

impl AtomTuple {
    pub fn new(atoms: Vec<Atom>) -> Result<AtomTuple, PermError> {
        let mut seen = AtomSet::new();
        for a in &atoms {
            if !seen.insert(*a) {
                return Err(PermError::DuplicateAtom(*a));
            }
        }
        Ok(AtomTuple(atoms))
    }

    pub fn empty() -> AtomTuple {
        AtomTuple(Vec::new())
    }

    /// The ordering of a set by the global atom order.
    pub fn sorted(atoms: &AtomSet) -> AtomTuple {
        AtomTuple(atoms.iter().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn underlying(&self) -> AtomSet {
        self.0.iter().copied().collect()
    }

    pub fn act(&self, p: &Perm) -> AtomTuple {
        AtomTuple(self.0.iter().map(|a| p.apply(*a)).collect())
    }

    pub fn concat(&self, other: &AtomTuple) -> Result<AtomTuple, PermError> {
        AtomTuple::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// Splits after the first `at` atoms.
    pub fn split_at(&self, at: usize) -> (AtomTuple, AtomTuple) {
        let (l, r) = self.0.split_at(at);
        (AtomTuple(l.to_vec()), AtomTuple(r.to_vec()))
    }
}

impl fmt::Display for AtomTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for AtomTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The generalised transposition `(src₁ dst₁)⋯(srcₙ dstₙ)`.
pub fn gen_transposition(src: &AtomTuple, dst: &AtomTuple) -> Result<Perm, PermError> {
    if src.len() != dst.len() {
        return Err(PermError::LengthMismatch(src.len(), dst.len()));
    }
    let dst_set = dst.underlying();
    if let Some(a) = src.atoms().iter().find(|a| dst_set.contains(a)) {
        return Err(PermError::NotDisjoint(*a));
    }
    let pairs = src
        .atoms()
        .iter()
        .zip(dst.atoms())
        .flat_map(|(a, b)| [(*a, *b), (*b, *a)]);
    Perm::from_pairs(pairs)
}

/// The `n` least atoms outside `avoid`, in increasing order.
pub fn fresh_tuple(n: usize, avoid: &AtomSet) -> AtomTuple {
    AtomTuple(
        (0u32..)
            .map(Atom)
            .filter(|a| !avoid.contains(a))
            .take(n)
            .collect(),
    )
}

/// Renders a set of atoms as `{a b c}`.
pub struct DisplaySet<'a>(pub &'a AtomSet);

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}
