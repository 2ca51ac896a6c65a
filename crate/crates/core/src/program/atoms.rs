use alloc::collections::btree_map::BTreeMap;
use alloc::collections::btree_set::{self, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::iter::Copied;

/// Dense handle of a ground atom. Ids follow first occurrence in the source.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom(u32);

impl Atom {
    pub const fn new(id: u32) -> Self {
        Atom(id)
    }

    pub const fn id(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bijection between atom names and ids.
#[derive(Clone, Default, Debug, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<String>,
    ids: BTreeMap<String, Atom>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, allocating the next id on first sight.
    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(&a) = self.ids.get(name) {
            return a;
        }
        let a = Atom(self.names.len() as u32);
        self.names.push(String::from(name));
        self.ids.insert(String::from(name), a);
        a
    }

    pub fn get(&self, name: &str) -> Option<Atom> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, a: Atom) -> &str {
        &self.names[a.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Atom, &str)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (Atom(i as u32), n.as_str()))
    }

    /// Every atom of the table.
    pub fn all(&self) -> AtomSet {
        (0..self.names.len() as u32).map(Atom).collect()
    }
}

/// Ordered set of atoms; iteration is by ascending id.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(BTreeSet<Atom>);

impl AtomSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.0.contains(&a)
    }

    pub fn insert(&mut self, a: Atom) -> bool {
        self.0.insert(a)
    }

    pub fn remove(&mut self, a: Atom) -> bool {
        self.0.remove(&a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> Copied<btree_set::Iter<'_, Atom>> {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Atom> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersects(&self, other: &AtomSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn extend_from(&mut self, other: &AtomSet) {
        self.0.extend(other.iter());
    }

    pub fn retain(&mut self, f: impl FnMut(&Atom) -> bool) {
        self.0.retain(f);
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter().map(|a| a.0)).finish()
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        AtomSet(iter.into_iter().collect())
    }
}

impl Extend<Atom> for AtomSet {
    fn extend<T: IntoIterator<Item = Atom>>(&mut self, iter: T) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a AtomSet {
    type Item = Atom;
    type IntoIter = Copied<btree_set::Iter<'a, Atom>>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl IntoIterator for AtomSet {
    type Item = Atom;
    type IntoIter = btree_set::IntoIter<Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// An atom or its default negation `not a`.
///
/// Literals order by atom first, positive before negative.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub const fn pos(atom: Atom) -> Self {
        Literal {
            atom,
            negated: false,
        }
    }

    pub const fn neg(atom: Atom) -> Self {
        Literal {
            atom,
            negated: true,
        }
    }
}
