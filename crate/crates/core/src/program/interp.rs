use core::ops::Deref;

use super::{Atom, AtomSet, Literal, Rule};
use crate::Error;

/// A pair of atom sets `<plus, minus>` that may overlap.
///
/// An overlap is a conflict.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PInterpretation {
    pub plus: AtomSet,
    pub minus: AtomSet,
}

impl PInterpretation {
    pub fn new(plus: AtomSet, minus: AtomSet) -> Self {
        PInterpretation { plus, minus }
    }

    pub fn is_conflicting(&self) -> bool {
        self.plus.intersects(&self.minus)
    }

    pub fn conflicts(&self) -> AtomSet {
        self.plus.intersection(&self.minus)
    }

    pub fn is_assigned(&self, a: Atom) -> bool {
        self.plus.contains(a) || self.minus.contains(a)
    }

    pub fn assigned(&self) -> AtomSet {
        self.plus.union(&self.minus)
    }

    /// Every atom of a program with `n` atoms is assigned.
    pub fn is_complete(&self, n: usize) -> bool {
        (0..n as u32).all(|i| self.is_assigned(Atom::new(i)))
    }

    /// The knowledge order: `self ⊑ other`.
    pub fn leq(&self, other: &PInterpretation) -> bool {
        self.plus.is_subset(&other.plus) && self.minus.is_subset(&other.minus)
    }

    pub fn join(&self, other: &PInterpretation) -> PInterpretation {
        PInterpretation::new(self.plus.union(&other.plus), self.minus.union(&other.minus))
    }

    pub fn satisfies_literal(&self, l: Literal) -> bool {
        if l.negated {
            self.minus.contains(l.atom)
        } else {
            self.plus.contains(l.atom)
        }
    }

    pub fn satisfies_all<'a>(&self, lits: impl IntoIterator<Item = &'a Literal>) -> bool {
        lits.into_iter().all(|l| self.satisfies_literal(*l))
    }

    pub fn satisfies_body(&self, r: &Rule) -> bool {
        r.pos.is_subset(&self.plus) && r.neg.is_subset(&self.minus)
    }

    /// The body is false: a positive atom is in `minus` or a negated one in `plus`.
    pub fn falsifies_body(&self, r: &Rule) -> bool {
        r.pos.intersects(&self.minus) || r.neg.intersects(&self.plus)
    }

    /// A rule holds when its body is not satisfied or its head is true.
    pub fn satisfies_rule(&self, r: &Rule) -> bool {
        !self.satisfies_body(r) || self.plus.contains(r.head)
    }
}

/// A consistent three-valued interpretation.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Interpretation(PInterpretation);

impl Interpretation {
    pub fn new(plus: AtomSet, minus: AtomSet) -> Result<Self, Error> {
        Self::try_from(PInterpretation::new(plus, minus))
    }

    pub fn into_inner(self) -> PInterpretation {
        self.0
    }
}

impl TryFrom<PInterpretation> for Interpretation {
    type Error = Error;

    fn try_from(p: PInterpretation) -> Result<Self, Error> {
        if p.is_conflicting() {
            Err(Error::Overlap)
        } else {
            Ok(Interpretation(p))
        }
    }
}

impl Deref for Interpretation {
    type Target = PInterpretation;

    fn deref(&self) -> &PInterpretation {
        &self.0
    }
}

impl AsRef<PInterpretation> for Interpretation {
    fn as_ref(&self) -> &PInterpretation {
        &self.0
    }
}
