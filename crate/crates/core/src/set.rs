//! Ground sets, element ids, insertion-ordered element sets and cardinality budgets.

use std::fmt;

use crate::error::{domain, Result};

/// Index of an element in a ground set `V = {0, .., n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The universe of selectable items.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("ground set must contain at least one element");
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return domain("ground set must contain at least one element");
        }
        Ok(GroundSet {
            n: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, e: ElementId) -> Option<&str> {
        self.labels.as_ref()?.get(e.index()).map(String::as_str)
    }

    /// Finds an element by its label.
    pub fn find(&self, label: &str) -> Option<ElementId> {
        self.labels
            .as_ref()?
            .iter()
            .position(|l| l == label)
            .map(ElementId::from)
    }

    pub fn contains(&self, e: ElementId) -> bool {
        e.index() < self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.n).map(ElementId::from)
    }

    pub fn check(&self, e: ElementId) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            domain(format!("element {} outside ground set of size {}", e, self.n))
        }
    }
}

/// A set of distinct elements that remembers insertion order.
///
/// Membership is answered by a bit index that grows with the largest id
/// inserted, so the set does not need to know its ground set.
#[derive(Debug, Clone, Default)]
pub struct ElementSet {
    members: Vec<ElementId>,
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, e: ElementId) -> bool {
        let i = e.index();
        self.bits
            .get(i / 64)
            .is_some_and(|w| w & (1u64 << (i % 64)) != 0)
    }

    /// Appends `e`; returns false (and leaves the set unchanged) if already present.
    pub fn insert(&mut self, e: ElementId) -> bool {
        if self.contains(e) {
            return false;
        }
        let i = e.index();
        if self.bits.len() <= i / 64 {
            self.bits.resize(i / 64 + 1, 0);
        }
        self.bits[i / 64] |= 1u64 << (i % 64);
        self.members.push(e);
        true
    }

    /// Removes `e`, keeping the relative order of the remaining members.
    pub fn remove(&mut self, e: ElementId) -> bool {
        if !self.contains(e) {
            return false;
        }
        let i = e.index();
        self.bits[i / 64] &= !(1u64 << (i % 64));
        self.members.retain(|&m| m != e);
        true
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.iter().copied()
    }

    /// Members of `self` followed by those of `other` not already present.
    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.extend(other.iter());
        out
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        !self.iter().any(|e| other.contains(e))
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    /// Members in ascending id order.
    pub fn sorted(&self) -> Vec<ElementId> {
        let mut v = self.members.clone();
        v.sort_unstable();
        v
    }

    pub fn validate(&self, ground: &GroundSet) -> Result<()> {
        self.iter().try_for_each(|e| ground.check(e))
    }
}

impl PartialEq for ElementSet {
    /// Set equality; insertion order is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }
}

impl Eq for ElementSet {}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut s = ElementSet::new();
        s.extend(iter);
        s
    }
}

impl Extend<ElementId> for ElementSet {
    fn extend<I: IntoIterator<Item = ElementId>>(&mut self, iter: I) {
        for e in iter {
            self.insert(e);
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = ElementId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, ElementId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Builds an element set from raw indices.
pub fn set_of(ids: &[usize]) -> ElementSet {
    ids.iter().map(|&i| ElementId::from(i)).collect()
}

/// Total cardinality `k` split into a trained part `l` and a per-task part `k - l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    k: usize,
    l: usize,
}

impl Budget {
    /// Requires `1 <= l < k <= n`.
    pub fn new(k: usize, l: usize, n: usize) -> Result<Self> {
        if l == 0 {
            return domain("train budget l must be at least 1");
        }
        if l >= k {
            return domain(format!("train budget l={l} must be smaller than k={k}"));
        }
        if k > n {
            return domain(format!("total budget k={k} exceeds ground set size {n}"));
        }
        Ok(Budget { k, l })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Per-task budget `k - l`.
    pub fn task(&self) -> usize {
        self.k - self.l
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_order_and_membership() {
        let mut s = ElementSet::new();
        assert!(s.insert(ElementId(70)));
        assert!(s.insert(ElementId(3)));
        assert!(!s.insert(ElementId(70)));
        assert_eq!(s.as_slice(), &[ElementId(70), ElementId(3)]);
        assert!(s.contains(ElementId(3)));
        assert!(!s.contains(ElementId(4)));
        assert!(!s.contains(ElementId(1000)));
        assert!(s.remove(ElementId(70)));
        assert_eq!(s.as_slice(), &[ElementId(3)]);
        assert!(!s.contains(ElementId(70)));
    }

    #[test]
    fn equality_ignores_order() {
        assert_eq!(set_of(&[1, 2, 3]), set_of(&[3, 1, 2]));
        assert_ne!(set_of(&[1, 2]), set_of(&[1, 2, 3]));
    }

    #[test]
    fn ground_set_validation() {
        assert!(GroundSet::new(0).is_err());
        let g = GroundSet::new(3).unwrap();
        assert!(set_of(&[0, 2]).validate(&g).is_ok());
        assert!(set_of(&[3]).validate(&g).is_err());
        let g = GroundSet::with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(g.find("b"), Some(ElementId(1)));
        assert_eq!(g.label(ElementId(0)), Some("a"));
    }

    #[test]
    fn budget_invariants() {
        assert!(Budget::new(4, 2, 10).is_ok());
        assert!(Budget::new(4, 0, 10).is_err());
        assert!(Budget::new(4, 4, 10).is_err());
        assert!(Budget::new(11, 4, 10).is_err());
        assert_eq!(Budget::new(20, 16, 500).unwrap().task(), 4);
    }
}
