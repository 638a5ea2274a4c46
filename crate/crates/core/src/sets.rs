//! Labelled finite universes, subsets of them, and canonical set families.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered list of distinct element labels. Cloning is cheap.
#[derive(Clone)]
pub struct Universe(Arc<[String]>);

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Universe>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Universe(labels.into()))
    }

    /// The universe `x1 .. xn`.
    pub fn with_size(n: usize) -> Result<Universe> {
        Universe::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.position(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet {
            universe: self.clone(),
            members: Vec::new(),
        }
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet {
            universe: self.clone(),
            members: (0..self.len()).collect(),
        }
    }

    /// Builds a subset from labels; order and repetition are irrelevant.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        let indices = labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementSet::from_sorted(self.clone(), indices))
    }

    /// Builds a subset from zero-based indices.
    pub fn subset_of_indices<I: IntoIterator<Item = usize>>(
        &self,
        indices: I,
    ) -> Result<ElementSet> {
        let indices: Vec<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::UnknownLabel(format!("#{bad}")));
        }
        Ok(ElementSet::from_sorted(self.clone(), indices))
    }

    /// Every subset, in binary-counter order. Only sensible for small universes.
    pub(crate) fn all_subset_masks(&self) -> std::ops::Range<u64> {
        0..(1u64 << self.len())
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Universe) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" "))
    }
}

/// A subset of a [`Universe`], stored as ascending element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct ElementSet {
    universe: Universe,
    members: Vec<usize>,
}

impl ElementSet {
    fn from_sorted(universe: Universe, mut members: Vec<usize>) -> ElementSet {
        members.sort_unstable();
        members.dedup();
        ElementSet { universe, members }
    }

    pub(crate) fn from_mask(universe: &Universe, mask: u64) -> ElementSet {
        ElementSet {
            universe: universe.clone(),
            members: mask_to_indices(mask),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.members
            .iter()
            .map(|&i| self.universe.label(i))
            .collect()
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        debug_assert!(self.universe == other.universe);
        is_sorted_subset(&self.members, &other.members)
    }

    pub fn complement(&self) -> ElementSet {
        let members = (0..self.universe.len())
            .filter(|i| !self.contains(*i))
            .collect();
        ElementSet {
            universe: self.universe.clone(),
            members,
        }
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.members.iter().any(|&i| other.contains(i))
    }

    pub(crate) fn ensure_universe(&self, universe: &Universe) -> Result<()> {
        if &self.universe == universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &ElementSet) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &ElementSet) -> Ordering {
        canonical_cmp(&self.members, &other.members)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels().join(" "))
    }
}

/// Size first, then lexicographic on the index sequence.
fn canonical_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut rest = big.iter();
    small.iter().all(|x| rest.any(|y| y == x))
}

pub(crate) fn indices_to_mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub(crate) fn mask_to_indices(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// A deduplicated family of subsets of one universe in canonical order
/// (by size, then lexicographic index sequence).
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: Universe,
    sets: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn empty(universe: &Universe) -> SetFamily {
        SetFamily {
            universe: universe.clone(),
            sets: Vec::new(),
        }
    }

    pub fn new<I>(universe: &Universe, sets: I) -> Result<SetFamily>
    where
        I: IntoIterator<Item = ElementSet>,
    {
        let mut raw = Vec::new();
        for set in sets {
            set.ensure_universe(universe)?;
            raw.push(set.members);
        }
        Ok(SetFamily::from_index_sets(universe, raw))
    }

    /// Builds a family from label lists, e.g. `[["x1", "x3"], ["x2"]]`.
    pub fn from_labels<S: AsRef<str>>(universe: &Universe, sets: &[&[S]]) -> Result<SetFamily> {
        let sets = sets
            .iter()
            .map(|s| universe.subset(s))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(universe, sets)
    }

    pub(crate) fn from_index_sets(universe: &Universe, sets: Vec<Vec<usize>>) -> SetFamily {
        let mut sets: Vec<Vec<usize>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        sets.sort_by(|a, b| canonical_cmp(a, b));
        sets.dedup();
        SetFamily {
            universe: universe.clone(),
            sets,
        }
    }

    pub(crate) fn from_masks<I: IntoIterator<Item = u64>>(
        universe: &Universe,
        masks: I,
    ) -> SetFamily {
        SetFamily::from_index_sets(universe, masks.into_iter().map(mask_to_indices).collect())
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index_sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.sets.iter().map(|s| ElementSet {
            universe: self.universe.clone(),
            members: s.clone(),
        })
    }

    pub fn contains(&self, set: &ElementSet) -> bool {
        set.universe == self.universe
            && self
                .sets
                .binary_search_by(|s| canonical_cmp(s, &set.members))
                .is_ok()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.universe == other.universe && self.iter().all(|s| other.contains(&s))
    }

    /// Members common to both families.
    pub fn intersection(&self, other: &SetFamily) -> Result<SetFamily> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        let sets = self
            .iter()
            .filter(|s| other.contains(s))
            .map(|s| s.members)
            .collect();
        Ok(SetFamily {
            universe: self.universe.clone(),
            sets,
        })
    }

    /// Members that have no proper subset in the family.
    pub fn minimal(&self) -> SetFamily {
        // Canonical order puts every proper subset before its supersets.
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for s in &self.sets {
            if !kept.iter().any(|k| is_sorted_subset(k, s)) {
                kept.push(s.clone());
            }
        }
        SetFamily {
            universe: self.universe.clone(),
            sets: kept,
        }
    }

    pub(crate) fn masks(&self) -> Vec<u64> {
        self.sets.iter().map(|s| indices_to_mask(s)).collect()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

/// One set per line, elements separated by spaces.
impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for set in self.iter() {
            writeln!(f, "{set}")?;
        }
        Ok(())
    }
}
