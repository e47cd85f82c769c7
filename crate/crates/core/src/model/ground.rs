use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use super::ModelError;

/// Largest ground set representable by [`ElementSet`].
pub const MAX_GROUND_SIZE: usize = 64;

/// Subset of a ground set, as a bitmask over its sorted element indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        ElementSet(1 << index)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n == 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 & (1 << index) != 0
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element index.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter()
            .fold(ElementSet::EMPTY, |s, i| s.union(ElementSet::singleton(i)))
    }
}

/// A named finite set of atomic outcome elements, kept sorted.
///
/// Identity is the element set; the name is a label.
#[derive(Clone, Debug)]
pub struct GroundSet {
    name: String,
    elements: Vec<String>,
}

impl GroundSet {
    pub fn new<I, T>(name: impl Into<String>, elements: I) -> Result<Arc<Self>, ModelError>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(ModelError::EmptyGroundSet);
        }
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(ModelError::DuplicateElement(w[0].clone()));
        }
        if elements.len() > MAX_GROUND_SIZE {
            return Err(ModelError::GroundSetTooLarge {
                size: elements.len(),
                max: MAX_GROUND_SIZE,
            });
        }
        Ok(Arc::new(GroundSet {
            name: name.into(),
            elements,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn index_of(&self, element: &str) -> Option<usize> {
        self.elements
            .binary_search_by(|e| e.as_str().cmp(element))
            .ok()
    }

    /// Resolves element names; duplicates collapse.
    pub fn set_of<I, T>(&self, names: I) -> Result<ElementSet, ModelError>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        names
            .into_iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| ModelError::UnknownElement(n.as_ref().into()))
            })
            .collect()
    }

    pub fn names_of(&self, set: ElementSet) -> Vec<&str> {
        set.iter().map(|i| self.elements[i].as_str()).collect()
    }

    /// `{a,b,c}`.
    pub fn format_set(&self, set: ElementSet) -> String {
        let mut s = String::from("{");
        for (k, name) in self.names_of(set).into_iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(name);
        }
        s.push('}');
        s
    }
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for GroundSet {}

impl PartialOrd for GroundSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroundSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements.cmp(&other.elements)
    }
}

impl Hash for GroundSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_set(self.all()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_set_iteration_is_sorted() {
        let s: ElementSet = [5, 0, 3].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), [0, 3, 5]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.first(), Some(0));
        assert_eq!(ElementSet::full(64).len(), 64);
    }

    #[test]
    fn ground_sets_sort_and_reject_duplicates() {
        let g = GroundSet::new("G", ["m''", "m", "m'"]).unwrap();
        assert_eq!(g.elements(), ["m", "m'", "m''"]);
        assert_eq!(g.format_set(g.set_of(["m''", "m"]).unwrap()), "{m,m''}");
        assert_eq!(
            GroundSet::new("G", ["a", "a"]).unwrap_err(),
            ModelError::DuplicateElement("a".into())
        );
        assert_eq!(
            GroundSet::new("G", Vec::<String>::new()).unwrap_err(),
            ModelError::EmptyGroundSet
        );
        assert!(matches!(
            g.set_of(["z"]),
            Err(ModelError::UnknownElement(_))
        ));
    }

    #[test]
    fn identity_ignores_name() {
        assert_eq!(
            GroundSet::new("A", ["x", "y"]).unwrap(),
            GroundSet::new("B", ["y", "x"]).unwrap()
        );
    }
}
