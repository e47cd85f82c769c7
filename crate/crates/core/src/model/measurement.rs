use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use super::{ElementSet, GroundSet, ModelError};

/// A partition of a ground set; its blocks are detectors.
///
/// Equality, ordering and hashing use the ground set and the block set only;
/// the id is a label.
#[derive(Clone, Debug)]
pub struct Measurement {
    id: String,
    ground: Arc<GroundSet>,
    /// Sorted by smallest element.
    blocks: Vec<ElementSet>,
}

impl Measurement {
    pub fn new(
        id: impl Into<String>,
        ground: Arc<GroundSet>,
        blocks: impl IntoIterator<Item = ElementSet>,
    ) -> Result<Self, ModelError> {
        let mut blocks: Vec<ElementSet> = blocks.into_iter().collect();
        let mut seen = ElementSet::EMPTY;
        for b in &blocks {
            if b.is_empty() {
                return Err(ModelError::NotAPartition("empty block".into()));
            }
            if !b.is_subset(ground.all()) {
                return Err(ModelError::NotAPartition(
                    "block outside the ground set".into(),
                ));
            }
            if !b.is_disjoint(seen) {
                let dup = ground.format_set(b.intersection(seen));
                return Err(ModelError::NotAPartition(alloc::format!(
                    "elements {dup} appear in more than one block"
                )));
            }
            seen = seen.union(*b);
        }
        if seen != ground.all() {
            let missing = ground.format_set(ground.all().difference(seen));
            return Err(ModelError::NotAPartition(alloc::format!(
                "elements {missing} are not covered"
            )));
        }
        blocks.sort_by_key(|b| b.first());
        Ok(Measurement {
            id: id.into(),
            ground,
            blocks,
        })
    }

    /// Partition with a generated id (its block notation).
    pub fn derived(
        ground: Arc<GroundSet>,
        blocks: impl IntoIterator<Item = ElementSet>,
    ) -> Result<Self, ModelError> {
        let mut m = Measurement::new(String::new(), ground, blocks)?;
        m.id = m.notation();
        Ok(m)
    }

    /// Partition given by element names.
    pub fn from_names(
        id: impl Into<String>,
        ground: Arc<GroundSet>,
        blocks: &[&[&str]],
    ) -> Result<Self, ModelError> {
        let sets = blocks
            .iter()
            .map(|b| ground.set_of(b.iter()))
            .collect::<Result<Vec<_>, _>>()?;
        Measurement::new(id, ground, sets)
    }

    pub fn atomic(ground: Arc<GroundSet>) -> Self {
        let blocks: Vec<_> = (0..ground.len()).map(ElementSet::singleton).collect();
        Measurement::derived(ground, blocks).expect("singletons partition")
    }

    pub fn fully_coarse(ground: Arc<GroundSet>) -> Self {
        let all = ground.all();
        Measurement::derived(ground, [all]).expect("one block partitions")
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_atomic(&self) -> bool {
        self.blocks.len() == self.ground.len()
    }

    pub fn is_fully_coarse(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn has_block(&self, block: ElementSet) -> bool {
        self.blocks.contains(&block)
    }

    pub fn block_containing(&self, element: usize) -> Option<ElementSet> {
        self.blocks.iter().copied().find(|b| b.contains(element))
    }

    /// Same ground set.
    pub fn weakly_equivalent(&self, other: &Measurement) -> bool {
        self.ground == other.ground
    }

    /// Replaces block `old` by `parts`; `parts` must partition `old`.
    pub(crate) fn replace_block(&self, old: ElementSet, parts: &[ElementSet]) -> Measurement {
        let blocks = self
            .blocks
            .iter()
            .copied()
            .filter(|b| *b != old)
            .chain(parts.iter().copied());
        Measurement::derived(self.ground.clone(), blocks).expect("refinement of a partition")
    }

    /// Merges two distinct blocks.
    pub(crate) fn merge_blocks(&self, x: ElementSet, y: ElementSet) -> Measurement {
        let blocks = self
            .blocks
            .iter()
            .copied()
            .filter(|b| *b != x && *b != y)
            .chain([x.union(y)]);
        Measurement::derived(self.ground.clone(), blocks).expect("coarsening of a partition")
    }

    /// `{{a},{b,c}}`.
    pub fn notation(&self) -> String {
        let mut s = String::from("{");
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(&self.ground.format_set(*b));
        }
        s.push('}');
        s
    }
}

impl PartialEq for Measurement {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.blocks == other.blocks
    }
}

impl Eq for Measurement {}

impl PartialOrd for Measurement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Measurement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground
            .cmp(&other.ground)
            .then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl Hash for Measurement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ground.hash(state);
        self.blocks.hash(state);
    }
}

impl fmt::Display for Measurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> Arc<GroundSet> {
        GroundSet::new("G3", ["m", "m'", "m''"]).unwrap()
    }

    #[test]
    fn partitions_are_validated() {
        let g = g3();
        assert!(Measurement::from_names("b", g.clone(), &[&["m", "m'"], &["m''"]]).is_ok());
        let e = Measurement::from_names("x", g.clone(), &[&["m", "m'"]]).unwrap_err();
        assert!(matches!(e, ModelError::NotAPartition(ref s) if s.contains("m''")));
        assert!(Measurement::from_names("x", g, &[&["m", "m'"], &["m'", "m''"]]).is_err());
    }

    #[test]
    fn equality_ignores_ids_and_block_order() {
        let g = g3();
        let a = Measurement::from_names("a", g.clone(), &[&["m''"], &["m", "m'"]]).unwrap();
        let b = Measurement::from_names("b", g.clone(), &[&["m", "m'"], &["m''"]]).unwrap();
        let d = Measurement::from_names("d", g, &[&["m", "m''"], &["m'"]]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, d);
        assert!(a.weakly_equivalent(&d));
        assert_eq!(b.notation(), "{{m,m'},{m''}}");
    }

    #[test]
    fn atomic_and_coarse() {
        let g = g3();
        assert!(Measurement::atomic(g.clone()).is_atomic());
        assert!(Measurement::fully_coarse(g.clone()).is_fully_coarse());
        let other = GroundSet::new("P", ["p"]).unwrap();
        assert!(!Measurement::atomic(g).weakly_equivalent(&Measurement::atomic(other)));
    }
}
