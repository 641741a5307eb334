use alloc::vec;
use alloc::vec::Vec;

/// A fixed-universe bit set. Ordering is lexicographic on the word vector,
/// which gives search a stable tie-break between equally sized sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BitSet {
    words: Vec<u64>,
}

/// A set of argument rules, indexed by [`super::RuleId`].
pub type RuleSet = BitSet;

impl BitSet {
    pub fn new(universe: usize) -> Self {
        Self { words: vec![0; universe.div_ceil(64)] }
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(universe);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn insert(&mut self, id: usize) -> bool {
        let (w, b) = (id / 64, 1u64 << (id % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub fn remove(&mut self, id: usize) {
        self.words[id / 64] &= !(1u64 << (id % 64));
    }

    pub fn contains(&self, id: usize) -> bool {
        self.words.get(id / 64).is_some_and(|w| w & (1u64 << (id % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        BitSet { words }
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        BitSet { words }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Drops duplicates and strict supersets, keeping the first occurrence of
/// each surviving set. The result is stably sorted by size.
pub(crate) fn minimize(sets: Vec<BitSet>) -> Vec<BitSet> {
    let mut sorted: Vec<(usize, BitSet)> = sets.into_iter().map(|s| (s.len(), s)).collect();
    sorted.sort_by_key(|(n, _)| *n);
    let mut out: Vec<BitSet> = Vec::new();
    let mut kept = SetTrie::default();
    for (_, s) in sorted {
        if !kept.has_subset_of(&s) {
            kept.insert(&s);
            out.push(s);
        }
    }
    out
}

/// Sets stored as paths of ascending elements, answering "is some stored
/// set a subset of `s`" by walking only the branches `s` allows.
#[derive(Debug, Clone)]
pub(crate) struct SetTrie {
    nodes: Vec<TrieNode>,
}

#[derive(Debug, Clone, Default)]
struct TrieNode {
    end: bool,
    children: Vec<(usize, usize)>,
}

impl Default for SetTrie {
    fn default() -> Self {
        SetTrie { nodes: vec![TrieNode::default()] }
    }
}

impl SetTrie {
    pub fn insert(&mut self, s: &BitSet) {
        let mut at = 0;
        for e in s.iter() {
            at = match self.nodes[at].children.iter().find(|(x, _)| *x == e) {
                Some(&(_, next)) => next,
                None => {
                    let next = self.nodes.len();
                    self.nodes.push(TrieNode::default());
                    self.nodes[at].children.push((e, next));
                    next
                }
            };
        }
        self.nodes[at].end = true;
    }

    pub fn has_subset_of(&self, s: &BitSet) -> bool {
        let mut stack = vec![0];
        while let Some(at) = stack.pop() {
            let node = &self.nodes[at];
            if node.end {
                return true;
            }
            stack.extend(node.children.iter().filter(|(e, _)| s.contains(*e)).map(|&(_, next)| next));
        }
        false
    }
}
