//! Subsets of a finite carrier.
//!
//! Carriers of at most 64 elements are stored as a single bit mask; larger
//! carriers use a sorted list of indices. The representation is a function of
//! the carrier size alone, so derived equality and hashing are canonical.

use std::cmp::Ordering;
use std::fmt;

/// Index of an element in a carrier's element list.
pub type ElementId = usize;

const MASK_LIMIT: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Mask(u64),
    Sorted(Vec<u32>),
}

/// A subset of a carrier with `carrier_size` elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    size: u32,
    repr: Repr,
}

impl ElemSet {
    pub fn empty(carrier_size: usize) -> Self {
        let repr = if carrier_size <= MASK_LIMIT {
            Repr::Mask(0)
        } else {
            Repr::Sorted(Vec::new())
        };
        ElemSet {
            size: carrier_size as u32,
            repr,
        }
    }

    pub fn singleton(carrier_size: usize, e: ElementId) -> Self {
        let mut s = Self::empty(carrier_size);
        s.insert(e);
        s
    }

    pub fn full(carrier_size: usize) -> Self {
        Self::from_iter(carrier_size, 0..carrier_size)
    }

    pub fn from_iter<I: IntoIterator<Item = ElementId>>(carrier_size: usize, items: I) -> Self {
        let mut s = Self::empty(carrier_size);
        for e in items {
            s.insert(e);
        }
        s
    }

    pub fn carrier_size(&self) -> usize {
        self.size as usize
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Mask(m) => m.count_ones() as usize,
            Repr::Sorted(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match &self.repr {
            Repr::Mask(m) => *m == 0,
            Repr::Sorted(v) => v.is_empty(),
        }
    }

    pub fn contains(&self, e: ElementId) -> bool {
        if e >= self.size as usize {
            return false;
        }
        match &self.repr {
            Repr::Mask(m) => m >> e & 1 == 1,
            Repr::Sorted(v) => v.binary_search(&(e as u32)).is_ok(),
        }
    }

    pub fn insert(&mut self, e: ElementId) {
        assert!(
            e < self.size as usize,
            "element {e} outside carrier of size {}",
            self.size
        );
        match &mut self.repr {
            Repr::Mask(m) => *m |= 1 << e,
            Repr::Sorted(v) => {
                if let Err(pos) = v.binary_search(&(e as u32)) {
                    v.insert(pos, e as u32);
                }
            }
        }
    }

    pub fn remove(&mut self, e: ElementId) {
        match &mut self.repr {
            Repr::Mask(m) => {
                if e < 64 {
                    *m &= !(1 << e)
                }
            }
            Repr::Sorted(v) => {
                if let Ok(pos) = v.binary_search(&(e as u32)) {
                    v.remove(pos);
                }
            }
        }
    }

    /// In-place union. Both sets must live over the same carrier.
    pub fn union_with(&mut self, other: &ElemSet) {
        debug_assert_eq!(self.size, other.size);
        match (&mut self.repr, &other.repr) {
            (Repr::Mask(a), Repr::Mask(b)) => *a |= *b,
            (Repr::Sorted(a), Repr::Sorted(b)) => {
                if b.is_empty() {
                    return;
                }
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        Ordering::Less => {
                            out.push(a[i]);
                            i += 1;
                        }
                        Ordering::Greater => {
                            out.push(b[j]);
                            j += 1;
                        }
                        Ordering::Equal => {
                            out.push(a[i]);
                            i += 1;
                            j += 1;
                        }
                    }
                }
                out.extend_from_slice(&a[i..]);
                out.extend_from_slice(&b[j..]);
                *a = out;
            }
            _ => unreachable!("representation is determined by carrier size"),
        }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        debug_assert_eq!(self.size, other.size);
        match (&self.repr, &other.repr) {
            (Repr::Mask(a), Repr::Mask(b)) => ElemSet {
                size: self.size,
                repr: Repr::Mask(a & b),
            },
            _ => ElemSet::from_iter(
                self.size as usize,
                self.iter().filter(|&e| other.contains(e)),
            ),
        }
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        debug_assert_eq!(self.size, other.size);
        match (&self.repr, &other.repr) {
            (Repr::Mask(a), Repr::Mask(b)) => ElemSet {
                size: self.size,
                repr: Repr::Mask(a & !b),
            },
            _ => ElemSet::from_iter(
                self.size as usize,
                self.iter().filter(|&e| !other.contains(e)),
            ),
        }
    }

    pub fn intersects(&self, other: &ElemSet) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Mask(a), Repr::Mask(b)) => a & b != 0,
            _ => self.iter().any(|e| other.contains(e)),
        }
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Mask(a), Repr::Mask(b)) => a & !b == 0,
            _ => self.iter().all(|e| other.contains(e)),
        }
    }

    /// Smallest member in element order.
    pub fn first(&self) -> Option<ElementId> {
        match &self.repr {
            Repr::Mask(0) => None,
            Repr::Mask(m) => Some(m.trailing_zeros() as usize),
            Repr::Sorted(v) => v.first().map(|&e| e as usize),
        }
    }

    /// The single member, if the set is a singleton.
    pub fn as_singleton(&self) -> Option<ElementId> {
        if self.len() == 1 {
            self.first()
        } else {
            None
        }
    }

    /// Members in increasing element order.
    pub fn iter(&self) -> Iter<'_> {
        match &self.repr {
            Repr::Mask(m) => Iter::Mask(*m),
            Repr::Sorted(v) => Iter::Sorted(v.iter()),
        }
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }
}

pub enum Iter<'a> {
    Mask(u64),
    Sorted(std::slice::Iter<'a, u32>),
}

impl Iterator for Iter<'_> {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        match self {
            Iter::Mask(m) => {
                if *m == 0 {
                    None
                } else {
                    let e = m.trailing_zeros() as usize;
                    *m &= *m - 1;
                    Some(e)
                }
            }
            Iter::Sorted(it) => it.next().map(|&e| e as usize),
        }
    }
}

impl<'a> IntoIterator for &'a ElemSet {
    type Item = ElementId;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: carrier size, then the sorted member lists lexicographically.
impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
