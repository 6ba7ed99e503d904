use std::fmt;

use crate::error::{domain, Result};

/// A subset of {1,…,n} for n ≤ 64, stored as a bitmask (element i ↔ bit i−1).
///
/// The mask alone does not know its ambient n; operations that need the
/// ambient ground set take a [`crate::GroundFrame`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u64) -> Subset {
        Subset(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn singleton(i: u32) -> Subset {
        debug_assert!((1..=64).contains(&i));
        Subset(1u64 << (i - 1))
    }

    /// Builds a subset from 1-based elements, validating the range.
    pub fn from_elements(elements: &[u32]) -> Result<Subset> {
        let mut mask = 0u64;
        for &e in elements {
            if !(1..=64).contains(&e) {
                return Err(domain(format!("element {e} outside 1..=64")));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return Err(domain(format!("duplicate element {e}")));
            }
            mask |= bit;
        }
        Ok(Subset(mask))
    }

    pub fn contains(self, i: u32) -> bool {
        i >= 1 && i <= 64 && self.0 & (1u64 << (i - 1)) != 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[must_use]
    pub fn with(self, i: u32) -> Subset {
        Subset(self.0 | 1u64 << (i - 1))
    }

    #[must_use]
    pub fn without(self, i: u32) -> Subset {
        Subset(self.0 & !(1u64 << (i - 1)))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    /// Ascending 1-based elements.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                return None;
            }
            let i = mask.trailing_zeros() + 1;
            mask &= mask - 1;
            Some(i)
        })
    }

    pub fn elements(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// All subsets of `ground` with exactly `k` elements, in ascending mask order.
    pub fn k_subsets_of(ground: Subset, k: u32) -> Vec<Subset> {
        let elems = ground.elements();
        let mut out = Vec::new();
        let m = elems.len();
        let k = k as usize;
        if k > m {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut mask = 0u64;
            for &i in &idx {
                mask |= 1u64 << (elems[i] - 1);
            }
            out.push(Subset(mask));
            // next combination
            let mut pos = k;
            loop {
                if pos == 0 {
                    out.sort();
                    return out;
                }
                pos -= 1;
                if idx[pos] != pos + m - k {
                    break;
                }
            }
            if idx[pos] == pos + m - k {
                out.sort();
                return out;
            }
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromIterator<u32> for Subset {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        let mut mask = 0u64;
        for e in iter {
            mask |= 1u64 << (e - 1);
        }
        Subset(mask)
    }
}
