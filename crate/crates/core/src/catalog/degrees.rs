use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The type of a graded polynomial algebra: generator degrees, sorted ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeMultiset(Vec<u32>);

impl DegreeMultiset {
    /// Rejects odd or zero degrees; odd generators only arise over
    /// F_2-algebras, which this engine does not cover.
    pub fn new(degrees: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut degrees: Vec<u32> = degrees.into_iter().collect();
        if let Some(&bad) = degrees.iter().find(|&&d| d == 0 || d % 2 == 1) {
            return Err(Error::InvalidType(format!(
                "degree {bad} is not a positive even integer (only even-degree types are supported)"
            )));
        }
        degrees.sort_unstable();
        Ok(Self(degrees))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub(crate) fn from_sorted_unchecked(degrees: Vec<u32>) -> Self {
        debug_assert!(degrees.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(degrees.iter().all(|d| *d >= 2 && d % 2 == 0));
        Self(degrees)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// Multiset union (sum).
    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Self(v)
    }

    pub fn is_submultiset_of(&self, other: &Self) -> bool {
        self.difference_from(other).is_some()
    }

    /// `other - self`, when `self` is a sub-multiset of `other`.
    pub fn difference_from(&self, other: &Self) -> Option<Self> {
        let mut rest = Vec::with_capacity(other.len());
        let mut mine = self.0.iter().peekable();
        for &d in &other.0 {
            if mine.peek() == Some(&&d) {
                mine.next();
            } else {
                rest.push(d);
            }
        }
        mine.peek().is_none().then_some(Self(rest))
    }

    pub fn contains(&self, degree: u32) -> bool {
        self.0.binary_search(&degree).is_ok()
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", ds.join(", "))
    }
}

impl Serialize for DegreeMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_sorting() {
        let d = DegreeMultiset::new([12, 4, 8, 8]).unwrap();
        assert_eq!(d.degrees(), &[4, 8, 8, 12]);
        assert!(matches!(DegreeMultiset::new([4, 7]), Err(Error::InvalidType(_))));
        assert!(matches!(DegreeMultiset::new([0]), Err(Error::InvalidType(_))));
        assert_eq!(d.to_string(), "{4, 8, 8, 12}");
    }

    #[test]
    fn submultisets() {
        let big = DegreeMultiset::new([4, 8, 8, 12]).unwrap();
        let a = DegreeMultiset::new([8, 8]).unwrap();
        let b = DegreeMultiset::new([8, 8, 8]).unwrap();
        assert_eq!(a.difference_from(&big).unwrap().degrees(), &[4, 12]);
        assert!(!b.is_submultiset_of(&big));
        assert!(DegreeMultiset::empty().is_submultiset_of(&big));
        assert_eq!(a.union(&DegreeMultiset::new([4, 12]).unwrap()), big);
    }
}
