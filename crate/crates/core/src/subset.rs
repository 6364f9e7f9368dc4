//! Subsets of `[n-1]` carrying their ambient degree, and compositions.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{same_ambient, Error, Result};

/// Largest ambient degree a `Subset` can carry.
pub const MAX_AMBIENT: usize = 32;

/// A subset of `{1, ..., n-1}` together with the degree `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    ambient: u8,
    bits: u32,
}

impl Subset {
    pub fn new(ambient: usize, members: &[usize]) -> Result<Self> {
        if ambient > MAX_AMBIENT {
            return Err(Error::InvalidInput(format!(
                "ambient degree {ambient} exceeds {MAX_AMBIENT}"
            )));
        }
        let mut bits = 0u32;
        for &m in members {
            if m == 0 || m >= ambient {
                return Err(Error::InvalidInput(format!(
                    "member {m} outside [1, {}]",
                    ambient.saturating_sub(1)
                )));
            }
            bits |= 1 << (m - 1);
        }
        Ok(Subset {
            ambient: ambient as u8,
            bits,
        })
    }

    /// Build from a bitmask where bit `i-1` stands for member `i`.
    pub fn from_bits(ambient: usize, bits: u32) -> Result<Self> {
        if ambient > MAX_AMBIENT
            || (ambient == 0 && bits != 0)
            || bits >> ambient.saturating_sub(1) != 0
        {
            return Err(Error::InvalidInput(format!(
                "bitmask {bits:#b} does not fit ambient {ambient}"
            )));
        }
        Ok(Subset {
            ambient: ambient as u8,
            bits,
        })
    }

    pub(crate) fn from_bits_unchecked(ambient: usize, bits: u32) -> Self {
        debug_assert!(Self::from_bits(ambient, bits).is_ok());
        Subset {
            ambient: ambient as u8,
            bits,
        }
    }

    pub fn empty(ambient: usize) -> Self {
        Subset {
            ambient: ambient as u8,
            bits: 0,
        }
    }

    /// The full set `[n-1]`.
    pub fn full(ambient: usize) -> Self {
        Subset {
            ambient: ambient as u8,
            bits: full_mask(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, m: usize) -> bool {
        m >= 1 && m < self.ambient() && self.bits & (1 << (m - 1)) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (1..self.ambient()).filter(move |m| bits & (1 << (m - 1)) != 0)
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Subset) -> Result<bool> {
        same_ambient(self.ambient(), other.ambient())?;
        Ok(self.bits & !other.bits == 0)
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        same_ambient(self.ambient(), other.ambient())?;
        Ok(Subset {
            ambient: self.ambient,
            bits: self.bits | other.bits,
        })
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        same_ambient(self.ambient(), other.ambient())?;
        Ok(Subset {
            ambient: self.ambient,
            bits: self.bits & other.bits,
        })
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        same_ambient(self.ambient(), other.ambient())?;
        Ok(Subset {
            ambient: self.ambient,
            bits: self.bits & !other.bits,
        })
    }

    /// `S^c` inside `[n-1]`.
    pub fn complement(&self) -> Subset {
        Subset {
            ambient: self.ambient,
            bits: full_mask(self.ambient()) & !self.bits,
        }
    }

    /// `{n - i : i in S}`.
    pub fn reversal(&self) -> Subset {
        let n = self.ambient();
        let bits = self.iter().fold(0u32, |acc, i| acc | 1 << (n - i - 1));
        Subset {
            ambient: self.ambient,
            bits,
        }
    }

    /// Members below `p`, viewed inside ambient `p`.
    pub fn restrict_prefix(&self, p: usize) -> Subset {
        debug_assert!(p <= self.ambient());
        Subset {
            ambient: p as u8,
            bits: self.bits & full_mask(p),
        }
    }

    /// Members above `p`, shifted down by `p`, inside ambient `n - p`.
    pub fn restrict_suffix(&self, p: usize) -> Subset {
        let n = self.ambient();
        debug_assert!(p <= n);
        let bits = if p == 0 { self.bits } else { self.bits >> p };
        Subset {
            ambient: (n - p) as u8,
            bits: bits & full_mask(n - p),
        }
    }

    /// All subsets of `[n-1]`, in canonical order.
    pub fn all(ambient: usize) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0..=full_mask(ambient))
            .map(|bits| Subset {
                ambient: ambient as u8,
                bits,
            })
            .collect();
        out.sort();
        out
    }

    /// All subsets of `self`, in canonical order.
    pub fn subsets(&self) -> Vec<Subset> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = self.bits;
        loop {
            out.push(Subset {
                ambient: self.ambient,
                bits: sub,
            });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.bits;
        }
        out.sort();
        out
    }

    /// All supersets of `self` in `[n-1]`, in canonical order.
    pub fn supersets(&self) -> Vec<Subset> {
        self.complement()
            .subsets()
            .into_iter()
            .map(|s| Subset {
                ambient: self.ambient,
                bits: s.bits | self.bits,
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn to_composition(&self) -> Composition {
        let n = self.ambient();
        if n == 0 {
            return Composition { parts: Vec::new() };
        }
        let mut parts = Vec::with_capacity(self.len() + 1);
        let mut last = 0;
        for m in self.iter() {
            parts.push(m - last);
            last = m;
        }
        parts.push(n - last);
        Composition { parts }
    }
}

pub(crate) fn full_mask(ambient: usize) -> u32 {
    if ambient <= 1 {
        0
    } else {
        ((1u64 << (ambient - 1)) - 1) as u32
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}:{}", self.ambient)
    }
}

/// Reads `{1,3}:4` (members, then the ambient degree).
impl std::str::FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot read subset {s:?}; expected e.g. {{1,3}}:4"));
        let (set, ambient) = s.trim().rsplit_once(':').ok_or_else(bad)?;
        let ambient: usize = ambient.trim().parse().map_err(|_| bad())?;
        let inner = set
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(bad)?;
        let members: Vec<usize> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        Subset::new(ambient, &members).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A composition of `n`: a sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(
                "composition parts must be positive".into(),
            ));
        }
        if parts.iter().sum::<usize>() > MAX_AMBIENT {
            return Err(Error::InvalidInput(format!(
                "composition total exceeds {MAX_AMBIENT}"
            )));
        }
        Ok(Composition { parts })
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts `c(alpha)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn reversed(&self) -> Composition {
        Composition {
            parts: self.parts.iter().rev().copied().collect(),
        }
    }

    /// The partial-sum set `I(alpha)`.
    pub fn to_subset(&self) -> Subset {
        let n = self.total();
        let mut bits = 0u32;
        let mut acc = 0;
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            acc += p;
            bits |= 1 << (acc - 1);
        }
        Subset::from_bits_unchecked(n, bits)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Reads `(2,1,3)`; `()` is the empty composition.
impl std::str::FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "cannot read composition {s:?}; expected e.g. (2,1)"
            ))
        };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<Vec<usize>>>()?;
        Composition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_subset_roundtrip() {
        let a = Composition::new(vec![2, 1, 1]).unwrap();
        let s = a.to_subset();
        assert_eq!(s, Subset::new(4, &[2, 3]).unwrap());
        assert_eq!(s.to_composition(), a);
        for n in 0..7 {
            for s in Subset::all(n) {
                assert_eq!(s.to_composition().to_subset(), s);
            }
        }
    }

    #[test]
    fn complement_and_reversal() {
        let s = Subset::new(4, &[1, 3]).unwrap();
        assert_eq!(s.complement(), Subset::new(4, &[2]).unwrap());
        assert_eq!(s.reversal(), s);
        let b = Composition::new(vec![1, 2]).unwrap();
        assert_eq!(b.reversed().parts(), &[2, 1]);
    }

    #[test]
    fn canonical_order_is_lexicographic_on_members() {
        let all = Subset::all(4);
        let listed: Vec<Vec<usize>> = all.iter().map(|s| s.members()).collect();
        assert_eq!(
            listed,
            vec![
                vec![],
                vec![1],
                vec![1, 2],
                vec![1, 2, 3],
                vec![1, 3],
                vec![2],
                vec![2, 3],
                vec![3]
            ]
        );
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = Subset::empty(3);
        let b = Subset::empty(4);
        assert!(matches!(a.union(&b), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn rejects_out_of_range_members() {
        assert!(Subset::new(3, &[3]).is_err());
        assert!(Subset::new(3, &[0]).is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
    }
}
