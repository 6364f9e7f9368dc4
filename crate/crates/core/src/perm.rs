//! Permutations in one-line notation and the coset machinery around them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use crate::config::{check_degree, HARD_MAX_DEGREE};
use crate::error::{same_ambient, Error, Result};
use crate::subset::Subset;

type Word = SmallVec<[u8; 16]>;

/// A bijection of `[n]` stored as its word `u(1) ... u(n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    word: Word,
}

impl Permutation {
    pub fn new(word: &[usize]) -> Result<Self> {
        let n = word.len();
        if n > HARD_MAX_DEGREE {
            return Err(Error::InvalidInput(format!(
                "degree {n} exceeds the supported maximum {HARD_MAX_DEGREE}"
            )));
        }
        let mut seen = [false; HARD_MAX_DEGREE + 1];
        for &v in word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "{word:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            word: word.iter().map(|&v| v as u8).collect(),
        })
    }

    pub(crate) fn from_word(word: Word) -> Self {
        debug_assert!(
            Permutation::new(&word.iter().map(|&v| v as usize).collect::<Vec<_>>()).is_ok()
        );
        Permutation { word }
    }

    pub(crate) fn from_u8(word: &[u8]) -> Self {
        Self::from_word(word.iter().copied().collect())
    }

    pub fn empty() -> Self {
        Permutation { word: Word::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// The longest element `w_n`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).rev().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.word.iter().map(|&v| v as usize).collect()
    }

    /// `u(i)` for `1 <= i <= n`.
    pub fn value(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv: Word = SmallVec::from_elem(0, self.degree());
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { word: inv }
    }

    /// The product `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        crate::error::same_degree(self.degree(), other.degree())?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            word: other
                .word
                .iter()
                .map(|&j| self.word[j as usize - 1])
                .collect(),
        }
    }

    /// `u x v`: `v` shifted up and placed after `u`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let p = self.degree() as u8;
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&v| v + p));
        Permutation { word }
    }

    pub fn direct_sum_all(blocks: &[Permutation]) -> Permutation {
        blocks
            .iter()
            .fold(Permutation::empty(), |acc, b| acc.direct_sum(b))
    }

    /// Standardize a slice of this word.
    pub fn standardized_segment(&self, start: usize, end: usize) -> Permutation {
        standardize_u8(&self.word[start..end])
    }

    pub fn descent_set(&self) -> Subset {
        let bits = self
            .word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .fold(0u32, |acc, (i, _)| acc | 1 << i);
        Subset::from_bits_unchecked(self.degree(), bits)
    }

    /// Positions `p` with `{u_1..u_p} = {n-p+1..n}`.
    pub fn global_descent_set(&self) -> Subset {
        let n = self.degree();
        let mut bits = 0u32;
        let mut min = u8::MAX;
        for p in 1..n {
            min = min.min(self.word[p - 1]);
            if min as usize == n - p + 1 {
                bits |= 1 << (p - 1);
            }
        }
        Subset::from_bits_unchecked(n, bits)
    }

    /// `GDes(u) + {0, n}` as a sorted list of split points.
    pub fn augmented_global_descents(&self) -> Vec<usize> {
        let n = self.degree();
        let mut out = vec![0];
        out.extend(self.global_descent_set().iter());
        if n > 0 {
            out.push(n);
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.descent_set() == self.global_descent_set()
    }

    /// Pairs of positions `(i, j)`, `i < j`, with `u_i > u_j`.
    pub fn inversion_set(&self) -> Vec<(usize, usize)> {
        let n = self.degree();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.word[i] > self.word[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn length(&self) -> usize {
        self.inversion_mask().count_ones() as usize
    }

    /// Inversion set as a bitmask; pair `(i, j)` (0-based, `i < j`) maps to bit `j(j-1)/2 + i`.
    pub fn inversion_mask(&self) -> u128 {
        let mut mask = 0u128;
        for j in 1..self.degree() {
            let base = j * (j - 1) / 2;
            for i in 0..j {
                if self.word[i] > self.word[j] {
                    mask |= 1u128 << (base + i);
                }
            }
        }
        mask
    }

    /// `u_S`: the direct sum of the standardized segments of `u` cut at `S`.
    pub fn projection(&self, s: &Subset) -> Result<Permutation> {
        same_ambient(self.degree(), s.ambient())?;
        Ok(Permutation::direct_sum_all(&self.segments(s)))
    }

    /// Standardized segments of `u` cut at the members of `S`.
    pub fn segments(&self, s: &Subset) -> Vec<Permutation> {
        let cuts = cut_points(s);
        cuts.windows(2)
            .map(|w| self.standardized_segment(w[0], w[1]))
            .collect()
    }

    /// Split `w = zeta * (b_1 x ... x b_k)` with `zeta` in `Sh(S)`.
    pub fn coset_decompose(&self, s: &Subset) -> Result<(Permutation, Vec<Permutation>)> {
        same_ambient(self.degree(), s.ambient())?;
        let blocks = self.segments(s);
        let sum = Permutation::direct_sum_all(&blocks);
        Ok((self.compose_unchecked(&sum.inverse()), blocks))
    }
}

/// Split points `0 = b_0 < s_1 < ... < s_k < b_{k+1} = n` (just `[0]` when `n = 0`).
pub(crate) fn cut_points(s: &Subset) -> Vec<usize> {
    let n = s.ambient();
    let mut cuts = vec![0];
    cuts.extend(s.iter());
    if n > 0 {
        cuts.push(n);
    }
    cuts
}

pub(crate) fn standardize_u8(values: &[u8]) -> Permutation {
    let mut order: Word = (0..values.len() as u8).collect();
    order.sort_by_key(|&i| values[i as usize]);
    let mut word: Word = SmallVec::from_elem(0, values.len());
    for (rank, &i) in order.iter().enumerate() {
        word[i as usize] = (rank + 1) as u8;
    }
    Permutation { word }
}

/// The permutation order-isomorphic to a word of distinct integers.
pub fn standardize(values: &[i64]) -> Result<Permutation> {
    if values.len() > HARD_MAX_DEGREE {
        return Err(Error::InvalidInput(format!(
            "length {} exceeds the supported maximum {HARD_MAX_DEGREE}",
            values.len()
        )));
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| values[i]);
    if order.windows(2).any(|w| values[w[0]] == values[w[1]]) {
        return Err(Error::InvalidInput(format!(
            "{values:?} has repeated values"
        )));
    }
    let mut word: Word = SmallVec::from_elem(0, values.len());
    for (rank, &i) in order.iter().enumerate() {
        word[i] = (rank + 1) as u8;
    }
    Ok(Permutation { word })
}

/// `zeta_S`, the longest element of `Sh(S)`.
pub fn zeta_of_subset(n: usize, s: &Subset) -> Result<Permutation> {
    same_ambient(n, s.ambient())?;
    let cuts = cut_points(s);
    let mut word = Word::new();
    for w in cuts.windows(2) {
        word.extend((n - w[1] + 1..=n - w[0]).map(|v| v as u8));
    }
    Ok(Permutation { word })
}

/// `zeta_{p,q} = (q+1 .. q+p, 1 .. q)`.
pub fn zeta_pq(p: usize, q: usize) -> Permutation {
    let word = (q + 1..=q + p).chain(1..=q).map(|v| v as u8).collect();
    Permutation { word }
}

/// `S` viewed as a composition, encoded for block sizes.
pub(crate) fn subset_of_sizes(sizes: &[usize]) -> Subset {
    let n: usize = sizes.iter().sum();
    let mut bits = 0u32;
    let mut acc = 0;
    for &k in &sizes[..sizes.len().saturating_sub(1)] {
        acc += k;
        if acc > 0 && acc < n {
            bits |= 1 << (acc - 1);
        }
    }
    Subset::from_bits_unchecked(n, bits)
}

/// All `zeta` with `Des(zeta)` contained in `S`, in canonical order.
pub fn coset_reps(n: usize, s: &Subset) -> Result<Vec<Permutation>> {
    same_ambient(n, s.ambient())?;
    check_degree(n)?;
    Ok(coset_reps_unchecked(s))
}

pub(crate) fn coset_reps_unchecked(s: &Subset) -> Vec<Permutation> {
    let cuts = cut_points(s);
    let sizes: Vec<usize> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
    coset_reps_for_sizes(&sizes)
}

/// Shuffle permutations for a block-size sequence (zero sizes allowed).
pub(crate) fn coset_reps_for_sizes(sizes: &[usize]) -> Vec<Permutation> {
    let n: usize = sizes.iter().sum();
    let mut starts = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &k in sizes {
        starts.push(acc);
        acc += k;
    }
    let mut out = Vec::new();
    let mut word: Word = SmallVec::from_elem(0, n);
    let mut fill = starts.clone();
    fn rec(
        v: usize,
        n: usize,
        sizes: &[usize],
        starts: &[usize],
        fill: &mut [usize],
        word: &mut Word,
        out: &mut Vec<Permutation>,
    ) {
        if v > n {
            out.push(Permutation { word: word.clone() });
            return;
        }
        for b in 0..sizes.len() {
            if fill[b] < starts[b] + sizes[b] {
                word[fill[b]] = v as u8;
                fill[b] += 1;
                rec(v + 1, n, sizes, starts, fill, word, out);
                fill[b] -= 1;
            }
        }
    }
    rec(1, n, sizes, &starts, &mut fill, &mut word, &mut out);
    out.sort();
    out
}

/// `Sh(p, q)`.
pub fn shuffles(p: usize, q: usize) -> Vec<Permutation> {
    coset_reps_for_sizes(&[p, q])
}

/// `(b_1 x ... x b_k) * zeta^{-1}`.
pub fn rho_embed(zeta: &Permutation, blocks: &[Permutation]) -> Result<Permutation> {
    let sizes: Vec<usize> = blocks.iter().map(Permutation::degree).collect();
    let s = subset_of_sizes(&sizes);
    crate::error::same_degree(s.ambient(), zeta.degree())?;
    if zeta.descent_set().bits() & !s.bits() != 0 {
        return Err(Error::InvalidInput(format!(
            "{zeta} is not a coset representative for block sizes {sizes:?}"
        )));
    }
    Ok(rho_unchecked(zeta, blocks))
}

pub(crate) fn rho_unchecked(zeta: &Permutation, blocks: &[Permutation]) -> Permutation {
    Permutation::direct_sum_all(blocks).compose_unchecked(&zeta.inverse())
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.word.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "1_0")
        } else {
            write!(f, "{self}")
        }
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" || s == "1_0" {
            return Ok(Permutation::empty());
        }
        let values: Option<Vec<usize>> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().ok())
                .collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let values =
            values.ok_or_else(|| Error::Parse(format!("cannot read permutation {s:?}")))?;
        Permutation::new(&values).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Every permutation of one degree with precomputed inversion masks.
#[derive(Debug)]
pub struct SymmetricGroup {
    degree: usize,
    perms: Vec<Permutation>,
    masks: Vec<u128>,
    lengths: Vec<u8>,
    ranks: HashMap<Permutation, u32>,
}

static GROUPS: [OnceLock<Arc<SymmetricGroup>>; HARD_MAX_DEGREE + 1] =
    [const { OnceLock::new() }; HARD_MAX_DEGREE + 1];

impl SymmetricGroup {
    /// The cached table for `S_n`; refuses degrees above the configured cap.
    pub fn get(n: usize) -> Result<Arc<SymmetricGroup>> {
        check_degree(n)?;
        Ok(GROUPS[n]
            .get_or_init(|| Arc::new(SymmetricGroup::build(n)))
            .clone())
    }

    fn build(n: usize) -> Self {
        let mut perms = Vec::new();
        let mut word: Vec<u8> = (1..=n as u8).collect();
        loop {
            perms.push(Permutation::from_u8(&word));
            if !next_permutation(&mut word) {
                break;
            }
        }
        let masks: Vec<u128> = perms.iter().map(Permutation::inversion_mask).collect();
        let lengths = masks.iter().map(|m| m.count_ones() as u8).collect();
        let ranks = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        SymmetricGroup {
            degree: n,
            perms,
            masks,
            lengths,
            ranks,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Permutations in lexicographic order.
    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn mask(&self, rank: usize) -> u128 {
        self.masks[rank]
    }

    pub fn masks(&self) -> &[u128] {
        &self.masks
    }

    pub fn length(&self, rank: usize) -> usize {
        self.lengths[rank] as usize
    }

    pub fn rank(&self, u: &Permutation) -> Option<usize> {
        self.ranks.get(u).map(|&r| r as usize)
    }
}

/// All permutations of degree `n` in lexicographic order.
pub fn all_perms(n: usize) -> Result<Vec<Permutation>> {
    Ok(SymmetricGroup::get(n)?.perms().to_vec())
}

fn next_permutation(word: &mut [u8]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(n: usize, m: &[usize]) -> Subset {
        Subset::new(n, m).unwrap()
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[6, 2, 5]).unwrap(), p("312"));
        assert_eq!(standardize(&[4, 2, 5, 3, 1]).unwrap(), p("42531"));
        assert!(standardize(&[1, 1]).is_err());
    }

    #[test]
    fn direct_sum_and_inverse() {
        assert_eq!(p("12").direct_sum(&p("21")), p("1243"));
        assert_eq!(p("312").direct_sum(&p("21")), p("31254"));
        assert_eq!(Permutation::empty().direct_sum(&p("21")), p("21"));
        assert_eq!(p("312").inverse(), p("231"));
        assert_eq!(p("42531").inverse(), p("52413"));
    }

    #[test]
    fn descents() {
        assert_eq!(p("46512837").descent_set(), set(8, &[2, 3, 6]));
        assert_eq!(p("563241").global_descent_set(), set(6, &[2, 5]));
        assert_eq!(p("4123").global_descent_set(), set(4, &[1]));
        assert_eq!(p("231").inversion_set(), vec![(1, 3), (2, 3)]);
        assert_eq!(Permutation::longest(5).length(), 10);
    }

    #[test]
    fn zetas() {
        assert_eq!(zeta_of_subset(3, &set(3, &[1])).unwrap(), p("312"));
        assert_eq!(zeta_of_subset(3, &set(3, &[2])).unwrap(), p("231"));
        assert_eq!(zeta_of_subset(4, &set(4, &[2])).unwrap(), p("3412"));
        assert_eq!(zeta_pq(2, 2), p("3412"));
        assert_eq!(
            zeta_of_subset(4, &Subset::empty(4)).unwrap(),
            Permutation::identity(4)
        );
        assert!(zeta_of_subset(3, &Subset::empty(4)).is_err());
    }

    #[test]
    fn coset_representatives() {
        let reps = coset_reps(4, &set(4, &[2])).unwrap();
        let words: Vec<String> = reps.iter().map(|z| z.to_string()).collect();
        assert_eq!(words, ["1234", "1324", "1423", "2314", "2413", "3412"]);
        assert_eq!(coset_reps(3, &set(3, &[1, 2])).unwrap().len(), 6);
        assert_eq!(
            coset_reps(5, &Subset::empty(5)).unwrap(),
            vec![Permutation::identity(5)]
        );
    }

    #[test]
    fn decomposition_recomposes() {
        let w = p("42531");
        let (zeta, blocks) = w.coset_decompose(&set(5, &[2])).unwrap();
        assert_eq!(blocks, vec![p("21"), p("321")]);
        assert_eq!(
            zeta.compose(&Permutation::direct_sum_all(&blocks)).unwrap(),
            w
        );
        let (zeta, blocks) = p("3412").coset_decompose(&set(4, &[2])).unwrap();
        assert_eq!((zeta, blocks), (p("3412"), vec![p("12"), p("12")]));
    }

    #[test]
    fn projections() {
        let u = p("42531");
        assert_eq!(u.projection(&Subset::empty(5)).unwrap(), u);
        assert_eq!(
            u.projection(&Subset::full(5)).unwrap(),
            Permutation::identity(5)
        );
        assert_eq!(u.projection(&set(5, &[2])).unwrap(), p("21543"));
        assert_eq!(p("3412").projection(&set(4, &[2])).unwrap(), p("1234"));
    }

    #[test]
    fn closedness() {
        assert!(p("3412").is_closed());
        assert!(!p("2413").is_closed());
        assert!(Permutation::identity(4).is_closed());
        assert!(Permutation::longest(4).is_closed());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(
            rho_embed(&p("1324"), &[p("12"), p("21")]).unwrap(),
            p("1423")
        );
        assert_eq!(
            rho_embed(&p("3412"), &[p("12"), p("12")]).unwrap(),
            p("3412")
        );
        assert!(rho_embed(&p("2134"), &[p("12"), p("12")]).is_err());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("").degree(), 0);
        let big = Permutation::new(&[10, 1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(big.to_string(), "10,1,2,3,4,5,6,7,8,9");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("1224".parse::<Permutation>().is_err());
    }

    #[test]
    fn group_table_is_lexicographic() {
        let g = SymmetricGroup::get(4).unwrap();
        assert_eq!(g.len(), 24);
        assert!(g.perms().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g.rank(&p("4321")), Some(23));
    }
}
