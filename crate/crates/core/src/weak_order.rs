//! The left weak order on `S_n`: comparisons, lattice operations and the Möbius function.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{same_degree, Result};
use crate::perm::{Permutation, SymmetricGroup};

/// `Inv(u)` contained in `Inv(v)`.
pub fn leq(u: &Permutation, v: &Permutation) -> Result<bool> {
    same_degree(u.degree(), v.degree())?;
    Ok(leq_unchecked(u, v))
}

pub(crate) fn leq_unchecked(u: &Permutation, v: &Permutation) -> bool {
    let (a, b) = (u.inversion_mask(), v.inversion_mask());
    a & !b == 0
}

#[inline]
pub(crate) fn mask_leq(a: u128, b: u128) -> bool {
    a & !b == 0
}

/// Elements covering `u`: swap values `k`, `k+1` when `k` comes first.
pub fn covers(u: &Permutation) -> Vec<Permutation> {
    let n = u.degree();
    let inv = u.inverse();
    let mut out = Vec::new();
    for k in 1..n {
        let (i, j) = (inv.value(k) - 1, inv.value(k + 1) - 1);
        if i < j {
            let mut word: Vec<u8> = u.word().to_vec();
            word.swap(i, j);
            out.push(Permutation::from_u8(&word));
        }
    }
    out.sort();
    out
}

/// Elements covered by `u`.
pub fn lower_covers(u: &Permutation) -> Vec<Permutation> {
    let n = u.degree();
    let inv = u.inverse();
    let mut out = Vec::new();
    for k in 1..n {
        let (i, j) = (inv.value(k) - 1, inv.value(k + 1) - 1);
        if i > j {
            let mut word: Vec<u8> = u.word().to_vec();
            word.swap(i, j);
            out.push(Permutation::from_u8(&word));
        }
    }
    out.sort();
    out
}

/// Rows of the inversion relation: bit `j` of `rows[i]` set iff `(i, j)` is an inversion (0-based).
fn relation_rows(mask: u128, n: usize) -> Vec<u32> {
    let mut rows = vec![0u32; n];
    for j in 1..n {
        let base = j * (j - 1) / 2;
        for (i, row) in rows.iter_mut().enumerate().take(j) {
            if mask >> (base + i) & 1 == 1 {
                *row |= 1 << j;
            }
        }
    }
    rows
}

fn transitive_closure(rows: &mut [u32]) {
    let n = rows.len();
    for k in 0..n {
        for i in 0..n {
            if rows[i] >> k & 1 == 1 {
                rows[i] |= rows[k];
            }
        }
    }
}

/// Rebuild the permutation whose inversion relation is `rows`.
fn from_relation(rows: &[u32]) -> Permutation {
    let n = rows.len();
    let word: Vec<u8> = (0..n)
        .map(|i| {
            let after = rows[i].count_ones() as usize;
            let before = (0..i).filter(|&j| rows[j] >> i & 1 == 0).count();
            (1 + after + before) as u8
        })
        .collect();
    Permutation::from_u8(&word)
}

/// Least upper bound: inversion set is the transitive closure of the union.
pub fn join(u: &Permutation, v: &Permutation) -> Result<Permutation> {
    same_degree(u.degree(), v.degree())?;
    let n = u.degree();
    let mut rows = relation_rows(u.inversion_mask() | v.inversion_mask(), n);
    transitive_closure(&mut rows);
    Ok(from_relation(&rows))
}

/// Greatest lower bound, as `w_n * join(w_n * u, w_n * v)`.
pub fn meet(u: &Permutation, v: &Permutation) -> Result<Permutation> {
    same_degree(u.degree(), v.degree())?;
    let w0 = Permutation::longest(u.degree());
    let j = join(&w0.compose_unchecked(u), &w0.compose_unchecked(v))?;
    Ok(w0.compose_unchecked(&j))
}

/// Greatest lower bound by the chain criterion: `(i, j)` is an inversion of the meet
/// iff every chain `i = k_0 < ... < k_s = j` has a step inverted in both `u` and `v`.
pub fn meet_by_chains(u: &Permutation, v: &Permutation) -> Result<Permutation> {
    same_degree(u.degree(), v.degree())?;
    let n = u.degree();
    let both = relation_rows(u.inversion_mask() & v.inversion_mask(), n);
    // reach[i]: targets j reachable from i by a chain avoiding common inversions.
    let mut reach = vec![0u32; n];
    for i in (0..n).rev() {
        for k in i + 1..n {
            if both[i] >> k & 1 == 0 {
                reach[i] |= 1 << k | reach[k];
            }
        }
    }
    let upper = |i: usize| -> u32 {
        let all = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
        all & !((1u32 << (i + 1)) - 1)
    };
    let rows: Vec<u32> = (0..n).map(|i| upper(i) & !reach[i]).collect();
    Ok(from_relation(&rows))
}

/// Elements `w` with `u <= w <= v`, in canonical order.
pub fn interval(u: &Permutation, v: &Permutation) -> Result<Vec<Permutation>> {
    same_degree(u.degree(), v.degree())?;
    let g = SymmetricGroup::get(u.degree())?;
    let (a, b) = (u.inversion_mask(), v.inversion_mask());
    Ok(g.perms()
        .iter()
        .zip(g.masks())
        .filter(|(_, &m)| mask_leq(a, m) && mask_leq(m, b))
        .map(|(w, _)| w.clone())
        .collect())
}

/// `{x : x <= u}` as a membership array over the ranks of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownSet {
    degree: usize,
    members: Vec<bool>,
}

impl DownSet {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn contains_rank(&self, rank: usize) -> bool {
        self.members[rank]
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        same_degree(self.degree, x.degree())?;
        let g = SymmetricGroup::get(self.degree)?;
        Ok(g.rank(x).is_some_and(|r| self.members[r]))
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let g = SymmetricGroup::get(self.degree)?;
        Ok(self.ranks().map(|r| g.perms()[r].clone()).collect())
    }
}

pub fn downset(u: &Permutation) -> Result<DownSet> {
    let g = SymmetricGroup::get(u.degree())?;
    let a = u.inversion_mask();
    let members = g.masks().iter().map(|&m| mask_leq(m, a)).collect();
    Ok(DownSet {
        degree: u.degree(),
        members,
    })
}

/// Memoized Möbius function of the weak order.
///
/// For each lower endpoint `u` the row `v -> mu(u, v)` is computed once by the defining
/// recursion and stored sparsely (nonzero entries only, keyed by rank).
#[derive(Default)]
pub struct MobiusCache {
    rows: RwLock<HashMap<Permutation, Arc<Vec<(u32, i32)>>>>,
}

impl MobiusCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static MobiusCache {
        static CACHE: OnceLock<MobiusCache> = OnceLock::new();
        CACHE.get_or_init(MobiusCache::new)
    }

    /// Nonzero values `(rank of v, mu(u, v))`, sorted by rank.
    pub fn row(&self, u: &Permutation) -> Result<Arc<Vec<(u32, i32)>>> {
        if let Some(row) = self.rows.read().expect("mobius cache poisoned").get(u) {
            return Ok(row.clone());
        }
        let row = Arc::new(compute_row(u)?);
        let mut guard = self.rows.write().expect("mobius cache poisoned");
        Ok(guard.entry(u.clone()).or_insert(row).clone())
    }

    pub fn get(&self, u: &Permutation, v: &Permutation) -> Result<i32> {
        same_degree(u.degree(), v.degree())?;
        let g = SymmetricGroup::get(u.degree())?;
        let r = g.rank(v).expect("rank of a valid permutation") as u32;
        let row = self.row(u)?;
        Ok(row
            .binary_search_by_key(&r, |&(k, _)| k)
            .map_or(0, |i| row[i].1))
    }
}

fn compute_row(u: &Permutation) -> Result<Vec<(u32, i32)>> {
    let g = SymmetricGroup::get(u.degree())?;
    let a = u.inversion_mask();
    let mut above: Vec<usize> = (0..g.len()).filter(|&r| mask_leq(a, g.mask(r))).collect();
    // Sorting by length gives a linear extension of the interval.
    above.sort_by_key(|&r| g.length(r));
    let mut nonzero: Vec<(usize, i64)> = Vec::new();
    for &r in &above {
        let m = g.mask(r);
        let value = if m == a {
            1
        } else {
            -nonzero
                .iter()
                .filter(|&&(s, _)| mask_leq(g.mask(s), m))
                .map(|&(_, x)| x)
                .sum::<i64>()
        };
        if value != 0 {
            nonzero.push((r, value));
        }
    }
    let mut row: Vec<(u32, i32)> = nonzero
        .into_iter()
        .map(|(r, x)| (r as u32, x as i32))
        .collect();
    row.sort_unstable();
    Ok(row)
}

/// `mu(u, v)` of the weak order; zero when `u` is not below `v`.
pub fn mobius(u: &Permutation, v: &Permutation) -> Result<i32> {
    MobiusCache::global().get(u, v)
}

/// Nonzero `(v, mu(u, v))` over `v >= u`, in canonical order.
pub fn mobius_row(u: &Permutation) -> Result<Vec<(Permutation, i32)>> {
    let g = SymmetricGroup::get(u.degree())?;
    let row = MobiusCache::global().row(u)?;
    Ok(row
        .iter()
        .map(|&(r, m)| (g.perms()[r as usize].clone(), m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn comparisons() {
        assert!(leq(&p("4123"), &p("4132")).unwrap());
        assert!(!leq(&p("213"), &p("132")).unwrap());
        assert!(leq(&p("123"), &p("321")).unwrap());
        assert!(leq(&p("12"), &p("123")).is_err());
    }

    #[test]
    fn cover_examples() {
        assert_eq!(covers(&p("123")), vec![p("132"), p("213")]);
        assert!(covers(&Permutation::longest(4)).is_empty());
        for c in covers(&p("2413")) {
            assert_eq!(c.length(), p("2413").length() + 1);
        }
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(join(&p("213"), &p("132")).unwrap(), p("321"));
        assert_eq!(meet(&p("231"), &p("312")).unwrap(), p("123"));
        assert_eq!(meet_by_chains(&p("231"), &p("312")).unwrap(), p("123"));
        assert_eq!(join(&p("2413"), &p("2413")).unwrap(), p("2413"));
    }

    #[test]
    fn intervals_and_downsets() {
        assert_eq!(interval(&p("231"), &p("231")).unwrap(), vec![p("231")]);
        assert_eq!(interval(&p("123"), &p("321")).unwrap().len(), 6);
        assert!(interval(&p("213"), &p("132")).unwrap().is_empty());
        let d = downset(&p("231")).unwrap().elements().unwrap();
        assert_eq!(d, vec![p("123"), p("132"), p("231")]);
    }

    #[test]
    fn mobius_examples() {
        let u = p("4123");
        let row = mobius_row(&u).unwrap();
        assert_eq!(
            row,
            vec![
                (p("4123"), 1),
                (p("4132"), -1),
                (p("4213"), -1),
                (p("4321"), 1)
            ]
        );
        assert_eq!(mobius(&p("213"), &p("132")).unwrap(), 0);
    }
}
