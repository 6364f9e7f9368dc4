//! Brute-force reference implementations, written from the definitions and sharing no
//! algorithms with the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hopfperm::{Coeff, LinComb, Permutation, Subset};

pub type Word = Vec<usize>;
pub type Poly = BTreeMap<Word, i64>;

pub fn perms(n: usize) -> Vec<Word> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for w in perms(n - 1) {
        for pos in 0..n {
            let mut v = w.clone();
            v.insert(pos, n);
            out.push(v);
        }
    }
    out.sort();
    out
}

pub fn to_perm(w: &[usize]) -> Permutation {
    Permutation::new(w).unwrap()
}

pub fn word(u: &Permutation) -> Word {
    u.to_vec()
}

pub fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

pub fn lc(map: &BTreeMap<Word, i64>) -> LinComb<Permutation> {
    map.iter()
        .map(|(w, &c)| (to_perm(w), Coeff::from(c)))
        .collect()
}

pub fn lc2(map: &BTreeMap<(Word, Word), i64>) -> LinComb<Vec<Permutation>> {
    map.iter()
        .map(|((a, b), &c)| (vec![to_perm(a), to_perm(b)], Coeff::from(c)))
        .collect()
}

pub fn add(map: &mut BTreeMap<Word, i64>, key: Word, c: i64) {
    let e = map.entry(key.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        map.remove(&key);
    }
}

pub fn inversions(w: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                out.insert((i + 1, j + 1));
            }
        }
    }
    out
}

pub fn leq(u: &[usize], v: &[usize]) -> bool {
    inversions(u).is_subset(&inversions(v))
}

pub fn inverse(w: &[usize]) -> Word {
    let mut out = vec![0; w.len()];
    for (i, &x) in w.iter().enumerate() {
        out[x - 1] = i + 1;
    }
    out
}

pub fn standardize(a: &[usize]) -> Word {
    a.iter()
        .map(|x| a.iter().filter(|y| *y <= x).count())
        .collect()
}

pub fn descents(w: &[usize]) -> BTreeSet<usize> {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
}

pub fn global_descents(w: &[usize]) -> BTreeSet<usize> {
    (1..w.len())
        .filter(|&p| w[..p].iter().min() > w[p..].iter().max())
        .collect()
}

pub fn subset(n: usize, s: &BTreeSet<usize>) -> Subset {
    Subset::new(n, &s.iter().copied().collect::<Vec<_>>()).unwrap()
}

/// Every interleaving of `a` and `b`.
pub fn shuffle_words(a: &[usize], b: &[usize]) -> Vec<Word> {
    if a.is_empty() || b.is_empty() {
        return vec![[a, b].concat()];
    }
    let mut out = Vec::new();
    for mut t in shuffle_words(&a[1..], b) {
        t.insert(0, a[0]);
        out.push(t);
    }
    for mut t in shuffle_words(a, &b[1..]) {
        t.insert(0, b[0]);
        out.push(t);
    }
    out
}

/// `F_u F_v`: shuffles of the word `u` with `v` shifted by `|u|`.
pub fn f_product(u: &[usize], v: &[usize]) -> Poly {
    let shifted: Word = v.iter().map(|x| x + u.len()).collect();
    let mut out = Poly::new();
    for w in shuffle_words(u, &shifted) {
        add(&mut out, w, 1);
    }
    out
}

pub fn f_product_lin(x: &Poly, y: &Poly) -> Poly {
    let mut out = Poly::new();
    for (a, c) in x {
        for (b, d) in y {
            for (w, e) in f_product(a, b) {
                add(&mut out, w, c * d * e);
            }
        }
    }
    out
}

pub fn f_coproduct(u: &[usize]) -> BTreeMap<(Word, Word), i64> {
    (0..=u.len())
        .map(|p| ((standardize(&u[..p]), standardize(&u[p..])), 1))
        .collect()
}

/// Möbius function of the weak order by the defining recursion over the interval.
pub fn mobius(u: &[usize], v: &[usize]) -> i64 {
    if !leq(u, v) {
        return 0;
    }
    let n = u.len();
    let mut interval: Vec<Word> = perms(n)
        .into_iter()
        .filter(|x| leq(u, x) && leq(x, v))
        .collect();
    interval.sort_by_key(|x| inversions(x).len());
    let mut mu: BTreeMap<Word, i64> = BTreeMap::new();
    for x in &interval {
        let value = if x.as_slice() == u {
            1
        } else {
            -mu.iter()
                .filter(|(y, _)| leq(y, x))
                .map(|(_, m)| m)
                .sum::<i64>()
        };
        mu.insert(x.clone(), value);
    }
    mu[v]
}

/// `M_u = sum_{v >= u} mu(u, v) F_v`.
pub fn m_to_f(u: &[usize]) -> Poly {
    let mut out = Poly::new();
    for v in perms(u.len()) {
        add(&mut out, v.clone(), mobius(u, &v));
    }
    out
}

/// `F_u = sum_{v >= u} M_v`.
pub fn f_to_m(u: &[usize]) -> Poly {
    perms(u.len())
        .into_iter()
        .filter(|v| leq(u, v))
        .map(|v| (v, 1))
        .collect()
}

pub fn convert(x: &Poly, single: impl Fn(&[usize]) -> Poly) -> Poly {
    let mut out = Poly::new();
    for (a, c) in x {
        for (b, d) in single(a) {
            add(&mut out, b, c * d);
        }
    }
    out
}

/// `M_u M_v` computed through the fundamental basis.
pub fn m_product(u: &[usize], v: &[usize]) -> Poly {
    let f = f_product_lin(&m_to_f(u), &m_to_f(v));
    convert(&f, f_to_m)
}

/// `Delta(M_u)` computed through the fundamental basis.
pub fn m_coproduct(u: &[usize]) -> BTreeMap<(Word, Word), i64> {
    let mut out = BTreeMap::new();
    for (v, c) in m_to_f(u) {
        for ((a, b), d) in f_coproduct(&v) {
            for (x, e) in f_to_m(&a) {
                for (y, f) in f_to_m(&b) {
                    let entry = out.entry((x.clone(), y)).or_insert(0);
                    *entry += c * d * e * f;
                }
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Antipode on the fundamental basis from `sum S(x_1) x_2 = 0` in positive degree.
pub fn antipode_f(u: &[usize]) -> Poly {
    let n = u.len();
    if n == 0 {
        return [(vec![], 1)].into_iter().collect();
    }
    let mut out = Poly::new();
    for p in 0..n {
        let left = antipode_f(&standardize(&u[..p]));
        let right: Poly = [(standardize(&u[p..]), 1)].into_iter().collect();
        for (w, c) in f_product_lin(&left, &right) {
            add(&mut out, w, -c);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Quasi-symmetric functions as polynomials in finitely many variables.

pub type Exps = Vec<u32>;
pub type QPoly = BTreeMap<Exps, i64>;

pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn composition_of(s: &Subset) -> Vec<usize> {
    let mut cuts = vec![0];
    cuts.extend(s.members());
    cuts.push(s.ambient());
    if s.ambient() == 0 {
        return vec![];
    }
    cuts.windows(2).map(|w| w[1] - w[0]).collect()
}

pub fn subset_of(parts: &[usize]) -> Subset {
    let n: usize = parts.iter().sum();
    let mut acc = 0;
    let mut members = Vec::new();
    for &x in &parts[..parts.len().saturating_sub(1)] {
        acc += x;
        members.push(acc);
    }
    Subset::new(n, &members).unwrap()
}

fn increasing_tuples(k: usize, m: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in increasing_tuples(k - 1, m) {
        let start = t.last().map_or(0, |&x| x + 1);
        for i in start..m {
            let mut s = t.clone();
            s.push(i);
            out.push(s);
        }
    }
    out
}

/// `M_alpha(x_1, ..., x_m)`.
pub fn monomial_qsym(parts: &[usize], m: usize) -> QPoly {
    let mut out = QPoly::new();
    for idx in increasing_tuples(parts.len(), m) {
        let mut e = vec![0u32; m];
        for (i, &a) in idx.iter().zip(parts) {
            e[*i] += a as u32;
        }
        *out.entry(e).or_insert(0) += 1;
    }
    out
}

/// `F_S(x_1, ..., x_m)`: weakly increasing index sequences, strict at `S`.
pub fn fundamental_qsym(s: &Subset, m: usize) -> QPoly {
    let n = s.ambient();
    let mut seqs: Vec<Vec<usize>> = vec![vec![]];
    for pos in 0..n {
        let mut next = Vec::new();
        for seq in &seqs {
            let low = match seq.last() {
                None => 0,
                Some(&x) if s.contains(pos) => x + 1,
                Some(&x) => x,
            };
            for i in low..m {
                let mut t = seq.clone();
                t.push(i);
                next.push(t);
            }
        }
        seqs = next;
    }
    let mut out = QPoly::new();
    for seq in seqs {
        let mut e = vec![0u32; m];
        for i in seq {
            e[i] += 1;
        }
        *out.entry(e).or_insert(0) += 1;
    }
    out
}

pub fn poly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = QPoly::new();
    for (x, c) in a {
        for (y, d) in b {
            let e: Exps = x.iter().zip(y).map(|(i, j)| i + j).collect();
            *out.entry(e).or_insert(0) += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Coefficients on the monomial basis of a quasi-symmetric polynomial of degree `n` in at
/// least `n` variables.
pub fn monomial_coefficients(f: &QPoly, n: usize, m: usize) -> BTreeMap<Vec<usize>, i64> {
    let mut out = BTreeMap::new();
    for parts in compositions(n) {
        let mut e = vec![0u32; m];
        for (i, &a) in parts.iter().enumerate() {
            e[i] = a as u32;
        }
        if let Some(&c) = f.get(&e) {
            if c != 0 {
                out.insert(parts, c);
            }
        }
    }
    out
}

/// `M_alpha M_beta` through polynomial multiplication.
pub fn qsym_m_product(a: &[usize], b: &[usize]) -> BTreeMap<Vec<usize>, i64> {
    let n: usize = a.iter().sum::<usize>() + b.iter().sum::<usize>();
    let m = n.max(1);
    monomial_coefficients(&poly_mul(&monomial_qsym(a, m), &monomial_qsym(b, m)), n, m)
}

pub fn qsym_lc(map: &BTreeMap<Vec<usize>, i64>) -> LinComb<Subset> {
    map.iter()
        .map(|(parts, &c)| (subset_of(parts), Coeff::from(c)))
        .collect()
}

// ---------------------------------------------------------------------------
// Lattice oracles.

/// The join by exhaustive search for the least upper bound.
pub fn join_by_search(u: &[usize], v: &[usize]) -> Word {
    let ups: Vec<Word> = perms(u.len())
        .into_iter()
        .filter(|w| leq(u, w) && leq(v, w))
        .collect();
    ups.iter()
        .find(|w| ups.iter().all(|x| leq(w, x)))
        .unwrap()
        .clone()
}

pub fn meet_by_search(u: &[usize], v: &[usize]) -> Word {
    let downs: Vec<Word> = perms(u.len())
        .into_iter()
        .filter(|w| leq(w, u) && leq(w, v))
        .collect();
    downs
        .iter()
        .find(|w| downs.iter().all(|x| leq(x, w)))
        .unwrap()
        .clone()
}

/// All chains `i = k_0 < ... < k_s = j`.
fn chains(i: usize, j: usize) -> Vec<Vec<usize>> {
    if i == j {
        return vec![vec![j]];
    }
    let mut out = Vec::new();
    for k in i + 1..=j {
        for mut c in chains(k, j) {
            c.insert(0, i);
            out.push(c);
        }
    }
    out
}

/// Inversion set of the join as the set of pairs joined by a chain of inversions of `u` or `v`.
pub fn join_inversions_by_chains(u: &[usize], v: &[usize]) -> BTreeSet<(usize, usize)> {
    let (a, b) = (inversions(u), inversions(v));
    let n = u.len();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if chains(i, j).iter().any(|c| {
                c.windows(2)
                    .all(|s| a.contains(&(s[0], s[1])) || b.contains(&(s[0], s[1])))
            }) {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Inversion set of the meet: every chain has a step inverted in both.
pub fn meet_inversions_by_chains(u: &[usize], v: &[usize]) -> BTreeSet<(usize, usize)> {
    let both: BTreeSet<_> = inversions(u)
        .intersection(&inversions(v))
        .copied()
        .collect();
    let n = u.len();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if chains(i, j)
                .iter()
                .all(|c| c.windows(2).any(|s| both.contains(&(s[0], s[1]))))
            {
                out.insert((i, j));
            }
        }
    }
    out
}
