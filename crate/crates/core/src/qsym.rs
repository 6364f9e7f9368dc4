//! Quasi-symmetric functions on the monomial and fundamental bases, the descent map from
//! permutations, its splitting, and the cube-face description of the monomial product.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::config::check_degree;
use crate::error::{same_ambient, Error, Result};
use crate::hopf::{self, HopfBasis};
use crate::linear::{Coeff, LinComb};
use crate::perm::{shuffles, zeta_of_subset, Permutation};
use crate::ssym::{self, check_series_request, index_chains, Basis, PermExpansion};
use crate::subset::{Composition, Subset};
use crate::weak_order::mobius;

/// An integer combination of subsets-with-degree in one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymExpansion {
    pub basis: Basis,
    pub dual: bool,
    pub terms: LinComb<Subset>,
}

impl QSymExpansion {
    pub fn new(basis: Basis, terms: LinComb<Subset>) -> Self {
        QSymExpansion {
            basis,
            dual: false,
            terms,
        }
    }

    pub fn new_dual(basis: Basis, terms: LinComb<Subset>) -> Self {
        QSymExpansion {
            basis,
            dual: true,
            terms,
        }
    }

    pub fn basis_element(basis: Basis, s: Subset) -> Self {
        Self::new(basis, LinComb::basis(s))
    }

    pub fn top_degree(&self) -> usize {
        self.terms.keys().map(Subset::ambient).max().unwrap_or(0)
    }

    pub(crate) fn require(&self, basis: Basis, dual: bool) -> Result<()> {
        if self.basis != basis || self.dual != dual {
            return Err(Error::InvalidInput(format!(
                "expected a {}{basis}-expansion, got {}{}",
                if dual { "dual " } else { "" },
                if self.dual { "dual " } else { "" },
                self.basis
            )));
        }
        Ok(())
    }
}

/// An integer combination of pairs of subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymTensor {
    pub basis: Basis,
    pub dual: bool,
    pub terms: LinComb<(Subset, Subset)>,
}

/// Marker for the monomial basis of quasi-symmetric functions.
pub struct QsymM;
/// Marker for the fundamental basis of quasi-symmetric functions.
pub struct QsymF;

impl HopfBasis for QsymM {
    type Index = Subset;

    fn degree(s: &Subset) -> usize {
        s.ambient()
    }

    fn unit() -> Subset {
        Subset::empty(0)
    }

    fn basis(n: usize) -> Result<Vec<Subset>> {
        check_degree(n)?;
        Ok(Subset::all(n))
    }

    fn product(a: &Subset, b: &Subset) -> Result<LinComb<Subset>> {
        check_degree(a.ambient() + b.ambient())?;
        Ok(quasi_shuffle_raw(a, b))
    }

    fn coproduct(a: &Subset) -> Result<LinComb<(Subset, Subset)>> {
        let mut points = vec![0];
        points.extend(a.iter());
        if a.ambient() > 0 {
            points.push(a.ambient());
        }
        Ok(points
            .into_iter()
            .map(|p| ((a.restrict_prefix(p), a.restrict_suffix(p)), Coeff::one()))
            .collect())
    }
}

impl HopfBasis for QsymF {
    type Index = Subset;

    fn degree(s: &Subset) -> usize {
        s.ambient()
    }

    fn unit() -> Subset {
        Subset::empty(0)
    }

    fn basis(n: usize) -> Result<Vec<Subset>> {
        check_degree(n)?;
        Ok(Subset::all(n))
    }

    fn product(a: &Subset, b: &Subset) -> Result<LinComb<Subset>> {
        check_degree(a.ambient() + b.ambient())?;
        let p = a.ambient();
        let q = b.ambient();
        let za = zeta_of_subset(p, a)?;
        let zb = zeta_of_subset(q, b)?;
        let sum = za.direct_sum(&zb);
        Ok(shuffles(p, q)
            .iter()
            .map(|z| {
                (
                    sum.compose_unchecked(&z.inverse()).descent_set(),
                    Coeff::one(),
                )
            })
            .collect())
    }

    fn coproduct(a: &Subset) -> Result<LinComb<(Subset, Subset)>> {
        let n = a.ambient();
        Ok((0..=n)
            .map(|p| ((a.restrict_prefix(p), a.restrict_suffix(p)), Coeff::one()))
            .collect())
    }
}

/// All quasi-shuffles of two part sequences, with repetition.
pub fn quasi_shuffles(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    match (a.split_first(), b.split_first()) {
        (None, _) => vec![b.to_vec()],
        (_, None) => vec![a.to_vec()],
        (Some((&x, ra)), Some((&y, rb))) => {
            let mut out = Vec::new();
            for (head, tails) in [
                (x, quasi_shuffles(ra, b)),
                (y, quasi_shuffles(a, rb)),
                (x + y, quasi_shuffles(ra, rb)),
            ] {
                for t in tails {
                    let mut v = Vec::with_capacity(t.len() + 1);
                    v.push(head);
                    v.extend(t);
                    out.push(v);
                }
            }
            out
        }
    }
}

fn quasi_shuffle_raw(a: &Subset, b: &Subset) -> LinComb<Subset> {
    let (ca, cb) = (a.to_composition(), b.to_composition());
    quasi_shuffles(ca.parts(), cb.parts())
        .into_iter()
        .map(|parts| {
            (
                Composition::new(parts).expect("positive parts").to_subset(),
                Coeff::one(),
            )
        })
        .collect()
}

/// `M_alpha . M_beta` as a sum over quasi-shuffles.
pub fn m_quasi_shuffle(a: &Composition, b: &Composition) -> Result<QSymExpansion> {
    let terms = QsymM::product(&a.to_subset(), &b.to_subset())?;
    Ok(QSymExpansion::new(Basis::M, terms))
}

/// Deconcatenation coproduct of `M_alpha`.
pub fn m_coproduct(a: &Composition) -> Result<QSymTensor> {
    Ok(QSymTensor {
        basis: Basis::M,
        dual: false,
        terms: QsymM::coproduct(&a.to_subset())?,
    })
}

pub fn f_coproduct(s: &Subset) -> Result<QSymTensor> {
    Ok(QSymTensor {
        basis: Basis::F,
        dual: false,
        terms: QsymF::coproduct(s)?,
    })
}

pub fn f_product(s: &Subset, t: &Subset) -> Result<QSymExpansion> {
    Ok(QSymExpansion::new(Basis::F, QsymF::product(s, t)?))
}

pub fn product(x: &QSymExpansion, y: &QSymExpansion) -> Result<QSymExpansion> {
    x.require(x.basis, false)?;
    y.require(x.basis, false)?;
    let terms = match x.basis {
        Basis::M => hopf::mul::<QsymM>(&x.terms, &y.terms)?,
        Basis::F => hopf::mul::<QsymF>(&x.terms, &y.terms)?,
    };
    Ok(QSymExpansion::new(x.basis, terms))
}

pub fn coproduct(x: &QSymExpansion) -> Result<QSymTensor> {
    x.require(x.basis, false)?;
    let terms = match x.basis {
        Basis::M => hopf::comul::<QsymM>(&x.terms)?,
        Basis::F => hopf::comul::<QsymF>(&x.terms)?,
    };
    Ok(QSymTensor {
        basis: x.basis,
        dual: false,
        terms,
    })
}

/// `S(M_alpha) = (-1)^{c(alpha)} sum_{I(beta) inside I(alpha)} M_{reverse(beta)}`.
pub fn antipode_m_single(t: &Subset) -> LinComb<Subset> {
    let n = t.ambient();
    let parts = if n == 0 { 0 } else { t.len() + 1 };
    let sg = if parts % 2 == 0 {
        Coeff::one()
    } else {
        -Coeff::one()
    };
    t.subsets()
        .into_iter()
        .map(|r| (r.reversal(), sg.clone()))
        .collect()
}

/// `S(F_T) = (-1)^n F_{complement(reverse(T))}`.
pub fn antipode_f_single(t: &Subset) -> LinComb<Subset> {
    let sg = if t.ambient().is_multiple_of(2) {
        Coeff::one()
    } else {
        -Coeff::one()
    };
    LinComb::from_term(t.reversal().complement(), sg)
}

pub fn antipode_m(a: &Composition) -> QSymExpansion {
    QSymExpansion::new(Basis::M, antipode_m_single(&a.to_subset()))
}

pub fn antipode_f(t: &Subset) -> QSymExpansion {
    QSymExpansion::new(Basis::F, antipode_f_single(t))
}

pub fn antipode(x: &QSymExpansion) -> Result<QSymExpansion> {
    x.require(x.basis, false)?;
    let terms = match x.basis {
        Basis::M => x.terms.map_linear(antipode_m_single),
        Basis::F => x.terms.map_linear(antipode_f_single),
    };
    Ok(QSymExpansion::new(x.basis, terms))
}

/// `F_S = sum_{T containing S} M_T`.
pub fn f_to_m_single(s: &Subset) -> LinComb<Subset> {
    s.supersets()
        .into_iter()
        .map(|t| (t, Coeff::one()))
        .collect()
}

/// `M_S = sum_{T containing S} (-1)^{|T - S|} F_T`.
pub fn m_to_f_single(s: &Subset) -> LinComb<Subset> {
    s.supersets()
        .into_iter()
        .map(|t| {
            let sg = if (t.len() - s.len()).is_multiple_of(2) {
                Coeff::one()
            } else {
                -Coeff::one()
            };
            (t, sg)
        })
        .collect()
}

pub fn to_basis(x: &QSymExpansion, basis: Basis) -> Result<QSymExpansion> {
    if x.dual {
        return Err(Error::InvalidInput(
            "basis change of dual expansions is not supported here".into(),
        ));
    }
    Ok(match (x.basis, basis) {
        (a, b) if a == b => x.clone(),
        (Basis::F, Basis::M) => QSymExpansion::new(Basis::M, x.terms.map_linear(f_to_m_single)),
        _ => QSymExpansion::new(Basis::F, x.terms.map_linear(m_to_f_single)),
    })
}

/// The descent map: `F_u -> F_{Des(u)}`, and `M_u -> M_{GDes(u)}` for closed `u`, else 0.
pub fn descent_map(x: &PermExpansion) -> Result<QSymExpansion> {
    x.require(x.basis, false)?;
    let terms = match x.basis {
        Basis::F => x.terms.map_linear(|u| LinComb::basis(u.descent_set())),
        Basis::M => x.terms.map_linear(|u| {
            if u.is_closed() {
                LinComb::basis(u.global_descent_set())
            } else {
                LinComb::zero()
            }
        }),
    };
    Ok(QSymExpansion::new(x.basis, terms))
}

/// The coalgebra splitting `M_S -> M_{zeta_S}`; fundamental inputs are converted first.
pub fn splitting_z(x: &QSymExpansion) -> Result<PermExpansion> {
    let m = to_basis(x, Basis::M)?;
    let terms = m
        .terms
        .try_map_linear(|s| zeta_of_subset(s.ambient(), s).map(LinComb::basis))?;
    Ok(PermExpansion::new(Basis::M, terms))
}

fn check_shuffle(zeta: &Permutation, p: usize) -> Result<()> {
    let n = zeta.degree();
    if p > n || zeta.descent_set().iter().any(|d| d != p) {
        return Err(Error::InvalidInput(format!(
            "{zeta} is not in Sh({p},{})",
            n.saturating_sub(p)
        )));
    }
    Ok(())
}

/// `Cons_p(zeta) = {i : zeta^{-1}(i) + 1 = zeta^{-1}(i+1), zeta^{-1}(i) != p}`.
pub fn cons_p(zeta: &Permutation, p: usize) -> Result<Subset> {
    check_shuffle(zeta, p)?;
    let n = zeta.degree();
    let zinv = zeta.inverse();
    let members: Vec<usize> = (1..n)
        .filter(|&i| zinv.value(i) + 1 == zinv.value(i + 1) && zinv.value(i) != p)
        .collect();
    Subset::new(n, &members)
}

/// `r_zeta(S, T) = Des(zeta^{-1}) + (Cons_p(zeta) & zeta(S + (p + T)))`.
pub fn r_zeta(s: &Subset, t: &Subset, zeta: &Permutation) -> Result<Subset> {
    let (p, q) = (s.ambient(), t.ambient());
    same_ambient(p + q, zeta.degree())?;
    let n = p + q;
    let cons = cons_p(zeta, p)?;
    let moved: Vec<usize> = s
        .iter()
        .chain(t.iter().map(|i| i + p))
        .map(|i| zeta.value(i))
        .collect();
    let image = Subset::new(n, &moved.into_iter().filter(|&i| i < n).collect::<Vec<_>>())?;
    zeta.inverse()
        .descent_set()
        .union(&cons.intersection(&image)?)
}

/// `r_zeta(S, T)` from its definition `Des((zeta_S x zeta_T) zeta^{-1})`.
pub fn r_zeta_direct(s: &Subset, t: &Subset, zeta: &Permutation) -> Result<Subset> {
    let (p, q) = (s.ambient(), t.ambient());
    same_ambient(p + q, zeta.degree())?;
    check_shuffle(zeta, p)?;
    let sum = zeta_of_subset(p, s)?.direct_sum(&zeta_of_subset(q, t)?);
    Ok(sum.compose_unchecked(&zeta.inverse()).descent_set())
}

/// A face `[lower, lower + free]` of the Boolean cube on `[n-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeFace {
    pub lower: Subset,
    pub free: Subset,
}

impl CubeFace {
    pub fn ambient(&self) -> usize {
        self.lower.ambient()
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn upper(&self) -> Subset {
        self.lower.union(&self.free).expect("same ambient")
    }

    pub fn contains(&self, r: &Subset) -> Result<bool> {
        Ok(self.lower.is_subset(r)? && r.is_subset(&self.upper())?)
    }

    pub fn vertices(&self) -> Vec<Subset> {
        self.free
            .subsets()
            .into_iter()
            .map(|f| f.union(&self.lower).expect("same ambient"))
            .collect()
    }
}

/// The face `[Des(zeta^{-1}), Des(zeta^{-1}) + Cons_p(zeta)]`.
pub fn face_of(zeta: &Permutation, p: usize) -> Result<CubeFace> {
    let free = cons_p(zeta, p)?;
    Ok(CubeFace {
        lower: zeta.inverse().descent_set(),
        free,
    })
}

/// Shuffles `zeta` in `Sh(p, q)` for which `(S, T)` is the largest pair with `r_zeta(S, T)`
/// inside `R`.
pub fn cube_product_witnesses(s: &Subset, t: &Subset, r: &Subset) -> Result<Vec<Permutation>> {
    let (p, q) = (s.ambient(), t.ambient());
    same_ambient(p + q, r.ambient())?;
    check_degree(p + q)?;
    let (all_s, all_t) = (Subset::all(p), Subset::all(q));
    let mut out = Vec::new();
    for zeta in shuffles(p, q) {
        let mut max: Option<(u32, u32)> = None;
        for a in &all_s {
            for b in &all_t {
                if r_zeta_direct(a, b, &zeta)?.is_subset(r)? {
                    let (x, y) = max.unwrap_or((0, 0));
                    max = Some((x | a.bits(), y | b.bits()));
                }
            }
        }
        if max == Some((s.bits(), t.bits())) {
            out.push(zeta);
        }
    }
    Ok(out)
}

/// Coefficient of `M_R` in `M_S . M_T` counted by cube faces.
pub fn cube_product_coefficient(s: &Subset, t: &Subset, r: &Subset) -> Result<usize> {
    Ok(cube_product_witnesses(s, t, r)?.len())
}

/// Distinct pairs `(zeta, p)` with `0 < p < n` give distinct faces.
pub fn face_uniqueness_check(n: usize) -> Result<bool> {
    check_degree(n)?;
    let mut seen = BTreeSet::new();
    for p in 1..n {
        for zeta in shuffles(p, n - p) {
            if !seen.insert(face_of(&zeta, p)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `sum_{v >= u, Des(v) = S} mu(u, v)`.
pub fn mobius_descent_fiber(u: &Permutation, s: &Subset) -> Result<i64> {
    same_ambient(u.degree(), s.ambient())?;
    let mut total = 0i64;
    for (v, m) in crate::weak_order::mobius_row(u)? {
        if v.descent_set() == *s {
            total += m as i64;
        }
    }
    Ok(total)
}

/// Same fiber sum evaluated pair by pair from the cached Möbius function.
pub fn mobius_descent_fiber_pairwise(u: &Permutation, s: &Subset) -> Result<i64> {
    same_ambient(u.degree(), s.ambient())?;
    let mut total = 0i64;
    for v in crate::perm::all_perms(u.degree())? {
        if v.descent_set() == *s {
            total += mobius(u, &v)? as i64;
        }
    }
    Ok(total)
}

/// Truncation to `x_1..x_m`; monomials are exponent vectors of length `m`.
pub fn expand_polynomial(x: &QSymExpansion, m: usize) -> Result<BTreeMap<Vec<u32>, Coeff>> {
    check_series_request(x.top_degree(), m)?;
    let f = to_basis(x, Basis::F)?;
    let mut out: BTreeMap<Vec<u32>, Coeff> = BTreeMap::new();
    for (s, c) in &f.terms {
        for chain in index_chains(s, m) {
            let mut exps = vec![0u32; m];
            for i in chain {
                exps[i - 1] += 1;
            }
            *out.entry(exps).or_insert_with(Coeff::zero) += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Direct monomial expansion of `M_alpha`: `sum_{i_1 < ... < i_k} x_{i_1}^{a_1} ... x_{i_k}^{a_k}`.
pub fn expand_monomial(a: &Composition, m: usize) -> Result<BTreeMap<Vec<u32>, Coeff>> {
    check_series_request(a.total(), m)?;
    let k = a.len();
    let mut out = BTreeMap::new();
    let mut idx: Vec<usize> = Vec::new();
    fn rec(
        a: &[usize],
        m: usize,
        k: usize,
        idx: &mut Vec<usize>,
        out: &mut BTreeMap<Vec<u32>, Coeff>,
    ) {
        if idx.len() == k {
            let mut exps = vec![0u32; m];
            for (j, &i) in idx.iter().enumerate() {
                exps[i] += a[j] as u32;
            }
            *out.entry(exps).or_insert_with(Coeff::zero) += Coeff::one();
            return;
        }
        let start = idx.last().map_or(0, |&i| i + 1);
        for i in start..m {
            idx.push(i);
            rec(a, m, k, idx, out);
            idx.pop();
        }
    }
    rec(a.parts(), m, k, &mut idx, &mut out);
    Ok(out)
}

/// Convert a permutation expansion to the quasi-symmetric side and back along `Z`.
pub fn descent_then_split(x: &PermExpansion) -> Result<PermExpansion> {
    let mx = ssym::to_basis(x, Basis::M)?;
    splitting_z(&descent_map(&mx)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn sum(terms: &[(&[usize], i64)]) -> LinComb<Subset> {
        terms
            .iter()
            .map(|&(parts, c)| (comp(parts).to_subset(), Coeff::from(c)))
            .collect()
    }

    #[test]
    fn quasi_shuffle_examples() {
        let x = m_quasi_shuffle(&comp(&[2]), &comp(&[1, 1])).unwrap();
        let expected = sum(&[
            (&[1, 1, 2], 1),
            (&[1, 2, 1], 1),
            (&[2, 1, 1], 1),
            (&[1, 3], 1),
            (&[3, 1], 1),
        ]);
        assert_eq!(x.terms, expected);
        let x = m_quasi_shuffle(&comp(&[1]), &comp(&[1, 2])).unwrap();
        let expected = sum(&[(&[1, 1, 2], 2), (&[1, 2, 1], 1), (&[2, 2], 1), (&[1, 3], 1)]);
        assert_eq!(x.terms, expected);
    }

    #[test]
    fn coproduct_example() {
        let t = m_coproduct(&comp(&[2, 1])).unwrap();
        assert_eq!(t.terms.len(), 3);
        assert_eq!(
            t.terms
                .coeff(&(comp(&[2]).to_subset(), comp(&[1]).to_subset())),
            Coeff::one()
        );
        assert_eq!(m_coproduct(&comp(&[1, 1, 1])).unwrap().terms.len(), 4);
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(
            antipode_m(&comp(&[2, 1])).terms,
            sum(&[(&[1, 2], 1), (&[3], 1)])
        );
        assert_eq!(antipode_m(&comp(&[4])).terms, sum(&[(&[4], -1)]));
        let s = antipode_f(&Subset::empty(3));
        assert_eq!(s.terms, LinComb::from_term(Subset::full(3), -1));
    }

    #[test]
    fn cons_and_faces() {
        let z: Permutation = "1234".parse().unwrap();
        assert_eq!(cons_p(&z, 1).unwrap(), Subset::new(4, &[2, 3]).unwrap());
        let s = Subset::empty(1);
        let t = Subset::new(3, &[1]).unwrap();
        assert_eq!(r_zeta(&s, &t, &z).unwrap(), Subset::new(4, &[2]).unwrap());
        let z2: Permutation = "2134".parse().unwrap();
        assert_eq!(r_zeta(&s, &t, &z2).unwrap(), Subset::new(4, &[1]).unwrap());
        assert!(cons_p(&"2143".parse().unwrap(), 2).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let h2 = expand_polynomial(&QSymExpansion::basis_element(Basis::F, Subset::empty(2)), 2)
            .unwrap();
        assert_eq!(h2.len(), 3);
        let m2 = expand_polynomial(&QSymExpansion::basis_element(Basis::M, Subset::empty(2)), 2)
            .unwrap();
        let keys: Vec<Vec<u32>> = m2.keys().cloned().collect();
        assert_eq!(keys, vec![vec![0, 2], vec![2, 0]]);
        assert!(
            expand_polynomial(&QSymExpansion::basis_element(Basis::M, Subset::empty(2)), 5)
                .is_err()
        );
    }
}
