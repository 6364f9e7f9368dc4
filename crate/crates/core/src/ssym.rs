//! The Malvenuto-Reutenauer Hopf algebra on the fundamental and monomial bases.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::config::check_degree;
use crate::error::{same_ambient, same_degree, Error, Result};
use crate::hopf::{self, HopfBasis};
use crate::linear::{Coeff, LinComb};
use crate::perm::{
    coset_reps_for_sizes, coset_reps_unchecked, rho_unchecked, Permutation, SymmetricGroup,
};
use crate::subset::Subset;
use crate::weak_order::{covers, mask_leq, mobius_row};

/// Which basis an expansion is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    F,
    M,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::F => "F",
            Basis::M => "M",
        })
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(Basis::F),
            "M" | "m" => Ok(Basis::M),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// An integer combination of permutations in one basis (possibly of the dual algebra).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermExpansion {
    pub basis: Basis,
    pub dual: bool,
    pub terms: LinComb<Permutation>,
}

impl PermExpansion {
    pub fn new(basis: Basis, terms: LinComb<Permutation>) -> Self {
        PermExpansion {
            basis,
            dual: false,
            terms,
        }
    }

    pub fn new_dual(basis: Basis, terms: LinComb<Permutation>) -> Self {
        PermExpansion {
            basis,
            dual: true,
            terms,
        }
    }

    pub fn basis_element(basis: Basis, u: Permutation) -> Self {
        Self::new(basis, LinComb::basis(u))
    }

    pub fn zero(basis: Basis) -> Self {
        Self::new(basis, LinComb::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn top_degree(&self) -> usize {
        self.terms
            .keys()
            .map(Permutation::degree)
            .max()
            .unwrap_or(0)
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

    pub(crate) fn check_degrees(&self) -> Result<()> {
        check_degree(self.top_degree())
    }
}

/// An integer combination of tuples of permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorExpansion {
    pub basis: Basis,
    pub dual: bool,
    pub terms: LinComb<Vec<Permutation>>,
}

impl TensorExpansion {
    pub fn new(basis: Basis, terms: LinComb<Vec<Permutation>>) -> Self {
        TensorExpansion {
            basis,
            dual: false,
            terms,
        }
    }

    /// The common tuple length, if all tuples share one.
    pub fn arity(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Vec::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub(crate) fn from_pairs(
        basis: Basis,
        dual: bool,
        pairs: LinComb<(Permutation, Permutation)>,
    ) -> Self {
        let terms = pairs
            .into_iter()
            .map(|((a, b), c)| (vec![a, b], c))
            .collect();
        TensorExpansion { basis, dual, terms }
    }
}

/// Marker for the fundamental basis.
pub struct SsymF;
/// Marker for the monomial basis.
pub struct SsymM;

impl HopfBasis for SsymF {
    type Index = Permutation;

    fn degree(u: &Permutation) -> usize {
        u.degree()
    }

    fn unit() -> Permutation {
        Permutation::empty()
    }

    fn basis(n: usize) -> Result<Vec<Permutation>> {
        crate::perm::all_perms(n)
    }

    fn product(u: &Permutation, v: &Permutation) -> Result<LinComb<Permutation>> {
        check_degree(u.degree() + v.degree())?;
        Ok(f_product_raw(u, v))
    }

    fn coproduct(u: &Permutation) -> Result<LinComb<(Permutation, Permutation)>> {
        Ok(f_coproduct_raw(u))
    }
}

impl HopfBasis for SsymM {
    type Index = Permutation;

    fn degree(u: &Permutation) -> usize {
        u.degree()
    }

    fn unit() -> Permutation {
        Permutation::empty()
    }

    fn basis(n: usize) -> Result<Vec<Permutation>> {
        crate::perm::all_perms(n)
    }

    fn product(u: &Permutation, v: &Permutation) -> Result<LinComb<Permutation>> {
        m_higher_product_raw(&[u.clone(), v.clone()])
    }

    fn coproduct(u: &Permutation) -> Result<LinComb<(Permutation, Permutation)>> {
        Ok(m_coproduct_raw(u))
    }
}

pub(crate) fn f_product_raw(u: &Permutation, v: &Permutation) -> LinComb<Permutation> {
    let blocks = [u.clone(), v.clone()];
    coset_reps_for_sizes(&[u.degree(), v.degree()])
        .iter()
        .map(|z| (rho_unchecked(z, &blocks), Coeff::one()))
        .collect()
}

/// `F_u . F_v`: sum over shuffles `zeta` of `F_{(u x v) zeta^{-1}}`.
pub fn f_product(u: &Permutation, v: &Permutation) -> Result<PermExpansion> {
    Ok(PermExpansion::new(Basis::F, SsymF::product(u, v)?))
}

pub(crate) fn f_coproduct_raw(u: &Permutation) -> LinComb<(Permutation, Permutation)> {
    let n = u.degree();
    (0..=n)
        .map(|p| {
            (
                (u.standardized_segment(0, p), u.standardized_segment(p, n)),
                Coeff::one(),
            )
        })
        .collect()
}

/// `Delta(F_u)`: every split of the word, both halves standardized.
pub fn f_coproduct(u: &Permutation) -> Result<TensorExpansion> {
    Ok(TensorExpansion::from_pairs(
        Basis::F,
        false,
        f_coproduct_raw(u),
    ))
}

pub(crate) fn m_coproduct_raw(u: &Permutation) -> LinComb<(Permutation, Permutation)> {
    let n = u.degree();
    u.augmented_global_descents()
        .into_iter()
        .map(|p| {
            (
                (u.standardized_segment(0, p), u.standardized_segment(p, n)),
                Coeff::one(),
            )
        })
        .collect()
}

/// `Delta(M_u)`: splits at global descents (and at both ends).
pub fn m_coproduct(u: &Permutation) -> Result<TensorExpansion> {
    Ok(TensorExpansion::from_pairs(
        Basis::M,
        false,
        m_coproduct_raw(u),
    ))
}

/// `M_u = sum_{v >= u} mu(u, v) F_v`.
pub fn m_to_f_single(u: &Permutation) -> Result<LinComb<Permutation>> {
    Ok(mobius_row(u)?
        .into_iter()
        .map(|(v, m)| (v, Coeff::from(m)))
        .collect())
}

/// `F_u = sum_{v >= u} M_v`.
pub fn f_to_m_single(u: &Permutation) -> Result<LinComb<Permutation>> {
    let g = SymmetricGroup::get(u.degree())?;
    let a = u.inversion_mask();
    Ok(g.perms()
        .iter()
        .zip(g.masks())
        .filter(|(_, &m)| mask_leq(a, m))
        .map(|(v, _)| (v.clone(), Coeff::one()))
        .collect())
}

pub fn m_to_f(x: &PermExpansion) -> Result<PermExpansion> {
    x.require(Basis::M, false)?;
    Ok(PermExpansion::new(
        Basis::F,
        x.terms.try_map_linear(m_to_f_single)?,
    ))
}

pub fn f_to_m(x: &PermExpansion) -> Result<PermExpansion> {
    x.require(Basis::F, false)?;
    Ok(PermExpansion::new(
        Basis::M,
        x.terms.try_map_linear(f_to_m_single)?,
    ))
}

/// Rewrite an expansion in the requested basis.
pub fn to_basis(x: &PermExpansion, basis: Basis) -> Result<PermExpansion> {
    if x.dual {
        return crate::structure::dual_to_basis(x, basis);
    }
    match (x.basis, basis) {
        (a, b) if a == b => Ok(x.clone()),
        (Basis::M, Basis::F) => m_to_f(x),
        _ => f_to_m(x),
    }
}

fn block_sizes(blocks: &[Permutation]) -> Vec<usize> {
    blocks.iter().map(Permutation::degree).collect()
}

/// For one shuffle `zeta`: the mask of `rho_zeta(blocks)` and the masks of the images of
/// all single-block covers.
fn facet_masks(
    zeta: &Permutation,
    blocks: &[Permutation],
    block_covers: &[Vec<Permutation>],
) -> (u128, Vec<u128>) {
    let base = rho_unchecked(zeta, blocks).inversion_mask();
    let mut cover_masks = Vec::new();
    let mut moved = blocks.to_vec();
    for (i, cs) in block_covers.iter().enumerate() {
        for c in cs {
            moved[i] = c.clone();
            cover_masks.push(rho_unchecked(zeta, &moved).inversion_mask());
        }
        moved[i] = blocks[i].clone();
    }
    (base, cover_masks)
}

/// Shuffles `zeta` with `rho_zeta(blocks) <= w` and no strictly larger block tuple
/// mapping below `w`. The feasible tuples form a down-set of the product order, so it is
/// enough to test single-block covers.
pub fn alpha_blocks_witnesses(blocks: &[Permutation], w: &Permutation) -> Result<Vec<Permutation>> {
    let sizes = block_sizes(blocks);
    same_degree(sizes.iter().sum(), w.degree())?;
    check_degree(w.degree())?;
    let block_covers: Vec<Vec<Permutation>> = blocks.iter().map(covers).collect();
    let wm = w.inversion_mask();
    Ok(coset_reps_for_sizes(&sizes)
        .into_iter()
        .filter(|z| {
            let (base, cover_masks) = facet_masks(z, blocks, &block_covers);
            mask_leq(base, wm) && !cover_masks.iter().any(|&c| mask_leq(c, wm))
        })
        .collect())
}

pub fn alpha_blocks(blocks: &[Permutation], w: &Permutation) -> Result<usize> {
    Ok(alpha_blocks_witnesses(blocks, w)?.len())
}

/// The witness set `A^w_{u,v}`.
pub fn alpha_witnesses(
    u: &Permutation,
    v: &Permutation,
    w: &Permutation,
) -> Result<Vec<Permutation>> {
    alpha_blocks_witnesses(&[u.clone(), v.clone()], w)
}

/// `alpha^w_{u,v}`, the coefficient of `M_w` in `M_u . M_v`.
pub fn alpha(u: &Permutation, v: &Permutation, w: &Permutation) -> Result<usize> {
    Ok(alpha_witnesses(u, v, w)?.len())
}

/// `M_{b_1} ... M_{b_k} = sum_w alpha^w_{b_1..b_k} M_w`.
pub(crate) fn m_higher_product_raw(blocks: &[Permutation]) -> Result<LinComb<Permutation>> {
    let sizes = block_sizes(blocks);
    let n: usize = sizes.iter().sum();
    let g = SymmetricGroup::get(n)?;
    let block_covers: Vec<Vec<Permutation>> = blocks.iter().map(covers).collect();
    let facets: Vec<(u128, Vec<u128>)> = coset_reps_for_sizes(&sizes)
        .iter()
        .map(|z| facet_masks(z, blocks, &block_covers))
        .collect();
    let counts: Vec<u32> = if g.len() >= 5040 {
        g.masks()
            .par_iter()
            .map(|&m| count_facets(&facets, m))
            .collect()
    } else {
        g.masks()
            .iter()
            .map(|&m| count_facets(&facets, m))
            .collect()
    };
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(r, c)| (g.perms()[r].clone(), Coeff::from(c)))
        .collect())
}

fn count_facets(facets: &[(u128, Vec<u128>)], w: u128) -> u32 {
    facets
        .iter()
        .filter(|(base, cs)| mask_leq(*base, w) && !cs.iter().any(|&c| mask_leq(c, w)))
        .count() as u32
}

/// `M_u . M_v = sum_w alpha^w_{u,v} M_w`.
pub fn m_product(u: &Permutation, v: &Permutation) -> Result<PermExpansion> {
    Ok(PermExpansion::new(Basis::M, SsymM::product(u, v)?))
}

/// The iterated product of basis elements indexed by `blocks`.
pub fn higher_product(blocks: &[Permutation], basis: Basis) -> Result<PermExpansion> {
    let sizes = block_sizes(blocks);
    check_degree(sizes.iter().sum())?;
    let terms = match basis {
        Basis::F => coset_reps_for_sizes(&sizes)
            .iter()
            .map(|z| (rho_unchecked(z, blocks), Coeff::one()))
            .collect(),
        Basis::M => m_higher_product_raw(blocks)?,
    };
    Ok(PermExpansion::new(basis, terms))
}

/// Product of two expansions in the same basis.
pub fn product(x: &PermExpansion, y: &PermExpansion) -> Result<PermExpansion> {
    if x.dual || y.dual {
        return crate::structure::dual_product(x, y);
    }
    y.require(x.basis, false)?;
    let terms = match x.basis {
        Basis::F => hopf::mul::<SsymF>(&x.terms, &y.terms)?,
        Basis::M => hopf::mul::<SsymM>(&x.terms, &y.terms)?,
    };
    Ok(PermExpansion::new(x.basis, terms))
}

pub fn coproduct(x: &PermExpansion) -> Result<TensorExpansion> {
    if x.dual {
        return crate::structure::dual_coproduct(x);
    }
    x.check_degrees()?;
    let pairs = match x.basis {
        Basis::F => hopf::comul::<SsymF>(&x.terms)?,
        Basis::M => hopf::comul::<SsymM>(&x.terms)?,
    };
    Ok(TensorExpansion::from_pairs(x.basis, false, pairs))
}

/// Weakly increasing sequences `0 <= p_1 <= ... <= p_k <= n` drawn from `points`.
fn chains(points: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for c in &out {
            let low = c.last().copied().unwrap_or(0);
            for &p in points.iter().filter(|&&p| p >= low) {
                let mut d = c.clone();
                d.push(p);
                next.push(d);
            }
        }
        out = next;
    }
    out
}

/// `Delta^{(k)}` by the closed forms: chains of cut points (through `AGDes` for `M`).
pub fn higher_coproduct(x: &PermExpansion, k: usize) -> Result<TensorExpansion> {
    if x.dual {
        return Err(Error::InvalidInput(
            "higher coproduct expects a primal expansion".into(),
        ));
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let mut terms = LinComb::zero();
    for (v, c) in &x.terms {
        let n = v.degree();
        let points: Vec<usize> = match x.basis {
            Basis::F => (0..=n).collect(),
            Basis::M => v.augmented_global_descents(),
        };
        for chain in chains(&points, k) {
            let mut cuts = vec![0];
            cuts.extend(chain);
            cuts.push(n);
            let tuple: Vec<Permutation> = cuts
                .windows(2)
                .map(|w| v.standardized_segment(w[0], w[1]))
                .collect();
            terms.add_term(tuple, c.clone());
        }
    }
    Ok(TensorExpansion::new(x.basis, terms))
}

/// `pi^{*k}` computed generically from iterated coproducts and products.
pub fn pi_power(x: &PermExpansion, k: usize) -> Result<PermExpansion> {
    x.require(x.basis, false)?;
    x.check_degrees()?;
    let terms = match x.basis {
        Basis::F => hopf::pi_power::<SsymF>(&x.terms, k)?,
        Basis::M => hopf::pi_power::<SsymM>(&x.terms, k)?,
    };
    Ok(PermExpansion::new(x.basis, terms))
}

/// `pi^{*k}` by the closed forms over subsets of size `k - 1`.
pub fn pi_power_closed(x: &PermExpansion, k: usize) -> Result<PermExpansion> {
    if x.dual {
        return Err(Error::InvalidInput("expected a primal expansion".into()));
    }
    x.check_degrees()?;
    let mut terms = LinComb::zero();
    for (v, c) in &x.terms {
        let n = v.degree();
        if k == 0 {
            if n == 0 {
                terms.add_term(v.clone(), c.clone());
            }
            continue;
        }
        if n == 0 {
            continue;
        }
        let piece = match x.basis {
            Basis::F => {
                let g = SymmetricGroup::get(n)?;
                let mut piece = LinComb::zero();
                for s in Subset::all(n).into_iter().filter(|s| s.len() == k - 1) {
                    let vs = v.projection(&s)?;
                    for w in g.perms() {
                        if descents_within(&w.inverse().compose_unchecked(&vs), &s) {
                            piece.add_one(w.clone());
                        }
                    }
                }
                piece
            }
            Basis::M => {
                let mut piece = LinComb::zero();
                for s in v
                    .global_descent_set()
                    .subsets()
                    .into_iter()
                    .filter(|s| s.len() == k - 1)
                {
                    piece += &m_higher_product_raw(&v.segments(&s))?;
                }
                piece
            }
        };
        terms.add_scaled(&piece, c);
    }
    Ok(PermExpansion::new(x.basis, terms))
}

fn descents_within(u: &Permutation, s: &Subset) -> bool {
    u.descent_set().bits() & !s.bits() == 0
}

fn sign(k: usize) -> Coeff {
    if k.is_multiple_of(2) {
        Coeff::one()
    } else {
        -Coeff::one()
    }
}

/// `lambda(v, w)`: odd minus even subsets `S` with `Des(w^{-1} v_S)` inside `S`.
pub fn lambda(v: &Permutation, w: &Permutation) -> Result<i64> {
    same_degree(v.degree(), w.degree())?;
    let winv = w.inverse();
    let mut total = 0i64;
    for s in Subset::all(v.degree()) {
        if descents_within(&winv.compose_unchecked(&v.projection(&s)?), &s) {
            total += if s.len() % 2 == 1 { 1 } else { -1 };
        }
    }
    Ok(total)
}

/// `S(F_v) = sum_w lambda(v, w) F_w`.
pub fn antipode_f(v: &Permutation) -> Result<PermExpansion> {
    let n = v.degree();
    check_degree(n)?;
    if n == 0 {
        return Ok(PermExpansion::basis_element(Basis::F, v.clone()));
    }
    // Des(w^{-1} v_S) inside S iff w = v_S zeta^{-1} for some zeta in Sh(S).
    let mut terms = LinComb::zero();
    for s in Subset::all(n) {
        let vs = v.projection(&s)?;
        let sg = -sign(s.len());
        for z in coset_reps_unchecked(&s) {
            terms.add_term(vs.compose_unchecked(&z.inverse()), sg.clone());
        }
    }
    Ok(PermExpansion::new(Basis::F, terms))
}

/// The set `A_S(v, w)` (requires `S` inside `GDes(v)`).
pub fn a_set(v: &Permutation, s: &Subset, w: &Permutation) -> Result<Vec<Permutation>> {
    check_gdes_subset(v, s)?;
    same_degree(v.degree(), w.degree())?;
    alpha_blocks_witnesses(&v.segments(s), w)
}

pub fn alpha_s(v: &Permutation, s: &Subset, w: &Permutation) -> Result<usize> {
    Ok(a_set(v, s, w)?.len())
}

fn check_gdes_subset(v: &Permutation, s: &Subset) -> Result<()> {
    same_ambient(v.degree(), s.ambient())?;
    if !s.is_subset(&v.global_descent_set())? {
        return Err(Error::InvalidInput(format!(
            "{s} is not contained in GDes({v})"
        )));
    }
    Ok(())
}

/// For one `zeta`: masks for conditions (i), (ii) and (iii) of the `C_S` sets.
struct CFacet {
    zeta: Permutation,
    base: u128,
    covers: Vec<u128>,
    coarser: Vec<u128>,
}

fn c_facets(v: &Permutation, s: &Subset) -> Result<Vec<CFacet>> {
    let blocks = v.segments(s);
    let block_covers: Vec<Vec<Permutation>> = blocks.iter().map(covers).collect();
    let mut out = Vec::new();
    for z in coset_reps_unchecked(s) {
        let (base, cover_masks) = facet_masks(&z, &blocks, &block_covers);
        let zinv = z.inverse();
        let des = z.descent_set();
        let mut coarser = Vec::new();
        for r in s.subsets() {
            if r != *s && des.is_subset(&r)? {
                coarser.push(v.projection(&r)?.compose_unchecked(&zinv).inversion_mask());
            }
        }
        out.push(CFacet {
            zeta: z,
            base,
            covers: cover_masks,
            coarser,
        });
    }
    Ok(out)
}

impl CFacet {
    fn admits(&self, w: u128) -> bool {
        mask_leq(self.base, w)
            && !self.covers.iter().any(|&c| mask_leq(c, w))
            && !self.coarser.iter().any(|&c| mask_leq(c, w))
    }
}

/// The set `C_S(v, w)` (requires `S` inside `GDes(v)`).
pub fn c_set(v: &Permutation, s: &Subset, w: &Permutation) -> Result<Vec<Permutation>> {
    check_gdes_subset(v, s)?;
    same_degree(v.degree(), w.degree())?;
    check_degree(v.degree())?;
    let wm = w.inversion_mask();
    Ok(c_facets(v, s)?
        .into_iter()
        .filter(|f| f.admits(wm))
        .map(|f| f.zeta)
        .collect())
}

/// `kappa(v, w) = #C_{GDes(v)}(v, w)`.
pub fn kappa(v: &Permutation, w: &Permutation) -> Result<usize> {
    Ok(c_set(v, &v.global_descent_set(), w)?.len())
}

/// `S(M_v) = (-1)^{#GDes(v)+1} sum_w kappa(v, w) M_w`.
pub fn antipode_m(v: &Permutation) -> Result<PermExpansion> {
    let n = v.degree();
    check_degree(n)?;
    if n == 0 {
        return Ok(PermExpansion::basis_element(Basis::M, v.clone()));
    }
    let s = v.global_descent_set();
    let g = SymmetricGroup::get(n)?;
    let facets = c_facets(v, &s)?;
    let sg = -sign(s.len());
    let terms = g
        .perms()
        .iter()
        .zip(g.masks())
        .filter_map(|(w, &m)| {
            let k = facets.iter().filter(|f| f.admits(m)).count();
            (k > 0).then(|| (w.clone(), &sg * Coeff::from(k)))
        })
        .collect();
    Ok(PermExpansion::new(Basis::M, terms))
}

/// The antipode by the closed form of the expansion's basis.
pub fn antipode(x: &PermExpansion) -> Result<PermExpansion> {
    if x.dual {
        return crate::structure::dual_antipode(x);
    }
    let single = match x.basis {
        Basis::F => antipode_f,
        Basis::M => antipode_m,
    };
    let terms = x.terms.try_map_linear(|v| single(v).map(|e| e.terms))?;
    Ok(PermExpansion::new(x.basis, terms))
}

/// The antipode as the alternating sum of convolution powers of `pi`.
pub fn takeuchi_antipode(x: &PermExpansion) -> Result<PermExpansion> {
    if x.dual {
        return Err(Error::InvalidInput("expected a primal expansion".into()));
    }
    x.check_degrees()?;
    let terms = match x.basis {
        Basis::F => hopf::takeuchi_antipode::<SsymF>(&x.terms)?,
        Basis::M => hopf::takeuchi_antipode::<SsymM>(&x.terms)?,
    };
    Ok(PermExpansion::new(x.basis, terms))
}

/// Largest number of variables accepted by the power-series truncations.
pub const MAX_SERIES_VARS: usize = 4;
/// Largest degree accepted by the power-series truncations.
pub const MAX_SERIES_DEGREE: usize = 8;

pub(crate) fn check_series_request(degree: usize, m: usize) -> Result<()> {
    if m == 0 || m > MAX_SERIES_VARS {
        return Err(Error::InvalidInput(format!(
            "number of variables must be in 1..={MAX_SERIES_VARS}"
        )));
    }
    if degree > MAX_SERIES_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_SERIES_DEGREE,
        });
    }
    Ok(())
}

/// Weakly increasing index sequences in `[1, m]` of length `n`, strict at the members of `s`.
pub(crate) fn index_chains(s: &Subset, m: usize) -> Vec<Vec<usize>> {
    let n = s.ambient();
    let mut out = vec![Vec::new()];
    for pos in 0..n {
        let mut next = Vec::new();
        for c in &out {
            let low = match c.last() {
                None => 1,
                Some(&last) if s.contains(pos) => last + 1,
                Some(&last) => last,
            };
            for i in low..=m {
                let mut d = c.clone();
                d.push(i);
                next.push(d);
            }
        }
        out = next;
    }
    out
}

/// Truncation of the noncommutative series realization to `x_1..x_m`; words are sequences
/// of variable indices.
pub fn expand_word_series(x: &PermExpansion, m: usize) -> Result<BTreeMap<Vec<u8>, Coeff>> {
    check_series_request(x.top_degree(), m)?;
    let f = to_basis(x, Basis::F)?;
    let mut out: BTreeMap<Vec<u8>, Coeff> = BTreeMap::new();
    for (u, c) in &f.terms {
        let uinv = u.inverse();
        for chain in index_chains(&u.descent_set(), m) {
            let word: Vec<u8> = (1..=u.degree())
                .map(|j| chain[uinv.value(j) - 1] as u8)
                .collect();
            *out.entry(word).or_insert_with(Coeff::zero) += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn sum(terms: &[(&str, i64)]) -> LinComb<Permutation> {
        terms.iter().map(|&(w, c)| (p(w), Coeff::from(c))).collect()
    }

    #[test]
    fn small_products() {
        assert_eq!(
            f_product(&p("1"), &p("1")).unwrap().terms,
            sum(&[("12", 1), ("21", 1)])
        );
        assert_eq!(
            f_product(&p("231"), &p("")).unwrap().terms,
            sum(&[("231", 1)])
        );
    }

    #[test]
    fn small_coproducts() {
        let t = f_coproduct(&p("21")).unwrap();
        assert_eq!(t.terms.len(), 3);
        let t = m_coproduct(&p("3412")).unwrap();
        let expected: LinComb<Vec<Permutation>> = [
            (vec![p(""), p("3412")], Coeff::one()),
            (vec![p("12"), p("12")], Coeff::one()),
            (vec![p("3412"), p("")], Coeff::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(t.terms, expected);
    }

    #[test]
    fn alpha_identity_facet() {
        let (u, v) = (p("21"), p("132"));
        assert!(alpha(&u, &v, &u.direct_sum(&v)).unwrap() >= 1);
        assert_eq!(alpha(&p("12"), &p("12"), &p("3412")).unwrap(), 2);
    }

    #[test]
    fn word_series_small() {
        let x = PermExpansion::basis_element(Basis::F, p("21"));
        let series = expand_word_series(&x, 2).unwrap();
        assert_eq!(series.len(), 1);
        assert_eq!(series.get(&vec![2, 1]), Some(&Coeff::one()));
    }
}
