//! The dual algebra and the self-duality map, descent-pair statistics, cofreeness, the
//! global-descent generating series, the Hopf kernel of the descent map and the
//! crossed-product cocycle.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::config::check_degree;
use crate::error::{same_ambient, same_degree, Error, Result};
use crate::hopf::{self, HopfBasis};
use crate::linear::{determinant, Coeff, LinComb};
use crate::perm::{
    all_perms, shuffles, subset_of_sizes, zeta_of_subset, zeta_pq, Permutation, SymmetricGroup,
};
use crate::qsym::{self, QSymExpansion, QsymM};
use crate::ssym::{self, Basis, PermExpansion, SsymM, TensorExpansion};
use crate::subset::Subset;
use crate::weak_order::{downset, mask_leq, mobius};

// ---------------------------------------------------------------------------
// The dual Hopf algebra.

/// Marker for the basis dual to the fundamental basis.
pub struct SsymDualF;
/// Marker for the basis dual to the monomial basis.
pub struct SsymDualM;

impl HopfBasis for SsymDualF {
    type Index = Permutation;

    fn degree(u: &Permutation) -> usize {
        u.degree()
    }

    fn unit() -> Permutation {
        Permutation::empty()
    }

    fn basis(n: usize) -> Result<Vec<Permutation>> {
        all_perms(n)
    }

    /// `F*_u . F*_v = sum_{zeta in Sh(p,q)} F*_{zeta (u x v)}`.
    fn product(u: &Permutation, v: &Permutation) -> Result<LinComb<Permutation>> {
        check_degree(u.degree() + v.degree())?;
        let sum = u.direct_sum(v);
        Ok(shuffles(u.degree(), v.degree())
            .iter()
            .map(|z| (z.compose_unchecked(&sum), Coeff::one()))
            .collect())
    }

    /// Split `w^{-1}` into a prefix and suffix, standardize and invert.
    fn coproduct(w: &Permutation) -> Result<LinComb<(Permutation, Permutation)>> {
        let n = w.degree();
        let winv = w.inverse();
        Ok((0..=n)
            .map(|p| {
                let a = winv.standardized_segment(0, p).inverse();
                let b = winv.standardized_segment(p, n).inverse();
                ((a, b), Coeff::one())
            })
            .collect())
    }
}

impl HopfBasis for SsymDualM {
    type Index = Permutation;

    fn degree(u: &Permutation) -> usize {
        u.degree()
    }

    fn unit() -> Permutation {
        Permutation::empty()
    }

    fn basis(n: usize) -> Result<Vec<Permutation>> {
        all_perms(n)
    }

    /// `M*_u . M*_v = M*_{zeta_{p,q} (u x v)}`.
    fn product(u: &Permutation, v: &Permutation) -> Result<LinComb<Permutation>> {
        check_degree(u.degree() + v.degree())?;
        let w = zeta_pq(u.degree(), v.degree()).compose_unchecked(&u.direct_sum(v));
        Ok(LinComb::basis(w))
    }

    /// `M*_w -> sum alpha^w_{u,v} M*_u (x) M*_v`.
    fn coproduct(w: &Permutation) -> Result<LinComb<(Permutation, Permutation)>> {
        let n = w.degree();
        check_degree(n)?;
        let mut out = LinComb::zero();
        out.add_one((Permutation::empty(), w.clone()));
        if n == 0 {
            return Ok(out);
        }
        out.add_one((w.clone(), Permutation::empty()));
        for p in 1..n {
            for u in all_perms(p)? {
                for v in all_perms(n - p)? {
                    let a = ssym::alpha(&u, &v, w)?;
                    if a > 0 {
                        out.add_term((u.clone(), v), Coeff::from(a));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn require_dual(x: &PermExpansion) -> Result<()> {
    if !x.dual {
        return Err(Error::InvalidInput(
            "expected an expansion in a dual basis".into(),
        ));
    }
    Ok(())
}

/// `M*_v = sum_{u <= v} F*_u`.
pub fn dual_m_to_f_single(v: &Permutation) -> Result<LinComb<Permutation>> {
    Ok(downset(v)?
        .elements()?
        .into_iter()
        .map(|u| (u, Coeff::one()))
        .collect())
}

/// `F*_u = sum_{x <= u} mu(x, u) M*_x`.
pub fn dual_f_to_m_single(u: &Permutation) -> Result<LinComb<Permutation>> {
    let mut out = LinComb::zero();
    for x in downset(u)?.elements()? {
        out.add_term(x.clone(), Coeff::from(mobius(&x, u)?));
    }
    Ok(out)
}

/// Change of basis inside the dual algebra.
pub fn dual_to_basis(x: &PermExpansion, basis: Basis) -> Result<PermExpansion> {
    require_dual(x)?;
    x.check_degrees()?;
    let terms = match (x.basis, basis) {
        (a, b) if a == b => return Ok(x.clone()),
        (Basis::M, Basis::F) => x.terms.try_map_linear(dual_m_to_f_single)?,
        _ => x.terms.try_map_linear(dual_f_to_m_single)?,
    };
    Ok(PermExpansion::new_dual(basis, terms))
}

pub fn dual_product(x: &PermExpansion, y: &PermExpansion) -> Result<PermExpansion> {
    require_dual(x)?;
    y.require(x.basis, true)?;
    let terms = match x.basis {
        Basis::F => hopf::mul::<SsymDualF>(&x.terms, &y.terms)?,
        Basis::M => hopf::mul::<SsymDualM>(&x.terms, &y.terms)?,
    };
    Ok(PermExpansion::new_dual(x.basis, terms))
}

pub fn dual_coproduct(x: &PermExpansion) -> Result<TensorExpansion> {
    require_dual(x)?;
    x.check_degrees()?;
    let pairs = match x.basis {
        Basis::F => hopf::comul::<SsymDualF>(&x.terms)?,
        Basis::M => hopf::comul::<SsymDualM>(&x.terms)?,
    };
    Ok(TensorExpansion::from_pairs(x.basis, true, pairs))
}

/// `M*_u . M*_v`.
pub fn dual_product_m(u: &Permutation, v: &Permutation) -> Result<PermExpansion> {
    Ok(PermExpansion::new_dual(Basis::M, SsymDualM::product(u, v)?))
}

/// Coproduct of `F*_w`.
pub fn dual_coproduct_f(w: &Permutation) -> Result<TensorExpansion> {
    Ok(TensorExpansion::from_pairs(
        Basis::F,
        true,
        SsymDualF::coproduct(w)?,
    ))
}

/// Rows of the antipode matrix on `S_n`: `rows[r]` is the antipode of the basis element of rank `r`.
fn antipode_rows(n: usize, basis: Basis) -> Result<Vec<LinComb<Permutation>>> {
    let g = SymmetricGroup::get(n)?;
    g.perms()
        .par_iter()
        .map(|w| {
            let e = match basis {
                Basis::F => ssym::antipode_f(w)?,
                Basis::M => ssym::antipode_m(w)?,
            };
            Ok(e.terms)
        })
        .collect()
}

/// The dual antipode is the transpose: `S*(B*_u) = sum_w [B_u]S(B_w) B*_w`.
pub fn dual_antipode(x: &PermExpansion) -> Result<PermExpansion> {
    require_dual(x)?;
    x.check_degrees()?;
    let mut by_degree: BTreeMap<usize, Vec<(&Permutation, &Coeff)>> = BTreeMap::new();
    for (u, c) in &x.terms {
        by_degree.entry(u.degree()).or_default().push((u, c));
    }
    let mut out = LinComb::zero();
    for (n, terms) in by_degree {
        let g = SymmetricGroup::get(n)?;
        let rows = antipode_rows(n, x.basis)?;
        for (u, c) in terms {
            for (w, row) in g.perms().iter().zip(&rows) {
                out.add_term(w.clone(), row.coeff(u) * c);
            }
        }
    }
    Ok(PermExpansion::new_dual(x.basis, out))
}

// ---------------------------------------------------------------------------
// Self-duality.

/// `theta(u, v) = #{x : x <= u and x^{-1} <= v}`.
pub fn theta(u: &Permutation, v: &Permutation) -> Result<u64> {
    same_degree(u.degree(), v.degree())?;
    let g = SymmetricGroup::get(u.degree())?;
    let (um, vm) = (u.inversion_mask(), v.inversion_mask());
    Ok(g.perms()
        .iter()
        .zip(g.masks())
        .filter(|(x, &m)| mask_leq(m, um) && mask_leq(x.inverse().inversion_mask(), vm))
        .count() as u64)
}

/// Down-sets of `S_n` as bitsets over ranks, together with their images under inversion.
struct ThetaBits {
    down: Vec<Vec<u64>>,
    inv_down: Vec<Vec<u64>>,
}

impl ThetaBits {
    fn new(n: usize) -> Result<ThetaBits> {
        let g = SymmetricGroup::get(n)?;
        let size = g.len();
        let words = size.div_ceil(64);
        let inv_rank: Vec<usize> = g
            .perms()
            .iter()
            .map(|x| g.rank(&x.inverse()).expect("inverse has a rank"))
            .collect();
        let rows: Vec<(Vec<u64>, Vec<u64>)> = (0..size)
            .into_par_iter()
            .map(|r| {
                let m = g.mask(r);
                let mut down = vec![0u64; words];
                let mut inv = vec![0u64; words];
                for x in 0..size {
                    if mask_leq(g.mask(x), m) {
                        down[x / 64] |= 1 << (x % 64);
                        let y = inv_rank[x];
                        inv[y / 64] |= 1 << (y % 64);
                    }
                }
                (down, inv)
            })
            .collect();
        let (down, inv_down) = rows.into_iter().unzip();
        Ok(ThetaBits { down, inv_down })
    }

    fn theta(&self, u: usize, v: usize) -> u64 {
        self.down[u]
            .iter()
            .zip(&self.inv_down[v])
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    fn row(&self, u: usize) -> Vec<u64> {
        (0..self.down.len()).map(|v| self.theta(u, v)).collect()
    }
}

/// Largest degree for which full `theta` tables are built.
pub const THETA_TABLE_MAX_DEGREE: usize = 6;

/// The matrix `theta(u, v)` over `S_n` in canonical order.
pub fn theta_matrix(n: usize) -> Result<Vec<Vec<u64>>> {
    if n > THETA_TABLE_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: THETA_TABLE_MAX_DEGREE,
        });
    }
    let bits = ThetaBits::new(n)?;
    Ok((0..bits.down.len())
        .into_par_iter()
        .map(|u| bits.row(u))
        .collect())
}

/// Which pair statistic a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableName {
    Theta,
    D,
    B,
    C,
}

impl fmt::Display for TableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableName::Theta => "theta",
            TableName::D => "d",
            TableName::B => "b",
            TableName::C => "c",
        })
    }
}

impl std::str::FromStr for TableName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theta" => Ok(TableName::Theta),
            "d" => Ok(TableName::D),
            "b" => Ok(TableName::B),
            "c" => Ok(TableName::C),
            _ => Err(Error::Parse(format!("unknown table {s:?}"))),
        }
    }
}

/// A square table of nonnegative integers indexed by permutations or subsets of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTable {
    pub degree: usize,
    pub name: TableName,
    /// Row and column labels in canonical order.
    pub labels: Vec<String>,
    pub values: Vec<Vec<u64>>,
}

impl PairTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.values[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|i| (0..i).all(|j| self.values[i][j] == self.values[j][i]))
    }

    /// CSV with a header row of column labels; the first column holds row labels.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::InvalidInput(e.to_string());
        let mut header = vec![self.name.to_string()];
        header.extend(self.labels.iter().cloned());
        w.write_record(&header).map_err(csv_err)?;
        for (label, row) in self.labels.iter().zip(&self.values) {
            let mut record = vec![label.clone()];
            record.extend(row.iter().map(u64::to_string));
            w.write_record(&record).map_err(csv_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name.to_string(),
            "degree": self.degree,
            "labels": self.labels,
            "values": self.values,
        })
    }
}

pub fn theta_table(n: usize) -> Result<PairTable> {
    let values = theta_matrix(n)?;
    let g = SymmetricGroup::get(n)?;
    let labels = g.perms().iter().map(Permutation::to_string).collect();
    Ok(PairTable {
        degree: n,
        name: TableName::Theta,
        labels,
        values,
    })
}

/// `Theta`: `F*_u -> F_{u^{-1}}` and `M*_u -> sum_v theta(u, v) M_v`, written in `basis`.
pub fn theta_map(x: &PermExpansion, basis: Basis) -> Result<PermExpansion> {
    require_dual(x)?;
    x.check_degrees()?;
    let image = match x.basis {
        Basis::F => PermExpansion::new(
            Basis::F,
            x.terms.map_linear(|u| LinComb::basis(u.inverse())),
        ),
        Basis::M => {
            let mut bits: BTreeMap<usize, ThetaBits> = BTreeMap::new();
            let mut terms = LinComb::zero();
            for (u, c) in &x.terms {
                let n = u.degree();
                if let std::collections::btree_map::Entry::Vacant(e) = bits.entry(n) {
                    e.insert(ThetaBits::new(n)?);
                }
                let g = SymmetricGroup::get(n)?;
                let row = bits[&n].row(g.rank(u).expect("rank"));
                for (v, t) in g.perms().iter().zip(row) {
                    terms.add_term(v.clone(), c * Coeff::from(t));
                }
            }
            PermExpansion::new(Basis::M, terms)
        }
    };
    ssym::to_basis(&image, basis)
}

/// Whether `(theta alpha^w theta)(u, v) = theta(zeta_{p,q} (u x v), w)` for all `u`, `v`, `w`.
pub fn verify_theta_recursion(p: usize, q: usize) -> Result<bool> {
    let n = p + q;
    let tp = theta_matrix(p)?;
    let tq = theta_matrix(q)?;
    let tn = theta_matrix(n)?;
    let (gp, gq, gn) = (
        SymmetricGroup::get(p)?,
        SymmetricGroup::get(q)?,
        SymmetricGroup::get(n)?,
    );
    // alpha[w][x][y] = coefficient of M_w in M_x M_y.
    let mut alpha = vec![vec![vec![0i64; gq.len()]; gp.len()]; gn.len()];
    for (i, x) in gp.perms().iter().enumerate() {
        for (j, y) in gq.perms().iter().enumerate() {
            for (w, c) in &SsymM::product(x, y)? {
                let r = gn.rank(w).expect("rank");
                alpha[r][i][j] = i64::try_from(c).expect("small structure constant");
            }
        }
    }
    let ok = (0..gn.len()).into_par_iter().all(|r| {
        let w = &alpha[r];
        // (theta_p . alpha^w . theta_q)
        let left: Vec<Vec<i64>> = (0..gp.len())
            .map(|i| {
                (0..gq.len())
                    .map(|j| {
                        (0..gp.len())
                            .map(|k| tp[i][k] as i64 * w[k][j])
                            .sum::<i64>()
                    })
                    .collect()
            })
            .collect();
        (0..gp.len()).all(|i| {
            (0..gq.len()).all(|j| {
                let lhs: i64 = (0..gq.len()).map(|k| left[i][k] * tq[k][j] as i64).sum();
                let z = zeta_pq(p, q).compose_unchecked(&gp.perms()[i].direct_sum(&gq.perms()[j]));
                lhs == tn[gn.rank(&z).expect("rank")][r] as i64
            })
        })
    });
    Ok(ok)
}

/// Signed monomial antipode matrix: `K[u][w]` is the coefficient of `M_w` in `S(M_u)`.
fn antipode_matrix(n: usize, basis: Basis) -> Result<Vec<Vec<i64>>> {
    let g = SymmetricGroup::get(n)?;
    let rows = antipode_rows(n, basis)?;
    Ok(rows
        .iter()
        .map(|row| {
            g.perms()
                .iter()
                .map(|w| i64::try_from(row.coeff(w)).expect("small antipode coefficient"))
                .collect()
        })
        .collect())
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = b.first().map_or(0, Vec::len);
    a.par_iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

fn to_i64(a: &[Vec<u64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect()
}

/// Outcome of testing `k^t theta = theta k` for both readings of `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KappaThetaReport {
    /// `k` = signed coefficients of the monomial antipode.
    pub signed: bool,
    /// `k` = the unsigned counts `kappa(v, w)`.
    pub unsigned: bool,
}

pub fn kappa_theta_report(n: usize) -> Result<KappaThetaReport> {
    let th = to_i64(&theta_matrix(n)?);
    let signed = antipode_matrix(n, Basis::M)?;
    let unsigned: Vec<Vec<i64>> = signed
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).collect())
        .collect();
    let holds = |k: &[Vec<i64>]| mat_mul(&transpose(k), &th) == mat_mul(&th, k);
    Ok(KappaThetaReport {
        signed: holds(&signed),
        unsigned: holds(&unsigned),
    })
}

/// `k^t theta = theta k` with `k` the matrix of the monomial antipode.
pub fn verify_kappa_theta(n: usize) -> Result<bool> {
    Ok(kappa_theta_report(n)?.signed)
}

/// `lambda(u, v^{-1}) = lambda(v, u^{-1})` for all `u`, `v` in `S_n`.
pub fn lambda_symmetry(n: usize) -> Result<bool> {
    let g = SymmetricGroup::get(n)?;
    let lam = antipode_matrix(n, Basis::F)?;
    let inv: Vec<usize> = g
        .perms()
        .iter()
        .map(|x| g.rank(&x.inverse()).expect("rank"))
        .collect();
    Ok((0..g.len()).all(|u| (0..g.len()).all(|v| lam[u][inv[v]] == lam[v][inv[u]])))
}

/// Exact determinant of the `theta` matrix.
pub fn theta_determinant(n: usize) -> Result<Coeff> {
    let m: Vec<Vec<Coeff>> = theta_matrix(n)?
        .into_iter()
        .map(|r| r.into_iter().map(Coeff::from).collect())
        .collect();
    Ok(determinant(&m))
}

// ---------------------------------------------------------------------------
// Descent pairs.

/// `d`, `b` and `c` for one degree, indexed by subset bitmasks.
struct DescentPairs {
    d: Vec<Vec<u64>>,
    b: Vec<Vec<u64>>,
    c: Vec<Vec<u64>>,
}

fn subset_count(n: usize) -> usize {
    1 << n.saturating_sub(1)
}

impl DescentPairs {
    fn compute(n: usize) -> Result<DescentPairs> {
        let size = subset_count(n);
        let g = SymmetricGroup::get(n)?;
        let mut d = vec![vec![0u64; size]; size];
        for u in g.perms() {
            d[u.descent_set().bits() as usize][u.inverse().descent_set().bits() as usize] += 1;
        }
        // Subset sums in both coordinates give b; subset then superset sums give c.
        let mut b = d.clone();
        let mut c = d.clone();
        for bit in 0..n.saturating_sub(1) {
            let m = 1 << bit;
            for s in 0..size {
                for t in 0..size {
                    if s & m != 0 {
                        b[s][t] += b[s ^ m][t];
                        c[s][t] += c[s ^ m][t];
                    }
                }
            }
            for s in 0..size {
                for t in 0..size {
                    if t & m != 0 {
                        b[s][t] += b[s][t ^ m];
                    }
                }
            }
            for s in 0..size {
                for t in (0..size).rev() {
                    if t & m == 0 {
                        c[s][t] += c[s][t | m];
                    }
                }
            }
        }
        Ok(DescentPairs { d, b, c })
    }

    fn get(n: usize) -> Result<Arc<DescentPairs>> {
        static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<DescentPairs>>>> = OnceLock::new();
        check_degree(n)?;
        let cache = CACHE.get_or_init(Default::default);
        if let Some(found) = cache.lock().expect("descent cache poisoned").get(&n) {
            return Ok(found.clone());
        }
        let computed = Arc::new(DescentPairs::compute(n)?);
        Ok(cache
            .lock()
            .expect("descent cache poisoned")
            .entry(n)
            .or_insert(computed)
            .clone())
    }

    fn table(&self, name: TableName) -> &Vec<Vec<u64>> {
        match name {
            TableName::D => &self.d,
            TableName::B => &self.b,
            TableName::C => &self.c,
            TableName::Theta => unreachable!("theta is not a descent-pair table"),
        }
    }
}

fn pair_number(name: TableName, s: &Subset, t: &Subset) -> Result<u64> {
    same_ambient(s.ambient(), t.ambient())?;
    let pairs = DescentPairs::get(s.ambient())?;
    Ok(pairs.table(name)[s.bits() as usize][t.bits() as usize])
}

/// `#{u : Des(u) = S, Des(u^{-1}) = T}`.
pub fn d_number(s: &Subset, t: &Subset) -> Result<u64> {
    pair_number(TableName::D, s, t)
}

/// `#{u : Des(u) inside S, Des(u^{-1}) inside T}`.
pub fn b_number(s: &Subset, t: &Subset) -> Result<u64> {
    pair_number(TableName::B, s, t)
}

/// `#{u : Des(u) inside S, Des(u^{-1}) containing T}`.
pub fn c_number(s: &Subset, t: &Subset) -> Result<u64> {
    pair_number(TableName::C, s, t)
}

/// The `d`, `b` or `c` table of degree `n`, rows and columns in canonical subset order.
pub fn descent_pair_table(name: TableName, n: usize) -> Result<PairTable> {
    if name == TableName::Theta {
        return theta_table(n);
    }
    let pairs = DescentPairs::get(n)?;
    let subsets = Subset::all(n);
    let raw = pairs.table(name);
    let values = subsets
        .iter()
        .map(|s| {
            subsets
                .iter()
                .map(|t| raw[s.bits() as usize][t.bits() as usize])
                .collect()
        })
        .collect();
    let labels = subsets.iter().map(Subset::to_string).collect();
    Ok(PairTable {
        degree: n,
        name,
        labels,
        values,
    })
}

pub fn table(name: TableName, n: usize) -> Result<PairTable> {
    descent_pair_table(name, n)
}

/// Failures per identity in an exhaustive check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: usize,
    pub failures: BTreeMap<String, usize>,
}

impl IdentityReport {
    fn record(&mut self, name: &str, ok: bool) {
        self.checks += 1;
        let entry = self.failures.entry(name.to_string()).or_insert(0);
        if !ok {
            *entry += 1;
        }
    }

    pub fn total_failures(&self) -> usize {
        self.failures.values().sum()
    }
}

/// Check the symmetries of `d`, `b`, `c` over all pairs of subsets of `[n-1]`.
pub fn gessel_report(n: usize) -> Result<IdentityReport> {
    let pairs = DescentPairs::get(n)?;
    let subsets = Subset::all(n);
    let ix = |s: &Subset| s.bits() as usize;
    let (d, b, c) = (&pairs.d, &pairs.b, &pairs.c);
    let mut report = IdentityReport::default();
    for s in &subsets {
        let (sr, sc) = (s.reversal(), s.complement());
        for t in &subsets {
            let (tr, tc) = (t.reversal(), t.complement());
            let v = d[ix(s)][ix(t)];
            report.record("d(S,T)=d(T,S)", v == d[ix(t)][ix(s)]);
            report.record("d(S,T)=d(~S,~T)", v == d[ix(&sr)][ix(&tr)]);
            report.record("d(S,T)=d(S^c,T^c)", v == d[ix(&sc)][ix(&tc)]);
            report.record("d(S,T)=d(~S,T)", v == d[ix(&sr)][ix(t)]);
            let v = b[ix(s)][ix(t)];
            report.record("b(S,T)=b(T,S)", v == b[ix(t)][ix(s)]);
            report.record("b(S,T)=b(~S,~T)", v == b[ix(&sr)][ix(&tr)]);
            report.record("b(S,T)=b(~S,T)", v == b[ix(&sr)][ix(t)]);
            let v = c[ix(s)][ix(t)];
            report.record("c(S,T)=c(~S,~T)", v == c[ix(&sr)][ix(&tr)]);
            report.record("c(S,T)=c(T^c,S^c)", v == c[ix(&tc)][ix(&sc)]);
            report.record("c(S,T)=c(~S,T)", v == c[ix(&sr)][ix(t)]);
            // t plays the role of R here.
            let lhs = c[ix(s)][ix(&tr.complement())];
            let rhs = c[ix(t)][ix(&sr.complement())];
            report.record("c(S,~R^c)=c(R,~S^c)", lhs == rhs);
        }
    }
    Ok(report)
}

pub fn verify_gessel_identities(n: usize) -> Result<bool> {
    Ok(gessel_report(n)?.total_failures() == 0)
}

fn require_qsym_dual(x: &QSymExpansion) -> Result<()> {
    if !x.dual {
        return Err(Error::InvalidInput(
            "expected an expansion in a dual basis".into(),
        ));
    }
    Ok(())
}

/// The dual of the descent map: `F*_S -> sum_{Des(u)=S} F*_u` and `M*_S -> M*_{zeta_S}`.
pub fn dual_descent_map(x: &QSymExpansion) -> Result<PermExpansion> {
    require_qsym_dual(x)?;
    check_degree(x.top_degree())?;
    let terms = match x.basis {
        Basis::F => x.terms.try_map_linear(|s| {
            let g = SymmetricGroup::get(s.ambient())?;
            Ok::<_, Error>(
                g.perms()
                    .iter()
                    .filter(|u| u.descent_set() == *s)
                    .map(|u| (u.clone(), Coeff::one()))
                    .collect(),
            )
        })?,
        Basis::M => x
            .terms
            .try_map_linear(|s| zeta_of_subset(s.ambient(), s).map(LinComb::basis))?,
    };
    Ok(PermExpansion::new_dual(x.basis, terms))
}

/// `Phi`: `F*_S -> sum_T d(S,T) F_T` and `M*_S -> sum_T b(S,T) M_T`, written in `basis`.
pub fn phi_map(x: &QSymExpansion, basis: Basis) -> Result<QSymExpansion> {
    require_qsym_dual(x)?;
    let name = match x.basis {
        Basis::F => TableName::D,
        Basis::M => TableName::B,
    };
    let terms = x.terms.try_map_linear(|s| {
        let n = s.ambient();
        let pairs = DescentPairs::get(n)?;
        let row = &pairs.table(name)[s.bits() as usize];
        Ok::<_, Error>(
            Subset::all(n)
                .into_iter()
                .map(|t| {
                    let v = row[t.bits() as usize];
                    (t, Coeff::from(v))
                })
                .collect(),
        )
    })?;
    qsym::to_basis(&QSymExpansion::new(x.basis, terms), basis)
}

/// `Phi` as the composite of the dual descent map, `Theta` and the descent map.
pub fn phi_map_composite(x: &QSymExpansion, basis: Basis) -> Result<QSymExpansion> {
    let lifted = dual_descent_map(x)?;
    let image = theta_map(&lifted, lifted.basis)?;
    qsym::to_basis(&qsym::descent_map(&image)?, basis)
}

// ---------------------------------------------------------------------------
// Cofreeness and the coradical filtration.

/// Permutations of `n >= 1` without global descents; the `M_u` span the primitives.
pub fn primitives(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let g = SymmetricGroup::get(n)?;
    Ok(g.perms()
        .iter()
        .filter(|u| u.global_descent_set().is_empty())
        .cloned()
        .collect())
}

/// Number of global-descent blocks of `u` (`0` for the empty permutation).
pub fn block_count(u: &Permutation) -> usize {
    if u.degree() == 0 {
        0
    } else {
        u.global_descent_set().len() + 1
    }
}

/// The coradical level of an `M`-expansion: the largest block count over its support.
pub fn coradical_level(x: &PermExpansion) -> Result<usize> {
    x.require(Basis::M, false)?;
    Ok(x.terms.keys().map(block_count).max().unwrap_or(0))
}

/// `M_u -> M_{b_1} (x) ... (x) M_{b_k}`, cutting `u` at its global descents.
pub fn cofree_phi_hat(x: &PermExpansion) -> Result<TensorExpansion> {
    x.require(Basis::M, false)?;
    let terms = x.terms.map_linear(|u| {
        let blocks = if u.degree() == 0 {
            Vec::new()
        } else {
            u.segments(&u.global_descent_set())
        };
        LinComb::basis(blocks)
    });
    Ok(TensorExpansion::new(Basis::M, terms))
}

/// `M_{v_1} (x) ... (x) M_{v_k} -> M_{zeta_T (v_1 x ... x v_k)}` for global-descent-free blocks.
pub fn cofree_psi(t: &TensorExpansion) -> Result<PermExpansion> {
    if t.basis != Basis::M || t.dual {
        return Err(Error::InvalidInput(
            "expected a tensor of primal M-elements".into(),
        ));
    }
    let terms = t.terms.try_map_linear(|blocks| {
        for b in blocks {
            if b.degree() == 0 || !b.global_descent_set().is_empty() {
                return Err(Error::InvalidInput(format!(
                    "block {b} is not a primitive index"
                )));
            }
        }
        let sizes: Vec<usize> = blocks.iter().map(Permutation::degree).collect();
        let n = sizes.iter().sum();
        check_degree(n)?;
        let zeta = zeta_of_subset(n, &subset_of_sizes(&sizes))?;
        Ok(LinComb::basis(
            zeta.compose_unchecked(&Permutation::direct_sum_all(blocks)),
        ))
    })?;
    Ok(PermExpansion::new(Basis::M, terms))
}

// ---------------------------------------------------------------------------
// Generating series.

/// A power series truncated at a fixed degree; `coefficients[n]` is the coefficient of `t^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub name: String,
    pub coefficients: Vec<Coeff>,
}

impl Series {
    pub fn max_degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coefficient(&self, n: usize) -> Coeff {
        self.coefficients.get(n).cloned().unwrap_or_default()
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }

    /// `count` coefficients starting at degree `start`.
    pub fn window(&self, start: usize, count: usize) -> Vec<Coeff> {
        (start..start + count)
            .map(|n| self.coefficient(n))
            .collect()
    }

    pub fn truncate(&self, max_degree: usize) -> Series {
        let mut coefficients = self.coefficients.clone();
        coefficients.truncate(max_degree + 1);
        Series {
            name: self.name.clone(),
            coefficients,
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let top = self.max_degree().min(other.max_degree());
        let coefficients = (0..=top)
            .map(|n| {
                (0..=n)
                    .map(|i| &self.coefficients[i] * &other.coefficients[n - i])
                    .sum()
            })
            .collect();
        Series {
            name: format!("{}*{}", self.name, other.name),
            coefficients,
        }
    }

    pub fn pow(&self, k: usize) -> Series {
        let mut one = vec![Coeff::zero(); self.coefficients.len()];
        if let Some(c) = one.first_mut() {
            *c = Coeff::one();
        }
        let mut acc = Series {
            name: format!("{}^{k}", self.name),
            coefficients: one,
        };
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc.name = format!("{}^{k}", self.name);
        acc
    }

    /// Multiplicative inverse; the constant term must be `1`.
    pub fn reciprocal(&self) -> Result<Series> {
        if self.coefficient(0) != Coeff::one() {
            return Err(Error::InvalidInput(
                "series must have constant term 1".into(),
            ));
        }
        let mut inv = vec![Coeff::one()];
        for n in 1..self.coefficients.len() {
            let s: Coeff = (1..=n).map(|i| &self.coefficients[i] * &inv[n - i]).sum();
            inv.push(-s);
        }
        Ok(Series {
            name: format!("1/{}", self.name),
            coefficients: inv,
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let start = self.order().unwrap_or(0);
        let parts: Vec<String> = self.coefficients[start.min(self.coefficients.len())..]
            .iter()
            .map(Coeff::to_string)
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `G_k(t)`: coefficient of `t^n` counts permutations of `n >= 1` with `k - 1` global descents.
pub fn g_series(k: usize, max_degree: usize) -> Result<Series> {
    if k == 0 {
        return Err(Error::InvalidInput("G_k needs k >= 1".into()));
    }
    check_degree(max_degree)?;
    let mut coefficients = vec![Coeff::zero()];
    for n in 1..=max_degree {
        let g = SymmetricGroup::get(n)?;
        let count = g
            .perms()
            .par_iter()
            .filter(|u| u.global_descent_set().len() + 1 == k)
            .count();
        coefficients.push(Coeff::from(count));
    }
    Ok(Series {
        name: format!("G{k}"),
        coefficients,
    })
}

/// `1 - 1 / sum_n n! t^n`.
pub fn g1_reciprocal(max_degree: usize) -> Result<Series> {
    let mut fact = Coeff::one();
    let mut coefficients = vec![Coeff::one()];
    for n in 1..=max_degree {
        fact *= Coeff::from(n);
        coefficients.push(fact.clone());
    }
    let inv = Series {
        name: "factorials".into(),
        coefficients,
    }
    .reciprocal()?;
    let coefficients = inv
        .coefficients
        .iter()
        .enumerate()
        .map(|(n, c)| if n == 0 { Coeff::one() - c } else { -c.clone() })
        .collect();
    Ok(Series {
        name: "G1".into(),
        coefficients,
    })
}

fn factorial(n: usize) -> Coeff {
    (1..=n).map(Coeff::from).product()
}

/// `(-1)^{n-1}` times the determinant of the `n x n` matrix with entries `(j - i + 1)!`
/// (zero when `j - i + 1 < 0`).
pub fn primitive_dim_det(n: usize) -> Coeff {
    let m: Vec<Vec<Coeff>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j + 1 >= i {
                        factorial(j + 1 - i)
                    } else {
                        Coeff::zero()
                    }
                })
                .collect()
        })
        .collect();
    let det = determinant(&m);
    if n % 2 == 1 {
        det
    } else {
        -det
    }
}

// ---------------------------------------------------------------------------
// The Hopf kernel of the descent map.

/// Whether `u` ends in `1 2 ... (n-k)` for some `k < n`.
pub fn has_identity_tail(u: &Permutation) -> bool {
    let n = u.degree();
    (0..n).any(|k| (1..=n - k).all(|i| u.value(k + i) == i))
}

/// Permutations `u` with `M_u` in the basis of the left Hopf kernel.
pub fn hopf_kernel_basis(n: usize) -> Result<Vec<Permutation>> {
    let g = SymmetricGroup::get(n)?;
    Ok(g.perms()
        .iter()
        .filter(|u| !has_identity_tail(u))
        .cloned()
        .collect())
}

/// `n! - sum_{k<n} k!`.
pub fn kernel_dimension(n: usize) -> Coeff {
    factorial(n) - (0..n).map(factorial).sum::<Coeff>()
}

/// Whether `(id (x) D) Delta(x) = x (x) 1` for an `M`-expansion `x`.
pub fn in_hopf_kernel(x: &PermExpansion) -> Result<bool> {
    x.require(Basis::M, false)?;
    let mut image: LinComb<(Permutation, Subset)> = LinComb::zero();
    for ((a, b), c) in &hopf::comul::<SsymM>(&x.terms)? {
        if b.is_closed() {
            image.add_term((a.clone(), b.global_descent_set()), c.clone());
        }
    }
    let expected: LinComb<(Permutation, Subset)> = x
        .terms
        .iter()
        .map(|(u, c)| ((u.clone(), Subset::empty(0)), c.clone()))
        .collect();
    Ok(image == expected)
}

// ---------------------------------------------------------------------------
// The crossed-product cocycle.

/// The splitting `M_S -> M_{zeta_S}` on raw combinations.
fn splitting(x: &LinComb<Subset>) -> Result<LinComb<Permutation>> {
    x.try_map_linear(|s| zeta_of_subset(s.ambient(), s).map(LinComb::basis))
}

fn m_mul(x: &LinComb<Permutation>, y: &LinComb<Permutation>) -> Result<LinComb<Permutation>> {
    hopf::mul::<SsymM>(x, y)
}

fn m_antipode(x: &LinComb<Permutation>) -> Result<LinComb<Permutation>> {
    Ok(ssym::antipode(&PermExpansion::new(Basis::M, x.clone()))?.terms)
}

/// `sigma(M_S, M_T) = sum Z(M_{S1}) Z(M_{T1}) S Z(M_{S2} M_{T2})`.
pub fn sigma_cocycle(s: &Subset, t: &Subset) -> Result<PermExpansion> {
    check_degree(s.ambient() + t.ambient())?;
    let mut out = LinComb::zero();
    for ((s1, s2), c) in &QsymM::coproduct(s)? {
        for ((t1, t2), d) in &QsymM::coproduct(t)? {
            let left = m_mul(
                &splitting(&LinComb::basis(*s1))?,
                &splitting(&LinComb::basis(*t1))?,
            )?;
            let right = m_antipode(&splitting(&QsymM::product(s2, t2)?)?)?;
            out.add_scaled(&m_mul(&left, &right)?, &(c * d));
        }
    }
    Ok(PermExpansion::new(Basis::M, out))
}

fn check_positive(p: usize, q: usize) -> Result<()> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidInput("p and q must be positive".into()));
    }
    check_degree(p + q)
}

/// `sigma(M_(p), M_(q)) = S Z(M_(p) M_(q)) - Z(M_(q)) Z(M_(p))`.
pub fn sigma_on_primitives(p: usize, q: usize) -> Result<PermExpansion> {
    check_positive(p, q)?;
    let (mp, mq) = (Subset::empty(p), Subset::empty(q));
    let mut out = m_antipode(&splitting(&QsymM::product(&mp, &mq)?)?)?;
    out -= &SsymM::product(&Permutation::identity(q), &Permutation::identity(p))?;
    Ok(PermExpansion::new(Basis::M, out))
}

/// The order of the two identity factors in `alpha^w_{1_a, 1_b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorOrder {
    /// `alpha^w_{1_p, 1_q}`.
    PQ,
    /// `alpha^w_{1_q, 1_p}`.
    QP,
}

fn identity_product(p: usize, q: usize, order: FactorOrder) -> Result<LinComb<Permutation>> {
    let (a, b) = match order {
        FactorOrder::PQ => (p, q),
        FactorOrder::QP => (q, p),
    };
    SsymM::product(&Permutation::identity(a), &Permutation::identity(b))
}

/// `sum_{w not in {zeta_{p,q}, zeta_{q,p}, 1_{p+q}}} alpha^w M_w`.
pub fn sigma_alpha_formula(p: usize, q: usize, order: FactorOrder) -> Result<PermExpansion> {
    check_positive(p, q)?;
    let excluded = [zeta_pq(p, q), zeta_pq(q, p), Permutation::identity(p + q)];
    let terms = identity_product(p, q, order)?.filter(|w| !excluded.contains(w));
    Ok(PermExpansion::new(Basis::M, terms))
}

/// `sigma~(M_(p), M_(q)) = sigma(M_(p), M_(q)) - sigma(M_(q), M_(p))`.
pub fn lie_cocycle(p: usize, q: usize) -> Result<PermExpansion> {
    let terms = sigma_on_primitives(p, q)?.terms - sigma_on_primitives(q, p)?.terms;
    Ok(PermExpansion::new(Basis::M, terms))
}

/// `sum_w (alpha^w_{first} - alpha^w_{second}) M_w` for the given first order.
pub fn lie_cocycle_alpha_formula(p: usize, q: usize, order: FactorOrder) -> Result<PermExpansion> {
    check_positive(p, q)?;
    let other = match order {
        FactorOrder::PQ => FactorOrder::QP,
        FactorOrder::QP => FactorOrder::PQ,
    };
    let terms = identity_product(p, q, order)? - identity_product(p, q, other)?;
    Ok(PermExpansion::new(Basis::M, terms))
}

/// Nonzero `alpha^w_{1_p, 1_q}` over closed `w`.
pub fn closed_identity_constants(p: usize, q: usize) -> Result<Vec<(Permutation, Coeff)>> {
    check_positive(p, q)?;
    Ok(identity_product(p, q, FactorOrder::PQ)?
        .into_iter()
        .filter(|(w, _)| w.is_closed())
        .collect())
}

/// The closed-`w` constants predicted for `M_{1_p} M_{1_q}`: `1` at the identity, and `1`
/// at each of `zeta_{p,q}`, `zeta_{q,p}` (which coincide with total `2` when `p = q`).
pub fn expected_closed_identity_constants(p: usize, q: usize) -> Vec<(Permutation, Coeff)> {
    let mut out: LinComb<Permutation> = LinComb::zero();
    out.add_one(Permutation::identity(p + q));
    out.add_one(zeta_pq(p, q));
    out.add_one(zeta_pq(q, p));
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn sub(n: usize, m: &[usize]) -> Subset {
        Subset::new(n, m).unwrap()
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(&p("123"), &p("123")).unwrap(), 1);
        assert_eq!(theta(&p("21"), &p("21")).unwrap(), 2);
        let t = theta_matrix(3).unwrap();
        let g = SymmetricGroup::get(3).unwrap();
        for (i, u) in g.perms().iter().enumerate() {
            for (j, v) in g.perms().iter().enumerate() {
                assert_eq!(t[i][j], theta(u, v).unwrap());
            }
        }
    }

    #[test]
    fn descent_pair_examples() {
        assert_eq!(d_number(&sub(3, &[1]), &sub(3, &[1])).unwrap(), 1);
        for t in Subset::all(4) {
            assert_eq!(b_number(&Subset::empty(4), &t).unwrap(), 1);
        }
        assert!(d_number(&sub(3, &[1]), &sub(4, &[1])).is_err());
    }

    #[test]
    fn series_examples() {
        let g1 = g_series(1, 7).unwrap();
        assert_eq!(g1.to_string(), "1 1 3 13 71 461 3447");
        assert_eq!(g1_reciprocal(7).unwrap().coefficients, g1.coefficients);
        assert_eq!(primitive_dim_det(3), Coeff::from(3));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(hopf_kernel_basis(3).unwrap(), vec![p("132"), p("213")]);
        assert_eq!(kernel_dimension(3), Coeff::from(2));
    }

    #[test]
    fn cofree_example() {
        let x = PermExpansion::basis_element(Basis::M, p("3412"));
        let t = cofree_phi_hat(&x).unwrap();
        assert_eq!(t.terms, LinComb::basis(vec![p("12"), p("12")]));
        assert_eq!(cofree_psi(&t).unwrap(), x);
    }

    #[test]
    fn dual_examples() {
        let x = dual_product_m(&p("1"), &p("1")).unwrap();
        assert_eq!(x.terms, LinComb::basis(p("21")));
        let y = PermExpansion::new_dual(Basis::F, LinComb::basis(p("312")));
        assert_eq!(
            theta_map(&y, Basis::F).unwrap().terms,
            LinComb::basis(p("231"))
        );
    }
}
