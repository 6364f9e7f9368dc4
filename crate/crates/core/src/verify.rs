//! Named invariant suites, run degree by degree up to a bound.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::{self, check_axioms_in_degree, HopfBasis};
use crate::linear::{Coeff, LinComb};
use crate::perm::{all_perms, shuffles, zeta_pq, Permutation, SymmetricGroup};
use crate::qsym::{self, QSymExpansion, QsymF, QsymM};
use crate::ssym::{self, Basis, PermExpansion, SsymF, SsymM, TensorExpansion};
use crate::structure::{self, FactorOrder, SsymDualF, SsymDualM};
use crate::subset::Subset;
use crate::weak_order;

/// A family of related checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Ssym,
    Qsym,
    Descent,
    WeakOrder,
    Duality,
    Gessel,
    Cofree,
    Series,
    Kernel,
    Cocycle,
    Realization,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Ssym,
        Suite::Qsym,
        Suite::Descent,
        Suite::WeakOrder,
        Suite::Duality,
        Suite::Gessel,
        Suite::Cofree,
        Suite::Series,
        Suite::Kernel,
        Suite::Cocycle,
        Suite::Realization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ssym => "ssym",
            Suite::Qsym => "qsym",
            Suite::Descent => "descent",
            Suite::WeakOrder => "weak-order",
            Suite::Duality => "duality",
            Suite::Gessel => "gessel",
            Suite::Cofree => "cofree",
            Suite::Series => "series",
            Suite::Kernel => "kernel",
            Suite::Cocycle => "cocycle",
            Suite::Realization => "realization",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parse a suite name; `all` selects every suite.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::ALL
        .iter()
        .find(|s| s.name() == name)
        .map(|&s| vec![s])
        .ok_or_else(|| {
            Error::Parse(format!(
                "unknown suite {name:?}; expected all or one of {}",
                suite_names().join(", ")
            ))
        })
}

pub fn suite_names() -> Vec<&'static str> {
    Suite::ALL.iter().map(|s| s.name()).collect()
}

struct Check {
    suite: Suite,
    name: &'static str,
    min: usize,
    cap: usize,
    run: fn(usize) -> Result<bool>,
}

/// The outcome of one check at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub degree: usize,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub max_degree: usize,
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.results.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {} {} n={}", r.suite, r.name, r.degree));
            if let Some(e) = &r.error {
                out.push_str(&format!(" ({e})"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed",
            self.passed(),
            self.failed()
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .results
            .iter()
            .map(|r| json!({"suite": r.suite.name(), "check": r.name, "degree": r.degree, "passed": r.passed, "error": r.error}))
            .collect();
        json!({"max_degree": self.max_degree, "passed": self.passed(), "failed": self.failed(), "results": results})
    }
}

/// Run the given suites for every degree up to `max_degree` (each check has its own cap).
pub fn run(suites: &[Suite], max_degree: usize) -> VerifyReport {
    let jobs: Vec<(&Check, usize)> = CHECKS
        .iter()
        .filter(|c| suites.contains(&c.suite))
        .flat_map(|c| (c.min..=max_degree.min(c.cap)).map(move |n| (c, n)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(c, n)| {
            let (passed, error) = match (c.run)(n) {
                Ok(ok) => (ok, None),
                Err(e) => (false, Some(e.to_string())),
            };
            CheckResult {
                suite: c.suite,
                name: c.name,
                degree: n,
                passed,
                error,
            }
        })
        .collect();
    VerifyReport {
        max_degree,
        results,
    }
}

/// Names of the checks in a suite, with the degree range each covers.
pub fn describe(suite: Suite) -> Vec<(&'static str, usize, usize)> {
    CHECKS
        .iter()
        .filter(|c| c.suite == suite)
        .map(|c| (c.name, c.min, c.cap))
        .collect()
}

const CHECKS: &[Check] = &[
    Check {
        suite: Suite::Ssym,
        name: "F-basis Hopf axioms",
        min: 0,
        cap: 5,
        run: ssym_axioms_f,
    },
    Check {
        suite: Suite::Ssym,
        name: "M-basis Hopf axioms",
        min: 0,
        cap: 5,
        run: ssym_axioms_m,
    },
    Check {
        suite: Suite::Ssym,
        name: "M and F basis changes are inverse",
        min: 0,
        cap: 7,
        run: basis_round_trip,
    },
    Check {
        suite: Suite::Ssym,
        name: "closed antipodes agree with Takeuchi",
        min: 0,
        cap: 5,
        run: antipode_routes,
    },
    Check {
        suite: Suite::Ssym,
        name: "M product = alpha counts",
        min: 0,
        cap: 5,
        run: m_product_alpha,
    },
    Check {
        suite: Suite::Ssym,
        name: "closed higher coproducts",
        min: 0,
        cap: 5,
        run: higher_coproducts,
    },
    Check {
        suite: Suite::Ssym,
        name: "closed convolution powers",
        min: 0,
        cap: 4,
        run: pi_powers,
    },
    Check {
        suite: Suite::Qsym,
        name: "M-basis Hopf axioms",
        min: 0,
        cap: 6,
        run: qsym_axioms_m,
    },
    Check {
        suite: Suite::Qsym,
        name: "F-basis Hopf axioms",
        min: 0,
        cap: 6,
        run: qsym_axioms_f,
    },
    Check {
        suite: Suite::Qsym,
        name: "cube faces are unique",
        min: 2,
        cap: 8,
        run: qsym::face_uniqueness_check,
    },
    Check {
        suite: Suite::Qsym,
        name: "cube coefficients = quasi-shuffles",
        min: 2,
        cap: 7,
        run: cube_coefficients,
    },
    Check {
        suite: Suite::Qsym,
        name: "r_zeta two routes",
        min: 2,
        cap: 6,
        run: r_zeta_routes,
    },
    Check {
        suite: Suite::Qsym,
        name: "Mobius descent fibers two routes",
        min: 0,
        cap: 5,
        run: mobius_fibers,
    },
    Check {
        suite: Suite::Descent,
        name: "descent map is multiplicative",
        min: 0,
        cap: 5,
        run: descent_multiplicative,
    },
    Check {
        suite: Suite::Descent,
        name: "descent map is comultiplicative",
        min: 0,
        cap: 6,
        run: descent_comultiplicative,
    },
    Check {
        suite: Suite::Descent,
        name: "descent map commutes with antipodes",
        min: 0,
        cap: 5,
        run: descent_antipode,
    },
    Check {
        suite: Suite::Descent,
        name: "descent map splits the splitting map",
        min: 0,
        cap: 8,
        run: descent_splits,
    },
    Check {
        suite: Suite::WeakOrder,
        name: "join and meet are least and greatest bounds",
        min: 0,
        cap: 5,
        run: lattice_bounds,
    },
    Check {
        suite: Suite::WeakOrder,
        name: "meet by chains",
        min: 0,
        cap: 5,
        run: meet_chains,
    },
    Check {
        suite: Suite::WeakOrder,
        name: "Mobius values in {-1,0,1}",
        min: 0,
        cap: 6,
        run: mobius_values,
    },
    Check {
        suite: Suite::WeakOrder,
        name: "global descents are order preserving",
        min: 0,
        cap: 6,
        run: gdes_monotone,
    },
    Check {
        suite: Suite::Duality,
        name: "dual F-basis Hopf axioms",
        min: 0,
        cap: 4,
        run: dual_axioms_f,
    },
    Check {
        suite: Suite::Duality,
        name: "dual M-basis Hopf axioms",
        min: 0,
        cap: 4,
        run: dual_axioms_m,
    },
    Check {
        suite: Suite::Duality,
        name: "Theta is multiplicative",
        min: 0,
        cap: 4,
        run: theta_multiplicative,
    },
    Check {
        suite: Suite::Duality,
        name: "theta recursion",
        min: 0,
        cap: 5,
        run: theta_recursion,
    },
    Check {
        suite: Suite::Duality,
        name: "theta symmetric and invertible",
        min: 0,
        cap: 5,
        run: theta_invertible,
    },
    Check {
        suite: Suite::Duality,
        name: "kappa-theta identity",
        min: 0,
        cap: 5,
        run: structure::verify_kappa_theta,
    },
    Check {
        suite: Suite::Duality,
        name: "lambda symmetry",
        min: 0,
        cap: 6,
        run: structure::lambda_symmetry,
    },
    Check {
        suite: Suite::Duality,
        name: "Phi two routes",
        min: 0,
        cap: 5,
        run: phi_routes,
    },
    Check {
        suite: Suite::Duality,
        name: "Phi(M*) of the empty set",
        min: 0,
        cap: 6,
        run: phi_empty,
    },
    Check {
        suite: Suite::Gessel,
        name: "descent-pair symmetries",
        min: 0,
        cap: 8,
        run: structure::verify_gessel_identities,
    },
    Check {
        suite: Suite::Cofree,
        name: "cut and glue are inverse",
        min: 0,
        cap: 6,
        run: cofree_round_trip,
    },
    Check {
        suite: Suite::Cofree,
        name: "coproduct preserves block count",
        min: 0,
        cap: 6,
        run: cofree_grading,
    },
    Check {
        suite: Suite::Cofree,
        name: "closed elements are primitive",
        min: 1,
        cap: 6,
        run: primitives_primitive,
    },
    Check {
        suite: Suite::Series,
        name: "G_k = G_1^k",
        min: 1,
        cap: 8,
        run: series_powers,
    },
    Check {
        suite: Suite::Series,
        name: "G_1 = 1 - 1/sum n! t^n",
        min: 1,
        cap: 8,
        run: series_reciprocal,
    },
    Check {
        suite: Suite::Series,
        name: "primitive count = determinant",
        min: 1,
        cap: 8,
        run: series_determinant,
    },
    Check {
        suite: Suite::Kernel,
        name: "kernel dimension",
        min: 0,
        cap: 8,
        run: kernel_dimension,
    },
    Check {
        suite: Suite::Kernel,
        name: "kernel basis membership",
        min: 0,
        cap: 6,
        run: kernel_membership,
    },
    Check {
        suite: Suite::Kernel,
        name: "cocycle values lie in the kernel",
        min: 1,
        cap: 5,
        run: cocycle_in_kernel,
    },
    Check {
        suite: Suite::Cocycle,
        name: "closed identity constants",
        min: 2,
        cap: 6,
        run: closed_constants,
    },
    Check {
        suite: Suite::Cocycle,
        name: "cocycle on primitives, two routes",
        min: 2,
        cap: 5,
        run: sigma_routes,
    },
    Check {
        suite: Suite::Cocycle,
        name: "antipode of zeta_pq",
        min: 2,
        cap: 6,
        run: antipode_zeta,
    },
    Check {
        suite: Suite::Cocycle,
        name: "Lie cocycle is a commutator",
        min: 2,
        cap: 6,
        run: lie_commutator,
    },
    Check {
        suite: Suite::Realization,
        name: "word series abelianize to polynomials",
        min: 0,
        cap: 4,
        run: realization,
    },
];

fn axioms<H: HopfBasis, S: Fn(&hopf::Elem<H>) -> Result<hopf::Elem<H>>>(
    n: usize,
    s: S,
) -> Result<bool> {
    Ok(check_axioms_in_degree::<H, _>(n, s)?.failures() == 0)
}

fn ssym_axioms_f(n: usize) -> Result<bool> {
    axioms::<SsymF, _>(n, |x| {
        ssym::antipode(&PermExpansion::new(Basis::F, x.clone())).map(|e| e.terms)
    })
}

fn ssym_axioms_m(n: usize) -> Result<bool> {
    axioms::<SsymM, _>(n, |x| {
        ssym::antipode(&PermExpansion::new(Basis::M, x.clone())).map(|e| e.terms)
    })
}

fn qsym_axioms_m(n: usize) -> Result<bool> {
    axioms::<QsymM, _>(n, |x| {
        qsym::antipode(&QSymExpansion::new(Basis::M, x.clone())).map(|e| e.terms)
    })
}

fn qsym_axioms_f(n: usize) -> Result<bool> {
    axioms::<QsymF, _>(n, |x| {
        qsym::antipode(&QSymExpansion::new(Basis::F, x.clone())).map(|e| e.terms)
    })
}

fn dual_axioms_f(n: usize) -> Result<bool> {
    axioms::<SsymDualF, _>(n, |x| {
        structure::dual_antipode(&PermExpansion::new_dual(Basis::F, x.clone())).map(|e| e.terms)
    })
}

fn dual_axioms_m(n: usize) -> Result<bool> {
    axioms::<SsymDualM, _>(n, |x| {
        structure::dual_antipode(&PermExpansion::new_dual(Basis::M, x.clone())).map(|e| e.terms)
    })
}

fn all_true<T>(items: Vec<T>, f: impl Fn(&T) -> Result<bool> + Sync + Send) -> Result<bool>
where
    T: Sync,
{
    let outcomes: Vec<Result<bool>> = items.par_iter().map(f).collect();
    for o in outcomes {
        if !o? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All pairs `(u, v)` with `deg u + deg v = n`.
fn pairs(n: usize) -> Result<Vec<(Permutation, Permutation)>> {
    let mut out = Vec::new();
    for p in 0..=n {
        let left = all_perms(p)?;
        let right = all_perms(n - p)?;
        for u in &left {
            for v in &right {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(out)
}

fn basis_round_trip(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        let x = PermExpansion::basis_element(Basis::M, u.clone());
        Ok(ssym::to_basis(&ssym::to_basis(&x, Basis::F)?, Basis::M)? == x)
    })
}

fn antipode_routes(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        let x = PermExpansion::basis_element(Basis::F, u.clone());
        let closed = ssym::antipode_f(u)?;
        let via_m = ssym::to_basis(&ssym::antipode(&ssym::to_basis(&x, Basis::M)?)?, Basis::F)?;
        Ok(ssym::takeuchi_antipode(&x)? == closed && via_m == closed)
    })
}

fn m_product_alpha(n: usize) -> Result<bool> {
    let all = all_perms(n)?;
    all_true(pairs(n)?, |(u, v)| {
        let prod = ssym::m_product(u, v)?.terms;
        for w in &all {
            if prod.coeff(w) != Coeff::from(ssym::alpha(u, v, w)?) {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn higher_coproducts(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        for basis in [Basis::F, Basis::M] {
            let x = PermExpansion::basis_element(basis, u.clone());
            for k in 1..=3 {
                let iterated = match basis {
                    Basis::F => hopf::iterated_coproduct::<SsymF>(&x.terms, k)?,
                    Basis::M => hopf::iterated_coproduct::<SsymM>(&x.terms, k)?,
                };
                if ssym::higher_coproduct(&x, k)?.terms != iterated {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

fn pi_powers(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        for basis in [Basis::F, Basis::M] {
            let x = PermExpansion::basis_element(basis, u.clone());
            for k in 0..=n + 1 {
                if ssym::pi_power(&x, k)? != ssym::pi_power_closed(&x, k)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

fn subset_pairs(n: usize) -> Vec<(Subset, Subset)> {
    let mut out = Vec::new();
    for p in 1..n {
        for s in Subset::all(p) {
            for t in Subset::all(n - p) {
                out.push((s, t));
            }
        }
    }
    out
}

fn cube_coefficients(n: usize) -> Result<bool> {
    all_true(subset_pairs(n), |(s, t)| {
        let prod = QsymM::product(s, t)?;
        for r in Subset::all(n) {
            if Coeff::from(qsym::cube_product_coefficient(s, t, &r)?) != prod.coeff(&r) {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn r_zeta_routes(n: usize) -> Result<bool> {
    all_true(subset_pairs(n), |(s, t)| {
        for z in shuffles(s.ambient(), t.ambient()) {
            if qsym::r_zeta(s, t, &z)? != qsym::r_zeta_direct(s, t, &z)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn mobius_fibers(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        for s in Subset::all(n) {
            if qsym::mobius_descent_fiber(u, &s)? != qsym::mobius_descent_fiber_pairwise(u, &s)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn descent_multiplicative(n: usize) -> Result<bool> {
    all_true(pairs(n)?, |(u, v)| {
        for basis in [Basis::F, Basis::M] {
            let x = PermExpansion::basis_element(basis, u.clone());
            let y = PermExpansion::basis_element(basis, v.clone());
            let left = qsym::descent_map(&ssym::product(&x, &y)?)?;
            let right = qsym::product(&qsym::descent_map(&x)?, &qsym::descent_map(&y)?)?;
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn descent_comultiplicative(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        for basis in [Basis::F, Basis::M] {
            let x = PermExpansion::basis_element(basis, u.clone());
            let mut left: LinComb<(Subset, Subset)> = LinComb::zero();
            for (pair, c) in &ssym::coproduct(&x)?.terms {
                let a =
                    qsym::descent_map(&PermExpansion::basis_element(basis, pair[0].clone()))?.terms;
                let b =
                    qsym::descent_map(&PermExpansion::basis_element(basis, pair[1].clone()))?.terms;
                for (s, d) in &a {
                    for (t, e) in &b {
                        left.add_term((*s, *t), c * d * e);
                    }
                }
            }
            if left != qsym::coproduct(&qsym::descent_map(&x)?)?.terms {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn descent_antipode(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        for basis in [Basis::F, Basis::M] {
            let x = PermExpansion::basis_element(basis, u.clone());
            if qsym::descent_map(&ssym::antipode(&x)?)? != qsym::antipode(&qsym::descent_map(&x)?)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn descent_splits(n: usize) -> Result<bool> {
    all_true(Subset::all(n), |s| {
        let x = QSymExpansion::basis_element(Basis::M, *s);
        Ok(qsym::descent_map(&qsym::splitting_z(&x)?)? == x)
    })
}

fn lattice_bounds(n: usize) -> Result<bool> {
    let all = all_perms(n)?;
    let pairs: Vec<(usize, usize)> = (0..all.len())
        .flat_map(|i| (0..all.len()).map(move |j| (i, j)))
        .collect();
    all_true(pairs, |&(i, j)| {
        let (u, v) = (&all[i], &all[j]);
        let join = weak_order::join(u, v)?;
        let meet = weak_order::meet(u, v)?;
        let leq = weak_order::leq;
        if !(leq(u, &join)? && leq(v, &join)? && leq(&meet, u)? && leq(&meet, v)?) {
            return Ok(false);
        }
        for w in &all {
            if leq(u, w)? && leq(v, w)? && !leq(&join, w)? {
                return Ok(false);
            }
            if leq(w, u)? && leq(w, v)? && !leq(w, &meet)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn meet_chains(n: usize) -> Result<bool> {
    let all = all_perms(n)?;
    all_true(all.clone(), |u| {
        for v in &all {
            if weak_order::meet_by_chains(u, v)? != weak_order::meet(u, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn mobius_values(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        Ok(weak_order::mobius_row(u)?
            .iter()
            .all(|(_, m)| (-1..=1).contains(m)))
    })
}

fn gdes_monotone(n: usize) -> Result<bool> {
    let g = SymmetricGroup::get(n)?;
    let gd: Vec<u32> = g
        .perms()
        .iter()
        .map(|u| u.global_descent_set().bits())
        .collect();
    all_true((0..g.len()).collect(), |&a| {
        Ok((0..g.len()).all(|b| g.mask(a) & !g.mask(b) != 0 || gd[a] & !gd[b] == 0))
    })
}

fn theta_multiplicative(n: usize) -> Result<bool> {
    all_true(pairs(n)?, |(u, v)| {
        for basis in [Basis::F, Basis::M] {
            let x = PermExpansion::new_dual(basis, LinComb::basis(u.clone()));
            let y = PermExpansion::new_dual(basis, LinComb::basis(v.clone()));
            let left = structure::theta_map(&structure::dual_product(&x, &y)?, Basis::M)?;
            let right = ssym::product(
                &structure::theta_map(&x, Basis::M)?,
                &structure::theta_map(&y, Basis::M)?,
            )?;
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn theta_recursion(n: usize) -> Result<bool> {
    all_true((0..=n).collect(), |&p| {
        structure::verify_theta_recursion(p, n - p)
    })
}

fn theta_invertible(n: usize) -> Result<bool> {
    Ok(structure::theta_table(n)?.is_symmetric() && !structure::theta_determinant(n)?.is_zero())
}

fn phi_routes(n: usize) -> Result<bool> {
    all_true(Subset::all(n), |s| {
        for basis in [Basis::F, Basis::M] {
            let x = QSymExpansion::new_dual(basis, LinComb::basis(*s));
            if structure::phi_map(&x, basis)? != structure::phi_map_composite(&x, basis)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn phi_empty(n: usize) -> Result<bool> {
    let x = QSymExpansion::new_dual(Basis::M, LinComb::basis(Subset::empty(n)));
    Ok(structure::phi_map(&x, Basis::F)?.terms == LinComb::basis(Subset::empty(n)))
}

fn cofree_round_trip(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        let x = PermExpansion::basis_element(Basis::M, u.clone());
        let t = structure::cofree_phi_hat(&x)?;
        let back = structure::cofree_phi_hat(&structure::cofree_psi(&t)?)?;
        Ok(structure::cofree_psi(&t)? == x && back == t)
    })
}

fn cofree_grading(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        let level = structure::block_count(u);
        let t: TensorExpansion = ssym::m_coproduct(u)?;
        Ok(t.terms.keys().all(|pair| {
            structure::block_count(&pair[0]) + structure::block_count(&pair[1]) == level
        }))
    })
}

fn primitives_primitive(n: usize) -> Result<bool> {
    all_true(structure::primitives(n)?, |u| {
        let cop = SsymM::coproduct(u)?;
        Ok(cop.len() == 2 && cop.coeff(&(Permutation::empty(), u.clone())) == Coeff::from(1))
    })
}

fn series_powers(n: usize) -> Result<bool> {
    let g1 = structure::g_series(1, n)?;
    for k in 2..=3 {
        if structure::g_series(k, n)?.coefficients != g1.pow(k).coefficients {
            return Ok(false);
        }
    }
    Ok(true)
}

fn series_reciprocal(n: usize) -> Result<bool> {
    Ok(structure::g1_reciprocal(n)?.coefficients == structure::g_series(1, n)?.coefficients)
}

fn series_determinant(n: usize) -> Result<bool> {
    Ok(Coeff::from(structure::primitives(n)?.len()) == structure::primitive_dim_det(n))
}

fn kernel_dimension(n: usize) -> Result<bool> {
    let fact = |k: usize| (1..=k).map(Coeff::from).product::<Coeff>();
    let expected = fact(n) - (0..n).map(fact).sum::<Coeff>();
    Ok(
        Coeff::from(structure::hopf_kernel_basis(n)?.len()) == expected
            && structure::kernel_dimension(n) == expected,
    )
}

fn kernel_membership(n: usize) -> Result<bool> {
    all_true(all_perms(n)?, |u| {
        let member = structure::in_hopf_kernel(&PermExpansion::basis_element(Basis::M, u.clone()))?;
        Ok(member == !structure::has_identity_tail(u))
    })
}

fn cocycle_in_kernel(n: usize) -> Result<bool> {
    let mut args = Vec::new();
    for p in 0..=n {
        for s in Subset::all(p) {
            for t in Subset::all(n - p) {
                args.push((s, t));
            }
        }
    }
    all_true(args, |(s, t)| {
        let sigma = structure::sigma_cocycle(s, t)?;
        Ok(structure::in_hopf_kernel(&sigma)? && qsym::descent_map(&sigma)?.terms.is_zero())
    })
}

fn closed_constants(n: usize) -> Result<bool> {
    all_true((1..n).collect(), |&p| {
        Ok(structure::closed_identity_constants(p, n - p)?
            == structure::expected_closed_identity_constants(p, n - p))
    })
}

fn sigma_routes(n: usize) -> Result<bool> {
    all_true((1..n).collect(), |&p| {
        let q = n - p;
        let direct = structure::sigma_on_primitives(p, q)?;
        Ok(
            direct == structure::sigma_alpha_formula(p, q, FactorOrder::PQ)?
                && direct == structure::sigma_cocycle(&Subset::empty(p), &Subset::empty(q))?,
        )
    })
}

fn antipode_zeta(n: usize) -> Result<bool> {
    all_true((1..n).collect(), |&p| {
        let q = n - p;
        let zeta = zeta_pq(p, q);
        let lhs = ssym::antipode(&PermExpansion::basis_element(Basis::M, zeta.clone()))?.terms;
        let mut rhs = SsymM::product(&Permutation::identity(p), &Permutation::identity(q))?;
        rhs.add_term(zeta, Coeff::from(-1));
        Ok(lhs == rhs)
    })
}

fn lie_commutator(n: usize) -> Result<bool> {
    all_true((1..n).collect(), |&p| {
        let q = n - p;
        let (a, b) = (Permutation::identity(p), Permutation::identity(q));
        let commutator = SsymM::product(&a, &b)? - SsymM::product(&b, &a)?;
        Ok(structure::lie_cocycle(p, q)?.terms == commutator
            && structure::lie_cocycle_alpha_formula(p, q, FactorOrder::PQ)?.terms == commutator)
    })
}

fn realization(n: usize) -> Result<bool> {
    const VARIABLES: usize = 3;
    all_true(all_perms(n)?, |u| {
        for basis in [Basis::F, Basis::M] {
            let x = PermExpansion::basis_element(basis, u.clone());
            let mut abelian = std::collections::BTreeMap::<Vec<u32>, Coeff>::new();
            for (w, c) in ssym::expand_word_series(&x, VARIABLES)? {
                let mut e = vec![0u32; VARIABLES];
                for letter in w {
                    e[letter as usize - 1] += 1;
                }
                *abelian.entry(e).or_default() += c;
            }
            abelian.retain(|_, c| !c.is_zero());
            if abelian != qsym::expand_polynomial(&qsym::descent_map(&x)?, VARIABLES)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!(parse_suites("all").unwrap().len(), Suite::ALL.len());
        assert_eq!(parse_suites("weak-order").unwrap(), vec![Suite::WeakOrder]);
        assert!(parse_suites("nope").is_err());
        for s in Suite::ALL {
            assert!(!describe(s).is_empty(), "{s} has no checks");
        }
    }

    #[test]
    fn small_run_passes() {
        let report = run(&Suite::ALL, 3);
        assert!(report.all_passed(), "{}", report.to_text());
        assert!(report.results.len() > Suite::ALL.len());
    }
}
