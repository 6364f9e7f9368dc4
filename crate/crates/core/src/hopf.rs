//! Generic graded connected Hopf algebra machinery over a combinatorial basis.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::linear::{Coeff, LinComb};

/// A graded connected bialgebra given by structure maps on a basis.
pub trait HopfBasis {
    type Index: Clone + Ord + Debug;

    fn degree(index: &Self::Index) -> usize;
    fn unit() -> Self::Index;
    /// The basis elements of degree `n`, in canonical order.
    fn basis(n: usize) -> Result<Vec<Self::Index>>;
    fn product(a: &Self::Index, b: &Self::Index) -> Result<LinComb<Self::Index>>;
    fn coproduct(a: &Self::Index) -> Result<LinComb<(Self::Index, Self::Index)>>;
}

pub type Elem<H> = LinComb<<H as HopfBasis>::Index>;
pub type Tensor<H> = LinComb<Vec<<H as HopfBasis>::Index>>;
pub type Tensor2<H> = LinComb<(<H as HopfBasis>::Index, <H as HopfBasis>::Index)>;

pub fn one<H: HopfBasis>() -> Elem<H> {
    LinComb::basis(H::unit())
}

pub fn mul<H: HopfBasis>(x: &Elem<H>, y: &Elem<H>) -> Result<Elem<H>> {
    let mut out = LinComb::zero();
    for (a, c) in x {
        for (b, d) in y {
            out.add_scaled(&H::product(a, b)?, &(c * d));
        }
    }
    Ok(out)
}

pub fn comul<H: HopfBasis>(x: &Elem<H>) -> Result<Tensor2<H>> {
    x.try_map_linear(|a| H::coproduct(a))
}

/// The coefficient of the unit.
pub fn counit<H: HopfBasis>(x: &Elem<H>) -> Coeff {
    x.coeff(&H::unit())
}

/// `Delta^{(k)}`: the `(k+1)`-fold coproduct, split off left to right.
pub fn iterated_coproduct<H: HopfBasis>(x: &Elem<H>, k: usize) -> Result<Tensor<H>> {
    let mut current: Tensor<H> = x
        .iter()
        .map(|(a, c)| (vec![a.clone()], c.clone()))
        .collect();
    for _ in 0..k {
        let mut next = LinComb::zero();
        for (tuple, c) in &current {
            let (last, init) = tuple.split_last().expect("nonempty tuple");
            for ((l, r), d) in &H::coproduct(last)? {
                let mut t = init.to_vec();
                t.push(l.clone());
                t.push(r.clone());
                next.add_term(t, c * d);
            }
        }
        current = next;
    }
    Ok(current)
}

/// Multiply out each tuple from the left; the empty tuple is the unit.
pub fn iterated_product<H: HopfBasis>(t: &Tensor<H>) -> Result<Elem<H>> {
    let mut out = LinComb::zero();
    for (tuple, c) in t {
        let mut acc = one::<H>();
        for f in tuple {
            acc = mul::<H>(&acc, &LinComb::basis(f.clone()))?;
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

/// `pi^{*k}` with `pi = id - u.epsilon`.
pub fn pi_power<H: HopfBasis>(x: &Elem<H>, k: usize) -> Result<Elem<H>> {
    if k == 0 {
        return Ok(LinComb::from_term(H::unit(), counit::<H>(x)));
    }
    let t = iterated_coproduct::<H>(x, k - 1)?;
    let kept = t.filter(|tuple| tuple.iter().all(|f| H::degree(f) > 0));
    iterated_product::<H>(&kept)
}

/// `S = sum_k (-1)^k pi^{*k}`, truncated at the top degree of `x`.
pub fn takeuchi_antipode<H: HopfBasis>(x: &Elem<H>) -> Result<Elem<H>> {
    let top = x.keys().map(H::degree).max().unwrap_or(0);
    let mut out = LinComb::zero();
    for k in 0..=top {
        let sign = if k % 2 == 0 {
            Coeff::one()
        } else {
            -Coeff::one()
        };
        out.add_scaled(&pi_power::<H>(x, k)?, &sign);
    }
    Ok(out)
}

/// Product in `H (x) H`.
pub fn tensor_mul<H: HopfBasis>(a: &Tensor2<H>, b: &Tensor2<H>) -> Result<Tensor2<H>> {
    let mut out = LinComb::zero();
    for ((a1, a2), c) in a {
        for ((b1, b2), d) in b {
            let left = H::product(a1, b1)?;
            let right = H::product(a2, b2)?;
            let cd = c * d;
            for (l, e) in &left {
                for (r, f) in &right {
                    out.add_term((l.clone(), r.clone()), &cd * e * f);
                }
            }
        }
    }
    Ok(out)
}

/// `m (f (x) g) Delta (x)`.
pub fn convolve<H, F, G>(x: &Elem<H>, f: F, g: G) -> Result<Elem<H>>
where
    H: HopfBasis,
    F: Fn(&Elem<H>) -> Result<Elem<H>>,
    G: Fn(&Elem<H>) -> Result<Elem<H>>,
{
    let mut out = LinComb::zero();
    for ((a, b), c) in &comul::<H>(x)? {
        let fa = f(&LinComb::basis(a.clone()))?;
        let gb = g(&LinComb::basis(b.clone()))?;
        out.add_scaled(&mul::<H>(&fa, &gb)?, c);
    }
    Ok(out)
}

pub fn check_associativity<H: HopfBasis>(a: &H::Index, b: &H::Index, c: &H::Index) -> Result<bool> {
    let (a, b, c) = (
        LinComb::basis(a.clone()),
        LinComb::basis(b.clone()),
        LinComb::basis(c.clone()),
    );
    let left = mul::<H>(&mul::<H>(&a, &b)?, &c)?;
    let right = mul::<H>(&a, &mul::<H>(&b, &c)?)?;
    Ok(left == right)
}

pub fn check_coassociativity<H: HopfBasis>(a: &H::Index) -> Result<bool> {
    let mut left: Tensor<H> = LinComb::zero();
    let mut right: Tensor<H> = LinComb::zero();
    for ((x, y), c) in &H::coproduct(a)? {
        for ((x1, x2), d) in &H::coproduct(x)? {
            left.add_term(vec![x1.clone(), x2.clone(), y.clone()], c * d);
        }
        for ((y1, y2), d) in &H::coproduct(y)? {
            right.add_term(vec![x.clone(), y1.clone(), y2.clone()], c * d);
        }
    }
    Ok(left == right)
}

pub fn check_compatibility<H: HopfBasis>(a: &H::Index, b: &H::Index) -> Result<bool> {
    let left = comul::<H>(&H::product(a, b)?)?;
    let right = tensor_mul::<H>(&H::coproduct(a)?, &H::coproduct(b)?)?;
    Ok(left == right)
}

/// `(epsilon (x) id) Delta = id = (id (x) epsilon) Delta`, and the unit is a unit.
pub fn check_counit_and_unit<H: HopfBasis>(a: &H::Index) -> Result<bool> {
    let x: Elem<H> = LinComb::basis(a.clone());
    let cop = H::coproduct(a)?;
    let mut left = LinComb::zero();
    let mut right = LinComb::zero();
    for ((l, r), c) in &cop {
        if *l == H::unit() {
            left.add_term(r.clone(), c.clone());
        }
        if *r == H::unit() {
            right.add_term(l.clone(), c.clone());
        }
    }
    let unit_ok = H::product(&H::unit(), a)? == x && H::product(a, &H::unit())? == x;
    let eps_ok = counit::<H>(&x)
        == if H::degree(a) == 0 {
            Coeff::one()
        } else {
            Coeff::zero()
        };
    Ok(left == x && right == x && unit_ok && eps_ok)
}

/// `m (S (x) id) Delta = u.epsilon = m (id (x) S) Delta` for a supplied antipode.
pub fn check_antipode<H, S>(a: &H::Index, antipode: S) -> Result<bool>
where
    H: HopfBasis,
    S: Fn(&Elem<H>) -> Result<Elem<H>>,
{
    let x: Elem<H> = LinComb::basis(a.clone());
    let expected = LinComb::from_term(H::unit(), counit::<H>(&x));
    let id = |y: &Elem<H>| Ok(y.clone());
    let left = convolve::<H, _, _>(&x, &antipode, id)?;
    let right = convolve::<H, _, _>(&x, id, &antipode)?;
    Ok(left == expected && right == expected)
}

/// All basis elements of degree at most `max`.
pub fn basis_upto<H: HopfBasis>(max: usize) -> Result<Vec<H::Index>> {
    let mut out = Vec::new();
    for n in 0..=max {
        out.extend(H::basis(n)?);
    }
    Ok(out)
}

/// Counts of failures for each Hopf axiom over all basis elements of total degree `<= max`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: usize,
    pub associativity_failures: usize,
    pub coassociativity_failures: usize,
    pub compatibility_failures: usize,
    pub counit_failures: usize,
    pub antipode_failures: usize,
}

impl AxiomReport {
    pub fn failures(&self) -> usize {
        self.associativity_failures
            + self.coassociativity_failures
            + self.compatibility_failures
            + self.counit_failures
            + self.antipode_failures
    }
}

/// Check every axiom on all basis elements (and pairs, triples) of total degree `<= max`.
pub fn check_axioms<H, S>(max: usize, antipode: S) -> Result<AxiomReport>
where
    H: HopfBasis,
    S: Fn(&Elem<H>) -> Result<Elem<H>>,
{
    let mut report = AxiomReport::default();
    let by_degree: Vec<Vec<H::Index>> = (0..=max).map(H::basis).collect::<Result<_>>()?;
    for (n, elems) in by_degree.iter().enumerate() {
        for a in elems {
            report.checks += 3;
            if !check_coassociativity::<H>(a)? {
                report.coassociativity_failures += 1;
            }
            if !check_counit_and_unit::<H>(a)? {
                report.counit_failures += 1;
            }
            if !check_antipode::<H, _>(a, &antipode)? {
                report.antipode_failures += 1;
            }
        }
        for m in 0..=max - n {
            for a in elems {
                for b in &by_degree[m] {
                    report.checks += 1;
                    if !check_compatibility::<H>(a, b)? {
                        report.compatibility_failures += 1;
                    }
                    for k in 0..=max - n - m {
                        for c in &by_degree[k] {
                            report.checks += 1;
                            if !check_associativity::<H>(a, b, c)? {
                                report.associativity_failures += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Every axiom on the basis elements (pairs, triples) whose total degree is exactly `n`.
pub fn check_axioms_in_degree<H, S>(n: usize, antipode: S) -> Result<AxiomReport>
where
    H: HopfBasis,
    S: Fn(&Elem<H>) -> Result<Elem<H>>,
{
    let mut report = AxiomReport::default();
    let by_degree: Vec<Vec<H::Index>> = (0..=n).map(H::basis).collect::<Result<_>>()?;
    for a in &by_degree[n] {
        report.checks += 3;
        report.coassociativity_failures += usize::from(!check_coassociativity::<H>(a)?);
        report.counit_failures += usize::from(!check_counit_and_unit::<H>(a)?);
        report.antipode_failures += usize::from(!check_antipode::<H, _>(a, &antipode)?);
    }
    for i in 0..=n {
        for a in &by_degree[i] {
            for b in &by_degree[n - i] {
                report.checks += 1;
                report.compatibility_failures += usize::from(!check_compatibility::<H>(a, b)?);
            }
            for j in 0..=n - i {
                for b in &by_degree[j] {
                    for c in &by_degree[n - i - j] {
                        report.checks += 1;
                        report.associativity_failures +=
                            usize::from(!check_associativity::<H>(a, b, c)?);
                    }
                }
            }
        }
    }
    Ok(report)
}
