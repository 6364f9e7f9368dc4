mod common;

use common::*;
use hopfperm::hopf::{self, HopfBasis};
use hopfperm::perm::{all_perms, shuffles};
use hopfperm::qsym::{self, QsymF, QsymM};
use hopfperm::ssym::{self, SsymF, SsymM};
use hopfperm::weak_order;
use hopfperm::{Basis, Coeff, Composition, PermExpansion, Permutation, QSymExpansion, Subset};
use proptest::prelude::*;

fn perm_strategy(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|w| to_perm(&w))
}

fn subset_strategy(max: usize) -> impl Strategy<Value = Subset> {
    (0..=max)
        .prop_flat_map(|n| (Just(n), 0u32..(1u32 << n.saturating_sub(1))))
        .prop_map(|(n, bits)| Subset::from_bits(n, bits).unwrap())
}

#[test]
fn basis_changes_match_mobius_oracle() {
    for n in 0..=5 {
        for u in perms(n) {
            assert_eq!(
                ssym::m_to_f_single(&to_perm(&u)).unwrap(),
                lc(&m_to_f(&u)),
                "M_{u:?}"
            );
            assert_eq!(
                ssym::f_to_m_single(&to_perm(&u)).unwrap(),
                lc(&f_to_m(&u)),
                "F_{u:?}"
            );
        }
    }
}

#[test]
fn higher_coproduct_matches_iteration() {
    for n in 0..=5 {
        for u in all_perms(n).unwrap() {
            for basis in [Basis::F, Basis::M] {
                let x = PermExpansion::basis_element(basis, u.clone());
                for k in 1..=3 {
                    let closed = ssym::higher_coproduct(&x, k).unwrap();
                    let iterated = match basis {
                        Basis::F => hopf::iterated_coproduct::<SsymF>(&x.terms, k).unwrap(),
                        Basis::M => hopf::iterated_coproduct::<SsymM>(&x.terms, k).unwrap(),
                    };
                    assert_eq!(closed.terms, iterated, "Delta^({k}) {basis}_{u}");
                }
            }
        }
    }
}

#[test]
fn higher_product_matches_iteration() {
    let blocks = [p("21"), p("1"), p("12")];
    for basis in [Basis::F, Basis::M] {
        let direct = ssym::higher_product(&blocks, basis).unwrap();
        let mut iter = PermExpansion::basis_element(basis, Permutation::empty());
        for b in &blocks {
            iter = ssym::product(&iter, &PermExpansion::basis_element(basis, b.clone())).unwrap();
        }
        assert_eq!(direct, iter);
    }
    let w = p("35142");
    let count = ssym::alpha_blocks(&blocks, &w).unwrap();
    let expected = ssym::higher_product(&blocks, Basis::M)
        .unwrap()
        .terms
        .coeff(&w);
    assert_eq!(Coeff::from(count), expected);
}

#[test]
fn pi_powers_agree() {
    for n in 0..=4 {
        for u in all_perms(n).unwrap() {
            for basis in [Basis::F, Basis::M] {
                let x = PermExpansion::basis_element(basis, u.clone());
                for k in 0..=n + 1 {
                    assert_eq!(
                        ssym::pi_power(&x, k).unwrap(),
                        ssym::pi_power_closed(&x, k).unwrap(),
                        "pi^{k} {basis}_{u}"
                    );
                }
            }
        }
    }
}

#[test]
fn antipode_is_an_anti_homomorphism() {
    for n in 0..=5 {
        for p in 0..=n {
            for u in all_perms(p).unwrap() {
                for v in all_perms(n - p).unwrap() {
                    let (x, y) = (
                        PermExpansion::basis_element(Basis::M, u.clone()),
                        PermExpansion::basis_element(Basis::M, v.clone()),
                    );
                    let left = ssym::antipode(&ssym::product(&x, &y).unwrap()).unwrap();
                    let right =
                        ssym::product(&ssym::antipode(&y).unwrap(), &ssym::antipode(&x).unwrap())
                            .unwrap();
                    assert_eq!(left, right, "S(M_{u} M_{v})");
                }
            }
        }
    }
}

#[test]
fn antipode_sets_are_consistent() {
    for n in 1..=4 {
        for v in all_perms(n).unwrap() {
            for w in all_perms(n).unwrap() {
                for s in v.global_descent_set().subsets() {
                    let a = ssym::a_set(&v, &s, &w).unwrap();
                    assert_eq!(a.len(), ssym::alpha_s(&v, &s, &w).unwrap());
                    let c = ssym::c_set(&v, &s, &w).unwrap();
                    assert!(c.iter().all(|x| a.contains(x)));
                }
            }
        }
    }
}

#[test]
fn quasi_shuffles_match_polynomial_oracle() {
    for n in 0..=5 {
        for a in compositions(n) {
            for k in 0..=n.min(8 - n) {
                for b in compositions(k) {
                    let got = qsym::m_quasi_shuffle(
                        &Composition::new(a.clone()).unwrap(),
                        &Composition::new(b.clone()).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(got.terms, qsym_lc(&qsym_m_product(&a, &b)), "{a:?} * {b:?}");
                }
            }
        }
    }
}

#[test]
fn qsym_bases_and_polynomials() {
    for n in 0..=5 {
        for s in Subset::all(n) {
            let x = QSymExpansion::basis_element(Basis::F, s);
            let back = qsym::to_basis(&qsym::to_basis(&x, Basis::M).unwrap(), Basis::F).unwrap();
            assert_eq!(back, x);
            let m = n.clamp(1, 4);
            let poly = qsym::expand_polynomial(&x, m).unwrap();
            let oracle: std::collections::BTreeMap<_, _> = fundamental_qsym(&s, m)
                .into_iter()
                .map(|(e, c)| (e, Coeff::from(c)))
                .collect();
            assert_eq!(poly, oracle, "F_{s}");
            let parts = composition_of(&s);
            let mono = qsym::expand_monomial(&Composition::new(parts.clone()).unwrap(), m).unwrap();
            let oracle: std::collections::BTreeMap<_, _> = monomial_qsym(&parts, m)
                .into_iter()
                .map(|(e, c)| (e, Coeff::from(c)))
                .collect();
            assert_eq!(mono, oracle, "M_{parts:?}");
        }
    }
}

#[test]
fn qsym_coproducts_and_antipodes() {
    for n in 0..=5 {
        for s in Subset::all(n) {
            let parts = if n == 0 { 0 } else { s.len() + 1 };
            for (name, cop, cuts) in [
                ("M", QsymM::coproduct(&s).unwrap(), parts + 1),
                ("F", QsymF::coproduct(&s).unwrap(), n + 1),
            ] {
                let total: Coeff = cop.iter().map(|(_, c)| c.clone()).sum();
                assert_eq!(total, Coeff::from(cuts), "{name} coproduct of {s}");
            }
            let x = QSymExpansion::basis_element(Basis::M, s);
            let via_f = qsym::to_basis(
                &qsym::antipode(&qsym::to_basis(&x, Basis::F).unwrap()).unwrap(),
                Basis::M,
            )
            .unwrap();
            assert_eq!(qsym::antipode(&x).unwrap(), via_f, "S(M_{s})");
            let twice = qsym::antipode(&qsym::antipode(&x).unwrap()).unwrap();
            assert_eq!(twice, x, "S^2 = id in the commutative algebra");
        }
    }
}

#[test]
fn cube_faces_are_unique_and_consistent() {
    for n in 2..=6 {
        assert!(qsym::face_uniqueness_check(n).unwrap());
        for p in 1..n {
            for z in shuffles(p, n - p) {
                for s in Subset::all(p) {
                    for t in Subset::all(n - p) {
                        assert_eq!(
                            qsym::r_zeta(&s, &t, &z).unwrap(),
                            qsym::r_zeta_direct(&s, &t, &z).unwrap()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn mobius_fibers_agree() {
    for n in 0..=4 {
        for u in all_perms(n).unwrap() {
            for s in Subset::all(n) {
                let fiber = qsym::mobius_descent_fiber(&u, &s).unwrap();
                assert_eq!(fiber, qsym::mobius_descent_fiber_pairwise(&u, &s).unwrap());
                let direct: i64 = perms(n)
                    .into_iter()
                    .filter(|v| leq(&word(&u), v) && subset(n, &descents(v)) == s)
                    .map(|v| mobius(&word(&u), &v))
                    .sum();
                assert_eq!(fiber, direct);
            }
        }
    }
}

#[test]
fn weak_order_covers_and_intervals() {
    for n in 0..=5 {
        for u in all_perms(n).unwrap() {
            for c in weak_order::covers(&u) {
                assert_eq!(c.length(), u.length() + 1);
                assert!(weak_order::leq(&u, &c).unwrap());
                assert!(weak_order::lower_covers(&c).contains(&u));
            }
            let down = weak_order::downset(&u).unwrap();
            let oracle = perms(n).into_iter().filter(|x| leq(x, &word(&u))).count();
            assert_eq!(down.len(), oracle);
        }
        let top = Permutation::longest(n);
        assert_eq!(
            weak_order::interval(&Permutation::identity(n), &top)
                .unwrap()
                .len(),
            perms(n).len()
        );
    }
    assert!(weak_order::leq(&p("12"), &p("123")).is_err());
}

#[test]
fn parse_errors_are_reported() {
    assert!("1 3".parse::<Permutation>().is_err());
    assert!("113".parse::<Permutation>().is_err());
    assert!(Subset::new(3, &[3]).is_err());
    assert!(Composition::new(vec![1, 0]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_text_round_trips(u in perm_strategy(9)) {
        let text = u.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), u);
    }

    #[test]
    fn subset_text_round_trips(s in subset_strategy(9)) {
        let text = format!("{s:?}");
        let back: Subset = text.parse().unwrap();
        prop_assert_eq!(s.to_composition().to_string().parse::<Composition>().unwrap(), s.to_composition());
        prop_assert_eq!(back, s);
    }

    #[test]
    fn f_product_matches_word_shuffle(u in perm_strategy(3), v in perm_strategy(3)) {
        let got = ssym::f_product(&u, &v).unwrap().terms;
        prop_assert_eq!(got, lc(&f_product(&word(&u), &word(&v))));
    }

    #[test]
    fn m_and_f_round_trip(u in perm_strategy(5)) {
        let x = PermExpansion::basis_element(Basis::M, u);
        let back = ssym::to_basis(&ssym::to_basis(&x, Basis::F).unwrap(), Basis::M).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn inverse_and_composition(u in perm_strategy(7)) {
        let n = u.degree();
        prop_assert!(u.compose(&u.inverse()).unwrap().is_identity());
        prop_assert_eq!(u.inversion_set().len(), u.length());
        prop_assert!(weak_order::leq(&Permutation::identity(n), &u).unwrap());
        prop_assert!(weak_order::leq(&u, &Permutation::longest(n)).unwrap());
    }

    #[test]
    fn join_and_meet_bound(u in perm_strategy(6), v in perm_strategy(6)) {
        prop_assume!(u.degree() == v.degree());
        let j = weak_order::join(&u, &v).unwrap();
        let m = weak_order::meet(&u, &v).unwrap();
        prop_assert!(weak_order::leq(&u, &j).unwrap() && weak_order::leq(&v, &j).unwrap());
        prop_assert!(weak_order::leq(&m, &u).unwrap() && weak_order::leq(&m, &v).unwrap());
    }
}
