use super::*;
use crate::algebras::{mul, window_basis, GradedMultiplier};
use crate::error::Error;
use crate::groups::Window;

fn full(g: &Group) -> Window {
    Window::full(g).unwrap()
}

fn kg_table(n: usize) -> (Group, Tabulated) {
    let g = Group::cyclic(n);
    let t = Tabulated::materialize(make_kg(&g).as_ref()).unwrap();
    (g, t)
}

#[test]
fn kg_s3_passes_the_full_suite() {
    let g = Group::symmetric3();
    let h = make_kg(&g);
    let r = check_hopf(h.as_ref(), &full(&g));
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    let t = check_t1_t2(h.as_ref(), &full(&g));
    assert!(t
        .notes
        .contains(&"T1: 36 of 36 blocks bijective".to_string()));
    assert!(t
        .notes
        .contains(&"T2: 36 of 36 blocks bijective".to_string()));
}

#[test]
fn kg_structure_maps() {
    let g = Group::symmetric3();
    let h = make_kg(&g);
    for p in g.elements().unwrap() {
        assert_eq!(h.unit_component(p), Some(GradedElement::basis((p, 0))));
        assert_eq!(
            antipode_of(h.as_ref(), &h.antipode((p, 0))),
            GradedElement::basis((p, 0))
        );
        for q in g.elements().unwrap() {
            for r in g.elements().unwrap() {
                let nonzero = !h.coproduct_part((r, 0), p, q).is_zero();
                assert_eq!(nonzero, g.mul(p, q) == r);
            }
        }
    }
}

#[test]
fn group_algebra_structure_maps() {
    let g = Group::symmetric3();
    let h = make_group_algebra(&g);
    let e = g.identity();
    for p in g.elements().unwrap() {
        assert_eq!(h.coproduct_legs((p, 0)), Some(vec![(p, p)]));
        assert_eq!(h.coproduct_part((p, 0), p, p).len(), 1);
        assert_eq!(
            mul(
                h.as_ref(),
                &h.antipode((p, 0)),
                &GradedElement::basis((p, 0))
            ),
            GradedElement::basis((e, 0))
        );
        for q in g.elements().unwrap() {
            assert_eq!(
                counit_of(h.as_ref(), &h.mul_basis((p, 0), (q, 0))),
                &h.counit((p, 0)) * &h.counit((q, 0))
            );
        }
    }
    let r = check_hopf(h.as_ref(), &full(&g));
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn group_algebra_z2_t1_is_bijective() {
    let g = Group::cyclic(2);
    let r = check_t1_t2(make_group_algebra(&g).as_ref(), &full(&g));
    assert!(r.passed());
}

#[test]
fn zero_block_fails_t1_with_witness() {
    let (g, mut t) = kg_table(2);
    t.coproduct.get_mut(&(1, 0)).unwrap().remove(&(1, 0));
    let r = check_t1_t2(&t, &full(&g));
    let e = r.entry("T1 bijective").unwrap();
    assert!(!e.passed);
    assert!(e.witness.as_ref().unwrap().contains("block (1, 0)"));
}

#[test]
fn perturbed_counit_fails() {
    let (g, mut t) = kg_table(2);
    t.counit.insert((0, 0), Q::from(2));
    let r = check_counit(&t, &full(&g));
    assert!(!r.passed());
    assert!(r.failures().next().unwrap().witness.is_some());
}

#[test]
fn identity_antipode_on_kz3_fails() {
    let (g, mut t) = kg_table(3);
    for p in 0..3 {
        t.antipode.insert((p, 0), GradedElement::basis((p, 0)));
        t.antipode_inverse
            .insert((p, 0), GradedElement::basis((p, 0)));
    }
    let r = check_antipode(&t, &full(&g));
    assert!(!r.entry("antipode left identity").unwrap().passed);
}

struct LinearStar(GroupAlgebra);

impl GradedAlgebra for LinearStar {
    fn group(&self) -> &Group {
        self.0.group()
    }
    fn grading(&self) -> Grading {
        self.0.grading()
    }
    fn dim(&self, p: Elem) -> usize {
        self.0.dim(p)
    }
    fn mul_basis(&self, x: Key, y: Key) -> GradedElement {
        self.0.mul_basis(x, y)
    }
    fn unit_component(&self, p: Elem) -> Option<GradedElement> {
        self.0.unit_component(p)
    }
    fn star(&self, x: &GradedElement) -> Option<GradedElement> {
        Some(x.clone())
    }
    fn has_star(&self) -> bool {
        true
    }
}

impl MultiplierHopf for LinearStar {
    fn indexing(&self) -> Indexing {
        Indexing::Standard
    }
    fn coproduct_part(&self, x: Key, l: Elem, r: Elem) -> Tensor {
        self.0.coproduct_part(x, l, r)
    }
    fn coproduct_legs(&self, x: Key) -> Option<Vec<(Elem, Elem)>> {
        self.0.coproduct_legs(x)
    }
    fn counit(&self, x: Key) -> Q {
        self.0.counit(x)
    }
    fn antipode(&self, x: Key) -> GradedElement {
        self.0.antipode(x)
    }
    fn antipode_inverse(&self, x: Key) -> GradedElement {
        self.0.antipode_inverse(x)
    }
    fn label(&self) -> String {
        "linear".into()
    }
}

#[test]
fn star_checks() {
    let g = Group::symmetric3();
    assert!(check_star(make_kg(&g).as_ref(), &full(&g))
        .unwrap()
        .passed());
    assert!(check_star(make_group_algebra(&g).as_ref(), &full(&g))
        .unwrap()
        .passed());
    let z3 = Group::cyclic(3);
    let r = check_star(&LinearStar(GroupAlgebra::new(&z3)), &full(&z3)).unwrap();
    assert!(!r.entry("star antilinear").unwrap().passed);
    let (z2, mut t) = kg_table(2);
    t.star = None;
    assert!(matches!(
        check_star(&t, &full(&z2)),
        Err(Error::StarAbsent(_))
    ));
}

fn values(f: &GradedFunctional, keys: &[Key]) -> Vec<Q> {
    f.values_on(keys)
}

#[test]
fn kg_integrals() {
    let g = Group::symmetric3();
    let h = make_kg(&g);
    let w = full(&g);
    let keys = window_basis(h.as_ref(), &w);
    let left = solve_left_integral(h.as_ref(), &w);
    assert_eq!(left.dimension, 1);
    assert_eq!(values(left.functional().unwrap(), &keys), vec![Q::one(); 6]);
    let right = solve_right_integral(h.as_ref(), &w);
    assert!(right
        .functional()
        .unwrap()
        .equals_on(left.functional().unwrap(), &keys));
}

#[test]
fn group_algebra_integrals() {
    let g = Group::symmetric3();
    let h = make_group_algebra(&g);
    let w = full(&g);
    let keys = window_basis(h.as_ref(), &w);
    let expected: Vec<Q> = keys
        .iter()
        .map(|k| {
            if k.0 == g.identity() {
                Q::one()
            } else {
                Q::zero()
            }
        })
        .collect();
    for sol in [
        solve_left_integral(h.as_ref(), &w),
        solve_right_integral(h.as_ref(), &w),
    ] {
        assert_eq!(sol.dimension, 1);
        assert_eq!(values(sol.functional().unwrap(), &keys), expected);
    }
}

#[test]
fn integers_integral_on_window() {
    let z = Group::integers();
    let h = make_kg(&z);
    let w = Window::range(&z, -5, 5).unwrap();
    let sol = solve_left_integral(h.as_ref(), &w);
    assert_eq!(sol.dimension, 1);
    let keys = window_basis(h.as_ref(), &w);
    assert_eq!(values(sol.functional().unwrap(), &keys), vec![Q::one(); 11]);
    assert!(check_hopf(h.as_ref(), &w).passed());
}

#[test]
fn modular_data() {
    let g = Group::symmetric3();
    let w = full(&g);
    let kg = make_kg(&g);
    let phi = solve_left_integral(kg.as_ref(), &w)
        .functional()
        .unwrap()
        .clone();
    let delta = modular_element(kg.as_ref(), &phi, &w).unwrap();
    assert!(delta.equals_on(&GradedMultiplier::unit(kg.clone()), &w));
    assert!(modular_automorphism(kg.as_ref(), &phi, &w)
        .unwrap()
        .is_identity());

    let ca = make_group_algebra(&g);
    let phi_a = solve_left_integral(ca.as_ref(), &w)
        .functional()
        .unwrap()
        .clone();
    let delta_a = modular_element(ca.as_ref(), &phi_a, &w).unwrap();
    assert_eq!(
        delta_a.component_element(g.identity()),
        GradedElement::basis((g.identity(), 0))
    );
    assert!(delta_a.component_element(1).is_zero());
    let sigma = modular_automorphism(ca.as_ref(), &phi_a, &w).unwrap();
    assert!(sigma.is_identity() && sigma.is_automorphism);

    let bent = GradedFunctional::new(|k: Key| if k.0 == 1 { Q::from(2) } else { Q::one() });
    assert!(matches!(
        modular_element(kg.as_ref(), &bent, &w),
        Err(Error::Inconsistent(_))
    ));
    let holes = GradedFunctional::new(|k: Key| if k.0 == 1 { Q::zero() } else { Q::one() });
    assert!(matches!(
        modular_automorphism(kg.as_ref(), &holes, &w),
        Err(Error::NotFaithful(_))
    ));
}

#[test]
fn faithfulness_and_positivity() {
    let g = Group::symmetric3();
    let w = full(&g);
    let kg = make_kg(&g);
    let sum = GradedFunctional::new(|_| Q::one());
    assert!(check_faithful(kg.as_ref(), &sum, &w).passed());
    assert!(!check_faithful(kg.as_ref(), &GradedFunctional::zero(), &w).passed());
    assert!(check_positive_integral(kg.as_ref(), &sum, &w)
        .unwrap()
        .passed());
    let negative = GradedFunctional::new(|k: Key| if k.0 == 2 { -Q::one() } else { Q::one() });
    assert!(!check_positive_integral(kg.as_ref(), &negative, &w)
        .unwrap()
        .passed());

    let z2 = Group::cyclic(2);
    let ca = make_group_algebra(&z2);
    let at_e = GradedFunctional::new(|k: Key| if k.0 == 0 { Q::one() } else { Q::zero() });
    assert!(check_faithful(ca.as_ref(), &at_e, &full(&z2)).passed());
    let cs3 = make_group_algebra(&g);
    let at_e3 = GradedFunctional::new(|k: Key| if k.0 == 0 { Q::one() } else { Q::zero() });
    assert!(check_positive_integral(cs3.as_ref(), &at_e3, &w)
        .unwrap()
        .passed());
}

#[test]
fn constant_family_of_group_algebra() {
    let cz2 = make_ordinary_group_algebra(&Group::cyclic(2)).unwrap();
    let triv = Group::trivial();
    assert!(check_hopf(&cz2, &full(&triv)).passed());
    let g = Group::symmetric3();
    let b = make_constant_family(&cz2, &g).unwrap();
    let w = full(&g);
    assert!(g.elements().unwrap().iter().all(|&p| b.dim(p) == 2));
    let r = check_hopf(b.as_ref(), &w);
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    for p in g
        .elements()
        .unwrap()
        .into_iter()
        .filter(|&p| p != g.identity())
    {
        assert!(b.counit((p, 0)).is_zero() && b.counit((p, 1)).is_zero());
    }
    let phi = solve_left_integral(b.as_ref(), &w);
    assert_eq!(phi.dimension, 1);
}

#[test]
fn constant_family_rejects_multi_component_input() {
    let g = Group::cyclic(2);
    assert!(matches!(
        make_constant_family(make_kg(&g).as_ref(), &g),
        Err(Error::Unsupported(_))
    ));
    let z = Group::integers();
    assert!(make_constant_family(make_kg(&z).as_ref(), &g).is_err());
}

#[test]
fn inverted_antipode_table_matches() {
    let (_, mut t) = kg_table(3);
    let before = t.antipode_inverse.clone();
    t.antipode_inverse.clear();
    t.invert_antipode().unwrap();
    assert_eq!(t.antipode_inverse, before);
    t.antipode.insert((1, 0), GradedElement::new());
    assert!(t.invert_antipode().is_err());
}

#[test]
fn indexing_legs_are_consistent() {
    let g = Group::symmetric3();
    let ixs = [
        Indexing::Standard,
        Indexing::Reversed,
        Indexing::Twisted(Box::new(Indexing::Reversed), SelfAction::Adjoint),
        Indexing::inverted(Indexing::Twisted(
            Box::new(Indexing::Standard),
            SelfAction::Adjoint,
        )),
        Indexing::Inverted(Box::new(Indexing::Twisted(
            Box::new(Indexing::Reversed),
            SelfAction::Adjoint,
        ))),
    ];
    for ix in ixs {
        for p in 0..6 {
            for q in 0..6 {
                let t = ix.source(&g, p, q);
                assert_eq!(ix.left_leg(&g, t, q), p, "{ix:?}");
                assert!(ix.right_legs(&g, t, p).contains(&q), "{ix:?}");
            }
        }
    }
}
