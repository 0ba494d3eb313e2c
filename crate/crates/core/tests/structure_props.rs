use std::sync::OnceLock;

use mha_core::algebras::{mul, star_of, tensor_mul, window_basis, GradedElement, Key, Tensor};
use mha_core::cograded::{deform, Action};
use mha_core::double::{build_double, twist_r, DoubleStructure, Pairing};
use mha_core::groups::{Group, SelfAction, Window};
use mha_core::hopf::{
    antipode_inverse_of, antipode_of, coproduct, make_constant_family, make_group_algebra, make_kg,
    make_ordinary_group_algebra, star_tensor, MhaStructure, MultiplierHopf,
};
use mha_core::Q;
use proptest::prelude::*;

fn s3() -> &'static Group {
    static G: OnceLock<Group> = OnceLock::new();
    G.get_or_init(Group::symmetric3)
}

fn window() -> &'static Window {
    static W: OnceLock<Window> = OnceLock::new();
    W.get_or_init(|| Window::full(s3()).unwrap())
}

fn structures() -> &'static Vec<MhaStructure> {
    static S: OnceLock<Vec<MhaStructure>> = OnceLock::new();
    S.get_or_init(|| {
        let g = s3();
        let cz2 = make_ordinary_group_algebra(&Group::cyclic(2)).unwrap();
        let family = make_constant_family(&cz2, g).unwrap();
        let a = Action::adjoint(g);
        vec![
            make_kg(g),
            make_group_algebra(g),
            family.clone(),
            deform(make_kg(g), &a, window()).unwrap(),
            deform(family, &a, window()).unwrap(),
        ]
    })
}

fn adjoint_double() -> &'static DoubleStructure {
    static D: OnceLock<DoubleStructure> = OnceLock::new();
    D.get_or_init(|| {
        build_double(
            &Pairing::group_functions(s3()).unwrap(),
            &Action::adjoint(s3()),
        )
        .unwrap()
    })
}

/// Random element supported on a basis, with small Gaussian integer coefficients.
fn element(keys: Vec<Key>) -> impl Strategy<Value = GradedElement> {
    prop::collection::vec((0..keys.len(), -3i64..=3, -2i64..=2), 1..4).prop_map(move |terms| {
        terms
            .into_iter()
            .map(|(i, re, im)| {
                (
                    keys[i],
                    &Q::from_integer(re) + &(&Q::i() * &Q::from_integer(im)),
                )
            })
            .collect()
    })
}

fn in_structure() -> impl Strategy<Value = (usize, GradedElement, GradedElement, GradedElement)> {
    (0..structures().len()).prop_flat_map(|s| {
        let keys = window_basis(structures()[s].as_ref(), window());
        (
            Just(s),
            element(keys.clone()),
            element(keys.clone()),
            element(keys),
        )
    })
}

fn delta(h: &dyn MultiplierHopf, x: &GradedElement, w: &Window) -> Tensor {
    let mut out = Tensor::new();
    for (k, c) in x.iter() {
        out.add_scaled(&coproduct(h, *k, w), c);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn self_actions_compose(p in 0i64..6, q in 0i64..6, r in 0i64..6) {
        let g = s3();
        for rho in [SelfAction::Adjoint, SelfAction::Trivial] {
            prop_assert_eq!(rho.apply(g, g.mul(p, q), r), rho.apply(g, p, rho.apply(g, q, r)));
        }
        prop_assert_eq!(g.mul(SelfAction::Adjoint.apply(g, p, q), p), g.mul(p, q));
    }

    #[test]
    fn products_are_associative((s, x, y, z) in in_structure()) {
        let h = structures()[s].as_ref();
        prop_assert_eq!(mul(h, &mul(h, &x, &y), &z), mul(h, &x, &mul(h, &y, &z)));
    }

    #[test]
    fn component_units_act_as_identity((s, x, _y, _z) in in_structure()) {
        let h = structures()[s].as_ref();
        let mut one = GradedElement::new();
        for &p in window().elements() {
            if let Some(u) = h.unit_component(p) {
                one.add(&u);
            }
        }
        prop_assert_eq!(mul(h, &one, &x), x.clone());
        prop_assert_eq!(mul(h, &x, &one), x);
    }

    #[test]
    fn comultiplication_is_multiplicative((s, x, y, _z) in in_structure()) {
        let h = structures()[s].as_ref();
        let w = window();
        prop_assert_eq!(delta(h, &mul(h, &x, &y), w), tensor_mul(h, &delta(h, &x, w), &delta(h, &y, w)));
    }

    #[test]
    fn antipode_is_invertible((s, x, _y, _z) in in_structure()) {
        let h = structures()[s].as_ref();
        prop_assert_eq!(antipode_inverse_of(h, &antipode_of(h, &x)), x.clone());
        prop_assert_eq!(antipode_of(h, &antipode_inverse_of(h, &x)), x);
    }

    #[test]
    fn comultiplication_respects_the_star((s, x, _y, _z) in in_structure()) {
        let h = structures()[s].as_ref();
        prop_assume!(h.has_star());
        let w = window();
        prop_assert_eq!(delta(h, &star_of(h, &x), w), star_tensor(h, &delta(h, &x, w)));
        prop_assert_eq!(star_of(h, &star_of(h, &x)), x);
    }

    #[test]
    fn double_is_associative_and_star_antimultiplicative(
        (x, y, z) in {
            let keys = adjoint_double().table().keys();
            (element(keys.clone()), element(keys.clone()), element(keys))
        }
    ) {
        let h = adjoint_double().table();
        prop_assert_eq!(mul(h, &mul(h, &x, &y), &z), mul(h, &x, &mul(h, &y, &z)));
        prop_assert_eq!(star_of(h, &mul(h, &x, &y)), mul(h, &star_of(h, &y), &star_of(h, &x)));
        prop_assert_eq!(star_of(h, &star_of(h, &x)), x);
    }

    #[test]
    fn double_comultiplication_is_multiplicative(
        (x, y) in {
            let keys = adjoint_double().table().keys();
            (element(keys.clone()), element(keys))
        }
    ) {
        let h = adjoint_double().table();
        let w = adjoint_double().window();
        prop_assert_eq!(delta(h, &mul(h, &x, &y), &w), tensor_mul(h, &delta(h, &x, &w), &delta(h, &y, &w)));
    }

    #[test]
    fn classical_twist_is_conjugation(r in 0i64..6, h in 0i64..6) {
        static R: OnceLock<mha_core::double::BasisMap> = OnceLock::new();
        let map = R.get_or_init(|| twist_r(&Pairing::group_functions(s3()).unwrap(), &Action::trivial()).unwrap());
        let g = s3();
        let conj = g.mul(g.mul(g.inv(h), r), h);
        let expected: Tensor = [(((h, 0), (conj, 0)), Q::one())].into_iter().collect();
        prop_assert_eq!(map.image((r, 0), (h, 0)), expected);
    }
}
