//! Shared fixtures for the benchmark suites.

use mha_core::cograded::Action;
use mha_core::double::Pairing;
use mha_core::groups::{Group, Window};
use mha_core::hopf::{make_constant_family, make_ordinary_group_algebra, MhaStructure};

pub fn s3() -> Group {
    Group::symmetric3()
}

pub fn full_window(g: &Group) -> Window {
    Window::full(g).expect("finite group")
}

/// ℂ[Z₂] as a constant family over `g`.
pub fn constant_family(g: &Group) -> MhaStructure {
    let cz2 = make_ordinary_group_algebra(&Group::cyclic(2)).expect("group algebra");
    make_constant_family(&cz2, g).expect("constant family")
}

pub fn s3_pairing() -> Pairing {
    Pairing::group_functions(&s3()).expect("pairing")
}

pub fn adjoint_s3() -> Action {
    Action::adjoint(&s3())
}
