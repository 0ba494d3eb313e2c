//! Multiplier Hopf structures on graded algebras: block comultiplication, counit, antipode,
//! the axiom suite, integrals and modular data.

mod axioms;
mod integrals;
mod structures;

use std::sync::Arc;

pub use axioms::{
    check_antipode, check_coassociativity, check_comultiplicative, check_counit, check_hopf,
    check_star, check_t1_t2, star_tensor,
};
pub use integrals::{
    check_faithful, check_positive_integral, integral_residual, modular_automorphism,
    modular_element, solve_left_integral, solve_right_integral, GradedFunctional, IntegralSolution,
    ModularAutomorphism,
};
pub use structures::{
    make_constant_family, make_group_algebra, make_kg, make_ordinary_group_algebra, ConstantFamily,
    GroupAlgebra, Tabulated,
};

use crate::algebras::{
    left_multiply, right_multiply, GradedAlgebra, GradedElement, Grading, Key, Side, Tensor,
};
use crate::exact::GaussianRational as Q;
use crate::groups::{Elem, Group, SelfAction, Window};

/// How the source component of a comultiplication block is determined by its legs.
#[derive(Clone, Debug)]
pub enum Indexing {
    /// Block `(p, q)` comes from `B_{pq}`.
    Standard,
    /// Block `(p, q)` comes from `B_{qp}`.
    Reversed,
    /// Block `(p, q)` comes from the base source of `(ρ_q(p), q)`.
    Twisted(Box<Indexing>, SelfAction),
    /// Block `(p, q)` comes from the inverse of the base source of `(p⁻¹, q⁻¹)`.
    Inverted(Box<Indexing>),
}

impl Indexing {
    /// Twisted indexing, reduced to a plain form where one exists.
    pub fn twisted(base: Indexing, rho: SelfAction, g: &Group) -> Self {
        let commutative = g.table().is_none()
            || g.elements().is_some_and(|es| {
                es.iter()
                    .all(|&a| es.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            });
        let rho = match rho {
            SelfAction::Adjoint if commutative => SelfAction::Trivial,
            other => other,
        };
        match (base, rho) {
            (base, SelfAction::Trivial) => base,
            (Indexing::Standard, SelfAction::Adjoint) => Indexing::Reversed,
            (base, rho) => Indexing::Twisted(Box::new(base), rho),
        }
    }

    pub fn inverted(base: Indexing) -> Self {
        match base {
            Indexing::Standard => Indexing::Reversed,
            Indexing::Reversed => Indexing::Standard,
            Indexing::Inverted(inner) => *inner,
            other => Indexing::Inverted(Box::new(other)),
        }
    }

    pub fn source(&self, g: &Group, p: Elem, q: Elem) -> Elem {
        match self {
            Indexing::Standard => g.mul(p, q),
            Indexing::Reversed => g.mul(q, p),
            Indexing::Twisted(base, rho) => base.source(g, rho.apply(g, q, p), q),
            Indexing::Inverted(base) => g.inv(base.source(g, g.inv(p), g.inv(q))),
        }
    }

    /// The unique `p` with `source(p, q) = t`.
    pub fn left_leg(&self, g: &Group, t: Elem, q: Elem) -> Elem {
        match self {
            Indexing::Standard => g.mul(t, g.inv(q)),
            Indexing::Reversed => g.mul(g.inv(q), t),
            Indexing::Twisted(base, rho) => rho.apply(g, g.inv(q), base.left_leg(g, t, q)),
            Indexing::Inverted(base) => g.inv(base.left_leg(g, g.inv(t), g.inv(q))),
        }
    }

    /// All `q` with `source(p, q) = t`. Finite groups only for twisted indexings without a
    /// closed form.
    pub fn right_legs(&self, g: &Group, t: Elem, p: Elem) -> Vec<Elem> {
        match self {
            Indexing::Standard => vec![g.mul(g.inv(p), t)],
            Indexing::Reversed => vec![g.mul(t, g.inv(p))],
            Indexing::Inverted(base) => base
                .right_legs(g, g.inv(t), g.inv(p))
                .into_iter()
                .map(|q| g.inv(q))
                .collect(),
            Indexing::Twisted(..) => g
                .elements()
                .expect("twisted indexing without closed form needs a finite group")
                .into_iter()
                .filter(|&q| self.source(g, p, q) == t)
                .collect(),
        }
    }
}

/// A multiplier Hopf algebra whose comultiplication is given blockwise.
///
/// Cograded structures store `Δ_{p,q}: B_{source(p,q)} → B_p ⊗ B_q`; graded Hopf sides list
/// the finitely many nonzero blocks of each `Δ(x)`.
pub trait MultiplierHopf: GradedAlgebra {
    fn indexing(&self) -> Indexing;
    /// Block `(left, right)` of `Δ(x)`; zero when the block does not come from `x`'s component.
    fn coproduct_part(&self, x: Key, left: Elem, right: Elem) -> Tensor;
    /// Nonzero blocks of `Δ(x)` for graded Hopf sides; `None` for cograded structures.
    fn coproduct_legs(&self, x: Key) -> Option<Vec<(Elem, Elem)>>;
    fn counit(&self, x: Key) -> Q;
    fn antipode(&self, x: Key) -> GradedElement;
    fn antipode_inverse(&self, x: Key) -> GradedElement;
    /// Display name.
    fn label(&self) -> String;
}

pub type MhaStructure = Arc<dyn MultiplierHopf>;

pub(crate) fn is_cograded(h: &dyn MultiplierHopf) -> bool {
    h.grading() == Grading::Cograded
}

pub fn source_component(h: &dyn MultiplierHopf, p: Elem, q: Elem) -> Elem {
    h.indexing().source(h.group(), p, q)
}

/// Blocks of `Δ(x)` with both legs in the window.
pub fn blocks_of(h: &dyn MultiplierHopf, x: Key, w: &Window) -> Vec<(Elem, Elem)> {
    match h.coproduct_legs(x) {
        Some(legs) => legs
            .into_iter()
            .filter(|&(p, q)| w.contains(p) && w.contains(q))
            .collect(),
        None => {
            let (g, ix) = (h.group(), h.indexing());
            w.elements()
                .iter()
                .flat_map(|&p| ix.right_legs(g, x.0, p).into_iter().map(move |q| (p, q)))
                .filter(|&(_, q)| w.contains(q))
                .collect()
        }
    }
}

/// `Δ(x)` restricted to legs in the window.
pub fn coproduct(h: &dyn MultiplierHopf, x: Key, w: &Window) -> Tensor {
    let mut out = Tensor::new();
    for (p, q) in blocks_of(h, x, w) {
        out.add(&h.coproduct_part(x, p, q));
    }
    out
}

/// Every nonzero block of `Δ(x)` on a graded Hopf side.
pub fn full_coproduct(h: &dyn MultiplierHopf, x: Key) -> Tensor {
    let mut out = Tensor::new();
    for (p, q) in h.coproduct_legs(x).unwrap_or_default() {
        out.add(&h.coproduct_part(x, p, q));
    }
    out
}

/// Linear extension of one block.
pub fn coproduct_part_of(h: &dyn MultiplierHopf, x: &GradedElement, p: Elem, q: Elem) -> Tensor {
    let mut out = Tensor::new();
    for (k, c) in x.iter() {
        out.add_scaled(&h.coproduct_part(*k, p, q), c);
    }
    out
}

/// `Δ(a)(1 ⊗ b)`.
pub fn cut_right(h: &dyn MultiplierHopf, a: Key, b: Key) -> Tensor {
    let bb = GradedElement::basis(b);
    if is_cograded(h) {
        let p = h.indexing().left_leg(h.group(), a.0, b.0);
        right_multiply(h, &h.coproduct_part(a, p, b.0), &bb)
    } else {
        right_multiply(h, &full_coproduct(h, a), &bb)
    }
}

/// `(a ⊗ 1)Δ(b)`.
pub fn cut_left(h: &dyn MultiplierHopf, a: Key, b: Key) -> Tensor {
    let aa = GradedElement::basis(a);
    if is_cograded(h) {
        let mut out = Tensor::new();
        for q in h.indexing().right_legs(h.group(), b.0, a.0) {
            out.add(&left_multiply(h, &aa, &h.coproduct_part(b, a.0, q)));
        }
        out
    } else {
        left_multiply(h, &aa, &full_coproduct(h, b))
    }
}

/// The cut-down on either side: `Right` is `Δ(a)(1⊗b)`, `Left` is `(a⊗1)Δ(b)`.
pub fn cut(h: &dyn MultiplierHopf, side: Side, a: Key, b: Key) -> Tensor {
    match side {
        Side::Right => cut_right(h, a, b),
        Side::Left => cut_left(h, a, b),
    }
}

pub fn counit_of(h: &dyn MultiplierHopf, x: &GradedElement) -> Q {
    x.pair_with(|k| h.counit(*k))
}

pub fn antipode_of(h: &dyn MultiplierHopf, x: &GradedElement) -> GradedElement {
    x.map_linear(|k| h.antipode(*k))
}

pub fn antipode_inverse_of(h: &dyn MultiplierHopf, x: &GradedElement) -> GradedElement {
    x.map_linear(|k| h.antipode_inverse(*k))
}

#[cfg(test)]
mod tests;
