//! Dual actions and reduced duals of finite structures.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::Pairing;
use crate::algebras::{star_of, window_basis, GradedElement, Grading, Key, Tensor};
use crate::cograded::Action;
use crate::error::{Error, Result};
use crate::exact::{GaussianRational as Q, Matrix};
use crate::groups::Window;
use crate::hopf::{Indexing, MhaStructure, MultiplierHopf, Tabulated};

/// The action `π′` on the graded side with `⟨π′_p(a), b⟩ = ⟨a, π_{p⁻¹}(b)⟩`.
pub fn dual_action(p: &Pairing, a: &Action) -> Result<Action> {
    let g = p.group();
    let w = p.window();
    let (am, bm) = (p.a_side().as_ref(), p.b_side().as_ref());
    let mut inverses: BTreeMap<_, Matrix> = BTreeMap::new();
    for (&r, form) in p.forms().iter() {
        if form.rows() == 0 {
            continue;
        }
        let inv = form
            .inverse()
            .ok_or_else(|| Error::Pairing(format!("form at {} is singular", g.name(r))))?;
        inverses.insert(r, inv);
    }
    let mut images = HashMap::new();
    for &s in w.elements() {
        let s_inv = g.inv(s);
        for x in window_basis(am, w) {
            let ex = GradedElement::basis(x);
            let mut out = GradedElement::new();
            for (&r, inv) in &inverses {
                let n = bm.dim(r);
                let v: Vec<Q> = (0..n)
                    .map(|j| p.pair_elements(&ex, &a.apply_basis(s_inv, (r, j))))
                    .collect();
                if v.iter().all(Q::is_zero) {
                    continue;
                }
                for i in 0..am.dim(r) {
                    let c: Q = (0..n).map(|j| &v[j] * &inv[(j, i)]).sum();
                    out.add_term((r, i), c);
                }
            }
            images.insert((s, x), out);
        }
    }
    Ok(Action::from_table(
        &format!("dual of {}", a.name),
        a.rho.clone(),
        images,
    ))
}

/// The reduced dual `⊕_p (B_p)′` together with its evaluation pairing.
#[derive(Clone)]
pub struct ReducedDual {
    pub dual: Arc<Tabulated>,
    pub pairing: Pairing,
}

impl ReducedDual {
    pub fn structure(&self) -> MhaStructure {
        self.dual.clone()
    }
}

fn coefficient(x: &GradedElement, k: Key) -> Q {
    x.get(&k)
}

/// Dual of a finite structure with the dual basis: a cograded input gives a graded side and
/// vice versa. Products are dual to coproducts, `S′(f) = f∘S` and `f*(x) = conj f(S(x)*)`.
pub fn reduced_dual(b: &MhaStructure) -> Result<ReducedDual> {
    let g = b.group().clone();
    let full = Window::full(&g)?;
    let h: &dyn MultiplierHopf = b.as_ref();
    let keys = window_basis(h, &full);
    let cograded = h.grading() == Grading::Cograded;
    let grading = if cograded {
        Grading::GradedHopfSide
    } else {
        Grading::Cograded
    };
    let mut t = Tabulated::empty(&format!("{}′", h.label()), &g, grading);
    t.indexing = Indexing::Standard;
    for &q in full.elements() {
        let d = h.dim(q);
        if d > 0 {
            t.dims.insert(q, d);
        }
    }

    if cograded {
        for &x in &keys {
            for &y in &keys {
                let r = h.indexing().source(&g, x.0, y.0);
                let mut prod = GradedElement::new();
                for k in 0..h.dim(r) {
                    prod.add_term((r, k), h.coproduct_part((r, k), x.0, y.0).get(&(x, y)));
                }
                if !prod.is_zero() {
                    t.products.insert((x, y), prod);
                }
            }
        }
        let e = g.identity();
        let unit: GradedElement = (0..h.dim(e)).map(|i| ((e, i), h.counit((e, i)))).collect();
        t.units.insert(e, unit);
        for &z in &keys {
            let mut delta = Tensor::new();
            for &x in keys.iter().filter(|k| k.0 == z.0) {
                for &y in keys.iter().filter(|k| k.0 == z.0) {
                    delta.add_term((x, y), coefficient(&h.mul_basis(x, y), z));
                }
            }
            let mut blocks = BTreeMap::new();
            if !delta.is_zero() {
                blocks.insert((z.0, z.0), delta);
            }
            t.coproduct.insert(z, blocks);
            let unit = h.unit_component(z.0).ok_or_else(|| {
                Error::Unsupported(format!("{} has no unit at {}", h.label(), g.name(z.0)))
            })?;
            let c = coefficient(&unit, z);
            if !c.is_zero() {
                t.counit.insert(z, c);
            }
        }
    } else {
        for &z in &keys {
            if let Some(legs) = h.coproduct_legs(z) {
                if legs.iter().any(|&(l, r)| l != z.0 || r != z.0) {
                    return Err(Error::Unsupported(format!(
                        "Δ of {} leaves its component",
                        h.label()
                    )));
                }
            }
        }
        for &x in &keys {
            for &y in keys.iter().filter(|k| k.0 == x.0) {
                let mut prod = GradedElement::new();
                for k in 0..h.dim(x.0) {
                    prod.add_term((x.0, k), h.coproduct_part((x.0, k), x.0, x.0).get(&(x, y)));
                }
                if !prod.is_zero() {
                    t.products.insert((x, y), prod);
                }
            }
        }
        for q in t.dims.keys().copied().collect::<Vec<_>>() {
            let unit: GradedElement = (0..h.dim(q)).map(|i| ((q, i), h.counit((q, i)))).collect();
            t.units.insert(q, unit);
        }
        let one: GradedElement = full
            .elements()
            .iter()
            .filter_map(|&q| h.unit_component(q))
            .fold(GradedElement::new(), |mut acc, u| {
                acc.add(&u);
                acc
            });
        for &z in &keys {
            let mut blocks: BTreeMap<_, Tensor> = BTreeMap::new();
            for &x in &keys {
                for &y in &keys {
                    if g.mul(x.0, y.0) != z.0 {
                        continue;
                    }
                    let c = coefficient(&h.mul_basis(x, y), z);
                    if !c.is_zero() {
                        blocks.entry((x.0, y.0)).or_default().add_term((x, y), c);
                    }
                }
            }
            t.coproduct.insert(z, blocks);
            let c = coefficient(&one, z);
            if !c.is_zero() {
                t.counit.insert(z, c);
            }
        }
    }

    let mut antipode: HashMap<Key, GradedElement> =
        keys.iter().map(|&k| (k, GradedElement::new())).collect();
    let mut antipode_inverse = antipode.clone();
    for &y in &keys {
        for (k, c) in h.antipode(y).iter() {
            antipode.entry(*k).or_default().add_term(y, c.clone());
        }
        for (k, c) in h.antipode_inverse(y).iter() {
            antipode_inverse
                .entry(*k)
                .or_default()
                .add_term(y, c.clone());
        }
    }
    t.antipode = antipode;
    t.antipode_inverse = antipode_inverse;

    if h.has_star() {
        let mut star: HashMap<Key, GradedElement> =
            keys.iter().map(|&k| (k, GradedElement::new())).collect();
        for &y in &keys {
            for (k, c) in star_of(h, &h.antipode(y)).iter() {
                star.entry(*k).or_default().add_term(y, c.conj());
            }
        }
        t.star = Some(star);
    }

    let dual = Arc::new(t);
    let forms = t_forms(&dual);
    let pairing = if cograded {
        Pairing::new(dual.clone(), b.clone(), forms)?
    } else {
        Pairing::new(b.clone(), dual.clone(), forms)?
    };
    Ok(ReducedDual { dual, pairing })
}

fn t_forms(t: &Tabulated) -> BTreeMap<crate::groups::Elem, Matrix> {
    t.dims
        .iter()
        .map(|(&q, &d)| (q, Matrix::identity(d)))
        .collect()
}
