//! Concrete multiplier Hopf algebras: constant families (including `K(G)`), group algebras
//! and explicit finite tables.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{blocks_of, Indexing, MhaStructure, MultiplierHopf};
use crate::algebras::{
    star_of, ComponentAlgebra, GradedAlgebra, GradedElement, Grading, Key, Tensor,
};
use crate::error::{Error, Result};
use crate::exact::{sparse_inverse, GaussianRational as Q, Matrix, Sparse};
use crate::groups::{Elem, Group, Window};

/// `B_p ≅ H` for every `p`, with `Δ_{p,q} = Δ_H`, `ε = ε_H` on `B_e` and `S_p = S_H`.
///
/// With `H = C` this is the function algebra `K(G)` of finitely supported functions, `δ_p`
/// being the basis vector of `B_p`.
#[derive(Clone)]
pub struct ConstantFamily {
    group: Group,
    name: String,
    component: Arc<ComponentAlgebra>,
    delta: Arc<Vec<Sparse<(usize, usize)>>>,
    counit: Arc<Vec<Q>>,
    antipode: Arc<Vec<Sparse<usize>>>,
    antipode_inverse: Arc<Vec<Sparse<usize>>>,
}

fn lift(p: Elem, v: &Sparse<usize>) -> GradedElement {
    v.iter().map(|(i, c)| ((p, *i), c.clone())).collect()
}

fn restrict(p: Elem, x: &GradedElement) -> Sparse<usize> {
    x.iter()
        .filter(|(k, _)| k.0 == p)
        .map(|(k, c)| (k.1, c.clone()))
        .collect()
}

impl GradedAlgebra for ConstantFamily {
    fn group(&self) -> &Group {
        &self.group
    }
    fn grading(&self) -> Grading {
        Grading::Cograded
    }
    fn dim(&self, p: Elem) -> usize {
        if self.group.contains(p) {
            self.component.dim
        } else {
            0
        }
    }
    fn mul_basis(&self, x: Key, y: Key) -> GradedElement {
        if x.0 != y.0 {
            return GradedElement::new();
        }
        lift(x.0, &self.component.products[x.1][y.1])
    }
    fn unit_component(&self, p: Elem) -> Option<GradedElement> {
        let u = self.component.unit.as_ref()?;
        Some(
            u.iter()
                .enumerate()
                .map(|(i, c)| ((p, i), c.clone()))
                .collect(),
        )
    }
    fn star(&self, x: &GradedElement) -> Option<GradedElement> {
        self.component.star.as_ref()?;
        let mut out = GradedElement::new();
        let comps: std::collections::BTreeSet<Elem> = x.keys().map(|k| k.0).collect();
        for p in comps {
            out.add(&lift(p, &self.component.star_vec(&restrict(p, x))?));
        }
        Some(out)
    }
    fn has_star(&self) -> bool {
        self.component.star.is_some()
    }
}

impl MultiplierHopf for ConstantFamily {
    fn indexing(&self) -> Indexing {
        Indexing::Standard
    }
    fn coproduct_part(&self, x: Key, left: Elem, right: Elem) -> Tensor {
        if self.group.mul(left, right) != x.0 {
            return Tensor::new();
        }
        self.delta[x.1]
            .iter()
            .map(|((i, j), c)| (((left, *i), (right, *j)), c.clone()))
            .collect()
    }
    fn coproduct_legs(&self, _x: Key) -> Option<Vec<(Elem, Elem)>> {
        None
    }
    fn counit(&self, x: Key) -> Q {
        if x.0 == self.group.identity() {
            self.counit[x.1].clone()
        } else {
            Q::zero()
        }
    }
    fn antipode(&self, x: Key) -> GradedElement {
        lift(self.group.inv(x.0), &self.antipode[x.1])
    }
    fn antipode_inverse(&self, x: Key) -> GradedElement {
        lift(self.group.inv(x.0), &self.antipode_inverse[x.1])
    }
    fn label(&self) -> String {
        self.name.clone()
    }
}

/// `K(G)`: one-dimensional components, `Δ(δ_{pq}) ∋ δ_p⊗δ_q`, `ε(δ_e) = 1`,
/// `S(δ_p) = δ_{p⁻¹}`, pointwise conjugation.
pub fn make_kg(g: &Group) -> MhaStructure {
    Arc::new(ConstantFamily {
        group: g.clone(),
        name: format!("K({})", g.label()),
        component: Arc::new(ComponentAlgebra::scalars()),
        delta: Arc::new(vec![Sparse::basis((0, 0))]),
        counit: Arc::new(vec![Q::one()]),
        antipode: Arc::new(vec![Sparse::basis(0)]),
        antipode_inverse: Arc::new(vec![Sparse::basis(0)]),
    })
}

/// Constant family of a single-component Hopf algebra `h` over `g`.
pub fn make_constant_family(h: &dyn MultiplierHopf, g: &Group) -> Result<MhaStructure> {
    let hg = h.group();
    let e = hg.identity();
    let others = hg
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{} is not finite-dimensional", h.label())))?;
    if let Some(&p) = others.iter().find(|&&p| p != e && h.dim(p) > 0) {
        return Err(Error::Unsupported(format!(
            "{} has a nonzero component at {}; expected a single component",
            h.label(),
            hg.name(p)
        )));
    }
    let n = h.dim(e);
    let component = ComponentAlgebra::of(h, e);
    if component.unit.is_none() {
        return Err(Error::Unsupported(format!("{} is not unital", h.label())));
    }
    let delta = (0..n)
        .map(|k| {
            h.coproduct_part((e, k), e, e)
                .iter()
                .map(|((a, b), c)| ((a.1, b.1), c.clone()))
                .collect()
        })
        .collect();
    Ok(Arc::new(ConstantFamily {
        group: g.clone(),
        name: format!("constant family of {} over {}", h.label(), g.label()),
        component: Arc::new(component),
        delta: Arc::new(delta),
        counit: Arc::new((0..n).map(|k| h.counit((e, k))).collect()),
        antipode: Arc::new((0..n).map(|k| restrict(e, &h.antipode((e, k)))).collect()),
        antipode_inverse: Arc::new(
            (0..n)
                .map(|k| restrict(e, &h.antipode_inverse((e, k))))
                .collect(),
        ),
    }))
}

/// The group algebra `C[G]` as a graded Hopf side: `A_p = span{u_p}`.
#[derive(Clone)]
pub struct GroupAlgebra {
    group: Group,
}

impl GroupAlgebra {
    pub fn new(g: &Group) -> Self {
        Self { group: g.clone() }
    }
}

impl GradedAlgebra for GroupAlgebra {
    fn group(&self) -> &Group {
        &self.group
    }
    fn grading(&self) -> Grading {
        Grading::GradedHopfSide
    }
    fn dim(&self, p: Elem) -> usize {
        usize::from(self.group.contains(p))
    }
    fn mul_basis(&self, x: Key, y: Key) -> GradedElement {
        GradedElement::basis((self.group.mul(x.0, y.0), 0))
    }
    fn unit_component(&self, p: Elem) -> Option<GradedElement> {
        Some(if p == self.group.identity() {
            GradedElement::basis((p, 0))
        } else {
            GradedElement::new()
        })
    }
    fn star(&self, x: &GradedElement) -> Option<GradedElement> {
        Some(
            x.iter()
                .map(|(k, c)| ((self.group.inv(k.0), 0), c.conj()))
                .collect(),
        )
    }
    fn has_star(&self) -> bool {
        true
    }
}

impl MultiplierHopf for GroupAlgebra {
    fn indexing(&self) -> Indexing {
        Indexing::Standard
    }
    fn coproduct_part(&self, x: Key, left: Elem, right: Elem) -> Tensor {
        if left == x.0 && right == x.0 {
            Tensor::basis((x, x))
        } else {
            Tensor::new()
        }
    }
    fn coproduct_legs(&self, x: Key) -> Option<Vec<(Elem, Elem)>> {
        Some(vec![(x.0, x.0)])
    }
    fn counit(&self, _x: Key) -> Q {
        Q::one()
    }
    fn antipode(&self, x: Key) -> GradedElement {
        GradedElement::basis((self.group.inv(x.0), 0))
    }
    fn antipode_inverse(&self, x: Key) -> GradedElement {
        self.antipode(x)
    }
    fn label(&self) -> String {
        format!("C[{}]", self.group.label())
    }
}

pub fn make_group_algebra(g: &Group) -> MhaStructure {
    Arc::new(GroupAlgebra::new(g))
}

/// Finite multiplier Hopf algebra given by explicit tables. Missing entries are zero.
#[derive(Clone, Debug)]
pub struct Tabulated {
    pub name: String,
    pub group: Group,
    pub grading: Grading,
    pub indexing: Indexing,
    pub dims: BTreeMap<Elem, usize>,
    pub products: HashMap<(Key, Key), GradedElement>,
    /// Cograded: components without an entry have no unit. Graded side: if any entry is
    /// present, missing components of the unit are zero.
    pub units: BTreeMap<Elem, GradedElement>,
    pub coproduct: HashMap<Key, BTreeMap<(Elem, Elem), Tensor>>,
    pub counit: HashMap<Key, Q>,
    pub antipode: HashMap<Key, GradedElement>,
    pub antipode_inverse: HashMap<Key, GradedElement>,
    /// Images of basis vectors, extended antilinearly.
    pub star: Option<HashMap<Key, GradedElement>>,
}

impl Tabulated {
    pub fn empty(name: &str, group: &Group, grading: Grading) -> Self {
        Self {
            name: name.to_string(),
            group: group.clone(),
            grading,
            indexing: Indexing::Standard,
            dims: BTreeMap::new(),
            products: HashMap::new(),
            units: BTreeMap::new(),
            coproduct: HashMap::new(),
            counit: HashMap::new(),
            antipode: HashMap::new(),
            antipode_inverse: HashMap::new(),
            star: None,
        }
    }

    pub fn keys(&self) -> Vec<Key> {
        self.dims
            .iter()
            .flat_map(|(&p, &d)| (0..d).map(move |i| (p, i)))
            .collect()
    }

    /// Tabulates any structure over a finite group.
    pub fn materialize(h: &dyn MultiplierHopf) -> Result<Self> {
        let g = h.group();
        let w = Window::full(g)?;
        let mut t = Self::empty(&h.label(), g, h.grading());
        t.indexing = h.indexing();
        for &p in w.elements() {
            let d = h.dim(p);
            if d > 0 {
                t.dims.insert(p, d);
            }
        }
        let keys = t.keys();
        let cograded = h.grading() == Grading::Cograded;
        for &x in &keys {
            for &y in &keys {
                if cograded && x.0 != y.0 {
                    continue;
                }
                let xy = h.mul_basis(x, y);
                if !xy.is_zero() {
                    t.products.insert((x, y), xy);
                }
            }
            let mut blocks = BTreeMap::new();
            for (p, q) in blocks_of(h, x, &w) {
                let part = h.coproduct_part(x, p, q);
                if !part.is_zero() {
                    blocks.insert((p, q), part);
                }
            }
            t.coproduct.insert(x, blocks);
            let c = h.counit(x);
            if !c.is_zero() {
                t.counit.insert(x, c);
            }
            t.antipode.insert(x, h.antipode(x));
            t.antipode_inverse.insert(x, h.antipode_inverse(x));
        }
        for &p in w.elements() {
            if let Some(u) = h.unit_component(p) {
                if cograded || !u.is_zero() {
                    t.units.insert(p, u);
                }
            }
        }
        if h.has_star() {
            t.star = Some(
                keys.iter()
                    .map(|&x| (x, star_of(h, &GradedElement::basis(x))))
                    .collect(),
            );
        }
        Ok(t)
    }

    /// Recomputes the inverse antipode by exact inversion of `S`.
    pub fn invert_antipode(&mut self) -> Result<()> {
        let keys = self.keys();
        let cols: Vec<GradedElement> = keys
            .iter()
            .map(|k| self.antipode.get(k).cloned().unwrap_or_default())
            .collect();
        let inv = sparse_inverse(&keys, &cols)
            .ok_or_else(|| Error::Singular(format!("antipode of {}", self.name)))?;
        if inv.len() != keys.len() {
            return Err(Error::Singular(format!(
                "antipode of {} is not onto",
                self.name
            )));
        }
        self.antipode_inverse = inv.into_iter().collect();
        Ok(())
    }

    /// Dense matrix of the antipode on all keys (column `j` is `S(e_j)`).
    pub fn antipode_matrix(&self) -> Matrix {
        let keys = self.keys();
        let index: HashMap<Key, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut m = Matrix::zeros(keys.len(), keys.len());
        for (j, k) in keys.iter().enumerate() {
            for (t, c) in self.antipode.get(k).cloned().unwrap_or_default().iter() {
                m[(index[t], j)] = c.clone();
            }
        }
        m
    }
}

impl GradedAlgebra for Tabulated {
    fn group(&self) -> &Group {
        &self.group
    }
    fn grading(&self) -> Grading {
        self.grading
    }
    fn dim(&self, p: Elem) -> usize {
        self.dims.get(&p).copied().unwrap_or(0)
    }
    fn mul_basis(&self, x: Key, y: Key) -> GradedElement {
        self.products.get(&(x, y)).cloned().unwrap_or_default()
    }
    fn unit_component(&self, p: Elem) -> Option<GradedElement> {
        match self.grading {
            Grading::Cograded => self.units.get(&p).cloned(),
            Grading::GradedHopfSide => self
                .units
                .get(&p)
                .cloned()
                .or_else(|| (!self.units.is_empty()).then(GradedElement::new)),
        }
    }
    fn star(&self, x: &GradedElement) -> Option<GradedElement> {
        let s = self.star.as_ref()?;
        let mut out = GradedElement::new();
        for (k, c) in x.iter() {
            if let Some(img) = s.get(k) {
                out.add_scaled(img, &c.conj());
            }
        }
        Some(out)
    }
    fn has_star(&self) -> bool {
        self.star.is_some()
    }
}

impl MultiplierHopf for Tabulated {
    fn indexing(&self) -> Indexing {
        self.indexing.clone()
    }
    fn coproduct_part(&self, x: Key, left: Elem, right: Elem) -> Tensor {
        self.coproduct
            .get(&x)
            .and_then(|m| m.get(&(left, right)))
            .cloned()
            .unwrap_or_default()
    }
    fn coproduct_legs(&self, x: Key) -> Option<Vec<(Elem, Elem)>> {
        match self.grading {
            Grading::Cograded => None,
            Grading::GradedHopfSide => Some(
                self.coproduct
                    .get(&x)
                    .map(|m| m.keys().copied().collect())
                    .unwrap_or_default(),
            ),
        }
    }
    fn counit(&self, x: Key) -> Q {
        self.counit.get(&x).cloned().unwrap_or_default()
    }
    fn antipode(&self, x: Key) -> GradedElement {
        self.antipode.get(&x).cloned().unwrap_or_default()
    }
    fn antipode_inverse(&self, x: Key) -> GradedElement {
        self.antipode_inverse.get(&x).cloned().unwrap_or_default()
    }
    fn label(&self) -> String {
        self.name.clone()
    }
}

/// `C[G]` as an ordinary Hopf algebra: a single component over the trivial group with basis
/// `u_g` indexed by the elements of `g`.
pub fn make_ordinary_group_algebra(g: &Group) -> Result<Tabulated> {
    let elems = g.elements().ok_or(Error::InfiniteGroup)?;
    let triv = Group::trivial();
    let e0 = triv.identity();
    let n = elems.len();
    let key = |a: Elem| (e0, a as usize);
    let mut t = Tabulated::empty(&format!("C[{}]", g.label()), &triv, Grading::Cograded);
    t.dims.insert(e0, n);
    let mut star = HashMap::new();
    for &a in &elems {
        for &b in &elems {
            t.products
                .insert((key(a), key(b)), GradedElement::basis(key(g.mul(a, b))));
        }
        t.coproduct.insert(
            key(a),
            BTreeMap::from([((e0, e0), Tensor::basis((key(a), key(a))))]),
        );
        t.counit.insert(key(a), Q::one());
        t.antipode
            .insert(key(a), GradedElement::basis(key(g.inv(a))));
        t.antipode_inverse
            .insert(key(a), GradedElement::basis(key(g.inv(a))));
        star.insert(key(a), GradedElement::basis(key(g.inv(a))));
    }
    t.units.insert(e0, GradedElement::basis(key(g.identity())));
    t.star = Some(star);
    Ok(t)
}
