//! Group-graded algebras with finite-dimensional components, finitely supported elements
//! and lazily evaluated multipliers.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::exact::{sparse_rank, GaussianRational as Q, Matrix, Sparse};
use crate::groups::{Elem, Group, Window};
use crate::report::{CertificateReport, Failures};

/// Basis vector `idx` of component `comp`.
pub type Key = (Elem, usize);
/// Finitely supported element of a graded algebra.
pub type GradedElement = Sparse<Key>;
/// Element of a tensor square.
pub type Tensor = Sparse<(Key, Key)>;
/// Element of a tensor cube.
pub type Tensor3 = Sparse<(Key, Key, Key)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// `B_p B_q = 0` for `p ≠ q`; every component unital.
    Cograded,
    /// `A_p A_q ⊆ A_{pq}`.
    GradedHopfSide,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub trait GradedAlgebra: Send + Sync {
    fn group(&self) -> &Group;
    fn grading(&self) -> Grading;
    fn dim(&self, p: Elem) -> usize;
    /// Product of two basis vectors.
    fn mul_basis(&self, x: Key, y: Key) -> GradedElement;
    /// Component in `p` of the identity multiplier; `None` when that component has no unit.
    fn unit_component(&self, p: Elem) -> Option<GradedElement>;
    /// Antilinear involution, if the algebra carries one.
    fn star(&self, x: &GradedElement) -> Option<GradedElement>;
    fn has_star(&self) -> bool;
}

pub fn basis(alg: &dyn GradedAlgebra, p: Elem) -> impl Iterator<Item = Key> {
    (0..alg.dim(p)).map(move |i| (p, i))
}

/// Basis of all components in the window, in window order.
pub fn window_basis(alg: &dyn GradedAlgebra, w: &Window) -> Vec<Key> {
    w.elements().iter().flat_map(|&p| basis(alg, p)).collect()
}

pub fn key_name(g: &Group, (p, i): Key) -> String {
    format!("{}#{}", g.name(p), i)
}

pub fn element_name(g: &Group, x: &GradedElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = x
        .iter()
        .map(|(k, c)| format!("({c})·{}", key_name(g, *k)))
        .collect();
    terms.join(" + ")
}

fn check_membership(alg: &dyn GradedAlgebra, x: &GradedElement) -> Result<()> {
    match x
        .keys()
        .find(|(p, i)| !alg.group().contains(*p) || *i >= alg.dim(*p))
    {
        Some(k) => Err(Error::ForeignElement(format!(
            "basis index {k:?} out of range"
        ))),
        None => Ok(()),
    }
}

/// Bilinear product of finitely supported elements.
pub fn multiply(
    alg: &dyn GradedAlgebra,
    x: &GradedElement,
    y: &GradedElement,
) -> Result<GradedElement> {
    check_membership(alg, x)?;
    check_membership(alg, y)?;
    Ok(mul(alg, x, y))
}

/// Product without membership checks.
pub fn mul(alg: &dyn GradedAlgebra, x: &GradedElement, y: &GradedElement) -> GradedElement {
    let cograded = alg.grading() == Grading::Cograded;
    let mut out = GradedElement::new();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            if cograded && a.0 != b.0 {
                continue;
            }
            out.add_scaled(&alg.mul_basis(*a, *b), &(ca * cb));
        }
    }
    out
}

/// Antilinear extension of `star`; zero if absent.
pub fn star_of(alg: &dyn GradedAlgebra, x: &GradedElement) -> GradedElement {
    alg.star(x).unwrap_or_default()
}

/// `(x⊗y)(x'⊗y')` summed over both tensors.
pub fn tensor_mul(alg: &dyn GradedAlgebra, s: &Tensor, t: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for ((a, b), c1) in s.iter() {
        for ((a2, b2), c2) in t.iter() {
            let l = alg.mul_basis(*a, *a2);
            if l.is_zero() {
                continue;
            }
            let r = alg.mul_basis(*b, *b2);
            if r.is_zero() {
                continue;
            }
            out.add_scaled(&tensor_of(&l, &r), &(c1 * c2));
        }
    }
    out
}

pub fn tensor_of(x: &GradedElement, y: &GradedElement) -> Tensor {
    let mut out = Tensor::new();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term((*a, *b), ca * cb);
        }
    }
    out
}

/// `(f ⊗ g)(t)` for linear maps given on basis vectors.
pub fn tensor_map(
    t: &Tensor,
    mut f: impl FnMut(&Key) -> GradedElement,
    mut g: impl FnMut(&Key) -> GradedElement,
) -> Tensor {
    let mut out = Tensor::new();
    for ((a, b), c) in t.iter() {
        out.add_scaled(&tensor_of(&f(a), &g(b)), c);
    }
    out
}

/// `(x ⊗ 1)·t`.
pub fn left_multiply(alg: &dyn GradedAlgebra, x: &GradedElement, t: &Tensor) -> Tensor {
    tensor_map(
        t,
        |a| mul(alg, x, &GradedElement::basis(*a)),
        |b| GradedElement::basis(*b),
    )
}

/// `t·(1 ⊗ y)`.
pub fn right_multiply(alg: &dyn GradedAlgebra, t: &Tensor, y: &GradedElement) -> Tensor {
    tensor_map(
        t,
        |a| GradedElement::basis(*a),
        |b| mul(alg, &GradedElement::basis(*b), y),
    )
}

/// `(φ ⊗ ι)(t)`.
pub fn contract_left(t: &Tensor, mut phi: impl FnMut(&Key) -> Q) -> GradedElement {
    let mut out = GradedElement::new();
    for ((a, b), c) in t.iter() {
        out.add_term(*b, c * &phi(a));
    }
    out
}

/// `(ι ⊗ φ)(t)`.
pub fn contract_right(t: &Tensor, mut phi: impl FnMut(&Key) -> Q) -> GradedElement {
    let mut out = GradedElement::new();
    for ((a, b), c) in t.iter() {
        out.add_term(*a, c * &phi(b));
    }
    out
}

/// `m(t)`.
pub fn multiply_legs(alg: &dyn GradedAlgebra, t: &Tensor) -> GradedElement {
    let mut out = GradedElement::new();
    for ((a, b), c) in t.iter() {
        out.add_scaled(&alg.mul_basis(*a, *b), c);
    }
    out
}

/// One finite-dimensional component given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentAlgebra {
    pub dim: usize,
    /// `products[i][j] = e_i·e_j`.
    pub products: Vec<Vec<Sparse<usize>>>,
    pub unit: Option<Vec<Q>>,
    /// Column `j` holds `e_j*`; applied antilinearly.
    pub star: Option<Matrix>,
}

impl ComponentAlgebra {
    /// Extracts component `p` of a cograded algebra.
    pub fn of(alg: &dyn GradedAlgebra, p: Elem) -> Self {
        let dim = alg.dim(p);
        let restrict = |x: GradedElement| -> Sparse<usize> {
            x.iter()
                .filter(|(k, _)| k.0 == p)
                .map(|(k, c)| (k.1, c.clone()))
                .collect()
        };
        let products = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| restrict(alg.mul_basis((p, i), (p, j))))
                    .collect()
            })
            .collect();
        let unit = alg
            .unit_component(p)
            .map(|u| (0..dim).map(|i| u.get(&(p, i))).collect());
        let star = alg.has_star().then(|| {
            Matrix::from_fn(dim, dim, |i, j| {
                star_of(alg, &GradedElement::basis((p, j))).get(&(p, i))
            })
        });
        Self {
            dim,
            products,
            unit,
            star,
        }
    }

    /// Dense structure constants `c[i][j][k]`.
    pub fn from_constants(c: &[Vec<Vec<Q>>], unit: Option<Vec<Q>>, star: Option<Matrix>) -> Self {
        let products = c
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().cloned().enumerate().collect())
                    .collect()
            })
            .collect();
        Self {
            dim: c.len(),
            products,
            unit,
            star,
        }
    }

    /// The one-dimensional algebra `C` spanned by an idempotent.
    pub fn scalars() -> Self {
        Self {
            dim: 1,
            products: vec![vec![Sparse::basis(0)]],
            unit: Some(vec![Q::one()]),
            star: Some(Matrix::identity(1)),
        }
    }

    pub fn mul_vec(&self, x: &Sparse<usize>, y: &Sparse<usize>) -> Sparse<usize> {
        let mut out = Sparse::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.products[*i][*j], &(a * b));
            }
        }
        out
    }

    pub fn star_vec(&self, x: &Sparse<usize>) -> Option<Sparse<usize>> {
        let s = self.star.as_ref()?;
        let mut out = Sparse::new();
        for (j, c) in x.iter() {
            for i in 0..self.dim {
                out.add_term(i, &s[(i, *j)] * &c.conj());
            }
        }
        Some(out)
    }

    /// Component invariants: associativity, non-degeneracy, unit, star laws.
    pub fn violations(&self) -> Vec<String> {
        let n = self.dim;
        let mut out = Vec::new();
        let e = |i: usize| Sparse::basis(i);
        'assoc: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = self.mul_vec(&self.products[i][j], &e(k));
                    let r = self.mul_vec(&e(i), &self.products[j][k]);
                    if l != r {
                        out.push(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        ));
                        break 'assoc;
                    }
                }
            }
        }
        // x ↦ (x e_j)_j and x ↦ (e_j x)_j must be injective
        for side in [Side::Left, Side::Right] {
            let cols: Vec<Sparse<(usize, usize)>> = (0..n)
                .map(|i| {
                    let mut col = Sparse::new();
                    for j in 0..n {
                        let p = if side == Side::Left {
                            &self.products[i][j]
                        } else {
                            &self.products[j][i]
                        };
                        for (k, c) in p.iter() {
                            col.add_term((j, *k), c.clone());
                        }
                    }
                    col
                })
                .collect();
            if sparse_rank(&cols) < n {
                out.push(format!("product is degenerate ({side:?} annihilator)"));
            }
        }
        if let Some(u) = &self.unit {
            let u: Sparse<usize> = u.iter().cloned().enumerate().collect();
            if (0..n).any(|i| self.mul_vec(&u, &e(i)) != e(i) || self.mul_vec(&e(i), &u) != e(i)) {
                out.push("declared unit is not a two-sided unit".into());
            }
        }
        if self.star.is_some() {
            for i in 0..n {
                let s = self.star_vec(&e(i)).expect("star present");
                if self.star_vec(&s).expect("star present") != e(i) {
                    out.push(format!("star is not involutive at basis {i}"));
                    break;
                }
            }
            'anti: for i in 0..n {
                for j in 0..n {
                    let l = self.star_vec(&self.products[i][j]).expect("star present");
                    let r = self.mul_vec(
                        &self.star_vec(&e(j)).unwrap(),
                        &self.star_vec(&e(i)).unwrap(),
                    );
                    if l != r {
                        out.push(format!("star is not anti-multiplicative at ({i}, {j})"));
                        break 'anti;
                    }
                }
            }
        }
        out
    }
}

/// Pure cache: concurrent fills of one key compute identical values, so a lost race
/// only costs time.
pub struct Memo<K, V> {
    cells: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub fn new() -> Self {
        Self {
            cells: RwLock::new(HashMap::new()),
        }
    }

    pub fn get_or_insert_with(&self, k: &K, fill: impl FnOnce() -> V) -> V {
        if let Some(v) = self.cells.read().expect("memo lock").get(k) {
            return v.clone();
        }
        let v = fill();
        self.cells
            .write()
            .expect("memo lock")
            .entry(k.clone())
            .or_insert(v)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.cells.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<K: Eq + Hash + Clone, V: Clone> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

/// A family `(m_p)_p` with `m_p ∈ B_p`, evaluated on demand.
#[derive(Clone)]
pub struct GradedMultiplier {
    eval: Arc<dyn Fn(Elem) -> Vec<Q> + Send + Sync>,
    support: Option<BTreeSet<Elem>>,
}

impl fmt::Debug for GradedMultiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedMultiplier")
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

impl GradedMultiplier {
    pub fn new(eval: impl Fn(Elem) -> Vec<Q> + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
            support: None,
        }
    }

    /// Multiplier with the given components and zero elsewhere.
    pub fn finite(
        dims: impl Fn(Elem) -> usize + Send + Sync + 'static,
        parts: BTreeMap<Elem, Vec<Q>>,
    ) -> Self {
        let support = parts.keys().copied().collect();
        Self {
            eval: Arc::new(move |p| {
                parts
                    .get(&p)
                    .cloned()
                    .unwrap_or_else(|| vec![Q::zero(); dims(p)])
            }),
            support: Some(support),
        }
    }

    /// `(1_p)_p`; components without a unit evaluate to zero.
    pub fn unit(alg: Arc<dyn GradedAlgebra>) -> Self {
        Self::new(move |p| {
            let u = alg.unit_component(p).unwrap_or_default();
            (0..alg.dim(p)).map(|i| u.get(&(p, i))).collect()
        })
    }

    pub fn component(&self, p: Elem) -> Vec<Q> {
        (self.eval)(p)
    }

    pub fn component_element(&self, p: Elem) -> GradedElement {
        self.component(p)
            .into_iter()
            .enumerate()
            .map(|(i, c)| ((p, i), c))
            .collect()
    }

    pub fn support(&self) -> Option<&BTreeSet<Elem>> {
        self.support.as_ref()
    }

    /// Componentwise equality on a window.
    pub fn equals_on(&self, other: &GradedMultiplier, w: &Window) -> bool {
        w.elements()
            .iter()
            .all(|&p| self.component(p) == other.component(p))
    }
}

/// `m·x` or `x·m`. Cograded algebras multiply componentwise; graded Hopf sides need a
/// finitely supported multiplier.
pub fn multiplier_times_element(
    alg: &dyn GradedAlgebra,
    m: &GradedMultiplier,
    x: &GradedElement,
    side: Side,
) -> Result<GradedElement> {
    check_membership(alg, x)?;
    let comps: BTreeSet<Elem> = match alg.grading() {
        Grading::Cograded => x.keys().map(|k| k.0).collect(),
        Grading::GradedHopfSide => m.support().cloned().ok_or_else(|| {
            Error::Unsupported("multiplier on a graded side needs finite support".into())
        })?,
    };
    let mut out = GradedElement::new();
    for p in comps {
        let mp = m.component_element(p);
        out.add(&match side {
            Side::Left => mul(alg, &mp, x),
            Side::Right => mul(alg, x, &mp),
        });
    }
    Ok(out)
}

/// Component invariants, cross-block associativity and the cograded product law on a window.
pub fn check_graded_algebra(alg: &dyn GradedAlgebra, w: &Window) -> CertificateReport {
    let g = alg.group();
    let mut report = CertificateReport::new(w.describe(g));
    let cograded = alg.grading() == Grading::Cograded;

    let mut comp = Failures::new();
    let mut units = Failures::new();
    for &p in w.elements() {
        let c = ComponentAlgebra::of(alg, p);
        if cograded {
            for v in c.violations() {
                comp.record(|| format!("component {}: {v}", g.name(p)));
            }
            units.check(c.unit.is_some(), || {
                format!("component {} has no unit", g.name(p))
            });
        }
    }
    if cograded {
        report.push("component algebra laws", "cograded/components", comp);
        report.push("unital components", "cograded/units", units);
    }

    let keys = window_basis(alg, w);
    let mut diag = Failures::new();
    let mut assoc = Failures::new();
    for &x in &keys {
        for &y in &keys {
            let xy = alg.mul_basis(x, y);
            if cograded && x.0 != y.0 {
                diag.check(xy.is_zero(), || {
                    format!("{}·{} ≠ 0", key_name(g, x), key_name(g, y))
                });
                continue;
            }
            if !cograded {
                let target = g.mul(x.0, y.0);
                diag.check(xy.keys().all(|k| k.0 == target), || {
                    format!(
                        "{}·{} leaves component {}",
                        key_name(g, x),
                        key_name(g, y),
                        g.name(target)
                    )
                });
            }
            for &z in &keys {
                if cograded && y.0 != z.0 {
                    continue;
                }
                let l = mul(alg, &xy, &GradedElement::basis(z));
                let r = mul(alg, &GradedElement::basis(x), &alg.mul_basis(y, z));
                assoc.check(l == r, || {
                    format!(
                        "({}, {}, {})",
                        key_name(g, x),
                        key_name(g, y),
                        key_name(g, z)
                    )
                });
            }
        }
    }
    let diag_name = if cograded {
        "diagonal product"
    } else {
        "graded product"
    };
    report.push(diag_name, "cograded/diagonal-product", diag);
    report.push(
        "associativity across blocks",
        "algebra/associativity",
        assoc,
    );

    if !cograded {
        // non-degeneracy over the window span
        let mut nondeg = Failures::new();
        for side in [Side::Left, Side::Right] {
            let cols: Vec<Sparse<(Key, Key)>> = keys
                .iter()
                .map(|&x| {
                    let mut col = Sparse::new();
                    for &y in &keys {
                        let p = if side == Side::Left {
                            alg.mul_basis(x, y)
                        } else {
                            alg.mul_basis(y, x)
                        };
                        for (k, c) in p.iter() {
                            col.add_term((y, *k), c.clone());
                        }
                    }
                    col
                })
                .collect();
            nondeg.check(sparse_rank(&cols) == keys.len(), || {
                format!("{side:?} annihilator is nonzero")
            });
        }
        report.push("non-degenerate product", "algebra/non-degenerate", nondeg);
        if alg.has_star() {
            let mut st = Failures::new();
            for &x in &keys {
                let bx = GradedElement::basis(x);
                st.check(star_of(alg, &star_of(alg, &bx)) == bx, || {
                    format!("star not involutive at {}", key_name(g, x))
                });
                for &y in &keys {
                    let l = star_of(alg, &alg.mul_basis(x, y));
                    let r = mul(
                        alg,
                        &star_of(alg, &GradedElement::basis(y)),
                        &star_of(alg, &bx),
                    );
                    st.check(l == r, || {
                        format!(
                            "star not anti-multiplicative at ({}, {})",
                            key_name(g, x),
                            key_name(g, y)
                        )
                    });
                }
            }
            report.push("star involution", "algebra/star", st);
        }
    }
    report
}
