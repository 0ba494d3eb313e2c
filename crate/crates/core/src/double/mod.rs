//! Dual pairings and their module actions, the twist maps, the Drinfel'd double twisted by
//! an admissible action, and reduced duals of finite-type cograded structures.

mod build;
mod dual;
mod twist;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use build::{
    build_double, check_double_axioms, classical_double, double_crossing, double_right_integral,
    DoubleIntegral, DoubleStructure, Layout,
};
pub use dual::{dual_action, reduced_dual, ReducedDual};
pub use twist::{check_twist, twist_r, twist_r1, twist_r2, BasisMap, InvertibleMap};

use crate::algebras::{
    key_name, mul, star_of, window_basis, GradedAlgebra, GradedElement, Grading, Key, Memo, Tensor,
};
use crate::error::{Error, Result};
use crate::exact::{sparse_rank, GaussianRational as Q, Matrix};
use crate::groups::{Elem, Group, Window};
use crate::hopf::{
    antipode_of, coproduct, counit_of, full_coproduct, make_group_algebra, make_kg, MhaStructure,
};
use crate::report::{CertificateReport, Failures};

/// A pairing `⟨A, B⟩` of a graded Hopf side `A` with a cograded structure `B` over the same
/// finite group. Only the diagonal forms `A_p × B_p` are stored.
#[derive(Clone)]
pub struct Pairing {
    a: MhaStructure,
    b: MhaStructure,
    forms: Arc<BTreeMap<Elem, Matrix>>,
    full: Window,
    delta_a: Arc<Memo<Key, Tensor>>,
    delta_b: Arc<Memo<Key, Tensor>>,
}

impl Pairing {
    /// `forms[p]` has one row per basis vector of `A_p` and one column per basis vector of `B_p`.
    pub fn new(a: MhaStructure, b: MhaStructure, forms: BTreeMap<Elem, Matrix>) -> Result<Self> {
        if a.grading() != Grading::GradedHopfSide {
            return Err(Error::Pairing(format!(
                "{} must be a graded Hopf side",
                a.label()
            )));
        }
        if b.grading() != Grading::Cograded {
            return Err(Error::Pairing(format!("{} must be cograded", b.label())));
        }
        if a.group() != b.group() {
            return Err(Error::Pairing(
                "both sides must be graded by the same group".into(),
            ));
        }
        let g = b.group();
        let full = Window::full(g)?;
        if let Some(p) = forms.keys().find(|p| !g.contains(**p)) {
            return Err(Error::UnknownElement(p.to_string()));
        }
        for &p in full.elements() {
            let (m, n) = (a.dim(p), b.dim(p));
            match forms.get(&p) {
                Some(f) if f.rows() == m && f.cols() == n => {}
                None if m == 0 || n == 0 => {}
                Some(f) => {
                    return Err(Error::Pairing(format!(
                        "form at {} is {}×{}, expected {m}×{n}",
                        g.name(p),
                        f.rows(),
                        f.cols()
                    )))
                }
                None => return Err(Error::Pairing(format!("form at {} missing", g.name(p)))),
            }
        }
        Ok(Self {
            a,
            b,
            forms: Arc::new(forms),
            full,
            delta_a: Arc::new(Memo::new()),
            delta_b: Arc::new(Memo::new()),
        })
    }

    /// `⟨C[G], K(G)⟩` with `⟨u_g, δ_p⟩ = [g = p]`.
    pub fn group_functions(g: &Group) -> Result<Self> {
        let forms = g
            .elements()
            .ok_or(Error::InfiniteGroup)?
            .into_iter()
            .map(|p| (p, Matrix::identity(1)))
            .collect();
        Self::new(make_group_algebra(g), make_kg(g), forms)
    }

    pub fn a_side(&self) -> &MhaStructure {
        &self.a
    }

    pub fn b_side(&self) -> &MhaStructure {
        &self.b
    }

    pub fn group(&self) -> &Group {
        self.b.group()
    }

    /// The whole (finite) grading group as a window.
    pub fn window(&self) -> &Window {
        &self.full
    }

    pub fn form(&self, p: Elem) -> Option<&Matrix> {
        self.forms.get(&p)
    }

    pub fn forms(&self) -> &BTreeMap<Elem, Matrix> {
        &self.forms
    }

    pub fn pair(&self, a: Key, b: Key) -> Q {
        if a.0 != b.0 {
            return Q::zero();
        }
        self.forms
            .get(&a.0)
            .map(|f| f[(a.1, b.1)].clone())
            .unwrap_or_default()
    }

    pub fn pair_elements(&self, x: &GradedElement, y: &GradedElement) -> Q {
        let mut out = Q::zero();
        for (a, c) in x.iter() {
            for (b, d) in y.iter() {
                if a.0 == b.0 {
                    out += &(c * d * self.pair(*a, *b));
                }
            }
        }
        out
    }

    /// `⟨s, t⟩` for `s ∈ A⊗A`, `t ∈ B⊗B`, pairing legs in order.
    pub fn pair_tensors(&self, s: &Tensor, t: &Tensor) -> Q {
        let mut out = Q::zero();
        for ((a1, a2), c) in s.iter() {
            for ((b1, b2), d) in t.iter() {
                if a1.0 == b1.0 && a2.0 == b2.0 {
                    out += &(c * d * self.pair(*a1, *b1) * self.pair(*a2, *b2));
                }
            }
        }
        out
    }

    /// Full `Δ(a)` on the graded side.
    pub fn delta_a(&self, a: Key) -> Tensor {
        self.delta_a
            .get_or_insert_with(&a, || full_coproduct(self.a.as_ref(), a))
    }

    /// Full `Δ(b)`, summed over every block.
    pub fn delta_b(&self, b: Key) -> Tensor {
        self.delta_b
            .get_or_insert_with(&b, || coproduct(self.b.as_ref(), b, &self.full))
    }

    /// `a ▶ b = Σ ⟨a, b₂⟩ b₁`.
    pub fn a_on_b(&self, a: Key, b: Key) -> GradedElement {
        let mut out = GradedElement::new();
        for ((b1, b2), c) in self.delta_b(b).iter() {
            out.add_term(*b1, c * &self.pair(a, *b2));
        }
        out
    }

    /// `b ◀ a = Σ ⟨a, b₁⟩ b₂`.
    pub fn b_by_a(&self, b: Key, a: Key) -> GradedElement {
        let mut out = GradedElement::new();
        for ((b1, b2), c) in self.delta_b(b).iter() {
            out.add_term(*b2, c * &self.pair(a, *b1));
        }
        out
    }

    /// `b ▶ a = Σ ⟨a₂, b⟩ a₁`.
    pub fn b_on_a(&self, b: Key, a: Key) -> GradedElement {
        let mut out = GradedElement::new();
        for ((a1, a2), c) in self.delta_a(a).iter() {
            out.add_term(*a1, c * &self.pair(*a2, b));
        }
        out
    }

    /// `a ◀ b = Σ ⟨a₁, b⟩ a₂`.
    pub fn a_by_b(&self, a: Key, b: Key) -> GradedElement {
        let mut out = GradedElement::new();
        for ((a1, a2), c) in self.delta_a(a).iter() {
            out.add_term(*a2, c * &self.pair(*a1, b));
        }
        out
    }

    /// Bilinear extension of `b ▶ a`.
    pub fn act_b_on_a(&self, y: &GradedElement, x: &GradedElement) -> GradedElement {
        bilinear(y, x, |b, a| self.b_on_a(b, a))
    }

    /// Bilinear extension of `a ◀ b`.
    pub fn act_a_by_b(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        bilinear(x, y, |a, b| self.a_by_b(a, b))
    }

    /// `1_A = Σ_p 1_{A,p}`, if every component reports its part of the unit.
    pub fn unit_a(&self) -> Option<GradedElement> {
        total_unit(self.a.as_ref(), &self.full)
    }

    /// `1_B = Σ_p 1_p` as an element (the group is finite).
    pub fn unit_b(&self) -> Option<GradedElement> {
        total_unit(self.b.as_ref(), &self.full)
    }
}

fn total_unit(h: &dyn GradedAlgebra, w: &Window) -> Option<GradedElement> {
    let mut out = GradedElement::new();
    for &p in w.elements() {
        if h.dim(p) > 0 {
            out.add(&h.unit_component(p)?);
        }
    }
    Some(out)
}

fn bilinear(
    x: &GradedElement,
    y: &GradedElement,
    f: impl Fn(Key, Key) -> GradedElement,
) -> GradedElement {
    let mut out = GradedElement::new();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            out.add_scaled(&f(*a, *b), &(c * d));
        }
    }
    out
}

fn nondegeneracy(p: &Pairing, w: &Window) -> Failures {
    let g = p.group();
    let mut f = Failures::new();
    for &q in w.elements() {
        let (m, n) = (p.a.dim(q), p.b.dim(q));
        if m == 0 && n == 0 {
            continue;
        }
        let rank = p.form(q).map(Matrix::rank).unwrap_or(0);
        f.check(m == n && rank == m, || {
            format!("component {}: rank {rank} of a {m}×{n} form", g.name(q))
        });
    }
    f
}

/// Non-degeneracy, the two duality laws, units against counits, antipodes and the
/// *-pairing law on window basis vectors.
pub fn check_pairing(p: &Pairing, w: &Window) -> CertificateReport {
    let g = p.group();
    let (a, b) = (p.a.as_ref(), p.b.as_ref());
    let (ak, bk) = (window_basis(a, w), window_basis(b, w));
    let mut report = CertificateReport::new(w.describe(g));
    report.push(
        "pairing non-degenerate on each component",
        "pairing/nondegenerate",
        nondegeneracy(p, w),
    );

    let mut dual_a = Failures::new();
    for &x in &ak {
        for &y in &ak {
            let xy = a.mul_basis(x, y);
            for &z in &bk {
                let lhs = p.pair_elements(&xy, &GradedElement::basis(z));
                let rhs = p.pair_tensors(&Tensor::basis((x, y)), &p.delta_b(z));
                dual_a.check(lhs == rhs, || {
                    format!(
                        "⟨{}·{}, {}⟩",
                        key_name(g, x),
                        key_name(g, y),
                        key_name(g, z)
                    )
                });
            }
        }
    }
    report.push(
        "product of A dual to comultiplication of B",
        "pairing/duality",
        dual_a,
    );

    let mut dual_b = Failures::new();
    for &x in &ak {
        let dx = p.delta_a(x);
        for &y in &bk {
            for &z in &bk {
                let lhs = p.pair_elements(&GradedElement::basis(x), &b.mul_basis(y, z));
                let rhs = p.pair_tensors(&dx, &Tensor::basis((y, z)));
                dual_b.check(lhs == rhs, || {
                    format!(
                        "⟨{}, {}·{}⟩",
                        key_name(g, x),
                        key_name(g, y),
                        key_name(g, z)
                    )
                });
            }
        }
    }
    report.push(
        "comultiplication of A dual to product of B",
        "pairing/duality",
        dual_b,
    );

    let mut units = Failures::new();
    match (p.unit_a(), p.unit_b()) {
        (Some(ua), Some(ub)) => {
            for &x in &ak {
                let v = p.pair_elements(&GradedElement::basis(x), &ub);
                units.check(v == a.counit(x), || format!("⟨{}, 1⟩", key_name(g, x)));
            }
            for &y in &bk {
                let v = p.pair_elements(&ua, &GradedElement::basis(y));
                units.check(
                    v == counit_of(p.b.as_ref(), &GradedElement::basis(y)),
                    || format!("⟨1, {}⟩", key_name(g, y)),
                );
            }
        }
        _ => units.record(|| "a side has no unit".into()),
    }
    report.push("units pair to counits", "pairing/units", units);

    let mut antipode = Failures::new();
    for &x in &ak {
        let sx = antipode_of(p.a.as_ref(), &GradedElement::basis(x));
        for &y in &bk {
            let sy = antipode_of(p.b.as_ref(), &GradedElement::basis(y));
            let (l, r) = (
                p.pair_elements(&sx, &GradedElement::basis(y)),
                p.pair_elements(&GradedElement::basis(x), &sy),
            );
            antipode.check(l == r, || {
                format!(
                    "⟨S {}, {}⟩ = {l}, ⟨{}, S {}⟩ = {r}",
                    key_name(g, x),
                    key_name(g, y),
                    key_name(g, x),
                    key_name(g, y)
                )
            });
        }
    }
    report.push("antipodes are adjoint", "pairing/antipode", antipode);

    if a.has_star() && b.has_star() {
        let mut star = Failures::new();
        for &x in &ak {
            let xs = star_of(a, &GradedElement::basis(x));
            for &y in &bk {
                let sy = star_of(b, &antipode_of(p.b.as_ref(), &GradedElement::basis(y)));
                let l = p.pair_elements(&xs, &GradedElement::basis(y));
                let r = p.pair_elements(&GradedElement::basis(x), &sy).conj();
                star.check(l == r, || {
                    format!("⟨{}*, {}⟩", key_name(g, x), key_name(g, y))
                });
            }
        }
        report.push("*-pairing law", "pairing/star", star);
    } else {
        report.note("no *-structure on both sides; *-pairing law not applicable");
    }
    report
}

/// The grading of `A` induced by the cograding of `B`: `A_p = 1_p ▶ A`, compatibility with
/// product, comultiplication and antipode, and non-degeneracy of the forms.
pub fn induced_grading_check(p: &Pairing, w: &Window) -> CertificateReport {
    let g = p.group();
    let (a, b) = (p.a.as_ref(), p.b.as_ref());
    let (ak, bk) = (window_basis(a, w), window_basis(b, w));
    let mut report = CertificateReport::new(w.describe(g));
    report.push(
        "pairing non-degenerate on each component",
        "pairing/nondegenerate",
        nondegeneracy(p, w),
    );

    let mut induced = Failures::new();
    for &q in w.elements() {
        let Some(unit) = b.unit_component(q) else {
            if b.dim(q) > 0 {
                induced.record(|| format!("B_{} has no unit", g.name(q)));
            }
            continue;
        };
        for &x in &ak {
            let lhs = p.act_b_on_a(&unit, &GradedElement::basis(x));
            let rhs = if x.0 == q {
                GradedElement::basis(x)
            } else {
                GradedElement::new()
            };
            induced.check(lhs == rhs, || {
                format!("1_{} ▶ {}", g.name(q), key_name(g, x))
            });
        }
    }
    report.push("A_p = 1_p ▶ A", "grading/induced", induced);

    let mut product = Failures::new();
    for &x in &ak {
        for &y in &ak {
            let target = g.mul(x.0, y.0);
            product.check(a.mul_basis(x, y).keys().all(|k| k.0 == target), || {
                format!("{}·{}", key_name(g, x), key_name(g, y))
            });
        }
    }
    report.push("A_p A_q ⊆ A_pq", "grading/product", product);

    let mut comult = Failures::new();
    for &x in &ak {
        let dx = p.delta_a(x);
        for &y in &bk {
            for &z in bk.iter().filter(|z| !(y.0 == x.0 && z.0 == x.0)) {
                let v = p.pair_tensors(&dx, &Tensor::basis((y, z)));
                comult.check(v.is_zero(), || {
                    format!(
                        "⟨Δ({}), {} ⊗ {}⟩ = {v}",
                        key_name(g, x),
                        key_name(g, y),
                        key_name(g, z)
                    )
                });
            }
        }
    }
    report.push(
        "⟨Δ(A_p), B_q ⊗ B_r⟩ = 0 unless q = r = p",
        "grading/comultiplication",
        comult,
    );

    let mut antipode = Failures::new();
    for &q in w.elements() {
        let target = g.inv(q);
        let cols: Vec<GradedElement> = ak
            .iter()
            .filter(|x| x.0 == q)
            .map(|&x| antipode_of(p.a.as_ref(), &GradedElement::basis(x)))
            .collect();
        let typed = cols.iter().all(|c| c.keys().all(|k| k.0 == target));
        let onto = sparse_rank(&cols) == a.dim(target);
        antipode.check(typed && onto, || {
            format!("S(A_{}) ≠ A_{}", g.name(q), g.name(target))
        });
    }
    report.push("S(A_p) = A_p⁻¹", "grading/antipode", antipode);
    report
}

/// Basis images of the four module actions on window components.
#[derive(Clone, Debug)]
pub struct ModuleActionTables {
    /// `a ▶ b`, keyed by `(a, b)`.
    pub a_on_b: BTreeMap<(Key, Key), GradedElement>,
    /// `b ◀ a`, keyed by `(b, a)`.
    pub b_by_a: BTreeMap<(Key, Key), GradedElement>,
    /// `b ▶ a`, keyed by `(b, a)`.
    pub b_on_a: BTreeMap<(Key, Key), GradedElement>,
    /// `a ◀ b`, keyed by `(a, b)`.
    pub a_by_b: BTreeMap<(Key, Key), GradedElement>,
    pub report: CertificateReport,
}

impl ModuleActionTables {
    /// Matrix of `b ↦ a ▶ b` on the window basis of `B`, columns indexed like `keys`.
    pub fn a_on_b_matrix(&self, a: Key, keys: &[Key]) -> Matrix {
        Matrix::from_fn(keys.len(), keys.len(), |i, j| {
            self.a_on_b
                .get(&(a, keys[j]))
                .map(|v| v.get(&keys[i]))
                .unwrap_or_default()
        })
    }
}

/// Tabulates the four actions and verifies module laws, module-algebra laws, unitality and
/// the vanishing of actions between different components.
pub fn build_module_actions(p: &Pairing, w: &Window) -> Result<ModuleActionTables> {
    let pairing_report = check_pairing(p, w);
    if let Some(f) = pairing_report.failures().next() {
        return Err(Error::Pairing(format!(
            "{}: {}",
            f.name,
            f.witness.clone().unwrap_or_default()
        )));
    }
    let g = p.group();
    let (a, b) = (p.a.as_ref(), p.b.as_ref());
    let (ak, bk) = (window_basis(a, w), window_basis(b, w));
    let mut t = ModuleActionTables {
        a_on_b: BTreeMap::new(),
        b_by_a: BTreeMap::new(),
        b_on_a: BTreeMap::new(),
        a_by_b: BTreeMap::new(),
        report: CertificateReport::new(w.describe(g)),
    };
    for &x in &ak {
        for &y in &bk {
            t.a_on_b.insert((x, y), p.a_on_b(x, y));
            t.b_by_a.insert((y, x), p.b_by_a(y, x));
            t.b_on_a.insert((y, x), p.b_on_a(y, x));
            t.a_by_b.insert((x, y), p.a_by_b(x, y));
        }
    }
    let e = |k: Key| GradedElement::basis(k);
    let lin_ab = |x: &GradedElement, y: &GradedElement| bilinear(x, y, |a, b| p.a_on_b(a, b));
    let lin_ba = |y: &GradedElement, x: &GradedElement| bilinear(y, x, |b, a| p.b_by_a(b, a));
    let name2 = |x: Key, y: Key| format!("({}, {})", key_name(g, x), key_name(g, y));
    let name3 = |x: Key, y: Key, z: Key| {
        format!(
            "({}, {}, {})",
            key_name(g, x),
            key_name(g, y),
            key_name(g, z)
        )
    };

    // module laws
    let (mut l1, mut l2, mut l3, mut l4) = (
        Failures::new(),
        Failures::new(),
        Failures::new(),
        Failures::new(),
    );
    for &x in &ak {
        for &x2 in &ak {
            let xx = a.mul_basis(x, x2);
            for &y in &bk {
                l1.check(
                    lin_ab(&xx, &e(y)) == lin_ab(&e(x), &p.a_on_b(x2, y)),
                    || name3(x, x2, y),
                );
                l2.check(
                    lin_ba(&e(y), &xx) == lin_ba(&p.b_by_a(y, x), &e(x2)),
                    || name3(y, x, x2),
                );
            }
        }
    }
    for &y in &bk {
        for &y2 in &bk {
            let yy = b.mul_basis(y, y2);
            for &x in &ak {
                l3.check(
                    p.act_b_on_a(&yy, &e(x)) == p.act_b_on_a(&e(y), &p.b_on_a(y2, x)),
                    || name3(y, y2, x),
                );
                l4.check(
                    p.act_a_by_b(&e(x), &yy) == p.act_a_by_b(&p.a_by_b(x, y), &e(y2)),
                    || name3(x, y, y2),
                );
            }
        }
    }
    t.report
        .push("A ▶ B is a left module", "actions/module", l1);
    t.report
        .push("B ◀ A is a right module", "actions/module", l2);
    t.report
        .push("B ▶ A is a left module", "actions/module", l3);
    t.report
        .push("A ◀ B is a right module", "actions/module", l4);

    // module-algebra laws
    let (mut m1, mut m2, mut m3, mut m4) = (
        Failures::new(),
        Failures::new(),
        Failures::new(),
        Failures::new(),
    );
    for &x in &ak {
        let dx = p.delta_a(x);
        for &y in &bk {
            for &y2 in bk.iter().filter(|y2| y2.0 == y.0) {
                let yy = b.mul_basis(y, y2);
                let mut rhs1 = GradedElement::new();
                let mut rhs2 = GradedElement::new();
                for ((x1, x2), c) in dx.iter() {
                    rhs1.add_scaled(&mul(b, &p.a_on_b(*x1, y), &p.a_on_b(*x2, y2)), c);
                    rhs2.add_scaled(&mul(b, &p.b_by_a(y, *x1), &p.b_by_a(y2, *x2)), c);
                }
                m1.check(lin_ab(&e(x), &yy) == rhs1, || name3(x, y, y2));
                m2.check(lin_ba(&yy, &e(x)) == rhs2, || name3(y, y2, x));
            }
        }
    }
    for &y in &bk {
        let dy = p.delta_b(y);
        for &x in &ak {
            for &x2 in &ak {
                let xx = a.mul_basis(x, x2);
                let mut rhs3 = GradedElement::new();
                let mut rhs4 = GradedElement::new();
                for ((y1, y2), c) in dy.iter() {
                    rhs3.add_scaled(&mul(a, &p.b_on_a(*y1, x), &p.b_on_a(*y2, x2)), c);
                    rhs4.add_scaled(&mul(a, &p.a_by_b(x, *y1), &p.a_by_b(x2, *y2)), c);
                }
                m3.check(p.act_b_on_a(&e(y), &xx) == rhs3, || name3(y, x, x2));
                m4.check(p.act_a_by_b(&xx, &e(y)) == rhs4, || name3(x, x2, y));
            }
        }
    }
    t.report
        .push("A ▶ B is a module algebra", "actions/module-algebra", m1);
    t.report
        .push("B ◀ A is a module algebra", "actions/module-algebra", m2);
    t.report
        .push("B ▶ A is a module algebra", "actions/module-algebra", m3);
    t.report
        .push("A ◀ B is a module algebra", "actions/module-algebra", m4);

    // unitality: the images span each window component
    let mut unital = Failures::new();
    for &q in w.elements() {
        let (db, da) = (b.dim(q), a.dim(q));
        let onto = |images: Vec<GradedElement>, d: usize, what: &str, unital: &mut Failures| {
            let restricted: Vec<GradedElement> =
                images.iter().map(|v| v.filtered(|k| k.0 == q)).collect();
            let r = sparse_rank(&restricted);
            unital.check(r == d, || {
                format!("{what} reaches rank {r} of {d} on component {}", g.name(q))
            });
        };
        onto(
            t.a_on_b.values().cloned().collect(),
            db,
            "A ▶ B",
            &mut unital,
        );
        onto(
            t.b_by_a.values().cloned().collect(),
            db,
            "B ◀ A",
            &mut unital,
        );
        onto(
            t.b_on_a.values().cloned().collect(),
            da,
            "B ▶ A",
            &mut unital,
        );
        onto(
            t.a_by_b.values().cloned().collect(),
            da,
            "A ◀ B",
            &mut unital,
        );
    }
    t.report
        .push("module actions are unital", "actions/unital", unital);

    let mut mixed = Failures::new();
    for &x in &ak {
        for &y in bk.iter().filter(|y| y.0 != x.0) {
            mixed.check(
                t.b_on_a[&(y, x)].is_zero() && t.a_by_b[&(x, y)].is_zero(),
                || name2(y, x),
            );
        }
    }
    t.report.push(
        "actions vanish between different components",
        "actions/mixed-grading",
        mixed,
    );
    Ok(t)
}
