//! Cograded structures, admissible actions and crossings, the deformed comultiplication and
//! the regrading `B'_p = B_{p⁻¹}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebras::{
    basis, check_graded_algebra, key_name, mul, star_of, tensor_of, window_basis, GradedAlgebra,
    GradedElement, Grading, Key, Tensor,
};
use crate::error::{Error, Result};
use crate::exact::{sparse_rank, GaussianRational as Q};
use crate::groups::{Elem, Group, SelfAction, Window};
use crate::hopf::{
    check_t1_t2, coproduct_part_of, source_component, GradedFunctional, Indexing, MhaStructure,
    MultiplierHopf,
};
use crate::report::{CertificateReport, Failures};

type PiFn = dyn Fn(Elem, Key) -> GradedElement + Send + Sync;

/// An action `p ↦ π_p` of the grading group on a cograded algebra together with the action
/// `ρ` it induces on components: `π_p(B_q) = B_{ρ_p(q)}`.
#[derive(Clone)]
pub struct Action {
    pub name: String,
    pub rho: SelfAction,
    pi: Arc<PiFn>,
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Action")
            .field("name", &self.name)
            .field("rho", &self.rho)
            .finish_non_exhaustive()
    }
}

impl Action {
    pub fn new(
        name: &str,
        rho: SelfAction,
        pi: impl Fn(Elem, Key) -> GradedElement + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.to_string(),
            rho,
            pi: Arc::new(pi),
        }
    }

    /// `π_p = id`, `ρ_p = id`.
    pub fn trivial() -> Self {
        Self::new("trivial", SelfAction::Trivial, |_, k| {
            GradedElement::basis(k)
        })
    }

    /// Moves basis vectors between components along `ρ`: `π_p(e_{q,i}) = e_{ρ_p(q),i}`.
    pub fn shuffle(g: &Group, rho: SelfAction) -> Self {
        let g = g.clone();
        let r = rho.clone();
        Self::new(&format!("{} shuffle", rho.name()), rho, move |p, (q, i)| {
            GradedElement::basis((r.apply(&g, p, q), i))
        })
    }

    /// The adjoint shuffle `π_p(e_{q,i}) = e_{pqp⁻¹,i}`.
    pub fn adjoint(g: &Group) -> Self {
        Self::shuffle(g, SelfAction::Adjoint)
    }

    /// Explicit images `π_p(e_k)`; missing entries are zero.
    pub fn from_table(
        name: &str,
        rho: SelfAction,
        images: HashMap<(Elem, Key), GradedElement>,
    ) -> Self {
        Self::new(name, rho, move |p, k| {
            images.get(&(p, k)).cloned().unwrap_or_default()
        })
    }

    pub fn apply_basis(&self, p: Elem, k: Key) -> GradedElement {
        (self.pi)(p, k)
    }

    pub fn apply(&self, p: Elem, x: &GradedElement) -> GradedElement {
        x.map_linear(|k| self.apply_basis(p, *k))
    }

    /// `(π_p ⊗ π_q)(t)`.
    pub fn apply_tensor(&self, p: Elem, q: Elem, t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for ((a, b), c) in t.iter() {
            out.add_scaled(
                &tensor_of(&self.apply_basis(p, *a), &self.apply_basis(q, *b)),
                c,
            );
        }
        out
    }

    /// `(π_p ⊗ ι)(t)`.
    pub fn apply_left(&self, p: Elem, t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for ((a, b), c) in t.iter() {
            out.add_scaled(
                &tensor_of(&self.apply_basis(p, *a), &GradedElement::basis(*b)),
                c,
            );
        }
        out
    }

    /// The same action seen through the regrading `B'_q = B_{q⁻¹}`.
    pub fn regraded(&self, g: &Group) -> Self {
        let rho = match &self.rho {
            SelfAction::Adjoint => SelfAction::Adjoint,
            SelfAction::Trivial => SelfAction::Trivial,
            SelfAction::Table(t) => SelfAction::Table(Arc::new(
                (0..t.len())
                    .map(|p| {
                        (0..t.len())
                            .map(|q| g.inv(t[p][g.inv(q as Elem) as usize]))
                            .collect()
                    })
                    .collect(),
            )),
        };
        let (inner, g) = (self.clone(), g.clone());
        Self::new(
            &format!("{} (regraded)", self.name),
            rho,
            move |p, (q, i)| invert_keys(&g, &inner.apply_basis(p, (g.inv(q), i))),
        )
    }
}

fn invert_key(g: &Group, (p, i): Key) -> Key {
    (g.inv(p), i)
}

fn invert_keys(g: &Group, x: &GradedElement) -> GradedElement {
    x.iter()
        .map(|(k, c)| (invert_key(g, *k), c.clone()))
        .collect()
}

fn invert_tensor(g: &Group, t: &Tensor) -> Tensor {
    t.iter()
        .map(|((a, b), c)| ((invert_key(g, *a), invert_key(g, *b)), c.clone()))
        .collect()
}

/// Cograded algebra laws, block bijectivity, counit and antipode grading, and the laws of
/// the component units `1_p` (the image of `δ_p` under the embedding of `K(G)`).
pub fn check_cograded(b: &dyn MultiplierHopf, w: &Window) -> CertificateReport {
    let g = b.group();
    let e = g.identity();
    let mut report = CertificateReport::new(w.describe(g));
    let mut mode = Failures::new();
    mode.check(b.grading() == Grading::Cograded, || {
        format!("{} is a graded Hopf side", b.label())
    });
    report.push("cograded mode", "cograded/mode", mode);
    if b.grading() != Grading::Cograded {
        return report;
    }
    report.absorb("", check_graded_algebra(b, w));
    report.absorb("", check_t1_t2(b, w));

    let keys = window_basis(b, w);
    let (mut support, mut typing) = (Failures::new(), Failures::new());
    for &x in &keys {
        if x.0 != e {
            support.check(b.counit(x).is_zero(), || key_name(g, x));
        }
        let target = g.inv(x.0);
        typing.check(b.antipode(x).keys().all(|k| k.0 == target), || {
            key_name(g, x)
        });
    }
    report.push(
        "counit vanishes off the identity component",
        "cograded/counit-support",
        support,
    );
    report.push(
        "antipode reverses the grading",
        "cograded/antipode-grading",
        typing,
    );

    let unit = |p: Elem| b.unit_component(p).unwrap_or_default();
    let (mut central, mut comult, mut counit, mut antipode, mut star) = (
        Failures::new(),
        Failures::new(),
        Failures::new(),
        Failures::new(),
        Failures::new(),
    );
    for &p in w.elements() {
        let u = unit(p);
        for x in basis(b, p) {
            let bx = GradedElement::basis(x);
            central.check(mul(b, &u, &bx) == bx && mul(b, &bx, &u) == bx, || {
                key_name(g, x)
            });
        }
        let expected = if p == e { Q::one() } else { Q::zero() };
        counit.check(crate::hopf::counit_of(b, &u) == expected, || {
            format!("ε(1_{}) ≠ {expected}", g.name(p))
        });
        antipode.check(crate::hopf::antipode_of(b, &u) == unit(g.inv(p)), || {
            format!("S(1_{})", g.name(p))
        });
        if b.has_star() {
            star.check(star_of(b, &u) == u, || {
                format!("1_{}* ≠ 1_{}", g.name(p), g.name(p))
            });
        }
        for &q in w.elements() {
            let r = source_component(b, p, q);
            let l = coproduct_part_of(b, &unit(r), p, q);
            comult.check(l == tensor_of(&unit(p), &unit(q)), || {
                format!("Δ(1_{}) at legs ({}, {})", g.name(r), g.name(p), g.name(q))
            });
        }
    }
    report.push(
        "component units are central idempotents",
        "cograded/embedding",
        central,
    );
    report.push(
        "comultiplication of component units",
        "cograded/embedding-comultiplication",
        comult,
    );
    report.push(
        "counit on component units",
        "cograded/embedding-counit",
        counit,
    );
    report.push(
        "antipode on component units",
        "cograded/embedding-antipode",
        antipode,
    );
    if b.has_star() {
        report.push(
            "component units are self-adjoint",
            "cograded/embedding-star",
            star,
        );
    }
    report
}

/// Outcome of the admissibility conditions on a window.
#[derive(Clone, Debug)]
pub struct AdmissibilityCertificate {
    pub report: CertificateReport,
}

pub const CONDITION_NAMES: [&str; 3] = [
    "admissible (1): π respects the comultiplication",
    "admissible (2): π_p maps B_q onto B_ρp(q)",
    "admissible (3): π_ρp(q) = π_pqp⁻¹",
];

impl AdmissibilityCertificate {
    /// Condition 1, 2 or 3.
    pub fn condition(&self, n: usize) -> bool {
        self.report
            .entry(CONDITION_NAMES[n - 1])
            .is_some_and(|e| e.passed)
    }

    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Action laws and the three admissibility conditions on window components.
pub fn check_admissible(
    b: &dyn MultiplierHopf,
    a: &Action,
    w: &Window,
) -> AdmissibilityCertificate {
    let g = b.group();
    let ix = b.indexing();
    let mut report = CertificateReport::new(w.describe(g));
    let keys = window_basis(b, w);

    let mut rho_law = Failures::new();
    for v in a.rho.law_violations(g, w) {
        rho_law.record(|| v);
    }
    report.push("ρ is a left action", "admissible/rho", rho_law);
    report.note(if a.rho.is_automorphic_on(g, w) {
        "ρ acts by group automorphisms on the window (not required)"
    } else {
        "ρ does not act by group automorphisms on the window (not required)"
    });

    let mut law = Failures::new();
    for &x in &keys {
        let bx = GradedElement::basis(x);
        law.check(a.apply(g.identity(), &bx) == bx, || {
            format!("π_e moves {}", key_name(g, x))
        });
        for &p in w.elements() {
            for &q in w.elements() {
                let l = a.apply(g.mul(p, q), &bx);
                let r = a.apply(p, &a.apply(q, &bx));
                law.check(l == r, || {
                    format!(
                        "π_pq ≠ π_p π_q at ({}, {}) on {}",
                        g.name(p),
                        g.name(q),
                        key_name(g, x)
                    )
                });
            }
        }
    }
    report.push("π is a group homomorphism", "admissible/action", law);

    let (mut hom, mut star) = (Failures::new(), Failures::new());
    for &p in w.elements() {
        for &x in &keys {
            let px = a.apply_basis(p, x);
            for &y in keys.iter().filter(|y| y.0 == x.0) {
                let l = a.apply(p, &b.mul_basis(x, y));
                let r = mul(b, &px, &a.apply_basis(p, y));
                hom.check(l == r, || {
                    format!(
                        "π_{} on ({}, {})",
                        g.name(p),
                        key_name(g, x),
                        key_name(g, y)
                    )
                });
            }
            if b.has_star() {
                let l = a.apply(p, &star_of(b, &GradedElement::basis(x)));
                star.check(l == star_of(b, &px), || {
                    format!("π_{} on {}*", g.name(p), key_name(g, x))
                });
            }
        }
    }
    report.push("π_p are algebra homomorphisms", "admissible/algebra", hom);
    if b.has_star() {
        report.push("π_p respect the star", "admissible/star", star);
    }

    // (1): compare Δ(π_p x) and (π_p⊗π_p)Δ(x) block by block, keyed by the left leg
    let mut c1 = Failures::new();
    for &p in w.elements() {
        for &x in &keys {
            let px = a.apply_basis(p, x);
            for &q in w.elements() {
                let rights = ix.right_legs(g, x.0, q);
                if rights.iter().any(|r| !w.contains(*r)) {
                    continue;
                }
                let mut rhs = Tensor::new();
                for &r in &rights {
                    rhs.add(&a.apply_tensor(p, p, &b.coproduct_part(x, q, r)));
                }
                let lq = a.rho.apply(g, p, q);
                let mut lhs = Tensor::new();
                for (k, c) in px.iter() {
                    for r in ix.right_legs(g, k.0, lq) {
                        lhs.add_scaled(&b.coproduct_part(*k, lq, r), c);
                    }
                }
                c1.check(lhs == rhs, || {
                    format!(
                        "p = {}, {} at left leg {}",
                        g.name(p),
                        key_name(g, x),
                        g.name(q)
                    )
                });
            }
        }
    }
    // (2): typing and invertibility of each π_p: B_q → B_ρp(q)
    let mut c2 = Failures::new();
    for &p in w.elements() {
        for &q in w.elements() {
            let target = a.rho.apply(g, p, q);
            let cols: Vec<GradedElement> = basis(b, q).map(|x| a.apply_basis(p, x)).collect();
            let typed = cols.iter().all(|c| c.keys().all(|k| k.0 == target));
            let rank = sparse_rank(&cols);
            c2.check(
                typed && b.dim(q) == b.dim(target) && rank == b.dim(q),
                || {
                    format!(
                        "π_{} on B_{} (target B_{}, rank {rank})",
                        g.name(p),
                        g.name(q),
                        g.name(target)
                    )
                },
            );
        }
    }
    // (3): π_ρp(q) = π_pqp⁻¹ on window components
    let mut c3 = Failures::new();
    for &p in w.elements() {
        for &q in w.elements() {
            let (s, t) = (a.rho.apply(g, p, q), g.conjugate(p, q));
            if s == t {
                continue;
            }
            for &x in &keys {
                c3.check(a.apply_basis(s, x) == a.apply_basis(t, x), || {
                    format!(
                        "p = {}, q = {} differ on {}",
                        g.name(p),
                        g.name(q),
                        key_name(g, x)
                    )
                });
            }
        }
    }
    report.push(CONDITION_NAMES[0], "admissible/1", c1);
    report.push(CONDITION_NAMES[1], "admissible/2", c2);
    report.push(CONDITION_NAMES[2], "admissible/3", c3);
    AdmissibilityCertificate { report }
}

/// Admissible and `ρ` adjoint on the window.
pub fn check_crossing(b: &dyn MultiplierHopf, a: &Action, w: &Window) -> CertificateReport {
    let g = b.group();
    let mut report = check_admissible(b, a, w).report;
    let mut adj = Failures::new();
    if let Some((p, q)) = a.rho.adjoint_mismatch(g, w) {
        adj.record(|| {
            format!(
                "ρ_{}({}) ≠ {}",
                g.name(p),
                g.name(q),
                g.name(g.conjugate(p, q))
            )
        });
    }
    report.push("ρ is the adjoint action", "crossing/adjoint", adj);
    report
}

/// `B` with the comultiplication deformed by an admissible action.
pub struct Deformed {
    base: MhaStructure,
    action: Action,
    indexing: Indexing,
}

impl Deformed {
    /// Deforms without checking admissibility.
    pub fn new_unchecked(base: MhaStructure, action: Action) -> Self {
        let indexing = Indexing::twisted(base.indexing(), action.rho.clone(), base.group());
        Self {
            base,
            action,
            indexing,
        }
    }

    fn antipode_source(&self, s: Elem) -> Elem {
        let g = self.base.group();
        match &self.action.rho {
            SelfAction::Adjoint | SelfAction::Trivial => g.inv(s),
            SelfAction::Table(_) => g
                .elements()
                .and_then(|es| {
                    es.into_iter()
                        .find(|&p| self.action.rho.apply(g, g.inv(p), g.inv(p)) == s)
                })
                .unwrap_or_else(|| g.inv(s)),
        }
    }
}

impl GradedAlgebra for Deformed {
    fn group(&self) -> &Group {
        self.base.group()
    }
    fn grading(&self) -> Grading {
        Grading::Cograded
    }
    fn dim(&self, p: Elem) -> usize {
        self.base.dim(p)
    }
    fn mul_basis(&self, x: Key, y: Key) -> GradedElement {
        self.base.mul_basis(x, y)
    }
    fn unit_component(&self, p: Elem) -> Option<GradedElement> {
        self.base.unit_component(p)
    }
    fn star(&self, x: &GradedElement) -> Option<GradedElement> {
        self.base.star(x)
    }
    fn has_star(&self) -> bool {
        self.base.has_star()
    }
}

impl MultiplierHopf for Deformed {
    fn indexing(&self) -> Indexing {
        self.indexing.clone()
    }
    fn coproduct_part(&self, x: Key, left: Elem, right: Elem) -> Tensor {
        let g = self.base.group();
        if self.indexing.source(g, left, right) != x.0 {
            return Tensor::new();
        }
        let inner = self
            .base
            .coproduct_part(x, self.action.rho.apply(g, right, left), right);
        self.action.apply_left(g.inv(right), &inner)
    }
    fn coproduct_legs(&self, _x: Key) -> Option<Vec<(Elem, Elem)>> {
        None
    }
    fn counit(&self, x: Key) -> Q {
        self.base.counit(x)
    }
    fn antipode(&self, x: Key) -> GradedElement {
        let g = self.base.group();
        self.action.apply(g.inv(x.0), &self.base.antipode(x))
    }
    fn antipode_inverse(&self, y: Key) -> GradedElement {
        let p = self.antipode_source(y.0);
        let moved = self.action.apply_basis(p, y);
        crate::hopf::antipode_inverse_of(self.base.as_ref(), &moved)
    }
    fn label(&self) -> String {
        format!("{} deformed by {}", self.base.label(), self.action.name)
    }
}

/// `B̃`: same algebra, counit and star; blocks `(π_{q⁻¹}⊗ι)Δ_{ρ_q(p), q}`; `S̃ = π_{p⁻¹}S` on `B_p`.
pub fn deform(b: MhaStructure, a: &Action, w: &Window) -> Result<MhaStructure> {
    let cert = check_admissible(b.as_ref(), a, w);
    if let Some(f) = cert.report.failures().next() {
        return Err(Error::NotAdmissible(format!(
            "{}: {}",
            f.name,
            f.witness.clone().unwrap_or_default()
        )));
    }
    Ok(Arc::new(Deformed::new_unchecked(b, a.clone())))
}

/// `ψ̃ = ψ∘π_{p⁻¹}` on `B_p`.
pub fn deformed_right_integral(
    b: &dyn MultiplierHopf,
    a: &Action,
    psi: &GradedFunctional,
) -> GradedFunctional {
    let (g, a, psi) = (b.group().clone(), a.clone(), psi.clone());
    GradedFunctional::new(move |k| psi.eval(&a.apply_basis(g.inv(k.0), k)))
}

/// The regrading `B'_p = B_{p⁻¹}` of a cograded structure.
pub struct Regraded {
    base: MhaStructure,
}

impl Regraded {
    pub fn new(base: MhaStructure) -> Self {
        Self { base }
    }

    fn g(&self) -> &Group {
        self.base.group()
    }
}

impl GradedAlgebra for Regraded {
    fn group(&self) -> &Group {
        self.base.group()
    }
    fn grading(&self) -> Grading {
        self.base.grading()
    }
    fn dim(&self, p: Elem) -> usize {
        self.base.dim(self.g().inv(p))
    }
    fn mul_basis(&self, x: Key, y: Key) -> GradedElement {
        let g = self.g();
        invert_keys(g, &self.base.mul_basis(invert_key(g, x), invert_key(g, y)))
    }
    fn unit_component(&self, p: Elem) -> Option<GradedElement> {
        let g = self.g();
        self.base
            .unit_component(g.inv(p))
            .map(|u| invert_keys(g, &u))
    }
    fn star(&self, x: &GradedElement) -> Option<GradedElement> {
        let g = self.g();
        self.base
            .star(&invert_keys(g, x))
            .map(|s| invert_keys(g, &s))
    }
    fn has_star(&self) -> bool {
        self.base.has_star()
    }
}

impl MultiplierHopf for Regraded {
    fn indexing(&self) -> Indexing {
        Indexing::inverted(self.base.indexing())
    }
    fn coproduct_part(&self, x: Key, left: Elem, right: Elem) -> Tensor {
        let g = self.g();
        invert_tensor(
            g,
            &self
                .base
                .coproduct_part(invert_key(g, x), g.inv(left), g.inv(right)),
        )
    }
    fn coproduct_legs(&self, _x: Key) -> Option<Vec<(Elem, Elem)>> {
        None
    }
    fn counit(&self, x: Key) -> Q {
        self.base.counit(invert_key(self.g(), x))
    }
    fn antipode(&self, x: Key) -> GradedElement {
        let g = self.g();
        invert_keys(g, &self.base.antipode(invert_key(g, x)))
    }
    fn antipode_inverse(&self, x: Key) -> GradedElement {
        let g = self.g();
        invert_keys(g, &self.base.antipode_inverse(invert_key(g, x)))
    }
    fn label(&self) -> String {
        format!("{} regraded by inversion", self.base.label())
    }
}

/// Cut-downs of the deformed comultiplication against the original one:
/// `Δ̃(x)(y⊗1) = Σ π_{qt⁻¹}(x₁)y ⊗ x₂` and `(y⊗1)Δ̃(x) = Σ yπ_{qt⁻¹}(x₁) ⊗ x₂` for `x ∈ B_t`, `y ∈ B_q`.
pub fn check_deformed_cut_downs(b: &MhaStructure, a: &Action, w: &Window) -> CertificateReport {
    let g = b.group();
    let deformed = Deformed::new_unchecked(b.clone(), a.clone());
    let b = b.as_ref();
    let (ixd, ixb) = (deformed.indexing(), b.indexing());
    let mut report = CertificateReport::new(w.describe(g));
    let (mut right, mut left) = (Failures::new(), Failures::new());
    for &t in w.elements() {
        for x in basis(b, t) {
            for &q in w.elements() {
                let mut blocks = Tensor::new();
                for r in ixd.right_legs(g, t, q) {
                    blocks.add(&deformed.coproduct_part(x, q, r));
                }
                let shift = g.mul(q, g.inv(t));
                let s = a.rho.apply(g, g.inv(shift), q);
                let mut original = Tensor::new();
                for r in ixb.right_legs(g, t, s) {
                    original.add(&a.apply_left(shift, &b.coproduct_part(x, s, r)));
                }
                for y in basis(b, q) {
                    let by = GradedElement::basis(y);
                    let lmul = |t: &Tensor, y_left: bool| -> Tensor {
                        let mut out = Tensor::new();
                        for ((u, v), c) in t.iter() {
                            let bu = GradedElement::basis(*u);
                            let prod = if y_left {
                                mul(b, &by, &bu)
                            } else {
                                mul(b, &bu, &by)
                            };
                            out.add_scaled(&tensor_of(&prod, &GradedElement::basis(*v)), c);
                        }
                        out
                    };
                    let pair = || format!("({}, {})", key_name(g, x), key_name(g, y));
                    right.check(lmul(&blocks, false) == lmul(&original, false), pair);
                    left.check(lmul(&blocks, true) == lmul(&original, true), pair);
                }
            }
        }
    }
    report.push(
        "deformed comultiplication, right cut-down",
        "deform/cut-down",
        right,
    );
    report.push(
        "deformed comultiplication, left cut-down",
        "deform/cut-down",
        left,
    );
    report
}

/// Regrading of the deformation is cograded, the action stays a crossing, and deforming
/// twice (through the regrading) restores the original structure.
pub fn mirror_check(b: &MhaStructure, a: &Action, w: &Window) -> Result<CertificateReport> {
    let crossing = check_crossing(b.as_ref(), a, w);
    if let Some(f) = crossing.failures().next() {
        return Err(Error::NotCrossing(format!(
            "{}: {}",
            f.name,
            f.witness.clone().unwrap_or_default()
        )));
    }
    let g = b.group();
    let mut report = CertificateReport::new(w.describe(g));
    let deformed: MhaStructure = Arc::new(Deformed::new_unchecked(b.clone(), a.clone()));
    let regraded: MhaStructure = Arc::new(Regraded::new(deformed));

    let mut law = Failures::new();
    for &p in w.elements() {
        for &q in w.elements() {
            law.check(
                source_component(regraded.as_ref(), p, q) == g.mul(p, q),
                || {
                    format!(
                        "block ({}, {}) of the regraded deformation",
                        g.name(p),
                        g.name(q)
                    )
                },
            );
        }
    }
    report.push(
        "regraded blocks follow the group law",
        "mirror/regrading",
        law,
    );
    report.absorb("regraded", check_cograded(regraded.as_ref(), w));
    let moved = a.regraded(g);
    report.absorb("regraded", check_crossing(regraded.as_ref(), &moved, w));

    let back = Regraded::new(Arc::new(Deformed::new_unchecked(regraded, moved)));
    let mut same = Failures::new();
    for &p in w.elements() {
        for &q in w.elements() {
            let t = source_component(b.as_ref(), p, q);
            same.check(source_component(&back, p, q) == t, || {
                format!("source of block ({}, {})", g.name(p), g.name(q))
            });
            for x in basis(b.as_ref(), t) {
                same.check(
                    back.coproduct_part(x, p, q) == b.coproduct_part(x, p, q),
                    || format!("{} at legs ({}, {})", key_name(g, x), g.name(p), g.name(q)),
                );
            }
        }
    }
    for x in window_basis(b.as_ref(), w) {
        same.check(back.counit(x) == b.counit(x), || {
            format!("counit at {}", key_name(g, x))
        });
        same.check(back.antipode(x) == b.antipode(x), || {
            format!("antipode at {}", key_name(g, x))
        });
        same.check(back.antipode_inverse(x) == b.antipode_inverse(x), || {
            format!("inverse antipode at {}", key_name(g, x))
        });
    }
    report.push(
        "double deformation restores the original",
        "mirror/involution",
        same,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::Side;
    use crate::hopf::{
        check_hopf, check_positive_integral, integral_residual, make_constant_family, make_kg,
        make_ordinary_group_algebra, solve_left_integral, solve_right_integral,
    };

    fn full(g: &Group) -> Window {
        Window::full(g).unwrap()
    }

    fn cz2_family(g: &Group) -> MhaStructure {
        make_constant_family(&make_ordinary_group_algebra(&Group::cyclic(2)).unwrap(), g).unwrap()
    }

    /// On the Klein four-group, swap the two non-diagonal elements whenever `p` has first
    /// coordinate 1. This is an action by automorphisms, but `π_ρp(q) ≠ π_q` in general.
    fn klein_swap() -> (Group, Action) {
        let g = Group::klein_four();
        let swap = |q: Elem| match q {
            1 => 2,
            2 => 1,
            other => other,
        };
        let table = (0..4)
            .map(|p| {
                (0..4)
                    .map(|q| if p == 1 || p == 3 { swap(q) } else { q })
                    .collect()
            })
            .collect();
        let rho = SelfAction::from_table(&g, table).unwrap();
        let a = Action::shuffle(&g, rho);
        (g, a)
    }

    #[test]
    fn shipped_structures_are_cograded() {
        let g = Group::symmetric3();
        for b in [make_kg(&g), cz2_family(&g)] {
            let r = check_cograded(b.as_ref(), &full(&g));
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
            assert!(r.entry("antipode on component units").unwrap().passed);
        }
        let ga = crate::hopf::make_group_algebra(&g);
        assert!(!check_cograded(ga.as_ref(), &full(&g)).passed());
    }

    #[test]
    fn admissibility_examples() {
        let g = Group::symmetric3();
        let w = full(&g);
        for b in [make_kg(&g), cz2_family(&g)] {
            assert!(check_admissible(b.as_ref(), &Action::trivial(), &w).passed());
            assert!(check_admissible(b.as_ref(), &Action::adjoint(&g), &w).passed());
        }
        let (k, a) = klein_swap();
        let cert = check_admissible(make_kg(&k).as_ref(), &a, &full(&k));
        assert!(cert.condition(1) && cert.condition(2));
        assert!(!cert.condition(3));
        assert_eq!(cert.report.failures().count(), 1);
        assert!(cert
            .report
            .entry(CONDITION_NAMES[2])
            .unwrap()
            .witness
            .is_some());
    }

    #[test]
    fn crossing_examples() {
        let g = Group::symmetric3();
        let kg = make_kg(&g);
        assert!(check_crossing(kg.as_ref(), &Action::adjoint(&g), &full(&g)).passed());
        assert!(!check_crossing(kg.as_ref(), &Action::trivial(), &full(&g)).passed());
        let z2 = Group::cyclic(2);
        assert!(check_crossing(make_kg(&z2).as_ref(), &Action::trivial(), &full(&z2)).passed());
    }

    #[test]
    fn trivial_deformation_is_the_identity() {
        let g = Group::symmetric3();
        let w = full(&g);
        for b in [make_kg(&g), cz2_family(&g)] {
            let d = deform(b.clone(), &Action::trivial(), &w).unwrap();
            for &p in w.elements() {
                for &q in w.elements() {
                    for x in basis(b.as_ref(), g.mul(p, q)) {
                        assert_eq!(d.coproduct_part(x, p, q), b.coproduct_part(x, p, q));
                    }
                }
            }
            for x in window_basis(b.as_ref(), &w) {
                assert_eq!(d.antipode(x), b.antipode(x));
            }
        }
    }

    #[test]
    fn adjoint_deformations_pass_the_full_suite() {
        let g = Group::symmetric3();
        let w = full(&g);
        for b in [make_kg(&g), cz2_family(&g)] {
            let d = deform(b.clone(), &Action::adjoint(&g), &w).unwrap();
            let r = check_hopf(d.as_ref(), &w);
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
            for x in window_basis(b.as_ref(), &w) {
                assert_eq!(d.counit(x), b.counit(x));
            }
            assert!(check_deformed_cut_downs(&b, &Action::adjoint(&g), &w).passed());
        }
    }

    #[test]
    fn integrals_transfer_to_the_deformation() {
        let g = Group::symmetric3();
        let w = full(&g);
        for b in [make_kg(&g), cz2_family(&g)] {
            let a = Action::adjoint(&g);
            let d = deform(b.clone(), &a, &w).unwrap();
            let phi = solve_left_integral(b.as_ref(), &w)
                .functional()
                .unwrap()
                .clone();
            assert!(integral_residual(d.as_ref(), &phi, Side::Left, &w).is_empty());
            let psi = solve_right_integral(b.as_ref(), &w)
                .functional()
                .unwrap()
                .clone();
            let psi_t = deformed_right_integral(b.as_ref(), &a, &psi);
            assert!(integral_residual(d.as_ref(), &psi_t, Side::Right, &w).is_empty());
            let keys = window_basis(b.as_ref(), &w);
            assert!(psi_t.equals_on(&psi, &keys));
            assert!(check_positive_integral(d.as_ref(), &phi, &w)
                .unwrap()
                .passed());
            assert!(check_positive_integral(d.as_ref(), &psi_t, &w)
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn deform_rejects_inadmissible_actions() {
        let (k, a) = klein_swap();
        assert!(matches!(
            deform(make_kg(&k), &a, &full(&k)),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn integers_with_trivial_action() {
        let z = Group::integers();
        let w = Window::range(&z, -3, 3).unwrap();
        let d = deform(make_kg(&z), &Action::trivial(), &w).unwrap();
        assert!(check_hopf(d.as_ref(), &w).passed());
    }

    #[test]
    fn mirror_examples() {
        let g = Group::symmetric3();
        for b in [make_kg(&g), cz2_family(&g)] {
            let r = mirror_check(&b, &Action::adjoint(&g), &full(&g)).unwrap();
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
        let z2 = Group::cyclic(2);
        assert!(mirror_check(&make_kg(&z2), &Action::trivial(), &full(&z2))
            .unwrap()
            .passed());
        assert!(matches!(
            mirror_check(&make_kg(&g), &Action::trivial(), &full(&g)),
            Err(Error::NotCrossing(_))
        ));
    }

    #[test]
    fn regrading_swaps_block_order() {
        let g = Group::symmetric3();
        let r = Regraded::new(make_kg(&g));
        assert!(matches!(r.indexing(), Indexing::Reversed));
        assert_eq!(r.dim(3), 1);
        assert!(!r.coproduct_part((g.mul(2, 1), 0), 1, 2).is_zero());
    }
}
