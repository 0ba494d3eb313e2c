//! The maps `R₁`, `R₂` on `A⊗B` and the twist `R: B⊗A → A⊗B` built from them.

use std::collections::BTreeMap;

use super::Pairing;
use crate::algebras::{
    key_name, tensor_of, window_basis, GradedElement, Key, Memo, Tensor, Tensor3,
};
use crate::cograded::Action;
use crate::error::{Error, Result};
use crate::exact::sparse_inverse;
use crate::groups::{Elem, Group, Window};
use crate::hopf::antipode_inverse_of;
use crate::report::{CertificateReport, Failures};

/// A linear map given by the images of basis tensors `(x, y)`; missing images are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisMap {
    images: BTreeMap<(Key, Key), Tensor>,
}

impl BasisMap {
    pub fn from_fn(
        domain: impl IntoIterator<Item = (Key, Key)>,
        mut f: impl FnMut(Key, Key) -> Tensor,
    ) -> Self {
        Self {
            images: domain.into_iter().map(|(x, y)| ((x, y), f(x, y))).collect(),
        }
    }

    pub fn image(&self, x: Key, y: Key) -> Tensor {
        self.images.get(&(x, y)).cloned().unwrap_or_default()
    }

    pub fn apply(&self, t: &Tensor) -> Tensor {
        t.map_linear(|(x, y)| self.image(*x, *y))
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &BasisMap) -> BasisMap {
        Self {
            images: self
                .images
                .iter()
                .map(|(k, v)| (*k, outer.apply(v)))
                .collect(),
        }
    }

    pub fn domain(&self) -> impl Iterator<Item = &(Key, Key)> {
        self.images.keys()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Exact inverse, if the map is a bijection from its domain onto the span of the same
    /// number of basis tensors.
    pub fn inverse(&self) -> Option<BasisMap> {
        let domain: Vec<(Key, Key)> = self.images.keys().copied().collect();
        let cols: Vec<Tensor> = self.images.values().cloned().collect();
        let inv = sparse_inverse(&domain, &cols)?;
        (inv.len() == domain.len()).then_some(Self { images: inv })
    }

    /// Basis tensors on which `self` differs from the identity.
    fn identity_failures(&self, g: &Group, what: &str) -> Failures {
        let mut f = Failures::new();
        for (&(x, y), v) in &self.images {
            f.check(*v == Tensor::basis((x, y)), || {
                format!("{what} moves {} ⊗ {}", key_name(g, x), key_name(g, y))
            });
        }
        f
    }
}

/// A map together with its inverse as given by an explicit formula.
#[derive(Clone, Debug)]
pub struct InvertibleMap {
    pub forward: BasisMap,
    pub inverse: BasisMap,
}

impl InvertibleMap {
    /// Basis tensors where either composite differs from the identity.
    pub fn round_trip_failures(&self, g: &Group) -> Failures {
        let mut f = self
            .inverse
            .then(&self.forward)
            .identity_failures(g, "forward ∘ inverse");
        for (&(x, y), v) in &self.forward.then(&self.inverse).images {
            f.check(*v == Tensor::basis((x, y)), || {
                format!(
                    "inverse ∘ forward moves {} ⊗ {}",
                    key_name(g, x),
                    key_name(g, y)
                )
            });
        }
        f
    }
}

/// Sweedler sums over a finite group for one pairing and action.
struct Sums<'a> {
    p: &'a Pairing,
    action: &'a Action,
    delta2: Memo<Key, Tensor3>,
}

impl<'a> Sums<'a> {
    fn new(p: &'a Pairing, action: &'a Action) -> Self {
        Self {
            p,
            action,
            delta2: Memo::new(),
        }
    }

    fn g(&self) -> &Group {
        self.p.group()
    }

    /// `(Δ⊗ι)Δ(b)`.
    fn delta2(&self, b: Key) -> Tensor3 {
        self.delta2.get_or_insert_with(&b, || {
            let mut out = Tensor3::new();
            for ((x, y), c) in self.p.delta_b(b).iter() {
                for ((u, v), d) in self.p.delta_b(*x).iter() {
                    out.add_term((*u, *v, *y), c * d);
                }
            }
            out
        })
    }

    fn pi(&self, s: Elem, x: &GradedElement) -> GradedElement {
        self.action.apply(s, x)
    }

    fn s_inv(&self, x: &GradedElement) -> GradedElement {
        antipode_inverse_of(self.p.b_side().as_ref(), x)
    }

    fn on_a(&self, y: &GradedElement, a: Key) -> GradedElement {
        self.p.act_b_on_a(y, &GradedElement::basis(a))
    }

    /// `R₁(a⊗b) = Σ (π_{qp⁻¹}(b₁) ▶ a) ⊗ b₂` for `a ∈ A_q`, `b ∈ B_p`.
    fn r1(&self, a: Key, b: Key) -> Tensor {
        let g = self.g();
        let s = g.mul(a.0, g.inv(b.0));
        let mut out = Tensor::new();
        for ((b1, b2), c) in self.p.delta_b(b).iter() {
            let left = self.on_a(&self.pi(s, &GradedElement::basis(*b1)), a);
            out.add_scaled(&tensor_of(&left, &GradedElement::basis(*b2)), c);
        }
        out
    }

    /// `R₁⁻¹(a⊗b) = Σ (π_{p⁻¹}(S⁻¹(b₁)) ▶ a) ⊗ b₂` for `b ∈ B_p`.
    fn r1_inverse(&self, a: Key, b: Key) -> Tensor {
        let s = self.g().inv(b.0);
        let mut out = Tensor::new();
        for ((b1, b2), c) in self.p.delta_b(b).iter() {
            let left = self.on_a(&self.pi(s, &self.s_inv(&GradedElement::basis(*b1))), a);
            out.add_scaled(&tensor_of(&left, &GradedElement::basis(*b2)), c);
        }
        out
    }

    /// `R₂(a⊗b) = Σ (a ◀ b₂) ⊗ b₁`.
    fn r2(&self, a: Key, b: Key) -> Tensor {
        let mut out = Tensor::new();
        for ((b1, b2), c) in self.p.delta_b(b).iter() {
            out.add_scaled(
                &tensor_of(&self.p.a_by_b(a, *b2), &GradedElement::basis(*b1)),
                c,
            );
        }
        out
    }

    /// `R₂⁻¹(a⊗b) = Σ (a ◀ S⁻¹(b₂)) ⊗ b₁`.
    fn r2_inverse(&self, a: Key, b: Key) -> Tensor {
        let mut out = Tensor::new();
        for ((b1, b2), c) in self.p.delta_b(b).iter() {
            let left = self.p.act_a_by_b(
                &GradedElement::basis(a),
                &self.s_inv(&GradedElement::basis(*b2)),
            );
            out.add_scaled(&tensor_of(&left, &GradedElement::basis(*b1)), c);
        }
        out
    }

    /// `R(b⊗a) = Σ (π_{p⁻¹}(b₁) ▶ a ◀ S⁻¹(b₃)) ⊗ b₂` for `b ∈ B_p`.
    fn r_closed(&self, b: Key, a: Key) -> Tensor {
        let s = self.g().inv(b.0);
        let mut out = Tensor::new();
        for ((b1, b2, b3), c) in self.delta2(b).iter() {
            let left = self.on_a(&self.pi(s, &GradedElement::basis(*b1)), a);
            let left = self
                .p
                .act_a_by_b(&left, &self.s_inv(&GradedElement::basis(*b3)));
            out.add_scaled(&tensor_of(&left, &GradedElement::basis(*b2)), c);
        }
        out
    }

    fn ab_domain(&self) -> Vec<(Key, Key)> {
        let w = self.p.window();
        let bk = window_basis(self.p.b_side().as_ref(), w);
        window_basis(self.p.a_side().as_ref(), w)
            .into_iter()
            .flat_map(|a| bk.iter().map(move |&b| (a, b)))
            .collect()
    }

    fn ba_domain(&self) -> Vec<(Key, Key)> {
        self.ab_domain().into_iter().map(|(a, b)| (b, a)).collect()
    }
}

/// `R₁` and its inverse as given by the closed formula with `S⁻¹`.
pub fn twist_r1(p: &Pairing, a: &Action) -> InvertibleMap {
    let s = Sums::new(p, a);
    InvertibleMap {
        forward: BasisMap::from_fn(s.ab_domain(), |x, y| s.r1(x, y)),
        inverse: BasisMap::from_fn(s.ab_domain(), |x, y| s.r1_inverse(x, y)),
    }
}

/// `R₂` and its inverse as given by the closed formula with `S⁻¹`.
pub fn twist_r2(p: &Pairing) -> InvertibleMap {
    let trivial = Action::trivial();
    let s = Sums::new(p, &trivial);
    InvertibleMap {
        forward: BasisMap::from_fn(s.ab_domain(), |x, y| s.r2(x, y)),
        inverse: BasisMap::from_fn(s.ab_domain(), |x, y| s.r2_inverse(x, y)),
    }
}

fn composed(p: &Pairing, a: &Action) -> BasisMap {
    let r1 = twist_r1(p, a).forward;
    let r2_inverse = twist_r2(p).inverse;
    let s = Sums::new(p, a);
    BasisMap::from_fn(s.ba_domain(), |b, x| r1.apply(&r2_inverse.image(x, b)))
}

fn closed(p: &Pairing, a: &Action) -> BasisMap {
    let s = Sums::new(p, a);
    BasisMap::from_fn(s.ba_domain(), |b, x| s.r_closed(b, x))
}

fn first_mismatch(g: &Group, l: &BasisMap, r: &BasisMap) -> Failures {
    let mut f = Failures::new();
    for &(b, a) in l.domain() {
        f.check(l.image(b, a) == r.image(b, a), || {
            format!("R({} ⊗ {})", key_name(g, b), key_name(g, a))
        });
    }
    f
}

/// The twist `R = R₁ ∘ R₂⁻¹ ∘ σ`, keyed by `(b, a)`. The composition and the closed formula
/// must agree exactly; a disagreement is an error.
pub fn twist_r(p: &Pairing, a: &Action) -> Result<BasisMap> {
    let (c, d) = (composed(p, a), closed(p, a));
    match first_mismatch(p.group(), &c, &d).witness() {
        None => Ok(d),
        Some(w) => Err(Error::TwistMismatch(w)),
    }
}

/// Round trips of `R₁`, `R₂`, agreement of the two descriptions of `R`, its bijectivity,
/// unitality and compatibility with both products, and, for crossings, `R(B_p⊗A) = A⊗B_p`.
pub fn check_twist(p: &Pairing, a: &Action, w: &Window) -> CertificateReport {
    let g = p.group();
    let (am, bm) = (p.a_side().as_ref(), p.b_side().as_ref());
    let mut report = CertificateReport::new(w.describe(g));
    report.push(
        "R₁ inverse formula",
        "twist/r1",
        twist_r1(p, a).round_trip_failures(g),
    );
    report.push(
        "R₂ inverse formula",
        "twist/r2",
        twist_r2(p).round_trip_failures(g),
    );
    let r = closed(p, a);
    report.push(
        "composition R₁R₂⁻¹σ agrees with the closed formula",
        "twist/r",
        first_mismatch(g, &composed(p, a), &r),
    );
    let mut bij = Failures::new();
    if r.inverse().is_none() {
        bij.record(|| "R is singular".into());
    }
    report.push("R is bijective", "twist/r", bij);

    let (ak, bk) = (window_basis(am, w), window_basis(bm, w));
    let apply_ba = |y: &GradedElement, x: &GradedElement| r.apply(&tensor_of(y, x));
    let e = |k: Key| GradedElement::basis(k);

    let mut unital = Failures::new();
    match (p.unit_a(), p.unit_b()) {
        (Some(ua), Some(ub)) => {
            for &x in &ak {
                unital.check(apply_ba(&ub, &e(x)) == tensor_of(&e(x), &ub), || {
                    format!("R(1 ⊗ {})", key_name(g, x))
                });
            }
            for &y in &bk {
                unital.check(apply_ba(&e(y), &ua) == tensor_of(&ua, &e(y)), || {
                    format!("R({} ⊗ 1)", key_name(g, y))
                });
            }
        }
        _ => unital.record(|| "units unavailable".into()),
    }
    report.push("R is unital", "twist/unital", unital);

    // R(m_B⊗ι) = (ι⊗m_B)(R⊗ι)(ι⊗R)
    let mut braid_b = Failures::new();
    for &y in &bk {
        for &y2 in &bk {
            let yy = bm.mul_basis(y, y2);
            for &x in &ak {
                let lhs = apply_ba(&yy, &e(x));
                let mut rhs = Tensor::new();
                for ((x1, z1), c) in r.image(y2, x).iter() {
                    for ((x2, z2), d) in r.image(y, *x1).iter() {
                        rhs.add_scaled(&tensor_of(&e(*x2), &bm.mul_basis(*z2, *z1)), &(c * d));
                    }
                }
                braid_b.check(lhs == rhs, || {
                    format!(
                        "({}, {}, {})",
                        key_name(g, y),
                        key_name(g, y2),
                        key_name(g, x)
                    )
                });
            }
        }
    }
    report.push("R respects the product of B", "twist/product-b", braid_b);

    // R(ι⊗m_A) = (m_A⊗ι)(ι⊗R)(R⊗ι)
    let mut braid_a = Failures::new();
    for &y in &bk {
        for &x in &ak {
            for &x2 in &ak {
                let lhs = apply_ba(&e(y), &am.mul_basis(x, x2));
                let mut rhs = Tensor::new();
                for ((x1, z1), c) in r.image(y, x).iter() {
                    for ((x3, z3), d) in r.image(*z1, x2).iter() {
                        rhs.add_scaled(&tensor_of(&am.mul_basis(*x1, *x3), &e(*z3)), &(c * d));
                    }
                }
                braid_a.check(lhs == rhs, || {
                    format!(
                        "({}, {}, {})",
                        key_name(g, y),
                        key_name(g, x),
                        key_name(g, x2)
                    )
                });
            }
        }
    }
    report.push("R respects the product of A", "twist/product-a", braid_a);

    if a.rho.adjoint_mismatch(g, w).is_none() {
        let mut typed = Failures::new();
        for &y in &bk {
            for &x in &ak {
                typed.check(r.image(y, x).keys().all(|(_, z)| z.0 == y.0), || {
                    format!(
                        "R({} ⊗ {}) leaves B_{}",
                        key_name(g, y),
                        key_name(g, x),
                        g.name(y.0)
                    )
                });
            }
        }
        report.push("R(B_p ⊗ A) = A ⊗ B_p", "twist/crossing", typed);
    }
    report
}
