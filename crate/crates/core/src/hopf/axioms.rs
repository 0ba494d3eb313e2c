//! The multiplier Hopf axiom suite on a window.

use super::{
    antipode_inverse_of, antipode_of, coproduct_part_of, counit_of, cut_left, cut_right,
    full_coproduct, is_cograded, source_component, MultiplierHopf,
};
use crate::algebras::{
    basis, check_graded_algebra, contract_left, contract_right, key_name, left_multiply, mul,
    right_multiply, star_of, tensor_mul, window_basis, GradedAlgebra, GradedElement, Key, Tensor,
    Tensor3,
};
use crate::error::{Error, Result};
use crate::exact::{sparse_rank, GaussianRational as Q};
use crate::groups::{Elem, Window};
use crate::report::{CertificateReport, Failures};

fn names(h: &dyn MultiplierHopf, p: Elem, q: Elem) -> String {
    let g = h.group();
    format!("({}, {})", g.name(p), g.name(q))
}

/// Bijectivity of `T₁(x⊗y) = Δ(x)(1⊗y)` and `T₂(x⊗y) = (x⊗1)Δ(y)`: blockwise for cograded
/// structures, as one map on the window span for graded Hopf sides.
pub fn check_t1_t2(h: &dyn MultiplierHopf, w: &Window) -> CertificateReport {
    let g = h.group();
    let mut report = CertificateReport::new(w.describe(g));
    let mut t1 = Failures::new();
    let mut t2 = Failures::new();
    if is_cograded(h) {
        let (mut ok1, mut ok2, mut total) = (0, 0, 0);
        for &p in w.elements() {
            for &q in w.elements() {
                total += 1;
                let t = source_component(h, p, q);
                let (dp, dq, dt) = (h.dim(p), h.dim(q), h.dim(t));
                let target = dp * dq;
                let cols1: Vec<Tensor> = basis(h, t)
                    .flat_map(|x| basis(h, q).map(move |y| (x, y)))
                    .map(|(x, y)| {
                        right_multiply(h, &h.coproduct_part(x, p, q), &GradedElement::basis(y))
                    })
                    .collect();
                let r1 = sparse_rank(&cols1);
                if dt * dq == target && r1 == target {
                    ok1 += 1;
                } else {
                    t1.record(|| {
                        format!(
                            "block {}: rank {r1} from {} onto {target}",
                            names(h, p, q),
                            dt * dq
                        )
                    });
                }
                let cols2: Vec<Tensor> = basis(h, p)
                    .flat_map(|x| basis(h, t).map(move |y| (x, y)))
                    .map(|(x, y)| {
                        left_multiply(h, &GradedElement::basis(x), &h.coproduct_part(y, p, q))
                    })
                    .collect();
                let r2 = sparse_rank(&cols2);
                if dp * dt == target && r2 == target {
                    ok2 += 1;
                } else {
                    t2.record(|| {
                        format!(
                            "block {}: rank {r2} from {} onto {target}",
                            names(h, p, q),
                            dp * dt
                        )
                    });
                }
            }
        }
        report.note(format!("T1: {ok1} of {total} blocks bijective"));
        report.note(format!("T2: {ok2} of {total} blocks bijective"));
    } else {
        let keys = window_basis(h, w);
        let n = keys.len() * keys.len();
        let inside = |t: &Tensor| t.keys().all(|(a, b)| w.contains(a.0) && w.contains(b.0));
        for (fail, right) in [(&mut t1, true), (&mut t2, false)] {
            let mut cols = Vec::with_capacity(n);
            for &x in &keys {
                for &y in &keys {
                    let col = if right {
                        cut_right(h, x, y)
                    } else {
                        cut_left(h, x, y)
                    };
                    if !inside(&col) {
                        fail.record(|| {
                            format!(
                                "image of {}⊗{} leaves the window",
                                key_name(g, x),
                                key_name(g, y)
                            )
                        });
                    }
                    cols.push(col);
                }
            }
            let r = sparse_rank(&cols);
            fail.check(r == n, || format!("rank {r} of {n} on the window span"));
        }
    }
    report.push("T1 bijective", "hopf/t1", t1);
    report.push("T2 bijective", "hopf/t2", t2);
    report
}

fn left_then(h: &dyn MultiplierHopf, t: &Tensor, p: Elem, q: Elem) -> Tensor3 {
    let mut out = Tensor3::new();
    for ((a, b), c) in t.iter() {
        for ((a1, a2), c1) in h.coproduct_part(*a, p, q).iter() {
            out.add_term((*a1, *a2, *b), c * c1);
        }
    }
    out
}

fn right_then(h: &dyn MultiplierHopf, t: &Tensor, q: Elem, r: Elem) -> Tensor3 {
    let mut out = Tensor3::new();
    for ((a, b), c) in t.iter() {
        for ((b1, b2), c1) in h.coproduct_part(*b, q, r).iter() {
            out.add_term((*a, *b1, *b2), c * c1);
        }
    }
    out
}

/// `(Δ⊗ι)Δ = (ι⊗Δ)Δ`, per leg triple in the window for cograded structures.
pub fn check_coassociativity(h: &dyn MultiplierHopf, w: &Window) -> CertificateReport {
    let g = h.group();
    let mut report = CertificateReport::new(w.describe(g));
    let mut f = Failures::new();
    if is_cograded(h) {
        for &p in w.elements() {
            for &q in w.elements() {
                let s1 = source_component(h, p, q);
                for &r in w.elements() {
                    let t = source_component(h, s1, r);
                    let s2 = source_component(h, q, r);
                    let t2 = source_component(h, p, s2);
                    let mut xs: Vec<Key> = basis(h, t).collect();
                    if t2 != t {
                        xs.extend(basis(h, t2));
                    }
                    for x in xs {
                        let l = left_then(h, &h.coproduct_part(x, s1, r), p, q);
                        let rr = right_then(h, &h.coproduct_part(x, p, s2), q, r);
                        f.check(l == rr, || {
                            format!(
                                "{} at legs ({}, {}, {})",
                                key_name(g, x),
                                g.name(p),
                                g.name(q),
                                g.name(r)
                            )
                        });
                    }
                }
            }
        }
    } else {
        for x in window_basis(h, w) {
            let d = full_coproduct(h, x);
            let mut l = Tensor3::new();
            let mut r = Tensor3::new();
            for ((a, b), c) in d.iter() {
                for ((a1, a2), c1) in full_coproduct(h, *a).iter() {
                    l.add_term((*a1, *a2, *b), c * c1);
                }
                for ((b1, b2), c1) in full_coproduct(h, *b).iter() {
                    r.add_term((*a, *b1, *b2), c * c1);
                }
            }
            f.check(l == r, || key_name(g, x));
        }
    }
    report.push("coassociativity", "hopf/coassociative", f);
    report
}

/// `Δ(xy) = Δ(x)Δ(y)` on basis pairs.
pub fn check_comultiplicative(h: &dyn MultiplierHopf, w: &Window) -> CertificateReport {
    let g = h.group();
    let mut report = CertificateReport::new(w.describe(g));
    let mut f = Failures::new();
    if is_cograded(h) {
        for &p in w.elements() {
            for &q in w.elements() {
                let t = source_component(h, p, q);
                for x in basis(h, t) {
                    let dx = h.coproduct_part(x, p, q);
                    for y in basis(h, t) {
                        let l = coproduct_part_of(h, &h.mul_basis(x, y), p, q);
                        let r = tensor_mul(h, &dx, &h.coproduct_part(y, p, q));
                        f.check(l == r, || {
                            format!(
                                "({}, {}) at legs {}",
                                key_name(g, x),
                                key_name(g, y),
                                names(h, p, q)
                            )
                        });
                    }
                }
            }
        }
    } else {
        let keys = window_basis(h, w);
        for &x in &keys {
            let dx = full_coproduct(h, x);
            for &y in &keys {
                let xy = h.mul_basis(x, y);
                let mut l = Tensor::new();
                for (k, c) in xy.iter() {
                    l.add_scaled(&full_coproduct(h, *k), c);
                }
                let r = tensor_mul(h, &dx, &full_coproduct(h, y));
                f.check(l == r, || {
                    format!("({}, {})", key_name(g, x), key_name(g, y))
                });
            }
        }
    }
    report.push(
        "comultiplication is a homomorphism",
        "hopf/comultiplicative",
        f,
    );
    report
}

/// Both counit identities on window basis pairs, multiplicativity, and support on `B_e`.
pub fn check_counit(h: &dyn MultiplierHopf, w: &Window) -> CertificateReport {
    let g = h.group();
    let e = g.identity();
    let mut report = CertificateReport::new(w.describe(g));
    let keys = window_basis(h, w);
    let eps = |k: &Key| h.counit(*k);
    let (mut left, mut right, mut hom) = (Failures::new(), Failures::new(), Failures::new());
    for &a in &keys {
        for &b in &keys {
            let ab = h.mul_basis(a, b);
            let pair = || format!("({}, {})", key_name(g, a), key_name(g, b));
            left.check(contract_left(&cut_right(h, a, b), eps) == ab, pair);
            right.check(contract_right(&cut_left(h, a, b), eps) == ab, pair);
            if !is_cograded(h) || (a.0 == e && b.0 == e) {
                hom.check(counit_of(h, &ab) == &h.counit(a) * &h.counit(b), pair);
            }
        }
    }
    report.push("counit left identity", "hopf/counit", left);
    report.push("counit right identity", "hopf/counit", right);
    report.push("counit multiplicative", "hopf/counit", hom);
    if is_cograded(h) {
        let mut support = Failures::new();
        for &x in keys.iter().filter(|k| k.0 != e) {
            support.check(h.counit(x).is_zero(), || key_name(g, x));
        }
        report.push(
            "counit vanishes off the identity component",
            "cograded/counit-support",
            support,
        );
    }
    report
}

fn m_s_id(h: &dyn MultiplierHopf, t: &Tensor) -> GradedElement {
    let mut out = GradedElement::new();
    for ((a, b), c) in t.iter() {
        out.add_scaled(&mul(h, &h.antipode(*a), &GradedElement::basis(*b)), c);
    }
    out
}

fn m_id_s(h: &dyn MultiplierHopf, t: &Tensor) -> GradedElement {
    let mut out = GradedElement::new();
    for ((a, b), c) in t.iter() {
        out.add_scaled(&mul(h, &GradedElement::basis(*a), &h.antipode(*b)), c);
    }
    out
}

/// Both antipode identities, anti-multiplicativity, grading reversal and bijectivity.
pub fn check_antipode(h: &dyn MultiplierHopf, w: &Window) -> CertificateReport {
    let g = h.group();
    let mut report = CertificateReport::new(w.describe(g));
    let keys = window_basis(h, w);
    let cograded = is_cograded(h);
    let (mut left, mut right, mut anti) = (Failures::new(), Failures::new(), Failures::new());
    for &a in &keys {
        let sa = h.antipode(a);
        for &b in &keys {
            let pair = || format!("({}, {})", key_name(g, a), key_name(g, b));
            let bb = GradedElement::basis(b);
            left.check(
                m_s_id(h, &cut_right(h, a, b)) == bb.scaled(&h.counit(a)),
                pair,
            );
            right.check(
                m_id_s(h, &cut_left(h, a, b)) == GradedElement::basis(a).scaled(&h.counit(b)),
                pair,
            );
            if !cograded || a.0 == b.0 {
                let l = antipode_of(h, &h.mul_basis(a, b));
                let r = mul(h, &h.antipode(b), &sa);
                anti.check(l == r, pair);
            }
        }
    }
    report.push("antipode left identity", "hopf/antipode", left);
    report.push("antipode right identity", "hopf/antipode", right);
    report.push("antipode anti-multiplicative", "hopf/antipode", anti);
    if cograded {
        let mut typing = Failures::new();
        for &x in &keys {
            let target = g.inv(x.0);
            typing.check(h.antipode(x).keys().all(|k| k.0 == target), || {
                key_name(g, x)
            });
        }
        report.push(
            "antipode reverses the grading",
            "cograded/antipode-grading",
            typing,
        );
    }
    let mut regular = Failures::new();
    for &x in &keys {
        let bx = GradedElement::basis(x);
        regular.check(antipode_inverse_of(h, &h.antipode(x)) == bx, || {
            format!("S⁻¹S ≠ id at {}", key_name(g, x))
        });
        regular.check(antipode_of(h, &h.antipode_inverse(x)) == bx, || {
            format!("SS⁻¹ ≠ id at {}", key_name(g, x))
        });
    }
    report.push("antipode bijective", "hopf/regular", regular);
    report
}

/// `(*⊗*)(t)`.
pub fn star_tensor(h: &dyn GradedAlgebra, t: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for ((a, b), c) in t.iter() {
        let sa = star_of(h, &GradedElement::basis(*a));
        let sb = star_of(h, &GradedElement::basis(*b));
        for (x, cx) in sa.iter() {
            for (y, cy) in sb.iter() {
                out.add_term((*x, *y), &(&c.conj() * cx) * cy);
            }
        }
    }
    out
}

/// Antilinearity, involutivity, anti-multiplicativity and `Δ(x*) = Δ(x)*`.
pub fn check_star(h: &dyn MultiplierHopf, w: &Window) -> Result<CertificateReport> {
    if !h.has_star() {
        return Err(Error::StarAbsent(h.label()));
    }
    let g = h.group();
    let mut report = CertificateReport::new(w.describe(g));
    let keys = window_basis(h, w);
    let cograded = is_cograded(h);
    let (mut antilinear, mut invol, mut anti, mut comult) = (
        Failures::new(),
        Failures::new(),
        Failures::new(),
        Failures::new(),
    );
    for &x in &keys {
        let bx = GradedElement::basis(x);
        let sx = star_of(h, &bx);
        antilinear.check(
            star_of(h, &bx.scaled(&Q::i())) == sx.scaled(&-Q::i()),
            || key_name(g, x),
        );
        invol.check(star_of(h, &sx) == bx, || key_name(g, x));
        for &y in &keys {
            if cograded && x.0 != y.0 {
                continue;
            }
            let l = star_of(h, &h.mul_basis(x, y));
            let r = mul(h, &star_of(h, &GradedElement::basis(y)), &sx);
            anti.check(l == r, || {
                format!("({}, {})", key_name(g, x), key_name(g, y))
            });
        }
        if !cograded {
            let mut l = Tensor::new();
            for (k, c) in sx.iter() {
                l.add_scaled(&full_coproduct(h, *k), c);
            }
            comult.check(l == star_tensor(h, &full_coproduct(h, x)), || {
                key_name(g, x)
            });
        }
    }
    if cograded {
        for &p in w.elements() {
            for &q in w.elements() {
                let t = source_component(h, p, q);
                for x in basis(h, t) {
                    let sx = star_of(h, &GradedElement::basis(x));
                    let l = coproduct_part_of(h, &sx, p, q);
                    let r = star_tensor(h, &h.coproduct_part(x, p, q));
                    comult.check(l == r, || {
                        format!("{} at legs {}", key_name(g, x), names(h, p, q))
                    });
                }
            }
        }
    }
    report.push("star antilinear", "hopf/star", antilinear);
    report.push("star involutive", "hopf/star", invol);
    report.push("star anti-multiplicative", "hopf/star", anti);
    report.push("comultiplication respects star", "hopf/star", comult);
    Ok(report)
}

/// Algebra laws plus every Hopf axiom, and the star laws when a star is present.
pub fn check_hopf(h: &dyn MultiplierHopf, w: &Window) -> CertificateReport {
    let mut report = check_graded_algebra(h, w);
    report.absorb("", check_t1_t2(h, w));
    report.absorb("", check_coassociativity(h, w));
    report.absorb("", check_comultiplicative(h, w));
    report.absorb("", check_counit(h, w));
    report.absorb("", check_antipode(h, w));
    if let Ok(star) = check_star(h, w) {
        report.absorb("", star);
    }
    report
}
