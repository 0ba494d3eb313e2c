//! Left and right integrals, the modular element and the modular automorphism.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::{full_coproduct, is_cograded, MultiplierHopf};
use crate::algebras::{
    basis, contract_left, contract_right, key_name, mul, star_of, window_basis, GradedElement,
    GradedMultiplier, Key, Side, Tensor,
};
use crate::error::{Error, Result};
use crate::exact::{hermitian_psd, GaussianRational as Q, Matrix, RowEchelon, Sparse};
use crate::groups::{Elem, Window};
use crate::report::{CertificateReport, Failures};

/// A linear functional given by its values on basis vectors.
#[derive(Clone)]
pub struct GradedFunctional {
    eval: Arc<dyn Fn(Key) -> Q + Send + Sync>,
}

impl fmt::Debug for GradedFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("GradedFunctional")
    }
}

impl GradedFunctional {
    pub fn new(eval: impl Fn(Key) -> Q + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
        }
    }

    /// Given values, zero on every other basis vector.
    pub fn from_values(values: BTreeMap<Key, Q>) -> Self {
        Self::new(move |k| values.get(&k).cloned().unwrap_or_default())
    }

    pub fn zero() -> Self {
        Self::new(|_| Q::zero())
    }

    pub fn at(&self, k: Key) -> Q {
        (self.eval)(k)
    }

    pub fn eval(&self, x: &GradedElement) -> Q {
        x.pair_with(|k| self.at(*k))
    }

    pub fn scaled(&self, c: Q) -> Self {
        let f = self.clone();
        Self::new(move |k| &f.at(k) * &c)
    }

    /// Precomposition with a linear map given on basis vectors.
    pub fn compose(&self, map: impl Fn(Key) -> GradedElement + Send + Sync + 'static) -> Self {
        let f = self.clone();
        Self::new(move |k| f.eval(&map(k)))
    }

    pub fn values_on(&self, keys: &[Key]) -> Vec<Q> {
        keys.iter().map(|k| self.at(*k)).collect()
    }

    pub fn equals_on(&self, other: &GradedFunctional, keys: &[Key]) -> bool {
        keys.iter().all(|k| self.at(*k) == other.at(*k))
    }
}

/// Solution space of an invariance system, restricted to the window.
#[derive(Clone, Debug)]
pub struct IntegralSolution {
    pub basis: Vec<GradedFunctional>,
    pub dimension: usize,
}

impl IntegralSolution {
    pub fn unique(&self) -> bool {
        self.dimension == 1
    }

    /// The normalized spanning functional when the space is one-dimensional.
    pub fn functional(&self) -> Option<&GradedFunctional> {
        self.unique().then(|| &self.basis[0])
    }
}

/// Invariance equations, one list per basis vector `a`: each equation is the coefficient of
/// one output basis vector in `(ι⊗f)Δ(a) − f(a)1` (left) or `(f⊗ι)Δ(a) − f(a)1` (right).
/// Returns `(contracted tensor, unit, output keys)` triples whose legs lie in the window.
fn invariance_pieces(
    h: &dyn MultiplierHopf,
    side: Side,
    w: &Window,
    a: Key,
) -> Vec<(Tensor, GradedElement, Vec<Key>)> {
    let g = h.group();
    let ix = h.indexing();
    if is_cograded(h) {
        let mut out = Vec::new();
        for &o in w.elements() {
            let legs: Vec<(Elem, Elem)> = match side {
                Side::Left => ix
                    .right_legs(g, a.0, o)
                    .into_iter()
                    .map(|q| (o, q))
                    .collect(),
                Side::Right => vec![(ix.left_leg(g, a.0, o), o)],
            };
            if legs.iter().any(|&(p, q)| !w.contains(p) || !w.contains(q)) {
                continue;
            }
            let mut t = Tensor::new();
            for (p, q) in legs {
                t.add(&h.coproduct_part(a, p, q));
            }
            let unit = h.unit_component(o).unwrap_or_default();
            out.push((t, unit, basis(h, o).collect()));
        }
        out
    } else {
        let legs = h.coproduct_legs(a).unwrap_or_default();
        if legs.iter().any(|&(p, q)| !w.contains(p) || !w.contains(q)) {
            return Vec::new();
        }
        let mut unit = GradedElement::new();
        for &p in w.elements() {
            unit.add(&h.unit_component(p).unwrap_or_default());
        }
        vec![(full_coproduct(h, a), unit, window_basis(h, w))]
    }
}

fn solve_integral(h: &dyn MultiplierHopf, side: Side, w: &Window) -> IntegralSolution {
    let keys = window_basis(h, w);
    let index: HashMap<Key, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut system = RowEchelon::new(keys.len());
    for &a in &keys {
        for (t, unit, outputs) in invariance_pieces(h, side, w, a) {
            let mut rows: BTreeMap<Key, Sparse<usize>> =
                outputs.iter().map(|k| (*k, Sparse::new())).collect();
            let mut complete = true;
            for ((x, y), c) in t.iter() {
                let (out, inner) = match side {
                    Side::Left => (x, y),
                    Side::Right => (y, x),
                };
                match (rows.get_mut(out), index.get(inner)) {
                    (Some(row), Some(&j)) => row.add_term(j, c.clone()),
                    _ => complete = false,
                }
            }
            if !complete {
                continue;
            }
            for (k, row) in rows.iter_mut() {
                row.add_term(index[&a], -unit.get(k));
            }
            for row in rows.into_values() {
                system.push(row);
            }
        }
    }
    let basis: Vec<GradedFunctional> = system
        .kernel()
        .into_iter()
        .map(|v| {
            let lead = v
                .iter()
                .find(|c| !c.is_zero())
                .cloned()
                .expect("kernel vectors are nonzero");
            let inv = lead.inv().expect("nonzero");
            GradedFunctional::from_values(
                keys.iter().zip(&v).map(|(k, c)| (*k, c * &inv)).collect(),
            )
        })
        .collect();
    IntegralSolution {
        dimension: basis.len(),
        basis,
    }
}

/// Solves `(ι⊗φ)Δ(a) = φ(a)1` for `a` in the window; equations needing components outside
/// the window are dropped.
pub fn solve_left_integral(h: &dyn MultiplierHopf, w: &Window) -> IntegralSolution {
    solve_integral(h, Side::Left, w)
}

/// Solves `(ψ⊗ι)Δ(a) = ψ(a)1` on the window.
pub fn solve_right_integral(h: &dyn MultiplierHopf, w: &Window) -> IntegralSolution {
    solve_integral(h, Side::Right, w)
}

/// First window witness where `f` fails left (`Side::Left`) or right invariance.
pub fn integral_residual(
    h: &dyn MultiplierHopf,
    f: &GradedFunctional,
    side: Side,
    w: &Window,
) -> Failures {
    let g = h.group();
    let mut fails = Failures::new();
    for a in window_basis(h, w) {
        let fa = f.at(a);
        for (t, unit, outputs) in invariance_pieces(h, side, w, a) {
            let lhs = match side {
                Side::Left => contract_right(&t, |k| f.at(*k)),
                Side::Right => contract_left(&t, |k| f.at(*k)),
            };
            let rhs = unit.scaled(&fa);
            let ok = outputs.iter().all(|k| lhs.get(k) == rhs.get(k));
            fails.check(ok, || format!("invariance fails at {}", key_name(g, a)));
        }
    }
    fails
}

fn window_dims(h: &dyn MultiplierHopf, w: &Window) -> BTreeMap<Elem, usize> {
    w.elements().iter().map(|&p| (p, h.dim(p))).collect()
}

/// The multiplier `δ` with `(φ⊗ι)Δ(a) = φ(a)δ` for `a` in the window.
pub fn modular_element(
    h: &dyn MultiplierHopf,
    phi: &GradedFunctional,
    w: &Window,
) -> Result<GradedMultiplier> {
    let g = h.group();
    let keys = window_basis(h, w);
    let mut parts: BTreeMap<Elem, Vec<Q>> = BTreeMap::new();
    let groups: Vec<Vec<Key>> = if is_cograded(h) {
        w.elements()
            .iter()
            .map(|&q| basis(h, q).collect())
            .collect()
    } else {
        vec![keys.clone()]
    };
    for outputs in groups {
        if outputs.is_empty() {
            continue;
        }
        let index: HashMap<Key, usize> = outputs.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut system = RowEchelon::new(outputs.len());
        for &a in &keys {
            for (t, _unit, outs) in invariance_pieces(h, Side::Right, w, a) {
                if outs.first().map(|k| index.contains_key(k)) != Some(true) {
                    continue;
                }
                let v = contract_left(&t, |k| phi.at(*k));
                let fa = phi.at(a);
                for k in &outs {
                    system.push_affine(Sparse::term(index[k], fa.clone()), &v.get(k));
                }
            }
        }
        let label = key_name(g, outputs[0]);
        let solution = system.particular().ok_or_else(|| {
            Error::Inconsistent(format!(
                "modular element near {label}: φ is not left invariant"
            ))
        })?;
        if system.rank() < outputs.len() {
            return Err(Error::NotUnique(format!(
                "modular element near {label} is underdetermined"
            )));
        }
        for (k, c) in outputs.iter().zip(solution) {
            parts
                .entry(k.0)
                .or_insert_with(|| vec![Q::zero(); h.dim(k.0)])[k.1] = c;
        }
    }
    // invertibility of left multiplication by δ on each window component block
    let delta_elem: GradedElement = parts
        .iter()
        .flat_map(|(p, v)| v.iter().enumerate().map(move |(i, c)| ((*p, i), c.clone())))
        .collect();
    let cols: Vec<GradedElement> = keys
        .iter()
        .map(|k| {
            let x = GradedElement::basis(*k);
            if is_cograded(h) {
                let dk: GradedElement = delta_elem.filtered(|d| d.0 == k.0);
                mul(h, &dk, &x)
            } else {
                mul(h, &delta_elem, &x)
            }
        })
        .collect();
    if crate::exact::sparse_rank(&cols) < keys.len() {
        return Err(Error::Singular(
            "modular element is not invertible on the window".into(),
        ));
    }
    let dims = window_dims(h, w);
    Ok(GradedMultiplier::finite(
        move |p| dims.get(&p).copied().unwrap_or(0),
        parts,
    ))
}

/// `σ` with `φ(ab) = φ(bσ(a))`, per component (cograded) or on the window span.
#[derive(Clone, Debug)]
pub struct ModularAutomorphism {
    pub map: BTreeMap<Key, GradedElement>,
    /// Whether `σ(xy) = σ(x)σ(y)` held on every window pair whose product stays in the window.
    pub is_automorphism: bool,
}

impl ModularAutomorphism {
    pub fn apply(&self, x: &GradedElement) -> GradedElement {
        x.map_linear(|k| self.map.get(k).cloned().unwrap_or_default())
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| *v == GradedElement::basis(*k))
    }
}

fn key_groups(h: &dyn MultiplierHopf, w: &Window) -> Vec<Vec<Key>> {
    if is_cograded(h) {
        w.elements()
            .iter()
            .map(|&p| basis(h, p).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect()
    } else {
        vec![window_basis(h, w)]
    }
}

fn form(h: &dyn MultiplierHopf, phi: &GradedFunctional, keys: &[Key]) -> Matrix {
    Matrix::from_fn(keys.len(), keys.len(), |j, k| {
        phi.eval(&h.mul_basis(keys[j], keys[k]))
    })
}

pub fn modular_automorphism(
    h: &dyn MultiplierHopf,
    phi: &GradedFunctional,
    w: &Window,
) -> Result<ModularAutomorphism> {
    let g = h.group();
    let mut map = BTreeMap::new();
    for keys in key_groups(h, w) {
        let f = form(h, phi, &keys);
        let inv = f.inverse().ok_or_else(|| {
            Error::NotFaithful(format!("φ is degenerate near {}", key_name(g, keys[0])))
        })?;
        for &a in &keys {
            let rhs: Vec<Q> = keys.iter().map(|&e| phi.eval(&h.mul_basis(a, e))).collect();
            let s = inv.mul_vec(&rhs);
            map.insert(a, keys.iter().zip(s).map(|(k, c)| (*k, c)).collect());
        }
    }
    let mut sigma = ModularAutomorphism {
        map,
        is_automorphism: true,
    };
    let keys: BTreeSet<Key> = sigma.map.keys().copied().collect();
    'outer: for &x in &keys {
        for &y in &keys {
            let xy = h.mul_basis(x, y);
            if xy.is_zero() || !xy.keys().all(|k| keys.contains(k)) {
                continue;
            }
            let l = sigma.apply(&xy);
            let r = mul(h, &sigma.map[&x], &sigma.map[&y]);
            if l != r {
                sigma.is_automorphism = false;
                break 'outer;
            }
        }
    }
    Ok(sigma)
}

/// Zero kernel of `a ↦ φ(a·)` and `a ↦ φ(·a)` on window components.
pub fn check_faithful(
    h: &dyn MultiplierHopf,
    phi: &GradedFunctional,
    w: &Window,
) -> CertificateReport {
    let g = h.group();
    let mut report = CertificateReport::new(w.describe(g));
    let (mut left, mut right) = (Failures::new(), Failures::new());
    for keys in key_groups(h, w) {
        let f = form(h, phi, &keys);
        let n = keys.len();
        let r = f.rank();
        left.check(r == n, || {
            format!("rank {r} of {n} near {}", key_name(g, keys[0]))
        });
        let rt = f.transpose().rank();
        right.check(rt == n, || {
            format!("rank {rt} of {n} near {}", key_name(g, keys[0]))
        });
    }
    report.push("faithful on the left", "integrals/faithful", left);
    report.push("faithful on the right", "integrals/faithful", right);
    report
}

/// Exact positive semi-definiteness of `G_ij = φ(e_i* e_j)`.
pub fn check_positive_integral(
    h: &dyn MultiplierHopf,
    phi: &GradedFunctional,
    w: &Window,
) -> Result<CertificateReport> {
    if !h.has_star() {
        return Err(Error::StarAbsent(h.label()));
    }
    let g = h.group();
    let mut report = CertificateReport::new(w.describe(g));
    let mut f = Failures::new();
    for keys in key_groups(h, w) {
        let stars: Vec<GradedElement> = keys
            .iter()
            .map(|&k| star_of(h, &GradedElement::basis(k)))
            .collect();
        let gram = Matrix::from_fn(keys.len(), keys.len(), |i, j| {
            phi.eval(&mul(h, &stars[i], &GradedElement::basis(keys[j])))
        });
        match hermitian_psd(&gram) {
            Ok(true) => {}
            Ok(false) => f.record(|| {
                format!(
                    "Gram matrix near {} is not positive semi-definite",
                    key_name(g, keys[0])
                )
            }),
            Err(_) => {
                f.record(|| format!("Gram matrix near {} is not Hermitian", key_name(g, keys[0])))
            }
        }
    }
    report.push("positive integral", "integrals/positive", f);
    Ok(report)
}
