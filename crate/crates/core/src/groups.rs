//! Groups presented operationally, self-actions, and finite verification windows.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A group element. Finite groups use indices `0..order` in declaration order; the
/// integers use their own values.
pub type Elem = i64;

#[derive(Debug)]
struct FiniteGroup {
    label: String,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

#[derive(Debug)]
enum Presentation {
    Finite(FiniteGroup),
    Integers,
}

/// Cheaply clonable handle on a group.
#[derive(Clone, Debug)]
pub struct Group(Arc<Presentation>);

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || match (&*self.0, &*other.0) {
                (Presentation::Integers, Presentation::Integers) => true,
                (Presentation::Finite(a), Presentation::Finite(b)) => {
                    a.names == b.names && a.table == b.table
                }
                _ => false,
            }
    }
}

impl Group {
    /// Validates a multiplication table exhaustively. `table[a][b]` is the index of `a·b`.
    pub fn from_table(label: &str, names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::GroupAxiom("empty element list".into()));
        }
        if table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::GroupAxiom(format!(
                "table must be {n}x{n} over element indices"
            )));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != n {
            return Err(Error::GroupAxiom("duplicate element names".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::GroupAxiom(format!(
                            "associativity fails on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::GroupAxiom("no two-sided identity".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::GroupAxiom(format!("{} has no inverse", names[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(Arc::new(Presentation::Finite(FiniteGroup {
            label: label.to_string(),
            names,
            table,
            inverse,
            identity,
        }))))
    }

    /// The additive group of integers.
    pub fn integers() -> Self {
        Self(Arc::new(Presentation::Integers))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z_n with elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(&format!("Z{n}"), names, table).expect("cyclic table is a group")
    }

    /// Z_2 × Z_2 with elements `00, 10, 01, 11`.
    pub fn klein_four() -> Self {
        let names = ["00", "10", "01", "11"].map(String::from).to_vec();
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        Self::from_table("Z2xZ2", names, table).expect("klein table is a group")
    }

    /// S_3 as permutations of {1,2,3}; products compose right to left.
    pub fn symmetric3() -> Self {
        let perms: [(&str, [usize; 3]); 6] = [
            ("e", [0, 1, 2]),
            ("(12)", [1, 0, 2]),
            ("(13)", [2, 1, 0]),
            ("(23)", [0, 2, 1]),
            ("(123)", [1, 2, 0]),
            ("(132)", [2, 0, 1]),
        ];
        let index: HashMap<[usize; 3], usize> = perms
            .iter()
            .enumerate()
            .map(|(k, (_, p))| (*p, k))
            .collect();
        let table = perms
            .iter()
            .map(|(_, a)| {
                perms
                    .iter()
                    .map(|(_, b)| index[&[a[b[0]], a[b[1]], a[b[2]]]])
                    .collect()
            })
            .collect();
        let names = perms.iter().map(|(n, _)| n.to_string()).collect();
        Self::from_table("S3", names, table).expect("permutation composition is a group")
    }

    fn finite(&self) -> Option<&FiniteGroup> {
        match &*self.0 {
            Presentation::Finite(f) => Some(f),
            Presentation::Integers => None,
        }
    }

    pub fn label(&self) -> &str {
        match &*self.0 {
            Presentation::Finite(f) => &f.label,
            Presentation::Integers => "integers",
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite().is_some()
    }

    pub fn order(&self) -> Option<usize> {
        self.finite().map(|f| f.names.len())
    }

    /// All elements in declaration order, for finite groups.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        self.order().map(|n| (0..n as Elem).collect())
    }

    pub fn identity(&self) -> Elem {
        self.finite().map_or(0, |f| f.identity as Elem)
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.finite()
            .is_none_or(|f| a >= 0 && (a as usize) < f.names.len())
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &*self.0 {
            Presentation::Finite(f) => f.table[a as usize][b as usize] as Elem,
            Presentation::Integers => a + b,
        }
    }

    pub fn inv(&self, a: Elem) -> Elem {
        match &*self.0 {
            Presentation::Finite(f) => f.inverse[a as usize] as Elem,
            Presentation::Integers => -a,
        }
    }

    /// `p·q·p⁻¹`.
    pub fn conjugate(&self, p: Elem, q: Elem) -> Elem {
        self.mul(self.mul(p, q), self.inv(p))
    }

    pub fn name(&self, a: Elem) -> String {
        match &*self.0 {
            Presentation::Finite(f) => f.names[a as usize].clone(),
            Presentation::Integers => a.to_string(),
        }
    }

    pub fn element_names(&self) -> Option<Vec<String>> {
        self.finite().map(|f| f.names.clone())
    }

    pub fn table(&self) -> Option<Vec<Vec<usize>>> {
        self.finite().map(|f| f.table.clone())
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        match &*self.0 {
            Presentation::Finite(f) => f
                .names
                .iter()
                .position(|n| n == s)
                .map(|k| k as Elem)
                .ok_or_else(|| Error::UnknownElement(s.to_string())),
            Presentation::Integers => s
                .trim()
                .parse()
                .map_err(|_| Error::UnknownElement(s.to_string())),
        }
    }

    /// Group axioms on a window: associativity, identity, inverses.
    pub fn axiom_violations(&self, w: &Window) -> Vec<String> {
        let e = self.identity();
        let mut out = Vec::new();
        for &a in w.elements() {
            if self.mul(e, a) != a || self.mul(a, e) != a {
                out.push(format!("identity law fails at {}", self.name(a)));
            }
            if self.mul(a, self.inv(a)) != e || self.mul(self.inv(a), a) != e {
                out.push(format!("inverse law fails at {}", self.name(a)));
            }
            for &b in w.elements() {
                for &c in w.elements() {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        out.push(format!(
                            "associativity fails on ({}, {}, {})",
                            self.name(a),
                            self.name(b),
                            self.name(c)
                        ));
                    }
                }
            }
        }
        out
    }
}

/// Finite subset of a group on which componentwise checks run. Contains the identity and
/// is closed under inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    elements: Vec<Elem>,
    closed: bool,
}

impl Window {
    pub fn new(g: &Group, elements: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let set: BTreeSet<Elem> = elements.into_iter().collect();
        if let Some(bad) = set.iter().find(|&&a| !g.contains(a)) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        if !set.contains(&g.identity()) {
            return Err(Error::BadWindow("identity missing".into()));
        }
        if let Some(&a) = set.iter().find(|&&a| !set.contains(&g.inv(a))) {
            return Err(Error::BadWindow(format!(
                "inverse of {} missing",
                g.name(a)
            )));
        }
        let closed = set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))));
        Ok(Self {
            elements: set.into_iter().collect(),
            closed,
        })
    }

    /// The whole group; only for finite groups.
    pub fn full(g: &Group) -> Result<Self> {
        Self::new(g, g.elements().ok_or(Error::InfiniteGroup)?)
    }

    /// `{lo..=hi}` in the integers.
    pub fn range(g: &Group, lo: Elem, hi: Elem) -> Result<Self> {
        Self::new(g, lo..=hi)
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of window factors whose products are guaranteed to stay inside the window:
    /// `None` when the window is a subgroup.
    pub fn closure_level(&self) -> Option<usize> {
        (!self.closed).then_some(1)
    }

    pub fn describe(&self, g: &Group) -> Vec<String> {
        self.elements.iter().map(|&a| g.name(a)).collect()
    }
}

/// A left action `p ↦ ρ_p` of a group on its own underlying set.
#[derive(Clone)]
pub enum SelfAction {
    /// `ρ_p(q) = p q p⁻¹`
    Adjoint,
    /// `ρ_p(q) = q`
    Trivial,
    /// Explicit table, `table[p][q] = ρ_p(q)`, finite groups only.
    Table(Arc<Vec<Vec<Elem>>>),
}

impl fmt::Debug for SelfAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn adjoint_self_action(_g: &Group) -> SelfAction {
    SelfAction::Adjoint
}

pub fn trivial_self_action(_g: &Group) -> SelfAction {
    SelfAction::Trivial
}

impl SelfAction {
    pub fn from_table(g: &Group, table: Vec<Vec<Elem>>) -> Result<Self> {
        let n = g.order().ok_or(Error::InfiniteGroup)?;
        if table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| !g.contains(x)))
        {
            return Err(Error::GroupAxiom(format!(
                "self-action table must be {n}x{n}"
            )));
        }
        Ok(Self::Table(Arc::new(table)))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Adjoint => "adjoint",
            Self::Trivial => "trivial",
            Self::Table(_) => "table",
        }
    }

    pub fn apply(&self, g: &Group, p: Elem, q: Elem) -> Elem {
        match self {
            Self::Adjoint => g.conjugate(p, q),
            Self::Trivial => q,
            Self::Table(t) => t[p as usize][q as usize],
        }
    }

    /// Left action law and injectivity of each `ρ_p` on the window.
    pub fn law_violations(&self, g: &Group, w: &Window) -> Vec<String> {
        let mut out = Vec::new();
        let e = g.identity();
        for &q in w.elements() {
            if self.apply(g, e, q) != q {
                out.push(format!("rho_e moves {}", g.name(q)));
            }
        }
        for &p in w.elements() {
            let mut image = BTreeSet::new();
            for &q in w.elements() {
                if !image.insert(self.apply(g, p, q)) {
                    out.push(format!(
                        "rho_{} is not injective at {}",
                        g.name(p),
                        g.name(q)
                    ));
                }
                for &r in w.elements() {
                    if self.apply(g, g.mul(p, q), r) != self.apply(g, p, self.apply(g, q, r)) {
                        out.push(format!(
                            "rho_{{pq}} != rho_p rho_q at ({}, {}, {})",
                            g.name(p),
                            g.name(q),
                            g.name(r)
                        ));
                    }
                }
            }
        }
        out
    }

    /// First window pair where `ρ_p(q) ≠ p q p⁻¹`.
    pub fn adjoint_mismatch(&self, g: &Group, w: &Window) -> Option<(Elem, Elem)> {
        w.elements()
            .iter()
            .flat_map(|&p| w.elements().iter().map(move |&q| (p, q)))
            .find(|&(p, q)| self.apply(g, p, q) != g.conjugate(p, q))
    }

    /// Whether every `ρ_p` is a group automorphism on the window (recorded, not required).
    pub fn is_automorphic_on(&self, g: &Group, w: &Window) -> bool {
        w.elements().iter().all(|&p| {
            w.elements().iter().all(|&q| {
                w.elements().iter().all(|&r| {
                    self.apply(g, p, g.mul(q, r)) == g.mul(self.apply(g, p, q), self.apply(g, p, r))
                })
            })
        })
    }
}
